from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from hypjac import qseries
from hypjac.errors import InexactDivision, InvalidParameter
from hypjac.qseries import QSeries

import oracles

series = st.dictionaries(st.integers(-6, 20), st.integers(-5, 5), max_size=6).map(
    lambda d: QSeries(d, 24)
)
units = st.dictionaries(st.integers(1, 10), st.integers(-5, 5), max_size=4).map(
    lambda d: QSeries({0: 1, **d}, 24)
)


def test_q_binomial_4_2():
    # s-exponents are doubled: q^n sits at s^(2n)
    x = qseries.q_binomial(4, 2, 20)
    assert {e: x.coeff(e) for e, _ in x.terms()} == {0: 1, 2: 1, 4: 2, 6: 1, 8: 1}


@pytest.mark.parametrize("n,k", [(4, 2), (6, 3), (8, 2), (10, 5), (5, 0)])
def test_q_binomial_matches_division(n, k):
    x = qseries.q_binomial(n, k, 200)
    want = oracles.laurent_gaussian(n, k)
    assert [x.coeff(2 * i) for i in range(len(want))] == want
    assert x.value_at_one() == sum(want)


def test_g1_quotient_character():
    ch = qseries.ch_quotient(1, 12)
    assert [ch.coeff(n) for n in range(12)] == [1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1]


def test_g1_free_ring_degree_one():
    assert qseries.ch_free(1, 10).coeff(2) == 2


def test_g2_quotient_degree_two():
    assert qseries.ch_quotient(2, 10).coeff(4) == 2


def test_w_characters_small():
    w = qseries.w_character(1, 1, 10)
    assert dict(w.terms()) == {-1: 1, 1: 1}
    assert qseries.w_character(2, 2, 10).value_at_one() == 5


def test_chi_g1():
    chi = qseries.euler_characteristic(1, 20)
    assert dict(chi.terms()) == {-1: -1, 0: 1, 1: -1}


@pytest.mark.parametrize("g,value", [(1, -1), (2, 2), (3, -5), (4, 14), (5, -42)])
def test_euler_limit(g, value):
    assert qseries.euler_limit(g) == value


def test_invalid_genus():
    with pytest.raises(InvalidParameter):
        qseries.ch_quotient(0)
    with pytest.raises(InvalidParameter):
        qseries.complex_characters(2, 3)


def test_coefficient_outside_window():
    with pytest.raises(InvalidParameter):
        QSeries({0: 1}, 5).coeff(5)


def test_inexact_division():
    with pytest.raises(InexactDivision):
        QSeries({0: 1}, 10) / QSeries({0: 2, 1: 1}, 10)


@given(series, series, series)
def test_ring_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x


@given(series, units)
def test_division_inverts_multiplication(x, u):
    back = (x * u) / u
    assert back.agrees_with(x, upto=min(back.trunc, x.trunc))


@given(st.integers(1, 5))
@settings(max_examples=5, deadline=None)
def test_json_round_trip(g):
    ch = qseries.ch_quotient(g, 30)
    assert QSeries.from_json(ch.to_json()) == ch
