from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from hypjac import _kernels_py, kernels, linalg

try:
    from hypjac import _kernels as compiled
except ImportError:
    compiled = None

BACKENDS = [pytest.param(_kernels_py, id="python")]
BACKENDS.append(pytest.param(compiled, id="compiled", marks=pytest.mark.skipif(
    compiled is None, reason="compiled extension not built")))

P = linalg.MODULAR_PRIMES[0]


def fraction_rank(rows, ncols):
    m = [[Fraction(x) for x in r] for r in rows]
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, len(m)):
            f = m[i][c] / m[r][c]
            if f:
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


matrices = st.integers(1, 9).flatmap(lambda n: st.integers(1, 9).flatmap(
    lambda m: st.tuples(
        st.lists(st.lists(st.integers(-6, 6), min_size=m, max_size=m), min_size=n, max_size=n),
        st.just(m))))


@pytest.mark.parametrize("impl", BACKENDS)
@given(matrices)
@settings(max_examples=150, deadline=None)
def test_bareiss_matches_fraction_oracle(impl, mat):
    rows, m = mat
    assert impl.bareiss_rank([r[:] for r in rows], m) == fraction_rank(rows, m)


@pytest.mark.parametrize("impl", BACKENDS)
@given(matrices, st.lists(st.integers(-3, 3), min_size=1, max_size=4))
@settings(max_examples=80, deadline=None)
def test_bareiss_on_dependent_rows(impl, mat, coeffs):
    rows, m = mat
    combo = [sum(c * r[j] for c, r in zip(coeffs, rows)) for j in range(m)]
    extended = rows + [combo]
    assert impl.bareiss_rank([r[:] for r in extended], m) == fraction_rank(rows, m)


@pytest.mark.parametrize("impl", BACKENDS)
def test_bareiss_large_entries(impl):
    big = 10 ** 40
    rows = [[big, 1, 0], [big + 1, 1, 0], [1, 0, big]]
    assert impl.bareiss_rank([r[:] for r in rows], 3) == 3
    rows = [[big, 2 * big], [3 * big, 6 * big]]
    assert impl.bareiss_rank([r[:] for r in rows], 2) == 1


@pytest.mark.parametrize("impl", BACKENDS)
@given(matrices)
@settings(max_examples=80, deadline=None)
def test_modular_rank_is_a_lower_bound(impl, mat):
    rows, m = mat
    assert impl.rank_mod_p([r[:] for r in rows], m, P) <= fraction_rank(rows, m)


@pytest.mark.parametrize("impl", BACKENDS)
def test_empty_and_zero(impl):
    assert impl.bareiss_rank([], 3) == 0
    assert impl.bareiss_rank([[0, 0], [0, 0]], 2) == 0
    assert impl.rank_mod_p([[0, 0]], 2, P) == 0


polys = st.dictionaries(st.lists(st.integers(0, 3), min_size=3, max_size=3).map(tuple),
                        st.integers(-9, 9).filter(bool), max_size=6)


@pytest.mark.parametrize("impl", BACKENDS)
@given(polys, polys)
@settings(max_examples=100, deadline=None)
def test_poly_mul(impl, a, b):
    want = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            want[m] = want.get(m, 0) + ca * cb
    want = {m: c for m, c in want.items() if c}
    assert impl.poly_mul(a, b) == want


@pytest.mark.parametrize("impl", BACKENDS)
@given(polys, polys, st.lists(st.integers(0, 2), min_size=3, max_size=3).map(tuple), st.integers(-4, 4))
@settings(max_examples=100, deadline=None)
def test_poly_addmul_mono(impl, acc, p, mono, coeff):
    acc = dict(acc)
    want = dict(acc)
    for m, c in p.items():
        k = tuple(x + y for x, y in zip(m, mono))
        want[k] = want.get(k, 0) + coeff * c
    want = {m: c for m, c in want.items() if c}
    impl.poly_addmul_mono(acc, p, mono, coeff)
    assert acc == want


@pytest.mark.skipif(compiled is None, reason="compiled extension not built")
@given(matrices)
@settings(max_examples=100, deadline=None)
def test_backends_agree(mat):
    rows, m = mat
    assert compiled.bareiss_rank([r[:] for r in rows], m) == _kernels_py.bareiss_rank([r[:] for r in rows], m)
    assert compiled.rank_mod_p([r[:] for r in rows], m, P) == _kernels_py.rank_mod_p([r[:] for r in rows], m, P)


def test_fraction_rows_are_scaled():
    rows = [[Fraction(1, 2), Fraction(1, 3)], [3, 2]]
    assert linalg.rank(rows) == 1


def test_backend_selection(monkeypatch):
    import importlib
    monkeypatch.setenv("HYPJAC_PURE_PYTHON", "1")
    mod = importlib.reload(kernels)
    try:
        assert mod.BACKEND == "python"
    finally:
        monkeypatch.delenv("HYPJAC_PURE_PYTHON")
        importlib.reload(kernels)
