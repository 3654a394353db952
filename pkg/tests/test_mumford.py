import random
from fractions import Fraction as Q

from hypothesis import given, settings
from hypothesis import strategies as st
import mpmath
import pytest

from hypjac import mumford
from hypjac.errors import DegenerateDivisor, Inconsistency, InvalidParameter, OffCurve
from hypjac.mumford import Curve, MumfordTriple
from hypjac.polyring import parse_poly


def close(x, y, eps=1e-60):
    return abs(mpmath.mpmathify(x) - mpmath.mpmathify(y)) < eps


def test_point_on_z_cubed():
    t = mumford.divisor_to_triple([(Q(1), Q(1))], Curve.degenerate(1))
    # b = z - 1, a = 1, c = z^2 + z + 1
    assert (t.b_poly(), t.a_poly(), t.c_poly()) == ([-1, 1], [1], [1, 1, 1])


def test_point_on_z_cubed_plus_one():
    curve = Curve(1, (0, 0, 1))
    t = mumford.divisor_to_triple([(Q(0), Q(1))], curve)
    assert (t.b_poly(), t.a_poly(), t.c_poly()) == ([0, 1], [1], [0, 0, 1])
    assert t.satisfies(curve)


@pytest.mark.parametrize("triple,curve,point", [
    (MumfordTriple((1,), (0,), (0, 0)), Curve(1, (0, 0, 1)), (0, 1)),
    (MumfordTriple((1,), (-1,), (1, 1)), Curve.degenerate(1), (1, 1)),
])
def test_inverse_examples(triple, curve, point):
    div = mumford.triple_to_divisor(triple, curve)
    assert div.multiplicities == [1]
    (z, y), = div.points
    assert close(z, point[0]) and close(y, point[1])


def test_off_curve():
    with pytest.raises(OffCurve):
        mumford.divisor_to_triple([(Q(1), Q(2))], Curve.degenerate(1))


def test_shared_abscissa():
    curve = Curve.degenerate(2)
    with pytest.raises(DegenerateDivisor):
        mumford.divisor_to_triple([(Q(1), Q(1)), (Q(1), Q(-1))], curve)


def test_inconsistent_triple():
    with pytest.raises(Inconsistency):
        mumford.triple_to_divisor(MumfordTriple((1,), (0,), (0, 0)), Curve.degenerate(1))


def test_bad_shapes():
    with pytest.raises(InvalidParameter):
        Curve(1, (0, 0))
    with pytest.raises(InvalidParameter):
        MumfordTriple((1, 2), (0,), (0, 0))


def test_repeated_root_flags_multiplicity():
    # b = (z-1)^2, a = 1, c = z^3 on f = z^5 - 2z^4 + z^3 + 1
    t = MumfordTriple((0, 1), (-2, 1), (0, 0, 0))
    curve = Curve(2, (-2, 1, 0, 0, 1))
    with pytest.warns(UserWarning, match="repeated root"):
        div = mumford.triple_to_divisor(t, curve)
    assert div.multiplicities == [2]
    assert close(div.points[0][0], 1, 1e-12)


def test_determinant_coefficients_g1():
    f = mumford.det_coefficients(1)
    assert f[0] == parse_poly("c1 + b1", 1)
    assert f[1] == parse_poly("c2 + b1*c1", 1)
    assert f[2] == parse_poly("b1*c2 + a1^2", 1)


def test_symbolic_determinant_matches_numeric():
    rng = random.Random(3)
    for g in (1, 2, 3):
        pts, curve = mumford.random_divisor_on_curve(g, rng)
        t = mumford.divisor_to_triple(pts, curve)
        values = {}
        generic = MumfordTriple.generic(g)
        for sym, num in zip(generic.a + generic.b + generic.c, t.a + t.b + t.c):
            (gen,) = sym.variables()
            values[gen] = num
        fs = [p.evaluate(values) for p in mumford.det_coefficients(g)]
        assert tuple(fs) == curve.f


def test_json_round_trip():
    t = MumfordTriple((Q(1, 3),), (Q(-2),), (Q(5), Q(7, 2)))
    assert MumfordTriple.from_json(t.to_json()) == t
    c = Curve(1, (Q(1), Q(0), Q(-1, 4)))
    assert Curve.from_json(c.to_json()) == c


@given(st.integers(1, 3), st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_round_trip_property(g, seed):
    pts, curve = mumford.random_divisor_on_curve(g, random.Random(seed))
    t = mumford.divisor_to_triple(pts, curve)
    assert t.satisfies(curve)
    with mpmath.workprec(256):
        back = mumford.triple_to_divisor(t, curve, prec=256)
        for z, y in pts:
            err = min(abs(mpmath.mpmathify(z) - a) + abs(mpmath.mpmathify(y) - b) for a, b in back.points)
            assert err < mpmath.mpf("1e-20")


def test_float_input_uses_tolerance():
    curve = Curve(1, (0, 0, 1))
    t = mumford.divisor_to_triple([(0.5, (0.125 + 1) ** 0.5)], curve, tol=1e-12)
    with pytest.raises(OffCurve):
        mumford.divisor_to_triple([(0.5, (0.125 + 1) ** 0.5)], curve)
    assert t.satisfies(curve, tol=1e-12)
