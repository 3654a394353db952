"""Curves, Mumford triples and the divisor <-> triple correspondence.

A triple (a, b, c) with a^2 + b c = f coordinatizes a point of the affine
Jacobian.  Triples are kept exact; only root extraction is numeric.
"""
import warnings
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import DegenerateDivisor, Inconsistency, InvalidParameter, OffCurve
from .polyring import GenId, Poly, ring

DEFAULT_PREC = 256
DEFAULT_TOL = mpmath.mpf("1e-30")


# --- univariate helpers; ascending coefficient lists ---

def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def pmul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x:
            for j, y in enumerate(q):
                out[i + j] += x * y
    return out


def padd(p, q):
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]


def pscale(p, c):
    return [c * x for x in p]


def peval(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def pderiv(p):
    return [i * p[i] for i in range(1, len(p))] or [0]


def pdivmod(num, den):
    """Quotient and remainder; ``den`` must have a nonzero leading coefficient."""
    num = list(num)
    den = _trim(den)
    dl = len(den) - 1
    lead = den[-1]
    if len(num) - 1 < dl:
        return [0], num
    q = [0] * (len(num) - dl)
    for i in range(len(num) - 1, dl - 1, -1):
        c = num[i] if lead == 1 else num[i] / lead
        q[i - dl] = c
        if c:
            for j, d in enumerate(den):
                num[i - dl + j] -= c * d
    return q, num[:dl] if dl else [0]


def pgcd_degree(p, q):
    """Degree of gcd(p, q) for exact rational polynomials."""
    p = _trim([Fraction(x) for x in p])
    q = _trim([Fraction(x) for x in q])
    while any(q):
        _, r = pdivmod(p, q)
        p, q = q, _trim(r)
    return len(_trim(p)) - 1


def _is_exact(x):
    return isinstance(x, (int, Fraction))


# --- domain types ---

@dataclass(frozen=True)
class Curve:
    """y^2 = z^(2g+1) + f_1 z^(2g) + ... + f_(2g+1)."""

    g: int
    f: tuple

    def __post_init__(self):
        if self.g < 1:
            raise InvalidParameter("genus must be >= 1")
        if len(self.f) != 2 * self.g + 1:
            raise InvalidParameter(f"need {2 * self.g + 1} coefficients, got {len(self.f)}")
        object.__setattr__(self, "f", tuple(_as_number(x) for x in self.f))

    @classmethod
    def degenerate(cls, g):
        return cls(g, (0,) * (2 * g + 1))

    def poly(self):
        """Ascending coefficients of f(z)."""
        return list(reversed(self.f)) + [1]

    def __call__(self, z):
        return peval(self.poly(), z)

    def to_json(self):
        return {"g": self.g, "f": [str(x) for x in self.f]}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["g"]), tuple(Fraction(x) for x in obj["f"]))


def _as_number(x):
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    return x


@dataclass(frozen=True)
class MumfordTriple:
    """Non-leading coefficients of a(z), b(z), c(z).

    a = a_{3/2} z^(g-1) + ... + a_{g+1/2}; b = z^g + b_1 z^(g-1) + ... + b_g;
    c = z^(g+1) + c_1 z^g + ... + c_(g+1).  Entries may be numbers or Polys.
    """

    a: tuple
    b: tuple
    c: tuple

    def __post_init__(self):
        g = len(self.b)
        if len(self.a) != g or len(self.c) != g + 1:
            raise InvalidParameter("triple shape must be (g, g, g+1) coefficients")

    @property
    def g(self):
        return len(self.b)

    @classmethod
    def generic(cls, g):
        R = ring(g)
        return cls(
            tuple(R.gen(GenId("A", j)) for j in range(1, g + 1)),
            tuple(R.gen(GenId("B", j)) for j in range(1, g + 1)),
            tuple(R.gen(GenId("C", j)) for j in range(1, g + 2)),
        )

    def a_poly(self):
        return list(reversed(self.a))

    def b_poly(self):
        return list(reversed(self.b)) + [1]

    def c_poly(self):
        return list(reversed(self.c)) + [1]

    def determinant_poly(self):
        """a^2 + b c, ascending."""
        return padd(pmul(self.a_poly(), self.a_poly()), pmul(self.b_poly(), self.c_poly()))

    def residual(self, curve):
        return padd(self.determinant_poly(), pscale(curve.poly(), -1))

    def satisfies(self, curve, tol=None):
        r = self.residual(curve)
        if tol is None:
            return all(x == 0 for x in r)
        return all(abs(x) <= tol for x in r)

    def values(self):
        """Generator -> value map, for evaluating Polys at this point."""
        g = self.g
        out = {GenId("A", j): self.a[j - 1] for j in range(1, g + 1)}
        out.update({GenId("B", j): self.b[j - 1] for j in range(1, g + 1)})
        out.update({GenId("C", j): self.c[j - 1] for j in range(1, g + 2)})
        return out

    def to_json(self):
        return {
            "a": [str(x) for x in self.a],
            "b": [str(x) for x in self.b],
            "c": [str(x) for x in self.c],
        }

    @classmethod
    def from_json(cls, obj):
        return cls(
            tuple(_as_number(x) for x in obj["a"]),
            tuple(_as_number(x) for x in obj["b"]),
            tuple(_as_number(x) for x in obj["c"]),
        )


@dataclass
class DivisorPoints:
    points: list
    multiplicities: list = None

    def __post_init__(self):
        if self.multiplicities is None:
            self.multiplicities = [1] * len(self.points)

    @property
    def degenerate(self):
        return any(m > 1 for m in self.multiplicities)

    def to_json(self):
        return {
            "points": [[_num_str(z), _num_str(y)] for z, y in self.points],
            "multiplicities": list(self.multiplicities),
        }


def _num_str(x):
    if _is_exact(x):
        return str(x)
    if isinstance(x, mpmath.mpc):
        return f"{mpmath.nstr(x.real, 40)}{'+' if x.imag >= 0 else '-'}{mpmath.nstr(abs(x.imag), 40)}j"
    return mpmath.nstr(x, 40)


# --- operations ---

def det_coefficients(g):
    """f_k as polynomials in a, b, c for k = 1..2g+1 (b_0 = c_0 = 1)."""
    R = ring(g)
    one = R.const(1)

    def b(i):
        return one if i == 0 else R.gen(GenId("B", i)) if i <= g else None

    def c(j):
        return one if j == 0 else R.gen(GenId("C", j)) if j <= g + 1 else None

    out = []
    for k in range(1, 2 * g + 2):
        p = R.zero()
        for i in range(0, k + 1):
            bi, cj = b(i), c(k - i)
            if bi is not None and cj is not None:
                p = p + bi * cj
        for i in range(1, k - 1):
            j = k - 1 - i
            if 1 <= i <= g and 1 <= j <= g:
                p = p + R.gen(GenId("A", i)) * R.gen(GenId("A", j))
        out.append(p)
    return out


def _tolerance_check(value, scale, tol):
    return abs(value) <= tol * max(1, abs(scale))


def divisor_to_triple(points, curve, tol=DEFAULT_TOL, prec=DEFAULT_PREC):
    """Build (a, b, c) from g affine points (z_j, y_j) of the curve."""
    if isinstance(points, DivisorPoints):
        points = points.points
    g = curve.g
    if len(points) != g:
        raise InvalidParameter(f"need exactly {g} points, got {len(points)}")
    exact = all(_is_exact(z) and _is_exact(y) for z, y in points) and all(
        _is_exact(x) for x in curve.f
    )
    if exact:
        pts = [(Fraction(z), Fraction(y)) for z, y in points]
        return _divisor_to_triple(pts, curve, None)
    with mpmath.workprec(prec):
        pts = [(mpmath.mpmathify(z), mpmath.mpmathify(y)) for z, y in points]
        return _divisor_to_triple(pts, curve, mpmath.mpf(tol))


def _divisor_to_triple(pts, curve, tol):
    g = curve.g
    for i in range(g):
        for j in range(i + 1, g):
            dz = pts[i][0] - pts[j][0]
            if (dz == 0) if tol is None else _tolerance_check(dz, pts[i][0], tol):
                raise DegenerateDivisor(f"points {i} and {j} share z = {pts[i][0]}")
    for z, y in pts:
        fz = curve(z)
        diff = y * y - fz
        ok = diff == 0 if tol is None else _tolerance_check(diff, fz, tol)
        if not ok:
            raise OffCurve(f"y^2 = {y * y} but f(z) = {fz} at z = {z}")
    bpoly = [1]
    for z, _ in pts:
        bpoly = pmul(bpoly, [-z, 1])
    apoly = [0] * g
    for j, (zj, yj) in enumerate(pts):
        basis = [1]
        denom = 1
        for k, (zk, _) in enumerate(pts):
            if k != j:
                basis = pmul(basis, [-zk, 1])
                denom = denom * (zj - zk)
        apoly = padd(apoly, pscale(basis, yj / denom))
    apoly = (apoly + [0] * g)[:g]
    num = padd(curve.poly(), pscale(pmul(apoly, apoly), -1))
    cpoly, rem = pdivmod(num, bpoly)
    for r in rem:
        ok = r == 0 if tol is None else _tolerance_check(r, 1, tol)
        if not ok:
            raise Inconsistency(f"(f - a^2) / b leaves remainder {rem}")
    cpoly = (cpoly + [0] * (g + 2))[: g + 2]
    if tol is None:
        fix = _as_number
    else:
        def fix(x):
            return x
    a = tuple(fix(x) for x in reversed(apoly))
    b = tuple(fix(x) for x in reversed(bpoly[:-1]))
    c = tuple(fix(x) for x in reversed(cpoly[:-1]))
    return MumfordTriple(a, b, c)


def _roots(bpoly, prec):
    """Roots of a monic polynomial from companion-matrix eigenvalues."""
    n = len(bpoly) - 1
    if n == 1:
        return [mpmath.mpc(-mpmath.mpmathify(bpoly[0]))]
    comp = mpmath.zeros(n, n)
    for i in range(1, n):
        comp[i, i - 1] = 1
    for i in range(n):
        comp[i, n - 1] = -mpmath.mpmathify(bpoly[i])
    ev = mpmath.eig(comp, left=False, right=False)
    db = pderiv(bpoly)
    roots = []
    for z in ev:
        z = mpmath.mpc(z)
        for _ in range(4):
            d = peval(db, z)
            if d == 0:
                break
            z = z - peval(bpoly, z) / d
        roots.append(z)
    return roots


def triple_to_divisor(t, curve, prec=DEFAULT_PREC, tol=DEFAULT_TOL):
    """Numeric points (z_j, a(z_j)) at the roots of b(z).

    A repeated root of b is reported through ``multiplicities`` with a
    warning: the correspondence degenerates there.
    """
    exact = all(_is_exact(x) for x in t.a + t.b + t.c) and all(_is_exact(x) for x in curve.f)
    with mpmath.workprec(prec):
        tol = mpmath.mpf(tol)
        if exact:
            if not t.satisfies(curve):
                raise Inconsistency("triple does not satisfy a^2 + b c = f")
        elif not t.satisfies(curve, tol):
            raise Inconsistency("triple does not satisfy a^2 + b c = f within tolerance")
        bpoly = t.b_poly()
        if exact:
            repeated = pgcd_degree(bpoly, pderiv(bpoly)) > 0
        else:
            repeated = None
        roots = _roots(bpoly, prec)
        cluster = mpmath.sqrt(tol)
        groups = []
        for z in roots:
            for grp in groups:
                if abs(grp[0] - z) <= cluster * max(1, abs(z)):
                    grp.append(z)
                    break
            else:
                groups.append([z])
        if repeated is None:
            repeated = any(len(grp) > 1 for grp in groups)
        if not repeated:
            groups = [[z] for z in roots]
        points = []
        mults = []
        apoly = t.a_poly()
        for grp in groups:
            z = sum(grp) / len(grp)
            if abs(z.imag) <= tol * max(1, abs(z)):
                z = mpmath.mpf(z.real)
            y = peval(apoly, z)
            fz = curve(z)
            if not repeated and not _tolerance_check(y * y - fz, fz, tol):
                raise Inconsistency(f"recovered point off the curve at z = {z}")
            points.append((z, y))
            mults.append(len(grp))
        if repeated:
            warnings.warn("b(z) has a repeated root; divisor meets the degenerate locus")
        return DivisorPoints(points, mults)


def random_divisor_on_curve(g, rng, height=20):
    """A random rational divisor and a random rational curve through it.

    f = r + b s with r interpolating y_j^2 at z_j and s random monic.
    """
    zs = []
    while len(zs) < g:
        z = Fraction(rng.randint(-height, height), rng.randint(1, height))
        if z not in zs:
            zs.append(z)
    ys = [Fraction(rng.randint(-height, height), rng.randint(1, height)) for _ in range(g)]
    r = [Fraction(0)] * g
    for j in range(g):
        basis, denom = [Fraction(1)], Fraction(1)
        for k in range(g):
            if k != j:
                basis = pmul(basis, [-zs[k], 1])
                denom *= zs[j] - zs[k]
        r = padd(r, pscale(basis, ys[j] * ys[j] / denom))
    bpoly = [Fraction(1)]
    for z in zs:
        bpoly = pmul(bpoly, [-z, 1])
    s = [Fraction(rng.randint(-height, height), rng.randint(1, height)) for _ in range(g + 1)] + [1]
    f = padd(r, pmul(bpoly, s))
    f = (f + [0] * (2 * g + 2))[: 2 * g + 2]
    assert f[-1] == 1
    curve = Curve(g, tuple(reversed(f[:-1])))
    return list(zip(zs, ys)), curve


def substitute_triple(polys, t):
    """Evaluate Polys over A/B/C generators at the coefficients of a triple."""
    vals = t.values()
    return [p.evaluate(vals) if isinstance(p, Poly) else p for p in polys]
