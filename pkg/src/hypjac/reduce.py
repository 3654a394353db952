"""Normal forms in the ring of the affine Jacobian.

The c's are solved away triangularly from the low determinant equations and
each high generator's square is rewritten using the remaining ones.  Every
rewrite strictly lowers ``PolyRing.high_key``, checked as it happens.
"""
import heapq
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import GenusMismatch, InvalidParameter, StructuralError
from .mumford import det_coefficients
from .polyring import GenId, Poly, norm, ring, u_gen
from .qseries import ch_quotient


def _as_f0(g, f0):
    if f0 is None:
        return (0,) * (2 * g + 1)
    f0 = tuple(norm(Fraction(x)) for x in f0)
    if len(f0) != 2 * g + 1:
        raise InvalidParameter(f"f0 needs {2 * g + 1} entries, got {len(f0)}")
    return f0


@dataclass(frozen=True, eq=False)
class ReductionSystem:
    g: int
    f0: tuple
    c_subst: dict
    square_rules: dict
    _f_subst: dict = field(repr=False, compare=False)
    _rules_by_index: dict = field(repr=False, compare=False)

    @property
    def ring(self):
        return ring(self.g)

    @property
    def homogeneous(self):
        return not any(self.f0)


def build_reduction_system(g, f0=None):
    R = ring(g)
    f0 = _as_f0(g, f0)
    dets = det_coefficients(g)

    c_subst = {}
    for k in range(1, g + 2):
        ck = R.gen(GenId("C", k))
        rest = (dets[k - 1] - ck).substitute(c_subst)
        c_subst[GenId("C", k)] = R.const(f0[k - 1]) - rest
    if not any(f0):
        for k in range(1, g + 2):
            p = c_subst[GenId("C", k)]
            if p and p.deg2() != 2 * k:
                raise StructuralError(f"c{k} substitution is not homogeneous of degree {2 * k}")

    rules = {}
    rules_by_index = {}
    for k in range(g + 2, 2 * g + 2):
        u = u_gen(k)
        i = R.index[u]
        sq = tuple(2 if j == i else 0 for j in range(R.nvars))
        eq = dets[k - 1].substitute(c_subst) - f0[k - 1]
        coeff = eq.coeff(sq)
        if not coeff or not isinstance(coeff, (int, Fraction)):
            raise StructuralError(f"no constant {u.token}^2 term in the degree-{k} equation")
        rhs = {m: norm(-Fraction(c) / coeff) for m, c in eq.terms.items() if m != sq}
        top = R.high_key(sq)
        for m in rhs:
            if R.high_key(m) >= top:
                raise StructuralError(f"rule for {u.token}^2 does not decrease: {m}")
            if sum(m[h] for h in R.high) > 3:
                raise StructuralError(f"rule for {u.token}^2 has more than 3 high factors")
        rules[u] = Poly(R, rhs)
        rules_by_index[i] = tuple(rhs.items())

    f_subst = {GenId("F", k): dets[k - 1] for k in range(1, 2 * g + 2)}
    return ReductionSystem(g, f0, c_subst, rules, f_subst, rules_by_index)


def is_normal_monomial(R, m):
    """Normal shape: no c or f, high generators square-free."""
    for i in R.c_slice + R.f_slice:
        if m[i]:
            return False
    return all(m[i] <= 1 for i in R.high)


def is_normal(x):
    return all(is_normal_monomial(x.ring, m) for m in x.terms)


def _reducible_var(R, m):
    for i in reversed(R.high):
        if m[i] >= 2:
            return i
    return None


def normal_form(x, system, trace=None):
    """Reduce ``x`` to a combination of normal monomials.

    The largest reducible monomial is rewritten first; each rewrite must
    produce monomials strictly smaller than the one it replaces.  If ``trace``
    is a list, the high keys of rewritten monomials are appended to it.
    """
    R = system.ring
    if not isinstance(x, Poly):
        return R.const(x)
    if x.ring.g != system.g:
        raise GenusMismatch(f"polynomial has g={x.ring.g}, system has g={system.g}")
    if any(m[i] for m in x.terms for i in R.f_slice):
        x = x.substitute(system._f_subst)
    if any(m[i] for m in x.terms for i in R.c_slice):
        x = x.substitute(system.c_subst)

    acc = dict(x.terms)
    heap = []
    queued = set()
    for m in acc:
        if _reducible_var(R, m) is not None:
            heap.append(_heap_entry(R, m))
            queued.add(m)
    heapq.heapify(heap)
    rules = system._rules_by_index
    while heap:
        _, m = heapq.heappop(heap)
        queued.discard(m)
        c = acc.pop(m, 0)
        if not c:
            continue
        key = R.high_key(m)
        if trace is not None:
            trace.append(key)
        i = _reducible_var(R, m)
        rest = list(m)
        rest[i] -= 2
        for rm, rc in rules[i]:
            nm = tuple(a + b for a, b in zip(rest, rm))
            if R.high_key(nm) >= key:
                raise StructuralError(f"rewrite of {m} produced non-decreasing {nm}")
            v = acc.get(nm, 0) + c * rc
            if v:
                acc[nm] = v
                if nm not in queued and _reducible_var(R, nm) is not None:
                    heapq.heappush(heap, _heap_entry(R, nm))
                    queued.add(nm)
            else:
                acc.pop(nm, None)
    return Poly(R, {m: norm(c) for m, c in acc.items() if c})


def _heap_entry(R, m):
    hd, neg = R.high_key(m)
    return ((-hd, tuple(-e for e in neg)), m)


def basis_key(R, m):
    """Ascending order on normal monomials: high part first, then low exponents."""
    return (R.high_key(m), tuple(m[i] for i in R.low))


def basis_enum(g, d):
    """Normal monomials of doubled degree ``d``, ascending."""
    if d < 0:
        raise InvalidParameter("doubled degree must be non-negative")
    R = ring(g)
    out = []
    high_degs = [R.deg2[i] for i in R.high]
    low_degs = [R.deg2[i] for i in R.low]
    for bits in itertools.product((0, 1), repeat=g):
        hd = sum(b * w for b, w in zip(bits, high_degs))
        if hd > d:
            continue
        for lows in _compositions(d - hd, low_degs):
            e = [0] * R.nvars
            for i, b in zip(R.high, bits):
                e[i] = b
            for i, x in zip(R.low, lows):
                e[i] = x
            out.append(tuple(e))
    out.sort(key=lambda m: basis_key(R, m))
    return out


def _compositions(d, weights):
    """Exponent vectors with weighted sum exactly ``d``."""
    if not weights:
        if d == 0:
            yield ()
        return
    w, rest = weights[0], weights[1:]
    for e in range(d // w + 1):
        for tail in _compositions(d - e * w, rest):
            yield (e,) + tail


def character_match(g, dmax):
    """Compare basis counts with ch_A0 coefficients for degrees 0..dmax."""
    ch = ch_quotient(g, trunc=dmax + 1)
    rows = []
    for d in range(dmax + 1):
        rows.append((d, len(basis_enum(g, d)), ch.coeff(d)))
    return rows


def random_normal_monomial(g, dmax, rng):
    d = rng.randint(0, dmax)
    while True:
        opts = basis_enum(g, d)
        if opts:
            return rng.choice(opts)
        d = rng.randint(0, dmax)


def random_nonzero_f0(g, rng, height=9):
    while True:
        f0 = [Fraction(rng.randint(-height, height), rng.randint(1, height)) for _ in range(2 * g + 1)]
        if any(f0):
            return f0


def gr_compatibility_check(g, f0, doubled_degree_max, pairs=50, seed=0):
    """Top-degree part of NF_f0(x y) against NF_0(x y) on random pairs."""
    rng = random.Random(seed)
    R = ring(g)
    sys_f = build_reduction_system(g, f0)
    sys_0 = build_reduction_system(g)
    results = []
    for _ in range(pairs):
        x = random_normal_monomial(g, doubled_degree_max, rng)
        y = random_normal_monomial(g, doubled_degree_max, rng)
        prod = Poly(R, {tuple(a + b for a, b in zip(x, y)): 1})
        d = prod.deg2()
        nf = normal_form(prod, sys_f)
        nf0 = normal_form(prod, sys_0)
        over = [m for m in nf.terms if R.mono_deg2(m) > d]
        ok = not over and nf.component(d) == nf0
        results.append({
            "x": Poly(R, {x: 1}).to_text(),
            "y": Poly(R, {y: 1}).to_text(),
            "deg2": d,
            "pass": ok,
        })
    return {
        "g": g,
        "f0": [str(v) for v in _as_f0(g, f0)],
        "pairs": results,
        "pass": all(r["pass"] for r in results),
    }
