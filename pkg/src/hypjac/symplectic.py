"""Exterior algebra of the 2g-dimensional symplectic space V.

Basis order is v_1..v_g, xi_1..xi_g with v_i o xi_i = 1.  Wedge monomials
are ascending index tuples.  W^k = Lambda^k V / (omega ^ Lambda^(k-2) V) is
represented by a complement of monomials fixed by row reduction.
"""
import itertools
import random
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .errors import InvalidParameter, StructuralError, WindowTooSmall
from .linalg import rank, rref
from .parallel import pmap
from .qseries import QSeries, ch_quotient, w_character


class SympSpace:
    def __init__(self, g):
        if g < 1:
            raise InvalidParameter("genus must be >= 1")
        self.g = g
        self.dim = 2 * g
        self.labels = [f"v{i}" for i in range(1, g + 1)] + [f"xi{i}" for i in range(1, g + 1)]
        self.deg2 = [-(2 * i - 1) for i in range(1, g + 1)] + [2 * i - 1 for i in range(1, g + 1)]

    def v(self, i):
        return i - 1

    def xi(self, i):
        return self.g + i - 1

    def pair(self, a, b):
        """a o b on basis indices."""
        g = self.g
        if a < g and b == a + g:
            return 1
        if b < g and a == b + g:
            return -1
        return 0

    def pair_vectors(self, x, y):
        g = self.g
        return sum(x[i] * y[i + g] - x[i + g] * y[i] for i in range(g))

    def mono_deg2(self, S):
        return sum(self.deg2[i] for i in S)

    def monomials(self, k, d=None):
        if k < 0 or k > self.dim:
            return []
        out = list(itertools.combinations(range(self.dim), k))
        if d is not None:
            out = [S for S in out if self.mono_deg2(S) == d]
        return out

    def omega(self):
        return {(self.v(i), self.xi(i)): 1 for i in range(1, self.g + 1)}

    def mono_text(self, S):
        return "^".join(self.labels[i] for i in S) or "1"


@lru_cache(maxsize=None)
def space(g):
    return SympSpace(g)


def wedge_mono(S, T):
    """S ^ T for ascending tuples: (sign, merged) or None if they overlap."""
    if set(S) & set(T):
        return None
    inv = sum(1 for a in S for b in T if a > b)
    return (-1 if inv % 2 else 1), tuple(sorted(S + T))


def wedge(x, y):
    out = {}
    for S, a in x.items():
        for T, b in y.items():
            w = wedge_mono(S, T)
            if w:
                sign, U = w
                out[U] = out.get(U, 0) + sign * a * b
    return {U: c for U, c in out.items() if c}


def wedge_vectors(vectors, dim):
    """gamma_1 ^ ... ^ gamma_k as a coefficient dict (k x k minors)."""
    k = len(vectors)
    out = {}
    for S in itertools.combinations(range(dim), k):
        m = [[Fraction(vec[i]) for vec in vectors] for i in S]
        det = _det(m)
        if det:
            out[S] = det
    return out


def _det(m):
    n = len(m)
    m = [row[:] for row in m]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] / m[c][c]
                for j in range(c, n):
                    m[r][j] -= f * m[c][j]
    return det


def phi_k(x, g):
    """Contraction Lambda^k -> Lambda^(k-2) by the symplectic pairing."""
    V = space(g)
    out = {}
    for S, c in x.items():
        k = len(S)
        for i in range(k):
            for j in range(i + 1, k):
                p = V.pair(S[i], S[j])
                if p:
                    # positions are 1-based in the sign
                    sign = -1 if (i + j + 1) % 2 else 1
                    rest = S[:i] + S[i + 1:j] + S[j + 1:]
                    out[rest] = out.get(rest, 0) + sign * p * c
    return {U: v for U, v in out.items() if v}


def _matrix(src, tgt, image):
    col = {T: i for i, T in enumerate(tgt)}
    rows = []
    for S in src:
        row = [0] * len(tgt)
        for T, c in image(S).items():
            row[col[T]] += c
        rows.append(row)
    return rows


def phi_rank(g, k):
    V = space(g)
    src, tgt = V.monomials(k), V.monomials(k - 2)
    if not src or not tgt:
        return 0
    return rank(_matrix(src, tgt, lambda S: phi_k({S: 1}, g)), len(tgt))


def ker_phi_dim(g, k):
    return comb(2 * g, k) - phi_rank(g, k)


def omega_rank(g, k):
    """Rank of omega ^ : Lambda^k -> Lambda^(k+2)."""
    V = space(g)
    src, tgt = V.monomials(k), V.monomials(k + 2)
    if not src or not tgt:
        return 0
    om = V.omega()
    return rank(_matrix(src, tgt, lambda S: wedge(om, {S: 1})), len(tgt))


class WQuotient:
    """W^k with a fixed monomial complement, reduced degree by degree.

    The omega-image is row reduced with pivots searched first among
    monomials divisible by v_g ^ xi_g, so those are eliminated when possible.
    """

    def __init__(self, g, k):
        V = space(g)
        self.g, self.k = g, k
        om = V.omega()
        self.reducers = {}
        self.complement = []
        mons = V.monomials(k)
        degs = sorted({V.mono_deg2(S) for S in mons})
        top = (V.v(g), V.xi(g))
        for d in degs:
            tgt = V.monomials(k, d)
            src = V.monomials(k - 2, d)
            rows = _matrix(src, tgt, lambda S: wedge(om, {S: 1})) if src else []
            order = sorted(range(len(tgt)), key=lambda i: (not set(top) <= set(tgt[i]), i))
            red, piv = rref(rows, len(tgt), col_order=order) if rows else ([], [])
            for row, p in zip(red, piv):
                self.reducers[tgt[p]] = {tgt[j]: c for j, c in enumerate(row) if c and j != p}
            pivset = set(piv)
            self.complement.extend(tgt[i] for i in range(len(tgt)) if i not in pivset)
        self.index = {S: i for i, S in enumerate(self.complement)}

    @property
    def dim(self):
        return len(self.complement)

    def reduce(self, x):
        """Class of x in complement coordinates (a dict over complement monomials)."""
        out = {}
        for S, c in x.items():
            if S in self.reducers:
                for T, r in self.reducers[S].items():
                    out[T] = out.get(T, 0) - c * r
            else:
                out[S] = out.get(S, 0) + c
        return {S: v for S, v in out.items() if v}

    def character(self, trunc):
        V = space(self.g)
        c = {}
        for S in self.complement:
            d = V.mono_deg2(S)
            c[d] = c.get(d, 0) + 1
        return QSeries(c, trunc)


@lru_cache(maxsize=None)
def w_quotient(g, k):
    return WQuotient(g, k)


def wk_dims_and_characters(g, k, trunc=40):
    if k < 0 or k > 2 * g:
        raise InvalidParameter(f"k must lie in 0..{2 * g}")
    dim = comb(2 * g, k) - omega_rank(g, k - 2) if k >= 2 else comb(2 * g, k)
    W = w_quotient(g, k)
    if W.dim != dim:
        raise StructuralError(f"complement size {W.dim} disagrees with rank count {dim}")
    ch = W.character(trunc)
    report = {"g": g, "k": k, "dim": dim, "formula_dim": comb(2 * g, k) - (comb(2 * g, k - 2) if k >= 2 else 0)}
    if k <= g:
        report["character_matches"] = ch == w_character(g, k, trunc)
    report["dim_matches"] = dim == report["formula_dim"]
    return dim, ch, report


# --- isotropic frames ---

def _transvection(V, u, x):
    c = V.pair_vectors(u, x)
    return [a + c * b for a, b in zip(x, u)]


class _Span:
    """Incrementally grown row-echelon basis over Q."""

    def __init__(self):
        self.rows = {}

    def add(self, vec):
        vec = {k: Fraction(v) for k, v in vec.items() if v}
        for p in sorted(self.rows):
            if p in vec:
                f = vec[p]
                for k, v in self.rows[p].items():
                    vec[k] = vec.get(k, 0) - f * v
                    if not vec[k]:
                        del vec[k]
        if not vec:
            return False
        p = min(vec)
        inv = 1 / vec[p]
        self.rows[p] = {k: v * inv for k, v in vec.items()}
        return True

    @property
    def dim(self):
        return len(self.rows)


def isotropic_frames_coordinate(g, k):
    """All k-subsets of basis vectors with no v_i, xi_i pair."""
    V = space(g)
    for S in itertools.combinations(range(V.dim), k):
        if all(V.pair(a, b) == 0 for a in S for b in S):
            yield S


def isotropic_span_check(g, k, seed=0, budget_factor=10, height=3):
    """Span of isotropic decomposable k-vectors against Ker phi_k."""
    if k > g:
        raise InvalidParameter("the isotropic span check covers k <= g")
    V = space(g)
    target = ker_phi_dim(g, k)
    span = _Span()
    inside = True

    def offer(vectors):
        nonlocal inside
        w = wedge_vectors(vectors, V.dim)
        if phi_k(w, g):
            inside = False
        span.add(w)

    for S in isotropic_frames_coordinate(g, k):
        vecs = [[1 if i == s else 0 for i in range(V.dim)] for s in S]
        offer(vecs)
    coordinate_dim = span.dim
    rng = random.Random(seed)
    frames = list(isotropic_frames_coordinate(g, k))
    tries = 0
    budget = budget_factor * max(target, 1)
    while span.dim < target and tries < budget:
        tries += 1
        S = rng.choice(frames)
        vecs = [[1 if i == s else 0 for i in range(V.dim)] for s in S]
        for _ in range(rng.randint(1, 3)):
            u = [rng.randint(-height, height) for _ in range(V.dim)]
            vecs = [_transvection(V, u, x) for x in vecs]
        offer(vecs)
    if not inside:
        status = "fail"
    elif span.dim == target:
        status = "pass"
    else:
        status = "inconclusive"
    return {
        "g": g,
        "k": k,
        "target_dim": target,
        "span_dim": span.dim,
        "coordinate_frames_dim": coordinate_dim,
        "random_frames": tries,
        "span_in_kernel": inside,
        "status": status,
    }


def generic_abelian_dims(g):
    """Cohomology dimensions of J - Theta for a generic principally polarized J."""
    defect = factorial(g) - factorial(2 * g) // (factorial(g) * factorial(g + 1))
    dims = []
    for k in range(0, 2 * g + 1):
        if k < g:
            dims.append(comb(2 * g, k) - (comb(2 * g, k - 2) if k >= 2 else 0))
        elif k == g:
            dims.append(comb(2 * g, g) - (comb(2 * g, g - 2) if g >= 2 else 0) + defect)
        else:
            dims.append(0)
    wg = comb(2 * g, g) - (comb(2 * g, g - 2) if g >= 2 else 0)
    return {"g": g, "dims": dims, "hyperelliptic_wg": wg, "defect": defect}


# --- Koszul model ---

def d_monomials_upto(g, n):
    """Exponent vectors of D-monomials with doubled degree exactly n."""
    weights = [2 * j - 1 for j in range(1, g + 1)]

    def rec(rem, i):
        if i == g:
            if rem == 0:
                yield ()
            return
        for e in range(rem // weights[i] + 1):
            for tail in rec(rem - e * weights[i], i + 1):
                yield (e,) + tail

    return list(rec(n, 0)) if n >= 0 else []


class KoszulComplex:
    """D (x) W^k with d(P (x) w) = sum_i Delta_i P (x) [v_i ^ w]."""

    def __init__(self, g):
        self.g = g
        self.V = space(g)
        self.W = [w_quotient(g, k) for k in range(g + 1)]

    def basis(self, k, n):
        out = []
        for S in self.W[k].complement:
            for mu in d_monomials_upto(self.g, n - self.V.mono_deg2(S)):
                out.append((mu, S))
        return out

    def image(self, k, mu, S):
        out = {}
        for i in range(1, self.g + 1):
            w = wedge_mono((self.V.v(i),), S)
            if not w:
                continue
            sign, T = w
            nu = tuple(e + (1 if j == i - 1 else 0) for j, e in enumerate(mu))
            for U, c in self.W[k + 1].reduce({T: sign}).items():
                key = (nu, U)
                out[key] = out.get(key, 0) + c
        return {key: c for key, c in out.items() if c}

    def matrix(self, k, n):
        src = self.basis(k, n)
        tgt = self.basis(k + 1, n)
        col = {b: i for i, b in enumerate(tgt)}
        rows = []
        for mu, S in src:
            row = [0] * len(tgt)
            for key, c in self.image(k, mu, S).items():
                row[col[key]] += c
            rows.append(row)
        return rows, src, tgt

    def well_defined(self):
        """d maps omega ^ Lambda^(k-2) into omega ^ Lambda^(k-1)."""
        om = self.V.omega()
        for k in range(2, self.g):
            for S in self.V.monomials(k - 2):
                x = wedge(om, {S: 1})
                for i in range(1, self.g + 1):
                    y = wedge({(self.V.v(i),): 1}, x)
                    if self.W[k + 1].reduce(y):
                        return False
        return True


def _compose_zero(a, b):
    """a @ b == 0 for row-major integer/Fraction matrices."""
    if not a or not b:
        return True
    ncols = len(b[0])
    for row in a:
        acc = [0] * ncols
        for j, x in enumerate(row):
            if x:
                for c, y in enumerate(b[j]):
                    if y:
                        acc[c] += x * y
        if any(acc):
            return False
    return True


def _rank_cell(args):
    rows, ncols = args
    return rank(rows, ncols) if rows and ncols else 0


def koszul_check(g, window=None):
    """Per-degree d^2 = 0, exactness below k = g and the cokernel character."""
    lo_need = -g * g
    if window is None:
        window = (lo_need, lo_need + 24)
    lo, hi = window
    if lo > lo_need or hi < lo:
        raise WindowTooSmall((lo_need, max(hi, lo_need)), (lo, hi))
    K = KoszulComplex(g)
    ch = ch_quotient(g, trunc=hi + g * g + 1)
    mats = {}
    for n in range(lo, hi + 1):
        for k in range(g):
            mats[(k, n)] = K.matrix(k, n)
    keys = list(mats)
    ranks = dict(zip(keys, pmap(_rank_cell, [(mats[x][0], len(mats[x][2])) for x in keys])))
    rows = []
    d_squared = True
    exact = True
    coker_ok = True
    for n in range(lo, hi + 1):
        for k in range(g - 1):
            if not _compose_zero(mats[(k, n)][0], mats[(k + 1, n)][0]):
                d_squared = False
        for k in range(g + 1):
            dim = len(K.basis(k, n))
            r_out = ranks.get((k, n), 0) if k < g else 0
            r_in = ranks.get((k - 1, n), 0) if k > 0 else 0
            h = dim - r_out - r_in
            entry = {"k": k, "deg2": n, "dim": dim, "rank_out": r_out, "rank_in": r_in, "homology": h}
            if k < g:
                exact = exact and h == 0
            else:
                want = ch.coeff(n + g * g)
                entry["expected"] = want
                coker_ok = coker_ok and h == want
            rows.append(entry)
    coker = QSeries(
        {r["deg2"]: r["homology"] for r in rows if r["k"] == g}, trunc=hi + 1, floor=min(lo, -128)
    )
    return {
        "g": g,
        "window": [lo, hi],
        "well_defined": K.well_defined(),
        "d_squared_zero": d_squared,
        "exact_below_top": exact,
        "cokernel_matches": coker_ok,
        "cokernel_character": coker,
        "rows": rows,
        "pass": d_squared and exact and coker_ok and K.well_defined(),
    }
