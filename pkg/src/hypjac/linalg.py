"""Exact linear algebra over the rationals.

Ranks go through the fraction-free kernel on integer-scaled rows; solving
and complements use plain Gauss-Jordan over ``Fraction``.
"""
from fractions import Fraction
from math import lcm

from . import kernels

# Primes below 2**31 for the optional modular pre-pass.
MODULAR_PRIMES = (2147483629, 2147483587)


def integer_rows(rows):
    """Scale each rational row by the lcm of its denominators."""
    out = []
    for row in rows:
        den = 1
        for x in row:
            if isinstance(x, Fraction) and x.denominator != 1:
                den = lcm(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def rank(rows, ncols=None):
    rows = list(rows)
    if not rows:
        return 0
    if ncols is None:
        ncols = len(rows[0])
    return kernels.bareiss_rank(integer_rows(rows), ncols)


def rank_modular(rows, ncols=None, p=MODULAR_PRIMES[0]):
    """Rank modulo ``p``; a lower bound for the exact rank (equal for almost all p)."""
    rows = list(rows)
    if not rows:
        return 0
    if ncols is None:
        ncols = len(rows[0])
    return kernels.rank_mod_p(integer_rows(rows), ncols, p)


def rref(rows, ncols, col_order=None):
    """Reduced row echelon form.

    Pivot columns are searched in ``col_order`` (default left to right), so
    the caller controls which columns end up as pivots.  Returns
    ``(rows, pivots)`` with one pivot column per returned row.
    """
    m = [[Fraction(x) for x in r] for r in rows]
    order = list(range(ncols)) if col_order is None else list(col_order)
    pivots = []
    r = 0
    for col in order:
        piv = None
        for i in range(r, len(m)):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        prow = m[r]
        inv = 1 / prow[col]
        for j in range(ncols):
            if prow[j]:
                prow[j] *= inv
        for i in range(len(m)):
            if i != r and m[i][col]:
                a = m[i][col]
                row = m[i]
                for j in range(ncols):
                    if prow[j]:
                        row[j] -= a * prow[j]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def solve(matrix, rhs):
    """One solution of ``matrix @ x == rhs`` or ``None`` when inconsistent.

    Free variables are set to zero, so among all solutions this returns the
    one supported on the leftmost pivot columns.
    """
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    aug = [list(matrix[i]) + [rhs[i]] for i in range(nrows)]
    red, pivots = rref(aug, ncols + 1, col_order=range(ncols + 1))
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        if p == ncols:
            return None
        x[p] = row[ncols]
    return x


def nullspace(rows, ncols):
    """Basis of the right kernel, one vector per free column."""
    red, pivots = rref(rows, ncols)
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis
