"""Independent reference computations used by the tests.

Nothing here imports hypjac; everything is plain integer counting.
"""
from fractions import Fraction
from math import comb, factorial


def count_series(parts, trunc, squarefree=()):
    """Coefficients of prod 1/(1-s^p) over parts times prod (1+s^p) over squarefree."""
    c = [0] * trunc
    c[0] = 1
    for p in parts:
        for n in range(p, trunc):
            c[n] += c[n - p]
    for p in squarefree:
        for n in range(trunc - 1, p - 1, -1):
            c[n] += c[n - p]
    return c


def free_ring_degrees(g):
    a = [2 * j + 1 for j in range(1, g + 1)]
    b = [2 * j for j in range(1, g + 1)]
    c = [2 * j for j in range(1, g + 2)]
    return a + b + c


def determinant_degrees(g):
    return [2 * j for j in range(1, 2 * g + 2)]


def ch_a(g, trunc):
    return count_series(free_ring_degrees(g), trunc)


def ch_f(g, trunc):
    return count_series(determinant_degrees(g), trunc)


def ch_a0(g, trunc):
    """Low generators free, high generators square-free."""
    return count_series(range(2, g + 2), trunc, squarefree=range(g + 2, 2 * g + 2))


def convolve(x, y, trunc):
    return [sum(x[i] * y[n - i] for i in range(n + 1)) for n in range(trunc)]


def catalan_sign(g):
    return (-1) ** g * factorial(2 * g) // (factorial(g) * factorial(g + 1))


def fundamental_dim(g, k):
    return comb(2 * g, k) - (comb(2 * g, k - 2) if k >= 2 else 0)


def laurent_gaussian(n, k):
    """[n choose k] in q as a coefficient list (exact integer polynomial division)."""
    def qint(m):
        return [1] * m

    def mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return out

    num, den = [1], [1]
    for i in range(k):
        num = mul(num, qint(n - i))
        den = mul(den, qint(i + 1))
    q = [Fraction(0)] * (len(num) - len(den) + 1)
    rem = [Fraction(v) for v in num]
    for i in range(len(q) - 1, -1, -1):
        q[i] = rem[i + len(den) - 1] / den[-1]
        for j, d in enumerate(den):
            rem[i + j] -= q[i] * d
    assert not any(rem)
    return [int(v) for v in q]
