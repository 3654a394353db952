"""Pure-Python reference versions of the hot kernels.

The compiled module ``hypjac._kernels`` implements the same functions with
the same signatures; ``hypjac.kernels`` picks one at import time.
"""


def bareiss_rank(rows, ncols):
    """Rank of an integer matrix by fraction-free (Bareiss) elimination.

    ``rows`` is consumed as a list of integer lists of length ``ncols``;
    the input is not modified.
    """
    m = [list(r) for r in rows if any(r)]
    nrows = len(m)
    rank = 0
    prev = 1
    for col in range(ncols):
        if rank == nrows:
            break
        piv = -1
        for i in range(rank, nrows):
            if m[i][col]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
        prow = m[rank]
        p = prow[col]
        for i in range(rank + 1, nrows):
            row = m[i]
            a = row[col]
            if a:
                for j in range(col + 1, ncols):
                    row[j] = (p * row[j] - a * prow[j]) // prev
                row[col] = 0
            else:
                for j in range(col + 1, ncols):
                    row[j] = (p * row[j]) // prev
        prev = p
        rank += 1
    return rank


def rank_mod_p(rows, ncols, p):
    """Rank of an integer matrix reduced modulo the prime ``p``."""
    m = [[x % p for x in r] for r in rows]
    m = [r for r in m if any(r)]
    nrows = len(m)
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        piv = -1
        for i in range(rank, nrows):
            if m[i][col]:
                piv = i
                break
        if piv < 0:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        prow = m[rank]
        inv = pow(prow[col], p - 2, p)
        for j in range(col, ncols):
            prow[j] = prow[j] * inv % p
        for i in range(rank + 1, nrows):
            row = m[i]
            a = row[col]
            if a:
                for j in range(col, ncols):
                    row[j] = (row[j] - a * prow[j]) % p
        rank += 1
    return rank


def poly_mul(a, b):
    """Product of two sparse polynomials ``{exponent tuple: coeff}``."""
    if len(a) < len(b):
        a, b = b, a
    out = {}
    get = out.get
    for mb, cb in b.items():
        for ma, ca in a.items():
            m = tuple([x + y for x, y in zip(ma, mb)])
            c = get(m, 0) + ca * cb
            if c:
                out[m] = c
            else:
                out.pop(m, None)
    return out


def poly_addmul_mono(acc, p, mono, coeff):
    """In place: ``acc += coeff * mono * p``; returns the list of touched keys."""
    touched = []
    get = acc.get
    for m, c in p.items():
        k = tuple([x + y for x, y in zip(m, mono)])
        v = get(k, 0) + coeff * c
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)
        touched.append(k)
    return touched
