# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the hot kernels (see _kernels_py for semantics)."""


def bareiss_rank(rows, Py_ssize_t ncols):
    cdef list m = [list(r) for r in rows if any(r)]
    cdef Py_ssize_t nrows = len(m)
    cdef Py_ssize_t rank = 0, col, i, j, piv
    cdef list prow, row
    cdef object p, a, prev = 1
    for col in range(ncols):
        if rank == nrows:
            break
        piv = -1
        for i in range(rank, nrows):
            if (<list>m[i])[col]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
        prow = <list>m[rank]
        p = prow[col]
        for i in range(rank + 1, nrows):
            row = <list>m[i]
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


cdef long long _inv_mod(long long a, long long p):
    cdef long long r = 1, e = p - 2
    a %= p
    while e:
        if e & 1:
            r = (r * a) % p
        a = (a * a) % p
        e >>= 1
    return r


def rank_mod_p(rows, Py_ssize_t ncols, long long p):
    """``p`` must be a prime below 2**31 so products fit in 64 bits."""
    cdef list src = [r for r in rows]
    cdef Py_ssize_t nrows = len(src), rank = 0, col, i, j, piv
    cdef long long inv, a, x
    if nrows == 0 or ncols == 0:
        return 0
    import array
    buf = array.array("q", [0]) * (nrows * ncols)
    cdef long long[:, :] m = memoryview(buf).cast("B").cast("q", [nrows, ncols])
    for i in range(nrows):
        row = src[i]
        for j in range(ncols):
            m[i, j] = row[j] % p
    for col in range(ncols):
        if rank == nrows:
            break
        piv = -1
        for i in range(rank, nrows):
            if m[i, col]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(ncols):
                x = m[rank, j]
                m[rank, j] = m[piv, j]
                m[piv, j] = x
        inv = _inv_mod(m[rank, col], p)
        for j in range(col, ncols):
            m[rank, j] = (m[rank, j] * inv) % p
        for i in range(rank + 1, nrows):
            a = m[i, col]
            if a:
                for j in range(col, ncols):
                    x = (m[i, j] - a * m[rank, j]) % p
                    if x < 0:
                        x += p
                    m[i, j] = x
        rank += 1
    return rank


cdef inline tuple _add_exps(tuple x, tuple y):
    cdef Py_ssize_t n = len(x), i
    cdef list out = [0] * n
    for i in range(n):
        out[i] = <long>x[i] + <long>y[i]
    return tuple(out)


def poly_mul(dict a, dict b):
    if len(a) < len(b):
        a, b = b, a
    cdef dict out = {}
    cdef tuple ma, mb, m
    cdef object ca, cb, c
    for mb, cb in b.items():
        for ma, ca in a.items():
            m = _add_exps(ma, mb)
            c = out.get(m, 0) + ca * cb
            if c:
                out[m] = c
            else:
                out.pop(m, None)
    return out


def poly_addmul_mono(dict acc, dict p, tuple mono, object coeff):
    cdef list touched = []
    cdef tuple m, k
    cdef object c, v
    for m, c in p.items():
        k = _add_exps(m, mono)
        v = acc.get(k, 0) + coeff * c
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)
        touched.append(k)
    return touched
