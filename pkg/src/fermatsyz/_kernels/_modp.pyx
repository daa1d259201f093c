# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled mod-p elimination kernel (hot path of every syzygy computation)."""


cdef long long _inv_mod(long long a, long long p):
    cdef long long r0 = p, r1 = a % p, s0 = 0, s1 = 1, q, t
    while r1 != 0:
        q = r0 / r1
        t = r0 - q * r1
        r0 = r1
        r1 = t
        t = s0 - q * s1
        s0 = s1
        s1 = t
    s0 %= p
    if s0 < 0:
        s0 += p
    return s0


def rref_mod_p(long long[:, ::1] a, long long p):
    """In-place RREF over F_p; entries must be reduced into [0, p).

    Pivot rule: first nonzero entry in column order.  Returns
    (rank, pivot_cols), matching fermatsyz._kernels.modp_py.rref_mod_p.
    """
    cdef Py_ssize_t rows = a.shape[0]
    cdef Py_ssize_t cols = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, pr
    cdef long long piv, inv, factor, v
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        pr = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            for j in range(c, cols):
                v = a[r, j]
                a[r, j] = a[pr, j]
                a[pr, j] = v
        piv = a[r, c]
        if piv != 1:
            inv = _inv_mod(piv, p)
            for j in range(c, cols):
                a[r, j] = a[r, j] * inv % p
        for i in range(rows):
            if i == r:
                continue
            factor = a[i, c]
            if factor != 0:
                for j in range(c, cols):
                    v = (a[i, j] - factor * a[r, j]) % p
                    if v < 0:
                        v += p
                    a[i, j] = v
        pivots.append(c)
        r += 1
    return r, pivots
