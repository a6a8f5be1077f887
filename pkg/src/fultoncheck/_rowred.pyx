# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled row-reduction core over F_p.

Mirrors `_rowred_py.rref_mod` exactly: reduced row echelon form with
first-nonzero pivoting. Entries must lie in [0, p) with p < 2^31 so that
products fit in a signed 64-bit integer.
"""


cdef long long _mulmod(long long a, long long b, long long p) noexcept:
    return (a * b) % p


cdef long long _powmod(long long a, long long e, long long p) noexcept:
    cdef long long acc = 1
    a %= p
    while e > 0:
        if e & 1:
            acc = (acc * a) % p
        a = (a * a) % p
        e >>= 1
    return acc


def rref_mod_inplace(long long[:, ::1] a, long long[::1] piv_out, long long p):
    """Reduce `a` to RREF in place; write pivot columns into piv_out.

    Returns the rank (number of pivots written).
    """
    cdef Py_ssize_t nrows = a.shape[0]
    cdef Py_ssize_t ncols = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, pivot
    cdef long long inv, f
    for c in range(ncols):
        pivot = -1
        for i in range(r, nrows):
            if a[i, c] != 0:
                pivot = i
                break
        if pivot < 0:
            continue
        if pivot != r:
            for j in range(ncols):
                f = a[r, j]
                a[r, j] = a[pivot, j]
                a[pivot, j] = f
        inv = _powmod(a[r, c], p - 2, p)
        if inv != 1:
            for j in range(c, ncols):
                a[r, j] = (a[r, j] * inv) % p
        for i in range(nrows):
            if i == r:
                continue
            f = a[i, c]
            if f:
                for j in range(c, ncols):
                    a[i, j] = (a[i, j] - f * a[r, j]) % p
                    if a[i, j] < 0:
                        a[i, j] += p
        piv_out[r] = c
        r += 1
        if r == nrows:
            break
    return r
