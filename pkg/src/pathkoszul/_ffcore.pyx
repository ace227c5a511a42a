# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled mod-p kernels: row reduction and matrix product.

Matrices are flat row-major ``array('q')`` buffers with entries already
reduced into [0, p).  The caller guarantees p < 2**31, so products of two
entries fit in a signed 64-bit integer.
"""

from cpython cimport array
import array


cdef long long _modinv(long long a, long long p):
    # Fermat inverse; p prime, 0 < a < p.
    cdef long long result = 1
    cdef long long base = a
    cdef long long e = p - 2
    while e:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


def rref_mod_p(long long[::1] data, Py_ssize_t nrows, Py_ssize_t ncols, long long p):
    """Reduce the flat matrix to RREF in place; return the pivot columns."""
    cdef Py_ssize_t r = 0, c, i, j, pr
    cdef long long pv, inv, fct, x
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        pr = -1
        for i in range(r, nrows):
            if data[i * ncols + c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            # columns left of c are zero in rows >= r
            for j in range(c, ncols):
                x = data[r * ncols + j]
                data[r * ncols + j] = data[pr * ncols + j]
                data[pr * ncols + j] = x
        pv = data[r * ncols + c]
        if pv != 1:
            inv = _modinv(pv, p)
            for j in range(c, ncols):
                if data[r * ncols + j]:
                    data[r * ncols + j] = data[r * ncols + j] * inv % p
        for i in range(nrows):
            if i == r:
                continue
            fct = data[i * ncols + c]
            if fct:
                for j in range(c, ncols):
                    x = data[r * ncols + j]
                    if x:
                        x = (data[i * ncols + j] - fct * x) % p
                        if x < 0:
                            x += p
                        data[i * ncols + j] = x
        pivots.append(c)
        r += 1
    return pivots


def mat_mul_mod_p(long long[::1] a, long long[::1] b,
                  Py_ssize_t m, Py_ssize_t k, Py_ssize_t n, long long p):
    """Return the m*n flat product of an m*k and a k*n flat matrix mod p."""
    cdef array.array out = array.array('q', bytes(8 * m * n))
    cdef long long[::1] c = out
    cdef Py_ssize_t i, j, t
    cdef long long aval
    for i in range(m):
        for t in range(k):
            aval = a[i * k + t]
            if aval:
                for j in range(n):
                    if b[t * n + j]:
                        c[i * n + j] = (c[i * n + j] + aval * b[t * n + j]) % p
    return out
