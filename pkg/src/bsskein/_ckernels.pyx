# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``_pykernels``; see that module for the code layout."""
import numpy as np

from libc.stdint cimport int32_t, int64_t, uint64_t

ZERO = -1
OUTSIDE = -2
cdef int32_t C_OUTSIDE = -2


cdef int64_t _mul(uint64_t a, uint64_t b, const unsigned char[:] cls, int n) noexcept nogil:
    cdef int shift = 4 * n
    cdef uint64_t low_mask = (<uint64_t>1 << shift) - 1
    cdef uint64_t ra = a >> shift
    cdef uint64_t lb = b >> shift
    cdef int a_start[16]
    cdef int a_endp[16]
    cdef int b_startp[16]
    cdef int b_end[16]
    cdef int xs[16]
    cdef int ys[16]
    cdef int zs[16]
    cdef int p, e, c, i, j, m = 0
    cdef uint64_t nib, horiz = 0, code
    for c in range(16):
        a_endp[c] = -1
        b_startp[c] = -1
    for p in range(n):
        nib = (a >> (4 * p)) & 15
        if nib:
            e = <int>nib - 1
            c = cls[e]
            ra |= <uint64_t>1 << c
            a_endp[c] = e
            a_start[c] = p
        nib = (b >> (4 * p)) & 15
        if nib:
            e = <int>nib - 1
            c = cls[p]
            lb |= <uint64_t>1 << c
            b_startp[c] = p
            b_end[c] = e
    if ra != lb:
        return -1
    c = 0
    while ra:
        if ra & 1:
            if a_endp[c] >= 0 and b_startp[c] >= 0:
                if a_endp[c] != b_startp[c]:
                    return -1
                xs[m] = a_start[c]; ys[m] = a_endp[c]; zs[m] = b_end[c]; m += 1
            elif a_endp[c] >= 0:
                xs[m] = a_start[c]; ys[m] = a_endp[c]; zs[m] = a_endp[c]; m += 1
            elif b_startp[c] >= 0:
                xs[m] = b_startp[c]; ys[m] = b_startp[c]; zs[m] = b_end[c]; m += 1
            else:
                horiz |= <uint64_t>1 << c
        ra >>= 1
        c += 1
    for i in range(m):
        for j in range(i + 1, m):
            if (xs[i] - xs[j]) * (ys[i] - ys[j]) < 0 and (ys[i] - ys[j]) * (zs[i] - zs[j]) < 0:
                return -1
    code = horiz << shift
    for i in range(m):
        code |= <uint64_t>(zs[i] + 1) << (4 * xs[i])
    return <int64_t>code


def mul_code(uint64_t a, uint64_t b, const unsigned char[:] cls, int n):
    return _mul(a, b, cls, n)


cdef Py_ssize_t _find(const int64_t[:] sorted_codes, int64_t key) noexcept nogil:
    cdef Py_ssize_t lo = 0, hi = sorted_codes.shape[0], mid
    while lo < hi:
        mid = (lo + hi) // 2
        if sorted_codes[mid] < key:
            lo = mid + 1
        else:
            hi = mid
    if lo < sorted_codes.shape[0] and sorted_codes[lo] == key:
        return lo
    return -1


def mul_index_table(codes, const unsigned char[:] cls, int n):
    cdef int64_t[:] cv = np.asarray(codes, dtype=np.int64)
    order = np.argsort(np.asarray(codes, dtype=np.int64), kind="stable")
    cdef int64_t[:] order_v = order.astype(np.int64)
    cdef int64_t[:] sorted_v = np.asarray(codes, dtype=np.int64)[order]
    cdef Py_ssize_t size = cv.shape[0], i, j, pos
    out = np.full((size, size), ZERO, dtype=np.int32)
    cdef int32_t[:, :] ov = out
    cdef int64_t r
    with nogil:
        for i in range(size):
            for j in range(size):
                r = _mul(<uint64_t>cv[i], <uint64_t>cv[j], cls, n)
                if r >= 0:
                    pos = _find(sorted_v, r)
                    ov[i, j] = <int32_t>order_v[pos] if pos >= 0 else C_OUTSIDE
    return out


def associativity_violations(table, int limit=10):
    cdef int32_t[:, :] t = np.ascontiguousarray(table, dtype=np.int32)
    cdef Py_ssize_t size = t.shape[0], i, j, k
    cdef int32_t ab, bc, lhs, rhs
    if (np.asarray(table) == OUTSIDE).any():
        raise ValueError("product table leaves the basis")
    found = []
    for i in range(size):
        for j in range(size):
            ab = t[i, j]
            for k in range(size):
                bc = t[j, k]
                if ab < 0 and bc < 0:
                    continue
                lhs = t[ab, k] if ab >= 0 else -1
                rhs = t[i, bc] if bc >= 0 else -1
                if lhs != rhs:
                    found.append((i, j, k))
                    if len(found) >= limit:
                        return found
    return found
