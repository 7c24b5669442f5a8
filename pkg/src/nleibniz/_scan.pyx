# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled exhaustive identity scans; mirrors ``_scan_py`` index for index.

Callers guarantee every partial sum fits in int64 (see ``kernels``).
"""

from libc.stdlib cimport malloc, free


cdef inline void _digits(long long t, int d, int length, int* out) noexcept nogil:
    cdef int i
    for i in range(length - 1, -1, -1):
        out[i] = <int>(t % d)
        t //= d


def first_derivation_failure(const long long[::1] ops, long long nops,
                             const long long[::1] consts, int d, int n):
    cdef long long N = 1, o, t, base, w, result = -1
    cdef int i, j, k, dd = d * d
    cdef long long m, c
    cdef bint zero, bad
    for i in range(n):
        N *= d
    cdef long long* weights = <long long*>malloc(n * sizeof(long long))
    cdef int* v = <int*>malloc(n * sizeof(int))
    cdef long long* lhs = <long long*>malloc(d * sizeof(long long))
    cdef long long* rhs = <long long*>malloc(d * sizeof(long long))
    try:
        weights[n - 1] = 1
        for i in range(n - 2, -1, -1):
            weights[i] = weights[i + 1] * d
        with nogil:
            for o in range(nops):
                zero = True
                for j in range(dd):
                    if ops[o * dd + j] != 0:
                        zero = False
                        break
                if zero:
                    continue
                for t in range(N):
                    for k in range(d):
                        lhs[k] = 0
                        rhs[k] = 0
                    for j in range(d):
                        c = consts[t * d + j]
                        if c != 0:
                            for k in range(d):
                                lhs[k] += ops[o * dd + k * d + j] * c
                    _digits(t, d, n, v)
                    for i in range(n):
                        w = weights[i]
                        base = t - v[i] * w
                        for j in range(d):
                            m = ops[o * dd + j * d + v[i]]
                            if m != 0:
                                for k in range(d):
                                    rhs[k] += m * consts[(base + j * w) * d + k]
                    bad = False
                    for k in range(d):
                        if lhs[k] != rhs[k]:
                            bad = True
                            break
                    if bad:
                        result = o * N + t
                        break
                if result >= 0:
                    break
    finally:
        free(weights)
        free(v)
        free(lhs)
        free(rhs)
    return result


def first_invariance_failure(const long long[::1] ops, long long nops,
                             const long long[::1] form, int d, int order):
    cdef long long N = 1, o, t, base, wt, val, result = -1
    cdef int i, j, dd = d * d
    cdef long long m
    cdef bint zero
    for i in range(order):
        N *= d
    cdef long long* weights = <long long*>malloc(order * sizeof(long long))
    cdef int* w = <int*>malloc(order * sizeof(int))
    try:
        weights[order - 1] = 1
        for i in range(order - 2, -1, -1):
            weights[i] = weights[i + 1] * d
        with nogil:
            for o in range(nops):
                zero = True
                for j in range(dd):
                    if ops[o * dd + j] != 0:
                        zero = False
                        break
                if zero:
                    continue
                for t in range(N):
                    _digits(t, d, order, w)
                    val = 0
                    for i in range(order):
                        wt = weights[i]
                        base = t - w[i] * wt
                        for j in range(d):
                            m = ops[o * dd + j * d + w[i]]
                            if m != 0:
                                val += m * form[base + j * wt]
                    if val != 0:
                        result = o * N + t
                        break
                if result >= 0:
                    break
    finally:
        free(weights)
        free(w)
    return result


def first_symmetry_failure(const long long[::1] consts, const long long[::1] form, int d, int n):
    cdef long long Nu = 1, rest = 1, tu, tv, u1, ru, v1, rv, a, b, lhs, rhs, c, result = -1
    cdef int i, j
    for i in range(n - 1):
        Nu *= d
    for i in range(n - 2):
        rest *= d
    with nogil:
        for tu in range(Nu):
            u1 = tu // rest
            ru = tu % rest
            for tv in range(Nu):
                v1 = tv // rest
                rv = tv % rest
                a = tu * d + v1
                b = tv * d + u1
                lhs = 0
                rhs = 0
                for j in range(d):
                    c = consts[a * d + j]
                    if c != 0:
                        lhs += c * form[j * rest + rv]
                    c = consts[b * d + j]
                    if c != 0:
                        rhs += c * form[j * rest + ru]
                if lhs != rhs:
                    result = tu * Nu + tv
                    break
            if result >= 0:
                break
    return result


def first_cyclic_failure(const long long[::1] consts, int d, int n):
    cdef long long N = 1, t, s, result = -1
    cdef int i, k, p
    cdef bint bad
    for i in range(n):
        N *= d
    cdef int* v = <int*>malloc(n * sizeof(int))
    cdef long long* total = <long long*>malloc(d * sizeof(long long))
    try:
        with nogil:
            for t in range(N):
                _digits(t, d, n, v)
                for k in range(d):
                    total[k] = 0
                for i in range(n - 1):
                    # index of (v_i, v_0, .., ^v_i, .., v_{n-2}, v_{n-1})
                    s = v[i]
                    for p in range(n):
                        if p != i:
                            s = s * d + v[p]
                    for k in range(d):
                        total[k] += consts[s * d + k]
                bad = False
                for k in range(d):
                    if total[k] != 0:
                        bad = True
                        break
                if bad:
                    result = t
                    break
    finally:
        free(v)
        free(total)
    return result
