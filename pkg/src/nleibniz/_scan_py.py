"""Pure-Python exhaustive identity scans over integer structure constants.

Reference implementation of the compiled ``_scan`` extension; the two must
return identical indices.  Inputs are flat sequences of Python ints:

* ``consts[t*d + k]``: coefficient k of the bracket on basis n-tuple t;
* ``form[t]``: S on basis (n-1)-tuple t;
* ``ops[o*d*d + k*d + l]``: entry (k, l) of operator o (column convention).

Tuples are flattened lexicographically (first index most significant).
Every function returns the flat index of the first failing tuple, or -1.
"""


def _columns(M, d):
    # column l of M as sparse (row, value) pairs
    return [[(j, M[j * d + l]) for j in range(d) if M[j * d + l]] for l in range(d)]


def _digits(t, d, length):
    out = [0] * length
    for i in range(length - 1, -1, -1):
        t, out[i] = divmod(t, d)
    return out


def first_derivation_failure(ops, nops, consts, d, n):
    """First (o, v) with ``M_o [v] != sum_i [v_1, .., M_o v_i, .., v_n]``."""
    N = d ** n
    dd = d * d
    weights = [d ** (n - 1 - i) for i in range(n)]
    nz = [[(k, consts[t * d + k]) for k in range(d) if consts[t * d + k]] for t in range(N)]
    for o in range(nops):
        M = ops[o * dd:(o + 1) * dd]
        if not any(M):
            continue
        cols = _columns(M, d)
        for t in range(N):
            lhs = [0] * d
            for j, c in nz[t]:
                for k, m in cols[j]:
                    lhs[k] += m * c
            rhs = [0] * d
            v = _digits(t, d, n)
            for i in range(n):
                w = weights[i]
                base = t - v[i] * w
                for j, m in cols[v[i]]:
                    for k, c in nz[base + j * w]:
                        rhs[k] += m * c
            if lhs != rhs:
                return o * N + t
    return -1


def first_invariance_failure(ops, nops, form, d, order):
    """First (o, w) with ``sum_i S(w_1, .., M_o w_i, .., w_order) != 0``."""
    N = d ** order
    dd = d * d
    weights = [d ** (order - 1 - i) for i in range(order)]
    for o in range(nops):
        M = ops[o * dd:(o + 1) * dd]
        if not any(M):
            continue
        cols = _columns(M, d)
        for t in range(N):
            w = _digits(t, d, order)
            val = 0
            for i in range(order):
                wt = weights[i]
                base = t - w[i] * wt
                for j, m in cols[w[i]]:
                    val += m * form[base + j * wt]
            if val:
                return o * N + t
    return -1


def first_symmetry_failure(consts, form, d, n):
    """First (u, v) with ``S([u, v_1], v_2, ..) != S([v, u_1], u_2, ..)``."""
    Nu = d ** (n - 1)
    rest = d ** (n - 2)
    for tu in range(Nu):
        u1, ru = divmod(tu, rest)
        for tv in range(Nu):
            v1, rv = divmod(tv, rest)
            a = tu * d + v1
            b = tv * d + u1
            lhs = 0
            rhs = 0
            for j in range(d):
                c = consts[a * d + j]
                if c:
                    lhs += c * form[j * rest + rv]
                c = consts[b * d + j]
                if c:
                    rhs += c * form[j * rest + ru]
            if lhs != rhs:
                return tu * Nu + tv
    return -1


def first_cyclic_failure(consts, d, n):
    """First v with ``sum_{i<n} [v_i, v_1, .., ^v_i, .., v_{n-1}, v_n] != 0``."""
    N = d ** n
    for t in range(N):
        v = _digits(t, d, n)
        total = [0] * d
        for i in range(n - 1):
            perm = [v[i]] + v[:i] + v[i + 1:]
            s = 0
            for x in perm:
                s = s * d + x
            for k in range(d):
                total[k] += consts[s * d + k]
        if any(total):
            return t
    return -1
