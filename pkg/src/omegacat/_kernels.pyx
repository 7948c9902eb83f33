# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled table-checking kernels; same contract as ``_kernels_py``."""


def globular(const int[:] src_k, const int[:] tgt_k, const int[:] src_l, const int[:] tgt_l, int limit):
    cdef Py_ssize_t i, s, t
    out = []
    for i in range(src_k.shape[0]):
        s = src_k[i]
        t = tgt_k[i]
        if src_l[s] != src_l[t] or tgt_l[s] != tgt_l[t]:
            out.append(i)
            if len(out) >= limit:
                break
    return out


def unit_sections(const int[:] unit_k, const int[:] src_u, const int[:] tgt_u, int limit):
    cdef Py_ssize_t i, u
    out = []
    for i in range(unit_k.shape[0]):
        u = unit_k[i]
        if src_u[u] != i or tgt_u[u] != i:
            out.append(i)
            if len(out) >= limit:
                break
    return out


def comp_domain(const int[:] table, Py_ssize_t n, const int[:] tp, const int[:] sp, int limit):
    cdef Py_ssize_t i, j, row
    cdef int ti
    cdef bint want
    out = []
    for i in range(n):
        ti = tp[i]
        row = i * n
        for j in range(n):
            want = ti == sp[j]
            if (table[row + j] >= 0) != want:
                out.append((i, j, int(want)))
                if len(out) >= limit:
                    return out
    return out


def comp_bounds_top(const int[:] table, Py_ssize_t n, const int[:] src_k, const int[:] tgt_k, int limit):
    cdef Py_ssize_t i, j, row
    cdef int r
    out = []
    for i in range(n):
        row = i * n
        for j in range(n):
            r = table[row + j]
            if r >= 0 and (src_k[r] != src_k[i] or tgt_k[r] != tgt_k[j]):
                out.append((i, j))
                if len(out) >= limit:
                    return out
    return out


def comp_bounds_low(const int[:] table, Py_ssize_t n, const int[:] src_k, const int[:] tgt_k,
                    const int[:] lower, Py_ssize_t m, int limit):
    cdef Py_ssize_t i, j, row
    cdef int r, a, b
    out = []
    for i in range(n):
        row = i * n
        for j in range(n):
            r = table[row + j]
            if r < 0:
                continue
            a = lower[src_k[i] * m + src_k[j]]
            b = lower[tgt_k[i] * m + tgt_k[j]]
            if src_k[r] != a or tgt_k[r] != b:
                out.append((i, j))
                if len(out) >= limit:
                    return out
    return out


def unit_laws(const int[:] table, Py_ssize_t n, const int[:] sp, const int[:] tp, const int[:] lift, int limit):
    cdef Py_ssize_t i
    out = []
    for i in range(n):
        if table[lift[sp[i]] * n + i] != i:
            out.append((i, 0))
        if table[i * n + lift[tp[i]]] != i:
            out.append((i, 1))
        if len(out) >= limit:
            break
    return out


cdef _partners(const int[:] table, Py_ssize_t n):
    cdef Py_ssize_t i, j, row
    left = [[] for _ in range(n)]
    right = [[] for _ in range(n)]
    for i in range(n):
        row = i * n
        for j in range(n):
            if table[row + j] >= 0:
                left[j].append(i)
                right[i].append(j)
    return left, right


def associativity(const int[:] table, Py_ssize_t n, int limit):
    cdef Py_ssize_t i, j, l
    cdef int a, b, x, y
    out = []
    left, right = _partners(table, n)
    for j in range(n):
        for i in left[j]:
            a = table[i * n + j]
            for l in right[j]:
                b = table[j * n + l]
                x = table[a * n + l] if a >= 0 else -1
                y = table[i * n + b] if b >= 0 else -1
                if x != y or x < 0:
                    out.append((i, j, l))
                    if len(out) >= limit:
                        return out
    return out


def interchange(const int[:] tp, const int[:] tn, Py_ssize_t n, int limit):
    cdef Py_ssize_t u, v, u2, v2, row
    cdef int a, uu, vv, lhs, rhs, c
    out = []
    _, right = _partners(tn, n)
    for u in range(n):
        row = u * n
        for v in range(n):
            a = tp[row + v]
            if a < 0:
                continue
            for u2 in right[u]:
                uu = tn[row + u2]
                for v2 in right[v]:
                    vv = tn[v * n + v2]
                    lhs = tp[uu * n + vv]
                    c = tp[u2 * n + v2]
                    rhs = tn[a * n + c] if c >= 0 else -1
                    if lhs != rhs or lhs < 0:
                        out.append((u, v, u2, v2))
                        if len(out) >= limit:
                            return out
    return out


def unit_functoriality(const int[:] tab_k, Py_ssize_t n, const int[:] tab_up, Py_ssize_t n_up,
                       const int[:] unit_k, int limit):
    cdef Py_ssize_t i, j, row, ui
    cdef int r
    out = []
    for i in range(n):
        row = i * n
        ui = unit_k[i] * n_up
        for j in range(n):
            r = tab_k[row + j]
            if r >= 0 and tab_up[ui + unit_k[j]] != unit_k[r]:
                out.append((i, j))
                if len(out) >= limit:
                    return out
    return out
