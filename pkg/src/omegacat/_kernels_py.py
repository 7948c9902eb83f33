"""Pure-Python table-checking kernels.

Every function takes flat integer arrays (``array('i')`` or lists). A
composition table for n cells is a flat array of length n*n holding the
index of ``i ∘ j`` at ``i*n + j`` or -1 when undefined. Each function returns
at most ``limit`` violations.
"""


def globular(src_k, tgt_k, src_l, tgt_l, limit):
    out = []
    for i in range(len(src_k)):
        s = src_k[i]
        t = tgt_k[i]
        if src_l[s] != src_l[t] or tgt_l[s] != tgt_l[t]:
            out.append(i)
            if len(out) >= limit:
                break
    return out


def unit_sections(unit_k, src_u, tgt_u, limit):
    out = []
    for i in range(len(unit_k)):
        u = unit_k[i]
        if src_u[u] != i or tgt_u[u] != i:
            out.append(i)
            if len(out) >= limit:
                break
    return out


def comp_domain(table, n, tp, sp, limit):
    """(i, j, expected) where definedness disagrees with TGT_p i == SRC_p j."""
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


def comp_bounds_top(table, n, src_k, tgt_k, limit):
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


def comp_bounds_low(table, n, src_k, tgt_k, lower, m, limit):
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


def unit_laws(table, n, sp, tp, lift, limit):
    """(i, side): side 0 for the left unit law, 1 for the right one."""
    out = []
    for i in range(n):
        if table[lift[sp[i]] * n + i] != i:
            out.append((i, 0))
        if table[i * n + lift[tp[i]]] != i:
            out.append((i, 1))
        if len(out) >= limit:
            break
    return out


def _partners(table, n):
    left = [[] for _ in range(n)]
    right = [[] for _ in range(n)]
    for i in range(n):
        row = i * n
        for j in range(n):
            if table[row + j] >= 0:
                left[j].append(i)
                right[i].append(j)
    return left, right


def associativity(table, n, limit):
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


def interchange(tp, tn, n, limit):
    """(u ∘n u') ∘p (v ∘n v') = (u ∘p v) ∘n (u' ∘p v') with tp, tn the ∘p, ∘n tables."""
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


def unit_functoriality(tab_k, n, tab_up, n_up, unit_k, limit):
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
