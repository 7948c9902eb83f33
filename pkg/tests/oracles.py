"""Brute-force oracles that share no code with the checkers they test."""
from __future__ import annotations

import itertools
from collections import defaultdict


def axiom_violations(C) -> set[str]:
    """Names of violated axioms, found by scanning the raw tables."""
    T = C.tables()
    src, tgt, unit, comp = T["src"], T["tgt"], T["unit"], T["comp"]
    by_dim = defaultdict(list)
    for c in T["cells"]:
        by_dim[c.dim].append(c)
    cap = C.cap
    bad: set[str] = set()

    def down(c, p, table):
        while c.dim > p:
            c = table[c]
        return c

    def up(c, k):
        while c.dim < k:
            c = unit[c]
        return c

    for k in range(2, cap + 1):
        for c in by_dim[k]:
            if src[src[c]] != src[tgt[c]] or tgt[src[c]] != tgt[tgt[c]]:
                bad.add("globularity")
    for k in range(cap):
        for c in by_dim[k]:
            if src[unit[c]] != c or tgt[unit[c]] != c:
                bad.add("unit-section")
        if len({unit[c] for c in by_dim[k]}) != len(by_dim[k]):
            bad.add("unit-injective")
    for k in range(1, cap + 1):
        cells = by_dim[k]
        for p in range(k):
            ok = lambda u, v: down(u, p, tgt) == down(v, p, src)  # noqa: E731
            for u, v in itertools.product(cells, cells):
                if ok(u, v) and (p, u, v) not in comp:
                    bad.add("composition-missing")
                if not ok(u, v) and (p, u, v) in comp:
                    bad.add("composition-not-composable")
            for (q, u, v), r in comp.items():
                if q != p or u.dim != k:
                    continue
                if p == k - 1:
                    want = (src[u], tgt[v])
                else:
                    want = (comp.get((p, src[u], src[v])), comp.get((p, tgt[u], tgt[v])))
                if (src[r], tgt[r]) != want:
                    bad.add("composite-boundary")
            for u in cells:
                if comp.get((p, up(down(u, p, src), k), u)) != u:
                    bad.add("left-unit")
                if comp.get((p, u, up(down(u, p, tgt), k))) != u:
                    bad.add("right-unit")
            for u, v, w in itertools.product(cells, repeat=3):
                uv, vw = comp.get((p, u, v)), comp.get((p, v, w))
                if uv is None or vw is None:
                    continue
                left, right = comp.get((p, uv, w)), comp.get((p, u, vw))
                if left is None or left != right:
                    bad.add("associativity")
            for q in range(p + 1, k):
                for u, u2, v, v2 in itertools.product(cells, repeat=4):
                    a, b = comp.get((q, u, u2)), comp.get((q, v, v2))
                    c, d = comp.get((p, u, v)), comp.get((p, u2, v2))
                    if None in (a, b, c):
                        continue
                    left, right = comp.get((p, a, b)), comp.get((q, c, d))
                    if left is None or left != right:
                        bad.add("interchange")
    for k in range(1, cap):
        for p in range(k):
            for (q, u, v), r in comp.items():
                if q == p and u.dim == k and comp.get((p, unit[u], unit[v])) != unit[r]:
                    bad.add("unit-functoriality")
    return bad


def functor_violations(f) -> bool:
    """True when f fails to commute with some source, target, unit or composite."""
    A, B = f.dom, f.cod
    top = max(A.cap, B.cap)
    for k in range(top + 1):
        for c in A.cells(k):
            if k > 0 and (f(A.src(c)) != B.src(f(c)) or f(A.tgt(c)) != B.tgt(f(c))):
                return True
            if f(A.unit(c)) != B.unit(f(c)):
                return True
            for p in range(k):
                for d in A.cells(k):
                    if A.composable(c, d, p) and f(A.comp(c, d, p)) != B.comp(f(c), f(d), p):
                        return True
    return False


def reachable(C, x, y) -> bool:
    """Some 1-cell x → y exists (0-cells only)."""
    return any(C.src(u) == x and C.tgt(u) == y for u in C.cells(1))


def strict_iso_classes(C) -> list[set]:
    """Objects of a 1-category grouped by strict isomorphism."""
    objs = list(C.cells(0))
    iso = {o: {o} for o in objs}
    for u in C.cells(1):
        for v in C.cells(1):
            a, b = C.src(u), C.tgt(u)
            if C.src(v) == b and C.tgt(v) == a and C.comp(u, v, 0) == C.unit(a) and C.comp(v, u, 0) == C.unit(b):
                iso[a].add(b)
    classes: list[set] = []
    for o in objs:
        for cl in classes:
            if o in cl:
                break
        else:
            classes.append(set(iso[o]))
    return classes


def naive_equiv(C, x, y, memo=None) -> bool:
    """x ≋ y straight from the definition; equality at and above the cap."""
    if memo is None:
        memo = {}
    if x.dim >= C.cap:
        return x == y
    key = (x, y)
    if key in memo:
        return memo[key]
    memo[key] = False
    n = x.dim
    ups = C.cells(n + 1)
    ok = any(
        naive_equiv(C, C.comp(u, v, n), C.unit(x), memo) and naive_equiv(C, C.comp(v, u, n), C.unit(y), memo)
        for u in ups if C.src(u) == x and C.tgt(u) == y
        for v in ups if C.src(v) == y and C.tgt(v) == x
    )
    memo[key] = ok
    return ok


def naive_weq(f, strict: bool = False) -> bool:
    """The two lifting clauses of a weak equivalence (or, strictly, a trivial fibration)."""
    X, Y = f.dom, f.cod
    memo: dict = {}
    same = (lambda p, q: p == q) if strict else (lambda p, q: naive_equiv(Y, p, q, memo))
    if not all(any(same(f(x), y) for x in X.cells(0)) for y in Y.cells(0)):
        return False
    for n in range(max(X.cap, Y.cap) + 1):
        xs = X.cells(n)
        for x in xs:
            for x2 in xs:
                if n > 0 and not X.parallel(x, x2):
                    continue
                for v in Y.cells(n + 1):
                    if Y.src(v) != f(x) or Y.tgt(v) != f(x2):
                        continue
                    if not any(same(f(u), v) for u in X.cells(n + 1) if X.src(u) == x and X.tgt(u) == x2):
                        return False
    return True


def naive_reversible(C, u, memo=None) -> bool:
    n = u.dim - 1
    x, y = C.src(u), C.tgt(u)
    if memo is None:
        memo = {}
    return any(
        naive_equiv(C, C.comp(u, v, n), C.unit(x), memo) and naive_equiv(C, C.comp(v, u, n), C.unit(y), memo)
        for v in C.cells(u.dim) if C.src(v) == y and C.tgt(v) == x
    )


def naive_cylinders(C, n: int, depth: int = 0) -> set:
    """Every n-cylinder as nested tuples (top, bottom, flat, sharp, shift) or (top, bottom, principal)."""
    memo: dict = {}
    rev = {c for k in range(1, C.cap + 2) for c in C.cells(k) if naive_reversible(C, c, memo)}

    def between(n, d, x, y):
        if n == 0:
            return [(x, y, p) for p in C.cells(d + 1) if p in rev and C.src(p) == x and C.tgt(p) == y]
        out = []
        sx, sy, tx, ty = C.src_n(x, d), C.src_n(y, d), C.tgt_n(x, d), C.tgt_n(y, d)
        for fl in C.cells(d + 1):
            if fl not in rev or C.src(fl) != sx or C.tgt(fl) != sy:
                continue
            for sh in C.cells(d + 1):
                if sh not in rev or C.src(sh) != tx or C.tgt(sh) != ty:
                    continue
                for S in between(n - 1, d + 1, C.comp(x, sh, d), C.comp(fl, y, d)):
                    out.append((x, y, fl, sh, S))
        return out

    cells = C.cells(n + depth)
    return {U for x in cells for y in cells for U in between(n, depth, x, y)}


def as_tuple(U):
    """A Cylinder in the nested tuple form used by naive_cylinders."""
    if U.dim == 0:
        return (U.top, U.bottom, U.principal)
    return (U.top, U.bottom, U.flat, U.sharp, as_tuple(U.shift))
