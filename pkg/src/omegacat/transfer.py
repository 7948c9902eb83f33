"""Moving between ω-categories and n-categories.

* include (𝕀) pads an n-category with units. With the implicit-unit
  convention this only raises the cap.
* truncate (𝕋) forgets cells above n.
* collapse (𝕊) quotients the n-cells by the congruence generated by the
  (n+1)-cells and keeps nothing above n.
* G = 𝕀𝕊 is an idempotent monad with unit η.
* λ_X = GΓ(η_X) relates GΓ and ΓG.
"""
from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from itertools import product as iproduct

from .core import Cell, FiniteOmegaCat, OmegaFunctor, identity, raise_cap
from .cylinders import gamma, gamma_functor
from .errors import BoundaryError, StructuralError
from .report import CheckReport


@dataclass
class CongruencePartition:
    """Classes of n-cells under the congruence generated by (n+1)-cells.

    ``zigzag[c]`` lists (cell, direction) steps from the representative to c,
    direction +1 for a cell traversed forwards and -1 backwards. Cells merged
    only by propagation along compositions have no zig-zag entry and are
    listed in ``propagated``.
    """

    level: int
    classes: list[list[Cell]]
    rep: dict[Cell, Cell]
    zigzag: dict[Cell, list[tuple[Cell, int]]] = field(default_factory=dict)
    propagated: list[tuple[Cell, Cell]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "classes": [[c.id for c in cls] for cls in self.classes],
            "propagated": [[a.id, b.id] for a, b in self.propagated],
        }


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb.id < ra.id:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def congruence(C: FiniteOmegaCat, n: int) -> CongruencePartition:
    """The congruence on n-cells generated by the (n+1)-cells."""
    cells = list(C.cells(n))
    uf = _UnionFind(cells)
    adj: dict[Cell, list[tuple[Cell, Cell, int]]] = defaultdict(list)
    if n < C.cap:
        for a in C.cells(n + 1):
            s, t = C.src(a), C.tgt(a)
            uf.union(s, t)
            adj[s].append((t, a, 1))
            adj[t].append((s, a, -1))
    # Propagate along every composition with n-cells until nothing changes.
    # Whiskering already makes the zig-zag relation a congruence, so in a
    # valid category this loop adds nothing; it is kept as a safeguard.
    propagated: list[tuple[Cell, Cell]] = []
    pairs = [(p, u, v, r) for (p, u, v), r in C._comp.items() if r.dim == n]
    changed = True
    while changed:
        changed = False
        seen: dict[tuple[int, Cell, Cell], Cell] = {}
        for p, u, v, r in pairs:
            key = (p, uf.find(u), uf.find(v))
            other = seen.setdefault(key, r)
            if uf.union(other, r):
                propagated.append((other, r))
                changed = True
    groups: dict[Cell, list[Cell]] = defaultdict(list)
    for c in cells:
        groups[uf.find(c)].append(c)
    classes = sorted((sorted(g, key=lambda c: c.id) for g in groups.values()), key=lambda g: g[0].id)
    rep = {c: g[0] for g in classes for c in g}
    zigzag: dict[Cell, list[tuple[Cell, int]]] = {}
    for g in classes:
        root = g[0]
        zigzag[root] = []
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y, a, sign in adj.get(x, ()):
                if y not in zigzag:
                    zigzag[y] = zigzag[x] + [(a, sign)]
                    queue.append(y)
    return CongruencePartition(n, classes, rep, zigzag, propagated)


def collapse(C: FiniteOmegaCat, n: int) -> FiniteOmegaCat:
    """𝕊: the n-category obtained by quotienting n-cells by (n+1)-cells."""
    return collapse_with_unit(C, n)[0]


def collapse_with_unit(C: FiniteOmegaCat, n: int) -> tuple[FiniteOmegaCat, OmegaFunctor, CongruencePartition]:
    """𝕊C together with the quotient map η : C → 𝕀𝕊C and the partition.

    Results are cached on C, so repeated calls return the same objects.
    """
    if n < 0:
        raise BoundaryError("collapse needs n >= 0")
    cache = C.__dict__.setdefault("_collapse", {})
    if n not in cache:
        cache[n] = _collapse(C, n)
    return cache[n]


def _collapse(C: FiniteOmegaCat, n: int) -> tuple[FiniteOmegaCat, OmegaFunctor, CongruencePartition]:
    part = congruence(C, n)
    cap = min(n, C.cap)
    rep = part.rep if n <= C.cap else {}

    def q(c: Cell) -> Cell:
        if c.dim < n:
            return c
        if c.dim == n:
            return rep.get(c, c)
        return Cell(c.dim, q(C.src_n(c, n)).id)

    cells = [c for k in range(cap) for c in C.cells(k)] + [g[0] for g in part.classes if cap == n]
    if cap < n:
        cells = list(C.stored())
    src, tgt, unit, comp = {}, {}, {}, {}
    for c in cells:
        if c.dim > 0:
            src[c], tgt[c] = C.src(c), C.tgt(c)
        if c.dim < cap:
            unit[c] = q(C.unit(c))
    for (p, u, v), r in C._comp.items():
        if r.dim <= cap:
            key = (p, q(u), q(v))
            got = comp.setdefault(key, q(r))
            if got != q(r):
                raise StructuralError(f"collapse: {key} has two composites {got!r}, {q(r)!r}")
    S = FiniteOmegaCat(cap, cells, src, tgt, unit, comp, name=C.name if cap == C.cap else f"𝕊{n}({C.name})")
    eta = OmegaFunctor(C, S, {c: q(c) for c in C.stored()}, name="η")
    return S, eta, part


def include(C: FiniteOmegaCat, cap: int) -> FiniteOmegaCat:
    """𝕀: regard C as a category of higher cap with units stored explicitly."""
    return raise_cap(C, cap)


def truncate(C: FiniteOmegaCat, n: int) -> FiniteOmegaCat:
    """𝕋: forget every cell above dimension n."""
    if n >= C.cap:
        return C
    cells = [c for k in range(n + 1) for c in C.cells(k)]
    src = {c: C.src(c) for c in cells if c.dim > 0}
    tgt = {c: C.tgt(c) for c in cells if c.dim > 0}
    unit = {c: C.unit(c) for c in cells if c.dim < n}
    comp = {key: r for key, r in C._comp.items() if r.dim <= n}
    return FiniteOmegaCat(n, cells, src, tgt, unit, comp, name=f"𝕋{n}({C.name})")


# -- functors --------------------------------------------------------------------

def collapse_functor(f: OmegaFunctor, n: int, S_dom: FiniteOmegaCat | None = None,
                     S_cod: FiniteOmegaCat | None = None) -> OmegaFunctor:
    """𝕊f, mapping each class to the class of the image of its representative."""
    A = S_dom if S_dom is not None else collapse(f.dom, n)
    B, eta_b, _ = collapse_with_unit(f.cod, n)
    B = S_cod if S_cod is not None else B
    return OmegaFunctor(A, B, {c: eta_b(f(c)) for c in A.stored()}, name=f"𝕊{f.name}")


def include_functor(f: OmegaFunctor, dom: FiniteOmegaCat, cod: FiniteOmegaCat) -> OmegaFunctor:
    """𝕀f between the padded categories."""
    return OmegaFunctor(dom, cod, {c: f(c) for c in dom.stored()}, name=f"𝕀{f.name}")


def truncate_functor(f: OmegaFunctor, n: int) -> OmegaFunctor:
    A, B = truncate(f.dom, n), truncate(f.cod, n)
    return OmegaFunctor(A, B, {c: f(c) for c in A.stored()}, name=f"𝕋{f.name}")


def monad_G(X: FiniteOmegaCat, n: int) -> tuple[FiniteOmegaCat, OmegaFunctor]:
    """G X = 𝕀𝕊X (cells above n implicit) and η_X."""
    S, eta, _ = collapse_with_unit(X, n)
    return S, eta


def G_functor(f: OmegaFunctor, n: int) -> OmegaFunctor:
    return collapse_functor(f, n)


def lambda_nat(X: FiniteOmegaCat, n: int) -> OmegaFunctor:
    """λ_X = GΓ(η_X) : GΓX → ΓGX."""
    GX, eta = monad_G(X, n)
    GGX = gamma(GX).category
    Geta = gamma_functor(eta, gamma(X), gamma(GX))
    # GΓGX = ΓGX, checked in lambda_checks
    lam = collapse_functor(Geta, n, S_cod=GGX)
    lam.name = "λ"
    return lam


# -- checks ----------------------------------------------------------------------

def _same(a: OmegaFunctor, b: OmegaFunctor) -> bool:
    return a.dom.equals(b.dom) and a.cod.equals(b.cod) and a.equals(b)


def transfer_identities(X: FiniteOmegaCat, n: int) -> CheckReport:
    """𝕊𝕀 = id, G(η) = id, both adjunctions' triangles, 𝕋𝕀 = id."""
    fails: list[dict] = []
    S, eta, _ = collapse_with_unit(X, n)
    top = max(X.cap, n) + 1
    # 𝕊𝕀 = id on n-categories
    IS = include(S, top)
    # below n, S is an n-category whose top cells are all units; compare at cap n
    Sn = S if S.cap >= n else include(S, n)
    if not collapse(IS, n).equals(Sn):
        fails.append({"law": "collapse-include"})
    # 𝕋𝕀 = id
    if not truncate(IS, n).equals(Sn):
        fails.append({"law": "truncate-include"})
    # G(η_X) = 1_{GX} and η_{GX} = 1_{GX}
    G_eta = collapse_functor(eta, n)
    if not _same(G_eta, identity(S)):
        fails.append({"law": "G-eta"})
    GG, eta_G, _ = collapse_with_unit(S, n)
    if not (GG.equals(S) and eta_G.equals(identity(S))):
        fails.append({"law": "eta-G"})
    # 𝕊 ⊣ 𝕀 triangles: ε_{𝕊X} ∘ 𝕊(η_X) = 1 and 𝕀(ε_A) ∘ η_{𝕀A} = 1, with ε = id
    _, eta_IS, _ = collapse_with_unit(IS, n)
    if not eta_IS.equals(OmegaFunctor(IS, S, {c: c for c in IS.stored()})):
        fails.append({"law": "triangle-S-I"})
    # 𝕀 ⊣ 𝕋 triangles: counit 𝕀𝕋X → X is the inclusion; 𝕋(ε_X) ∘ η_{𝕋X} = 1
    T = truncate(X, n)
    counit = OmegaFunctor(T, X, {c: c for c in T.stored()}, name="ε")
    if not truncate_functor(counit, n).equals(identity(T)):
        fails.append({"law": "triangle-I-T"})
    return CheckReport.collect(f"transfer-identities({X.name}, n={n})", fails)


def lambda_checks(X: FiniteOmegaCat, n: int, functors: list[OmegaFunctor] = ()) -> CheckReport:
    """Top compatibility G(Top_X) = Top_{GX} ∘ λ_X, ΓGX in the image of 𝕀, naturality."""
    fails: list[dict] = []
    GX, eta = monad_G(X, n)
    lam = lambda_nat(X, n)
    if not collapse(gamma(GX).category, n).equals(gamma(GX).category):
        fails.append({"law": "gamma-G-fixed"})
    G_top = collapse_functor(gamma(X).top, n)
    if not G_top.equals(gamma(GX).top.after(lam)):
        fails.append({"law": "top-compatibility"})
    # every cell of Γ(𝕀GX) above n is a unit
    padded = gamma(include(GX, X.cap)) if X.cap > n else None
    if padded is not None:
        for c in padded.category.stored():
            if c.dim > n and not padded.category.is_unit(c):
                fails.append({"law": "gamma-G-truncated", "cell": repr(c)})
                break
    for f in functors:
        if f.dom is not X:
            continue
        Y = f.cod
        lam_y = lambda_nat(Y, n)
        GY, _ = monad_G(Y, n)
        Gf = collapse_functor(f, n, S_dom=GX, S_cod=GY)
        left = gamma_functor(Gf, gamma(GX), gamma(GY)).after(lam)
        right = lam_y.after(collapse_functor(gamma_functor(f), n, S_cod=lam_y.dom))
        if not left.equals(right):
            fails.append({"law": "lambda-naturality", "functor": f.name})
    return CheckReport.collect(f"lambda({X.name}, n={n})", fails)


# -- the generating cofibrations after collapsing ------------------------------

def collapsed_inclusion(k: int, n: int) -> OmegaFunctor:
    """𝕊(i_k) : 𝕊∂O(k) → 𝕊O(k)."""
    from .polygraph import globe_inclusion
    return collapse_functor(globe_inclusion(k), n)


def collapsed_inclusion_report(k: int, n: int) -> CheckReport:
    """Compare 𝕊(i_k) with i_k, the collapsing map or an identity, up to isomorphism."""
    from .polygraph import collapsing_map, globe, globe_inclusion
    from .search import find_isomorphism
    f = collapsed_inclusion(k, n)
    if k <= n:
        expected, case = globe_inclusion(k), "inclusion"
    elif k == n + 1:
        expected, case = collapsing_map(n), "collapsing"
    else:
        O = globe(n)
        expected, case = identity(O), "identity"
    fails: list[dict] = []
    a = find_isomorphism(f.dom, expected.dom)
    b = find_isomorphism(f.cod, expected.cod)
    if a is None or b is None:
        fails.append({"law": "objects", "case": case})
    else:
        for c in f.dom.stored():
            if b(f(c)) != expected(a(c)):
                fails.append({"law": "square", "case": case, "cell": repr(c)})
                break
    return CheckReport.collect(f"S(i_{k}) at n={n}", fails, case=case)


# -- 1-categories -------------------------------------------------------------------

def strict_isomorphisms(C: FiniteOmegaCat) -> dict[Cell, Cell]:
    """1-cells with a strict two-sided inverse, mapped to that inverse."""
    inv = {}
    for u in C.cells(1):
        for v in C.hom(C.tgt(u), C.src(u)):
            if C.comp(u, v, 0) == C.unit(C.src(u)) and C.comp(v, u, 0) == C.unit(C.tgt(u)):
                inv[u] = v
                break
    return inv


def is_equivalence_of_categories(f: OmegaFunctor) -> bool:
    """Fully faithful and essentially surjective, for functors of 1-categories."""
    A, B = f.dom, f.cod
    if A.cap > 1 or B.cap > 1:
        raise ValueError("equivalence of categories needs 1-categories")
    for x, y in iproduct(A.cells(0), repeat=2):
        images = [f(u) for u in A.hom(x, y)]
        if len(set(images)) != len(images) or set(images) != set(B.hom(f(x), f(y))):
            return False
    isos = strict_isomorphisms(B)
    hit = {f(x) for x in A.cells(0)}
    return all(y in hit or any(B.src(u) in hit and B.tgt(u) == y for u in isos) for y in B.cells(0))
