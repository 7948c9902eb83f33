"""Lifting problems, immersions, retracts and a finite small-object construction.

Searches are exhaustive within a node budget, so "no lift" and "budget
exceeded" are distinct outcomes: the first comes with a certificate recording
the explored node count, the second raises BudgetExceeded.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Iterator

from .core import Cell, FiniteOmegaCat, OmegaFunctor, cell_str, coproduct, full_subcategory
from .cylinders import gamma, gamma_functor
from .equivalence import decider, is_trivial_fibration, is_weak_equivalence
from .errors import BudgetExceeded, CrossCheckError, StructuralError, Unsupported
from .gluing import glue
from .polygraph import (Materialized, Polygraph, PolyMorphism, free_functor,
                        functor_from_assignment, globe_inclusion, materialize,
                        pushout_polygraph)
from .report import CheckReport
from .search import DEFAULT_NODE_BUDGET, FunctorSearch, enumerate_functors
from .validate import validate_functor


def _agree(F: OmegaFunctor, G: OmegaFunctor, top: int | None = None) -> bool:
    """F and G agree on every cell of their common domain up to ``top``."""
    top = max(F.dom.cap, G.dom.cap) if top is None else top
    return all(F(c) == G(c) for k in range(top + 1) for c in F.dom.cells(k))


def _is_identity(F: OmegaFunctor) -> bool:
    return all(F(c) == c for k in range(F.dom.cap + 1) for c in F.dom.cells(k))


def _first_disagreement(F: OmegaFunctor, G: OmegaFunctor) -> str | None:
    for k in range(max(F.dom.cap, G.dom.cap) + 1):
        for c in F.dom.cells(k):
            if F(c) != G(c):
                return cell_str(c)
    return None


def _same(C: FiniteOmegaCat, D: FiniteOmegaCat) -> bool:
    return C is D or C.equals(D)


def _compose(G: OmegaFunctor, F: OmegaFunctor, name: str = "") -> OmegaFunctor:
    """G ∘ F, checking only that the categories match structurally."""
    if not _same(F.cod, G.dom):
        raise StructuralError("functors are not composable")
    return OmegaFunctor(F.dom, G.cod, {c: G(F(c)) for c in F.dom.stored()}, name=name or f"{G.name}∘{F.name}")


# -- lifting problems -----------------------------------------------------------

@dataclass
class LiftingProblem:
    """A commutative square f ∘ top = bottom ∘ i; a lift is h with h∘i = top, f∘h = bottom."""

    i: OmegaFunctor
    f: OmegaFunctor
    top: OmegaFunctor
    bottom: OmegaFunctor

    def __post_init__(self) -> None:
        i, f, top, bottom = self.i, self.f, self.top, self.bottom
        if not (_same(top.dom, i.dom) and _same(top.cod, f.dom)
                and _same(bottom.dom, i.cod) and _same(bottom.cod, f.cod)):
            raise StructuralError("lifting problem: mismatched categories")
        for k in range(i.dom.cap + 1):
            for c in i.dom.cells(k):
                if f(top(c)) != bottom(i(c)):
                    raise StructuralError(f"lifting problem: square does not commute at {cell_str(c)}")

    def describe(self) -> dict[str, Any]:
        return {
            "i": self.i.name,
            "f": self.f.name,
            "top": {cell_str(c): cell_str(self.top(c)) for c in self.top.dom.stored()},
            "bottom": {cell_str(c): cell_str(self.bottom(c)) for c in self.bottom.dom.stored()},
        }


@dataclass
class SearchCertificate:
    """Outcome of an exhaustive search.

    ``empty`` lists cells whose candidate set was empty before branching;
    when it is non-empty the failure needs no search at all.
    """

    found: bool
    nodes: int
    empty: list[str] = field(default_factory=list)
    note: str = ""

    def to_json(self) -> dict[str, Any]:
        out = {"found": self.found, "exhaustive": not self.found, "nodes": self.nodes, "empty_candidates": self.empty}
        if self.note:
            out["note"] = self.note
        return out


def lift_search(P: LiftingProblem, node_budget: int = DEFAULT_NODE_BUDGET) -> tuple[OmegaFunctor | None, SearchCertificate]:
    B, T = P.i.cod, P.f.dom
    forced: dict[Cell, set[Cell]] = defaultdict(set)
    for k in range(P.i.dom.cap + 1):
        for c in P.i.dom.cells(k):
            forced[P.i(c)].add(P.top(c))
    by_image: dict[Cell, list[Cell]] = defaultdict(list)
    for k in range(B.cap + 1):
        for t in T.cells(k):
            by_image[P.f(t)].append(t)
    cands: dict[Cell, list[Cell]] = {}
    for k in range(B.cap + 1):
        for b in B.cells(k):
            fiber = by_image.get(P.bottom(b), [])
            if b in forced:
                fiber = [t for t in fiber if t in forced[b]]
            cands[b] = fiber
    empty = [cell_str(b) for b, v in cands.items() if not v]
    if empty:
        return None, SearchCertificate(False, 0, empty, "a cell of the codomain of i has no admissible image")
    search = FunctorSearch(B, T, candidates=cands, node_budget=node_budget)
    for h in search.functors(limit=1):
        if not (_agree(_compose(h, P.i), P.top) and _agree(_compose(P.f, h), P.bottom)):
            raise CrossCheckError("lift does not recompose to the square")
        h.name = "lift"
        return h, SearchCertificate(True, search.nodes)
    return None, SearchCertificate(False, search.nodes)


def find_lift(P: LiftingProblem, node_budget: int = DEFAULT_NODE_BUDGET) -> OmegaFunctor | None:
    return lift_search(P, node_budget)[0]


@lru_cache(maxsize=None)
def inclusion(n: int) -> OmegaFunctor:
    """i_n, shared so that squares built from it compare by identity."""
    return globe_inclusion(n)


def _on(dom: FiniteOmegaCat, cod: FiniteOmegaCat, images: dict[Cell, Cell], name: str = "") -> OmegaFunctor:
    return OmegaFunctor(dom, cod, images, name=name)


def globe_squares(n: int, f: OmegaFunctor) -> Iterator[LiftingProblem]:
    """Every commutative square from i_n into f, in cell-id order."""
    i = inclusion(n)
    X, Y = f.dom, f.cod
    for y in sorted(Y.cells(n), key=lambda c: c.id):
        bottom = {Cell(n, "o"): y}
        for j in range(n):
            bottom[Cell(j, f"s{j}")] = Y.src_n(y, j)
            bottom[Cell(j, f"t{j}")] = Y.tgt_n(y, j)
        b = _on(i.cod, Y, bottom, name=f"sng {y.id}")
        if n == 0:
            yield LiftingProblem(i, f, _on(i.dom, X, {}), b)
            continue
        s, t = Y.src(y), Y.tgt(y)
        xs = [x for x in X.cells(n - 1) if f(x) == s]
        xt = [x for x in X.cells(n - 1) if f(x) == t]
        for x in sorted(xs, key=lambda c: c.id):
            for x2 in sorted(xt, key=lambda c: c.id):
                if not X.parallel(x, x2):
                    continue
                top = {Cell(n - 1, f"s{n - 1}"): x, Cell(n - 1, f"t{n - 1}"): x2}
                for j in range(n - 1):
                    top[Cell(j, f"s{j}")] = X.src_n(x, j)
                    top[Cell(j, f"t{j}")] = X.tgt_n(x, j)
                yield LiftingProblem(i, f, _on(i.dom, X, top, name=f"⟨{x.id},{x2.id}⟩"), b)


def tfib_by_lifting(f: OmegaFunctor, node_budget: int = DEFAULT_NODE_BUDGET) -> CheckReport:
    """f has the right lifting property against i_n for n ≤ cap + 1, by raw search."""
    top = max(f.dom.cap, f.cod.cap) + 1
    fails, squares = [], 0
    for n in range(top + 1):
        for P in globe_squares(n, f):
            squares += 1
            if find_lift(P, node_budget) is None:
                fails.append({"n": n, "square": P.describe()})
    return CheckReport.collect("rlp-globe-inclusions", fails, squares=squares)


def tfib_cross_check(f: OmegaFunctor) -> CheckReport:
    """is_trivial_fibration and raw lifting against the i_n agree."""
    a, b = bool(is_trivial_fibration(f)), bool(tfib_by_lifting(f))
    fails = [] if a == b else [{"law": "tfib-vs-lifting", "tfib": a, "lifting": b}]
    return CheckReport.collect("tfib-cross-check", fails, tfib=a, lifting=b)


# -- immersions -----------------------------------------------------------------

@dataclass
class ImmersionCertificate:
    """g : Y → X a retraction of f and h : Y → ΓY, subject to Z1–Z3."""

    f: OmegaFunctor
    g: OmegaFunctor
    h: OmegaFunctor

    def to_json(self) -> dict[str, Any]:
        calc = gamma(self.f.cod)
        return {
            "g": {cell_str(c): cell_str(self.g(c)) for c in self.g.dom.stored()},
            "h": {cell_str(c): calc.cylinder(self.h(c)).to_json() for c in self.h.dom.stored()},
        }


def check_immersion_certificate(cert: ImmersionCertificate) -> CheckReport:
    """Z1, Z2, Z3 and the variant Z3′ (h ∘ f = Γf ∘ Triv_X), checked directly."""
    f, g, h = cert.f, cert.g, cert.h
    X, Y = f.dom, f.cod
    GX, GY = gamma(X), gamma(Y)
    fails: list[dict[str, Any]] = []
    for name, F in (("g", g), ("h", h)):
        r = validate_functor(F)
        if not r:
            fails.append({"law": f"{name}-valid", "failures": r.failures[:3]})
    if fails:
        return CheckReport.collect("immersion-certificate", fails)
    gf = _compose(g, f)
    if not _is_identity(gf):
        fails.append({"law": "Z1", "at": next(cell_str(c) for k in range(X.cap + 1) for c in X.cells(k) if gf(c) != c)})
    top_h, fg = _compose(GY.top, h), _compose(f, g)
    if not _agree(top_h, fg):
        fails.append({"law": "Z2-top", "at": _first_disagreement(top_h, fg)})
    bot_h = _compose(GY.bot, h)
    if not _is_identity(bot_h):
        fails.append({"law": "Z2-bot"})
    hf, triv_f = _compose(h, f), _compose(GY.triv, f)
    if not _agree(hf, triv_f):
        fails.append({"law": "Z3", "at": _first_disagreement(hf, triv_f)})
    gtriv = _compose(gamma_functor(f, GX, GY), GX.triv)
    if not _agree(hf, gtriv):
        fails.append({"law": "Z3-prime", "at": _first_disagreement(hf, gtriv)})
    return CheckReport.collect("immersion-certificate", fails)


def immersion_search(f: OmegaFunctor, node_budget: int = DEFAULT_NODE_BUDGET
                     ) -> tuple[ImmersionCertificate | None, SearchCertificate]:
    """Search k : Y → Glu f with k∘f = ρf and λf∘k = id, then g = f*Top∘k, h = f′∘k."""
    G = glue(f)
    X, Y, Glu = f.dom, f.cod, G.category
    fiber: dict[Cell, list[Cell]] = defaultdict(list)
    for k in range(Glu.cap + 1):
        for c in Glu.cells(k):
            fiber[G.lft(c)].append(c)
    forced: dict[Cell, set[Cell]] = defaultdict(set)
    for k in range(min(X.cap, Y.cap) + 1):
        for x in X.cells(k):
            forced[f(x)].add(G.rht(x))
    cands: dict[Cell, list[Cell]] = {}
    for k in range(Y.cap + 1):
        for y in Y.cells(k):
            v = fiber.get(y, [])
            if y in forced:
                v = [c for c in v if c in forced[y]]
            cands[y] = v
    empty = [cell_str(y) for y, v in cands.items() if not v]
    if empty:
        return None, SearchCertificate(False, 0, empty, "no cell of Glu f over these cells is compatible with ρf")
    search = FunctorSearch(Y, Glu, candidates=cands, node_budget=node_budget)
    for sol in search.solutions():
        kf = OmegaFunctor(Y, Glu, sol, name="k")
        if not all(kf(f(x)) == G.rht(x) for k in range(X.cap + 1) for x in X.cells(k)):
            continue
        g = OmegaFunctor(Y, X, {y: G.top_pullback(kf(y)) for y in Y.stored()}, name="g")
        h = OmegaFunctor(Y, G.gamma.category, {y: G.f_prime(kf(y)) for y in Y.stored()}, name="h")
        cert = ImmersionCertificate(f, g, h)
        rep = check_immersion_certificate(cert)
        if not rep:
            raise CrossCheckError(f"certificate extracted from Glu f fails: {rep.failures[:2]}")
        return cert, SearchCertificate(True, search.nodes)
    return None, SearchCertificate(False, search.nodes)


def is_immersion(f: OmegaFunctor, node_budget: int = DEFAULT_NODE_BUDGET) -> ImmersionCertificate | None:
    return immersion_search(f, node_budget)[0]


def identity_certificate(C: FiniteOmegaCat) -> ImmersionCertificate:
    """id is an immersion with g = id and h = Triv."""
    f = OmegaFunctor(C, C, {c: c for c in C.stored()}, name="id")
    return ImmersionCertificate(f, f, gamma(C).triv)


def immersion_implies_weq(f: OmegaFunctor, cert: ImmersionCertificate | None = None) -> CheckReport:
    """A certified immersion is a weak equivalence.

    Also extracts, for each 0-cell y, the reversible principal of the
    cylinder h(y) : f(g y) ⇝ y. Without a certificate the claim is vacuous.
    """
    cert = cert or is_immersion(f)
    if cert is None:
        return CheckReport("imm-implies-weq", True, details={"applicable": False})
    Y = f.cod
    GY = gamma(Y)
    eqv = decider(Y)
    fails, principals = [], {}
    for y in Y.cells(0):
        U = GY.cylinder(cert.h(y))
        principals[cell_str(y)] = cell_str(U.principal)
        if U.bottom != y or U.top != f(cert.g(y)) or not eqv.reversible(U.principal):
            fails.append({"law": "degenerate-extraction", "at": cell_str(y)})
    weq = is_weak_equivalence(f)
    if not weq:
        fails.append({"law": "weak-equivalence", "failures": weq.failures[:3]})
    return CheckReport.collect("imm-implies-weq", fails, applicable=True, principals=principals)


# -- pushouts of immersions ---------------------------------------------------------

def _summand_inverse(i: OmegaFunctor) -> dict[Cell, Cell] | None:
    """When i : A → C is an isomorphism onto a union of connected components, its inverse."""
    A, C = i.dom, i.cod
    top = max(A.cap, C.cap)
    inv: dict[Cell, Cell] = {}
    for k in range(top + 1):
        for a in A.cells(k):
            c = i(a)
            if c in inv:
                return None
            inv[c] = a
    comps = {C.src_n(c, 0) if c.dim else c for c in inv}
    parent = {x: x for x in C.cells(0)}

    def find(x: Cell) -> Cell:
        while parent[x] != x:
            x = parent[x]
        return x

    for u in C.cells(1) if C.cap >= 1 else ():
        a, b = find(C.src(u)), find(C.tgt(u))
        if a != b:
            parent[max(a, b)] = min(a, b)
    roots = {find(x) for x in comps}
    for k in range(top + 1):
        for c in C.cells(k):
            inside = find(C.src_n(c, 0) if c.dim else c) in roots
            if inside != (c in inv):
                return None
    return inv


@dataclass
class PushoutImmersion:
    f_prime: OmegaFunctor
    constructed: ImmersionCertificate
    report: CheckReport


def pushout_along_summand(f: OmegaFunctor, i: OmegaFunctor, cert: ImmersionCertificate) -> PushoutImmersion:
    """Pushout of f along a summand inclusion i : A → C = A ⊔ R, with g′, h′ from the universal property.

    The pushout is B ⊔ R and f′ = f ⊔ id_R. On B, g′ = i∘g and h′ = Γ(in_B)∘h;
    on R both are forced by g′∘f′ = id and (Z3′).
    """
    inv = _summand_inverse(i)
    if inv is None:
        raise Unsupported("pushout along a functor that is not a summand inclusion")
    B, C = f.cod, i.cod
    R = full_subcategory(C, lambda c: c not in inv, name="R")
    P, inB, inR = coproduct(B, R)
    top = P.cap
    fp = {}
    for k in range(C.cap + 1):
        for c in C.cells(k):
            fp[c] = inB(f(inv[c])) if c in inv else inR(c)
    f_prime = OmegaFunctor(C, P, fp, name="f′")
    GP = gamma(P)
    g_in = gamma_functor(inB, gamma(B), GP)
    gm, hm = {}, {}
    for k in range(top + 1):
        for b in B.cells(k):
            gm[inB(b)] = i(cert.g(b))
            hm[inB(b)] = g_in(cert.h(b))
        for r in R.cells(k):
            gm[inR(r)] = r
            hm[inR(r)] = GP.cell(GP.calc.triv(inR(r)))
    constructed = ImmersionCertificate(f_prime, OmegaFunctor(P, C, gm, name="g′"), OmegaFunctor(P, GP.category, hm, name="h′"))
    rep = check_immersion_certificate(constructed)
    return PushoutImmersion(f_prime, constructed, rep)


def _materialize_or_none(S: Polygraph, budget: int) -> Materialized | None:
    try:
        return materialize(S, budget)
    except (BudgetExceeded, Unsupported):
        return None


def pushout_along_polymorphism(mf: PolyMorphism, mi: PolyMorphism, cert: ImmersionCertificate,
                               MS: Materialized, MT: Materialized, budget: int = 2_000) -> PushoutImmersion | None:
    """Pushout of Q(mf) along Q(mi) computed on generators; None when Q(P) is not materializable.

    g′ and h′ are defined on the generators of P: those coming from T get
    Q(mi)∘g and Γ(Q j1)∘h, those coming from S′ get the identity and Triv.
    """
    P, j1, j2 = pushout_polygraph(mf, mi)
    MS2 = _materialize_or_none(mi.cod, budget)
    MP = _materialize_or_none(P, budget)
    if MS2 is None or MP is None:
        return None
    Qi = free_functor(mi, MS, MS2)
    Qj1 = free_functor(j1, MT, MP)
    f_prime = free_functor(j2, MS2, MP)
    f_prime.name = "f′"
    GP = gamma(MP.category)
    G1 = gamma_functor(Qj1, gamma(MT.category), GP)
    g_assign: dict[tuple[int, str], Cell] = {}
    h_assign: dict[tuple[int, str], Cell] = {}
    for k in range(P.cap + 1):
        for t, p in (j1.maps[k].items() if k < len(j1.maps) else ()):
            gen = MT.gen(k, t)
            g_assign[(k, p)] = Qi(cert.g(gen))
            h_assign[(k, p)] = G1(cert.h(gen))
        for s, p in (j2.maps[k].items() if k < len(j2.maps) else ()):
            img = MS2.gen(k, s)
            if (k, p) in g_assign and g_assign[(k, p)] != img:
                raise CrossCheckError(f"universal property: legs disagree on generator {p}")
            g_assign[(k, p)] = img
            h_assign[(k, p)] = GP.cell(GP.calc.triv(f_prime(img)))
    g2 = functor_from_assignment(MP, g_assign, MS2.category)
    h2 = functor_from_assignment(MP, h_assign, GP.category)
    g2.name, h2.name = "g′", "h′"
    constructed = ImmersionCertificate(f_prime, g2, h2)
    return PushoutImmersion(f_prime, constructed, check_immersion_certificate(constructed))


def pushout_immersion_report(po: PushoutImmersion | None, node_budget: int = DEFAULT_NODE_BUDGET) -> CheckReport:
    """The constructed certificate holds and the search certifies f′ independently."""
    if po is None:
        rep = CheckReport("pushout-immersion", False, [{"law": "pushout not materializable within budget"}])
        rep.inconclusive = True
        return rep
    fails = [{"law": "constructed-certificate", **fl} for fl in po.report.failures]
    try:
        found, sc = immersion_search(po.f_prime, node_budget)
    except BudgetExceeded as e:
        rep = CheckReport.collect("pushout-immersion", fails, search="budget")
        rep.inconclusive = True
        rep.details["budget"] = str(e)
        return rep
    if found is None:
        fails.append({"law": "search-certifies-f′", "search": sc.to_json()})
    return CheckReport.collect("pushout-immersion", fails, nodes=sc.nodes, pushout_cells=po.f_prime.cod.size)


def pushout_immersion_suite(f: OmegaFunctor, i: OmegaFunctor | PolyMorphism,
                            mf: PolyMorphism | None = None, budget: int = 2_000) -> CheckReport:
    """Pushout of a certified immersion f along i is certified.

    With ``mf`` given, f = Q(mf) and i is a polygraph morphism out of mf.dom;
    otherwise i is a functor out of f.dom that must be an identity or a
    summand inclusion. Unmaterializable pushouts are inconclusive.
    """
    cert = is_immersion(f)
    if cert is None:
        return CheckReport("pushout-immersion", False, [{"law": "f is not an immersion"}])
    if isinstance(i, PolyMorphism):
        if mf is None:
            raise StructuralError("polygraph pushout needs f as a polygraph morphism")
        MS = _materialize_or_none(mf.dom, budget)
        MT = _materialize_or_none(mf.cod, budget)
        if MS is None or MT is None or not (_same(MS.category, f.dom) and _same(MT.category, f.cod)):
            raise StructuralError("f is not Q of the given polygraph morphism")
        f_on = _compose(_compose(OmegaFunctor(f.cod, MT.category, {c: c for c in f.cod.stored()}), f),
                        OmegaFunctor(MS.category, f.dom, {c: c for c in MS.category.stored()}))
        cert = ImmersionCertificate(f_on, _retarget(cert.g, MT.category, MS.category),
                                    _retarget(cert.h, MT.category, gamma(MT.category).category))
        return pushout_immersion_report(pushout_along_polymorphism(mf, i, cert, MS, MT, budget))
    if _same(i.dom, i.cod) and _is_identity(i):
        rep = check_immersion_certificate(cert)
        return CheckReport.collect("pushout-immersion", rep.failures, reused=True)
    try:
        po = pushout_along_summand(f, i, cert)
    except Unsupported as e:
        rep = CheckReport("pushout-immersion", False, [{"law": str(e)}])
        rep.inconclusive = True
        return rep
    return pushout_immersion_report(po)


def _retarget(F: OmegaFunctor, dom: FiniteOmegaCat, cod: FiniteOmegaCat) -> OmegaFunctor:
    """The same cell map between structurally equal copies."""
    return OmegaFunctor(dom, cod, {c: F(c) for c in dom.stored()}, name=F.name)


# -- retracts and 3-for-2 -------------------------------------------------------------

@dataclass
class RetractDiagram:
    """f : A → B is a retract of g : C → D via s : A → C, r : C → A, s′ : B → D, r′ : D → B."""

    f: OmegaFunctor
    g: OmegaFunctor
    s: OmegaFunctor
    r: OmegaFunctor
    s2: OmegaFunctor
    r2: OmegaFunctor


def retract_check(d: RetractDiagram, check_weq: bool = True) -> CheckReport:
    """The retract equations, and f ∈ W whenever g ∈ W."""
    fails = []
    try:
        eqs = [
            ("r∘s = id", _is_identity(_compose(d.r, d.s))),
            ("r′∘s′ = id", _is_identity(_compose(d.r2, d.s2))),
            ("g∘s = s′∘f", _agree(_compose(d.g, d.s), _compose(d.s2, d.f))),
            ("f∘r = r′∘g", _agree(_compose(d.f, d.r), _compose(d.r2, d.g))),
        ]
    except StructuralError as e:
        raise StructuralError(f"malformed retract diagram: {e}") from e
    fails = [{"law": name} for name, ok in eqs if not ok]
    details: dict[str, Any] = {}
    if not fails and check_weq:
        gw, fw = bool(is_weak_equivalence(d.g)), bool(is_weak_equivalence(d.f))
        details = {"g_weq": gw, "f_weq": fw}
        if gw and not fw:
            fails.append({"law": "W stable under retracts"})
    return CheckReport.collect("retract", fails, **details)


def self_retract(f: OmegaFunctor) -> RetractDiagram:
    idA = OmegaFunctor(f.dom, f.dom, {c: c for c in f.dom.stored()}, name="id")
    idB = OmegaFunctor(f.cod, f.cod, {c: c for c in f.cod.stored()}, name="id")
    return RetractDiagram(f, f, idA, idA, idB, idB)


def coproduct_retract(f: OmegaFunctor, e: OmegaFunctor, a0: Cell) -> RetractDiagram:
    """f as a retract of f ⊔ e, retracting the second summand onto the 0-cell a0 of f.dom."""
    A, B = f.dom, f.cod
    C, inA, inE = coproduct(A, e.dom)
    D, inB, inF = coproduct(B, e.cod)
    gm, rm, r2m = {}, {}, {}
    top = max(C.cap, D.cap)
    for k in range(top + 1):
        for a in A.cells(k):
            gm[inA(a)] = inB(f(a))
            rm[inA(a)] = a
        for x in e.dom.cells(k):
            gm[inE(x)] = inF(e(x))
            rm[inE(x)] = A.unit(a0, k)
        for b in B.cells(k):
            r2m[inB(b)] = b
        for y in e.cod.cells(k):
            r2m[inF(y)] = B.unit(f(a0), k)
    g = OmegaFunctor(C, D, {c: gm[c] for c in C.stored()}, name="f⊔e")
    r = OmegaFunctor(C, A, {c: rm[c] for c in C.stored()}, name="r")
    r2 = OmegaFunctor(D, B, {c: r2m[c] for c in D.stored()}, name="r′")
    return RetractDiagram(f, g, inA, r, inB, r2)


def three_for_two(f: OmegaFunctor, g: OmegaFunctor) -> CheckReport:
    """If two of f, g, g∘f are weak equivalences, so is the third."""
    gf = _compose(g, f)
    flags = [bool(is_weak_equivalence(h)) for h in (f, g, gf)]
    fails = [{"law": "3-for-2", "f": flags[0], "g": flags[1], "gf": flags[2]}] if sum(flags) == 2 else []
    return CheckReport.collect("3-for-2", fails, weq=flags)


# -- fibrancy ---------------------------------------------------------------------

def fibrancy_extension(cert: ImmersionCertificate, u: OmegaFunctor) -> OmegaFunctor:
    """v = u ∘ g extends u : Y → X along the immersion f, since g∘f = id."""
    v = _compose(u, cert.g, name="v")
    if not _agree(_compose(v, cert.f), u):
        raise CrossCheckError("v ∘ f ≠ u")
    return v


def fibrancy_report(f: OmegaFunctor, targets: list[FiniteOmegaCat], limit: int | None = None,
                    cert: ImmersionCertificate | None = None) -> CheckReport:
    """Every u : dom f → X extends along the certified immersion f, for each X in targets."""
    cert = cert or is_immersion(f)
    if cert is None:
        return CheckReport("fibrancy", True, details={"applicable": False})
    fails, count = [], 0
    for X in targets:
        for u in enumerate_functors(f.dom, X, limit=limit):
            count += 1
            try:
                fibrancy_extension(cert, u)
            except CrossCheckError:
                fails.append({"target": X.name, "u": {cell_str(c): cell_str(u(c)) for c in u.dom.stored()}})
    return CheckReport.collect("fibrancy", fails, applicable=True, extensions=count)


# -- finite small-object stages -------------------------------------------------------

@dataclass
class SoaResult:
    polygraph: Polygraph
    materialized: Materialized
    lam: OmegaFunctor
    rho: OmegaFunctor
    unfilled: list[LiftingProblem]
    attached: list[dict[str, Any]]

    def to_json(self) -> dict[str, Any]:
        return {
            "attached": self.attached,
            "unfilled": [P.describe() for P in self.unfilled],
            "cells": [self.rho.dom.count(k) for k in range(self.rho.dom.cap + 1)],
            "polygraph": self.polygraph.to_json(),
        }


def _unlifted(rho: OmegaFunctor, dim: int, node_budget: int) -> list[LiftingProblem]:
    return [P for n in range(dim + 1) for P in globe_squares(n, rho) if find_lift(P, node_budget) is None]


def soa_stage(M: Materialized, f: OmegaFunctor, dim: int, stages: int, budget: int = 2_000,
              node_budget: int = DEFAULT_NODE_BUDGET) -> SoaResult:
    """Attach one generator per unlifted square from i_n (n ≤ dim) into ρ, ``stages`` times.

    ``f`` must be defined on M.category. The λ-leg is the inclusion of M's
    polygraph into the enlarged one, a relative cell complex by construction.
    Squares that already have a lift get no generator, so f in I-inj needs
    no attachments.
    """
    if dim > 2 or M.polygraph.cap > 2:
        raise Unsupported("small-object stages need free cells of dimension ≤ 2")
    if not _same(f.dom, M.category):
        raise StructuralError("f must be defined on the materialized category")
    Y = f.cod
    S = M.polygraph
    assign = {(k, g): f(M.gen(k, g)) for k in range(S.cap + 1) for g in S.gens[k]}
    attached: list[dict[str, Any]] = []
    Mk = M
    rho = OmegaFunctor(Mk.category, Y, {c: f(c) for c in Mk.category.stored()}, name="ρ")
    for stage in range(stages):
        pending = _unlifted(rho, dim, node_budget)
        if not pending:
            break
        gens = [dict(level) for level in S.gens]
        for j, P in enumerate(pending):
            n = P.i.cod.cap
            name = f"e{stage}_{j}"
            while len(gens) <= n:
                gens.append({})
            if n == 0:
                gens[0][name] = None
            else:
                a, b = P.top(Cell(n - 1, f"s{n - 1}")), P.top(Cell(n - 1, f"t{n - 1}"))
                gens[n][name] = (Mk.decode[a], Mk.decode[b])
            assign[(n, name)] = P.bottom(Cell(n, "o"))
            attached.append({"stage": stage, "generator": name, "dim": n, "square": P.describe()})
        S = Polygraph(gens, name=M.polygraph.name)
        Mk = materialize(S, budget)
        rho = functor_from_assignment(Mk, assign, Y)
        rho.name = "ρ"
    incl = PolyMorphism(M.polygraph, S, [{g: g for g in M.polygraph.gens[k]} for k in range(M.polygraph.cap + 1)])
    lam = free_functor(incl, M, Mk)
    lam.name = "λ"
    if not _agree(_compose(rho, lam), f):
        raise CrossCheckError("ρ ∘ λ ≠ f")
    return SoaResult(S, Mk, lam, rho, _unlifted(rho, dim, node_budget), attached)


def empty_polygraph() -> Polygraph:
    return Polygraph([{}], name="∅")


__all__ = [
    "LiftingProblem", "SearchCertificate", "lift_search", "find_lift", "inclusion", "globe_squares",
    "tfib_by_lifting", "tfib_cross_check", "ImmersionCertificate", "check_immersion_certificate",
    "immersion_search", "is_immersion", "identity_certificate", "immersion_implies_weq",
    "PushoutImmersion", "pushout_along_summand", "pushout_along_polymorphism", "pushout_immersion_report",
    "pushout_immersion_suite", "RetractDiagram", "retract_check", "self_retract", "coproduct_retract",
    "three_for_two", "fibrancy_extension", "fibrancy_report", "SoaResult", "soa_stage", "empty_polygraph",
]
