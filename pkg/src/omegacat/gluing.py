"""The gluing factorization f = λf ∘ ρf and transport along cylinders.

For f : X → Y, Glu f is the pullback of f along Top_Y : ΓY → Y. Its
n-cells are pairs (x, U) where U : f x ⇝̂ y is an n-cylinder of Y.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import Cell, FiniteOmegaCat, OmegaFunctor, pair_cell, pullback
from .cylinders import Cylinder, CylinderCalculus, GammaCat, gamma
from .equivalence import (EqvWitness, check_witness, decider, is_trivial_fibration, is_weak_equivalence,
                          left_divide, right_divide)
from .errors import BoundaryError, CrossCheckError
from .polygraph import collapsing_map, pair_functor, sng
from .report import CheckReport


@dataclass
class GluCat:
    """Glu f with its legs.

    * rht = ρf : X → Glu f
    * lft = λf : Glu f → Y
    * top_pullback = f*Top_Y : Glu f → X
    * f_prime = f′ : Glu f → ΓY
    """

    f: OmegaFunctor
    category: FiniteOmegaCat
    gamma: GammaCat
    rht: OmegaFunctor
    lft: OmegaFunctor
    top_pullback: OmegaFunctor
    f_prime: OmegaFunctor

    def cell(self, x: Cell, U: Cylinder) -> Cell:
        return pair_cell(x, self.gamma.cell(U))

    def cylinder(self, c: Cell) -> Cylinder:
        return self.gamma.cylinder(self.f_prime(c))


def glue(f: OmegaFunctor) -> GluCat:
    cached = f.__dict__.get("_glu")
    if cached is not None:
        return cached
    GY = gamma(f.cod)
    P, pr1, pr2 = pullback(f, GY.top, name=f"Glu({f.name or 'f'})")
    calc = GY.calc
    rho = OmegaFunctor(f.dom, P, {x: pair_cell(x, GY.cell(calc.triv(f(x)))) for x in f.dom.stored()}, name="ρ")
    lam = GY.bot.after(pr2)
    lam.name = "λ"
    out = GluCat(f, P, GY, rho, lam, pr1, pr2)
    f.__dict__["_glu"] = out
    return out


def check_gluing(G: GluCat) -> CheckReport:
    """λf ∘ ρf = f, f*Top ∘ ρf = id and the legs are valid."""
    from .validate import validate_functor
    fails = []
    if not G.lft.after(G.rht).equals(G.f):
        fails.append({"law": "factorization"})
    if not G.top_pullback.after(G.rht).equals(OmegaFunctor(G.f.dom, G.f.dom, {c: c for c in G.f.dom.stored()})):
        fails.append({"law": "section"})
    for name, leg in (("rho", G.rht), ("lambda", G.lft), ("top-pullback", G.top_pullback)):
        r = validate_functor(leg)
        if not r:
            fails.append({"law": f"{name}-valid", "failures": r.failures[:3]})
    return CheckReport.collect("gluing", fails)


# -- transport ---------------------------------------------------------------------

def _parallel(calc: CylinderCalculus, U: Cylinder, V: Cylinder) -> bool:
    if U.dim != V.dim or U.depth != V.depth:
        return False
    if U.dim == 0:
        return True
    return calc.source(U) == calc.source(V) and calc.target(U) == calc.target(V)


def fill(C: FiniteOmegaCat, U: Cylinder, V: Cylinder, z: Cell, z2: Cell) -> Cylinder | None:
    """A cylinder W : U → V from z to z2, following the recursion of the proof.

    Returns None exactly when the recursion reaches a pair of cells that are
    not ω-equivalent.
    """
    E, d = decider(C), U.depth
    if U.dim == 0:
        u, v = U.principal, V.principal
        a, b = C.comp(z, v, d), C.comp(u, z2, d)
        j = E.join(a, b)
        if j is None:
            return None
        return Cylinder(1, d, z, z2, flat=u, sharp=v, shift=Cylinder(0, d + 1, a, b, principal=j))
    S = fill(C, U.shift, V.shift, C.comp(z, U.sharp, d), C.comp(U.flat, z2, d))
    if S is None:
        return None
    return Cylinder(U.dim + 1, d, z, z2, flat=U.flat, sharp=U.sharp, shift=S)


def _check_transport_input(calc: CylinderCalculus, U: Cylinder, V: Cylinder, z: Cell, bottom: bool):
    C = calc.C
    if not _parallel(calc, U, V):
        raise BoundaryError("transport needs parallel cylinders")
    a, b = (U.bottom, V.bottom) if bottom else (U.top, V.top)
    if z.dim != a.dim + 1 or C.src(z) != a or C.tgt(z) != b:
        raise BoundaryError(f"{z!r} is not a cell {a!r} → {b!r}")


def _topdown_cell(C: FiniteOmegaCat, U: Cylinder, V: Cylinder, z: Cell) -> Cell:
    E, d = decider(C), U.depth
    if U.dim == 0:
        ub = E.weak_inverse(U.principal)
        return C.comp(C.comp(ub, z, d), V.principal, d)
    w2 = _topdown_cell(C, U.shift, V.shift, C.comp(z, U.sharp, d))
    return left_divide(C, U.flat, w2, U.bottom, V.bottom, p=d)


def _bottomup_cell(C: FiniteOmegaCat, U: Cylinder, V: Cylinder, z2: Cell) -> Cell:
    E, d = decider(C), U.depth
    if U.dim == 0:
        vb = E.weak_inverse(V.principal)
        return C.comp(C.comp(U.principal, z2, d), vb, d)
    w = _bottomup_cell(C, U.shift, V.shift, C.comp(U.flat, z2, d))
    return right_divide(C, U.sharp, w, U.top, V.top, p=d)


def transport_topdown(C: FiniteOmegaCat, U: Cylinder, V: Cylinder, z: Cell) -> tuple[Cell, Cylinder]:
    """z′ : x′ → y′ and W : U → V from z to z′, for z : x → y."""
    calc = gamma_calc(C)
    _check_transport_input(calc, U, V, z, bottom=False)
    z2 = _topdown_cell(C, U, V, z)
    W = fill(C, U, V, z, z2)
    if W is None or calc.source(W) != U or calc.target(W) != V or not calc.is_cylinder(W):
        raise CrossCheckError(f"topdown transport of {z!r} produced no cylinder")
    return z2, W


def transport_bottomup(C: FiniteOmegaCat, U: Cylinder, V: Cylinder, z2: Cell) -> tuple[Cell, Cylinder]:
    """z : x → y and W : U → V from z to z2, for z2 : x′ → y′."""
    calc = gamma_calc(C)
    _check_transport_input(calc, U, V, z2, bottom=True)
    z = _bottomup_cell(C, U, V, z2)
    W = fill(C, U, V, z, z2)
    if W is None or calc.source(W) != U or calc.target(W) != V or not calc.is_cylinder(W):
        raise CrossCheckError(f"bottom-up transport of {z2!r} produced no cylinder")
    return z, W


def gamma_calc(C: FiniteOmegaCat) -> CylinderCalculus:
    calc = C.__dict__.get("_calc")
    if calc is None:
        calc = C.__dict__["_calc"] = CylinderCalculus(C, cross_check=False)
    return calc


def transport_solutions(C: FiniteOmegaCat, U: Cylinder, V: Cylinder, z: Cell, bottom: bool = False) -> list[Cell]:
    """Brute force: every cell at the other end of some cylinder W : U → V."""
    calc = gamma_calc(C)
    n, d = U.dim, U.depth
    out = []
    if not bottom:
        pool = C.hom(U.bottom, V.bottom)
        ends = [(z, z2) for z2 in pool]
    else:
        pool = C.hom(U.top, V.top)
        ends = [(z1, z) for z1 in pool]
    for a, b in ends:
        for W in calc.cylinders(n + 1, d, a, b):
            if calc.source(W) == U and calc.target(W) == V:
                out.append(b if not bottom else a)
                break
    return out


def transport_report(C: FiniteOmegaCat, U: Cylinder, V: Cylinder, z: Cell, bottom: bool = False) -> CheckReport:
    """Constructive answer against the brute-force oracle.

    Checks that the constructed cell solves the problem, that every solution
    is ω-equivalent to it (weak uniqueness) and that every cell ω-equivalent
    to it is a solution (the converse clause).
    """
    E = decider(C)
    got, _ = (transport_bottomup if bottom else transport_topdown)(C, U, V, z)
    sols = transport_solutions(C, U, V, z, bottom)
    pool = C.hom(U.top, V.top) if bottom else C.hom(U.bottom, V.bottom)
    fails = []
    if got not in sols:
        fails.append({"law": "constructive-is-solution", "cell": repr(got)})
    for s in sols:
        if not E.equiv(s, got):
            fails.append({"law": "weak-uniqueness", "cell": repr(got), "other": repr(s)})
    for c in pool:
        if E.equiv(c, got) and c not in sols:
            fails.append({"law": "converse", "cell": repr(got), "other": repr(c)})
    return CheckReport.collect("transport", fails, answer=got.id, solutions=[s.id for s in sols])


def transport_instances(C: FiniteOmegaCat, max_dim: int | None = None):
    """Every (U, V, z) with U ∥ V at depth 0 and z : Top U → Top V."""
    calc = gamma_calc(C)
    top = C.cap - 1 if max_dim is None else max_dim
    for n in range(top + 1):
        cyls = calc.all_cylinders(n, 0)
        by_bound: dict = {}
        for U in cyls:
            key = (calc.source(U), calc.target(U)) if n > 0 else ()
            by_bound.setdefault(key, []).append(U)
        for group in by_bound.values():
            for U in group:
                for V in group:
                    for z in C.hom(U.top, V.top):
                        yield U, V, z


# -- Top/Bot and the characterization of weak equivalences ----------------------

def check_top_bot_fibrations(C: FiniteOmegaCat) -> CheckReport:
    G = gamma(C)
    return CheckReport.combine("top-bot-fibrations", [
        is_trivial_fibration(G.top), is_trivial_fibration(G.bot), is_weak_equivalence(G.triv)])


def charweq(f: OmegaFunctor) -> CheckReport:
    """is_weak_equivalence(f) and is_trivial_fibration(λf) agree."""
    weq = is_weak_equivalence(f)
    tfib = is_trivial_fibration(glue(f).lft)
    fails = [] if bool(weq) == bool(tfib) else [{"law": "charweq", "weq": bool(weq), "lambda_tfib": bool(tfib)}]
    return CheckReport.collect("charweq", fails, weq=bool(weq), lambda_tfib=bool(tfib))


def equiv_factor_witness(C: FiniteOmegaCat, x: Cell, x2: Cell, W: EqvWitness):
    """From x ≋ x′, the factorization ⟨x,x′⟩ = q∘k and o_n = p∘k through Glu(sng x).

    Returns (glu, k, p, q, report). The report also re-derives x ≋ x′ from the
    factorization: k picks y ∥ y′ with p y = p y′, so y ≋ y′ because p is a
    trivial fibration, and q carries that to x ≋ x′.
    """
    if not check_witness(C, W, x, x2):
        raise ValueError("witness does not prove x ≋ x′")
    n = x.dim
    f = sng(C, x)
    glu = glue(f)
    GX, calc = glu.gamma, glu.gamma.calc
    U = calc.degenerate_of(W.forward)
    o = collapsing_map(n)
    to_gamma = pair_functor(GX.category, GX.cell(calc.triv(x)), GX.cell(U))
    B = o.dom
    k = OmegaFunctor(B, glu.category, {c: pair_cell(o(c), to_gamma(c)) for c in B.stored()}, name="k")
    p, q = glu.top_pullback, glu.lft
    fails = []
    if not p.after(k).equals(OmegaFunctor(B, p.cod, {c: o(c) for c in B.stored()})):
        fails.append({"law": "p∘k = o_n"})
    if not q.after(k).equals(pair_functor(C, x, x2)):
        fails.append({"law": "q∘k = ⟨x,x′⟩"})
    tf = is_trivial_fibration(p)
    if not tf:
        fails.append({"law": "p-trivial-fibration"})
    y, y2 = k(Cell(n, f"s{n}")), k(Cell(n, f"t{n}"))
    if not (p(y) == p(y2) and decider(glu.category).equiv(y, y2) and decider(C).equiv(q(y), q(y2))):
        fails.append({"law": "converse"})
    return glu, k, p, q, CheckReport.collect("equiv-factor", fails)
