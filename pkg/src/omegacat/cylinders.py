"""Reversible cylinders and the ω-category Γ(X) they form.

A cylinder lives at some depth d, meaning inside an iterated hom category of
the base. At depth d an n-cylinder U : x ⇝̂ y joins two (n+d)-cells of the
base, and the ambient operations translate as follows: the ambient ∘_k is
the base ∘_{k+d}, the ambient 0-source is SRC_d, and the action of an
ambient 1-cell u is u ∘_d −.

* n = 0: U is a reversible (d+1)-cell, its principal, from x to y.
* n > 0: U has a flat U♭ : SRC_d x ⇝ SRC_d y and a sharp
  U♯ : TGT_d x ⇝ TGT_d y, both reversible (d+1)-cells, and a shift, an
  (n-1)-cylinder at depth d+1 from x ∘_d U♯ to U♭ ∘_d y.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

from .core import Cell, FiniteOmegaCat, OmegaFunctor, identity, product
from .equivalence import decider
from .errors import BoundaryError, BudgetExceeded, CrossCheckError, NotReversible, StructuralError
from .report import CheckReport

DEFAULT_CYLINDER_BUDGET = 50_000


class Cylinder(NamedTuple):
    dim: int
    depth: int
    top: Cell
    bottom: Cell
    principal: Cell | None = None
    flat: Cell | None = None
    sharp: Cell | None = None
    shift: "Cylinder | None" = None

    def key(self) -> str:
        """Canonical string id (dimensions are implied by position)."""
        if self.dim == 0:
            return f"⟨{self.principal.id}⟩"
        return f"⟨{self.top.id}|{self.flat.id}|{self.sharp.id}|{self.bottom.id}|{self.shift.key()}⟩"

    def __repr__(self) -> str:
        return f"Cyl{self.dim}@{self.depth}{self.key()}"

    def to_json(self) -> dict:
        out = {"dim": self.dim, "depth": self.depth, "top": self.top.id, "bottom": self.bottom.id}
        if self.dim == 0:
            out["principal"] = self.principal.id
        else:
            out.update(flat=self.flat.id, sharp=self.sharp.id, shift=self.shift.to_json())
        return out


def cylinder_from_json(data: dict) -> Cylinder:
    d, n = int(data["depth"]), int(data["dim"])
    top, bottom = Cell(n + d, data["top"]), Cell(n + d, data["bottom"])
    if n == 0:
        return Cylinder(0, d, top, bottom, principal=Cell(d + 1, data["principal"]))
    return Cylinder(n, d, top, bottom, flat=Cell(d + 1, data["flat"]), sharp=Cell(d + 1, data["sharp"]),
                    shift=cylinder_from_json(data["shift"]))


class CylinderCalculus:
    """All cylinder operations over one base category.

    With ``cross_check`` every multiplication is computed twice, through
    the product isomorphism and through the commutation identity, and a
    disagreement raises :class:`CrossCheckError`.
    """

    def __init__(self, C: FiniteOmegaCat, cross_check: bool = True):
        self.C = C
        self.E = decider(C)
        self.cross_check = cross_check
        self._cyl_memo: dict[tuple[int, int, Cell, Cell], list[Cylinder]] = {}

    # -- structure -------------------------------------------------------------
    def is_cylinder(self, U: Cylinder) -> bool:
        C, E, d = self.C, self.E, U.depth
        try:
            if U.top.dim != U.dim + d or U.bottom.dim != U.dim + d:
                return False
            if not (C.has(U.top) and C.has(U.bottom)):
                return False
            if d > 0 and (C.src_n(U.top, d - 1) != C.src_n(U.bottom, d - 1)
                          or C.tgt_n(U.top, d - 1) != C.tgt_n(U.bottom, d - 1)):
                return False
            if U.dim == 0:
                p = U.principal
                return (p is not None and p.dim == d + 1 and C.has(p) and C.src(p) == U.top
                        and C.tgt(p) == U.bottom and E.reversible(p))
            fl, sh, S = U.flat, U.sharp, U.shift
            if fl is None or sh is None or S is None:
                return False
            if fl.dim != d + 1 or sh.dim != d + 1 or not (E.reversible(fl) and E.reversible(sh)):
                return False
            if C.src(fl) != C.src_n(U.top, d) or C.tgt(fl) != C.src_n(U.bottom, d):
                return False
            if C.src(sh) != C.tgt_n(U.top, d) or C.tgt(sh) != C.tgt_n(U.bottom, d):
                return False
            if S.dim != U.dim - 1 or S.depth != d + 1:
                return False
            if S.top != C.comp(U.top, sh, d) or S.bottom != C.comp(fl, U.bottom, d):
                return False
            return self.is_cylinder(S)
        except (BoundaryError, KeyError):
            return False

    def source(self, W: Cylinder) -> Cylinder:
        if W.dim == 0:
            raise BoundaryError("0-cylinders have no source")
        C = self.C
        x, y = C.src(W.top), C.src(W.bottom)
        if W.dim == 1:
            return Cylinder(0, W.depth, x, y, principal=W.flat)
        return Cylinder(W.dim - 1, W.depth, x, y, flat=W.flat, sharp=W.sharp, shift=self.source(W.shift))

    def target(self, W: Cylinder) -> Cylinder:
        if W.dim == 0:
            raise BoundaryError("0-cylinders have no target")
        C = self.C
        x, y = C.tgt(W.top), C.tgt(W.bottom)
        if W.dim == 1:
            return Cylinder(0, W.depth, x, y, principal=W.sharp)
        return Cylinder(W.dim - 1, W.depth, x, y, flat=W.flat, sharp=W.sharp, shift=self.target(W.shift))

    def source_n(self, W: Cylinder, n: int) -> Cylinder:
        while W.dim > n:
            W = self.source(W)
        return W

    def target_n(self, W: Cylinder, n: int) -> Cylinder:
        while W.dim > n:
            W = self.target(W)
        return W

    def triv(self, x: Cell, depth: int = 0) -> Cylinder:
        """τx : x ⇝̂ x."""
        C = self.C
        n = x.dim - depth
        if n < 0:
            raise BoundaryError(f"{x!r} is below depth {depth}")
        if n == 0:
            return Cylinder(0, depth, x, x, principal=C.unit(x))
        return Cylinder(n, depth, x, x, flat=C.unit(C.src_n(x, depth)), sharp=C.unit(C.tgt_n(x, depth)),
                        shift=self.triv(x, depth + 1))

    def degenerate_of(self, u: Cell, depth: int = 0) -> Cylinder:
        """The degenerate cylinder x ⇝̂ y of a reversible cell u : x ⇝ y."""
        if not self.E.reversible(u):
            raise NotReversible(f"{u!r} is not reversible")
        C = self.C
        n = u.dim - 1 - depth
        if n < 0:
            raise BoundaryError(f"{u!r} is below depth {depth}")
        x, y = C.src(u), C.tgt(u)
        if n == 0:
            return Cylinder(0, depth, x, y, principal=u)
        return Cylinder(n, depth, x, y, flat=C.unit(C.src_n(x, depth)), sharp=C.unit(C.tgt_n(x, depth)),
                        shift=self.degenerate_of(u, depth + 1))

    def is_degenerate(self, U: Cylinder) -> bool:
        if U.dim == 0:
            return True
        C = self.C
        return C.is_unit(U.flat) and C.is_unit(U.sharp) and self.is_degenerate(U.shift)

    def principal_of(self, U: Cylinder) -> Cell:
        if not self.is_degenerate(U):
            raise ValueError(f"{U!r} is not degenerate")
        while U.dim > 0:
            U = U.shift
        return U.principal

    # -- actions and products ---------------------------------------------------
    @staticmethod
    def map_cells(phi: Callable[[Cell], Cell], U: Cylinder) -> Cylinder:
        """Apply a cellwise ω-functor to every component (Γ on morphisms)."""
        if U.dim == 0:
            return U._replace(top=phi(U.top), bottom=phi(U.bottom), principal=phi(U.principal))
        return U._replace(top=phi(U.top), bottom=phi(U.bottom), flat=phi(U.flat), sharp=phi(U.sharp),
                          shift=CylinderCalculus.map_cells(phi, U.shift))

    def functor_apply(self, f: OmegaFunctor, U: Cylinder) -> Cylinder:
        return self.map_cells(f, U)

    def _check_hom(self, U: Cylinder) -> int:
        if U.depth < 1:
            raise BoundaryError("actions apply to cylinders inside a hom (depth >= 1)")
        return U.depth - 1

    def act_left(self, u: Cell, V: Cylinder) -> Cylinder:
        """u ⋆ V; a 1-cell acts componentwise, higher cells through τ[u] ⊛ V."""
        d = self._check_hom(V)
        C = self.C
        if C.tgt_n(u, d) != C.src_n(V.top, d):
            raise BoundaryError(f"{u!r} does not end where {V!r} starts")
        if u.dim == d + 1:
            return self.map_cells(lambda c: C.comp(u, c, d), V)
        return self.act_left_extended(u, V)

    def act_right(self, V: Cylinder, v: Cell) -> Cylinder:
        d = self._check_hom(V)
        C = self.C
        if C.tgt_n(V.top, d) != C.src_n(v, d):
            raise BoundaryError(f"{V!r} does not end where {v!r} starts")
        if v.dim == d + 1:
            return self.map_cells(lambda c: C.comp(c, v, d), V)
        return self.act_right_extended(V, v)

    def act_left_extended(self, u: Cell, V: Cylinder) -> Cylinder:
        """τ[1^{n+1} u] ⊛ V for V an n-cylinder."""
        d = self._check_hom(V)
        top = V.dim + 1 + d
        if u.dim > top:
            raise BoundaryError(f"{u!r} is too high-dimensional to act on {V!r}")
        return self.mult(self.triv(self.C.unit(u, top), d + 1), V)

    def act_right_extended(self, V: Cylinder, v: Cell) -> Cylinder:
        d = self._check_hom(V)
        top = V.dim + 1 + d
        if v.dim > top:
            raise BoundaryError(f"{v!r} is too high-dimensional to act on {V!r}")
        return self.mult(V, self.triv(self.C.unit(v, top), d + 1))

    def _zip(self, U: Cylinder, V: Cylinder, d: int) -> Cylinder:
        C = self.C
        if U.dim != V.dim or U.depth != V.depth:
            raise BoundaryError("cylinders of different shape")
        if U.dim == 0:
            return U._replace(top=C.comp(U.top, V.top, d), bottom=C.comp(U.bottom, V.bottom, d),
                              principal=C.comp(U.principal, V.principal, d))
        return U._replace(top=C.comp(U.top, V.top, d), bottom=C.comp(U.bottom, V.bottom, d),
                          flat=C.comp(U.flat, V.flat, d), sharp=C.comp(U.sharp, V.sharp, d),
                          shift=self._zip(U.shift, V.shift, d))

    def mult(self, U: Cylinder, V: Cylinder) -> Cylinder:
        """U ⊛ V for U in ⟨x,y⟩ and V in ⟨y,z⟩.

        Γ applied to the composition functor ⟨x,y⟩ × ⟨y,z⟩ → ⟨x,z⟩ through
        Γ(A × B) ≅ ΓA × ΓB: a componentwise ∘_d of the two cylinders.
        """
        d = self._check_hom(U)
        if V.depth != U.depth or V.dim != U.dim:
            raise BoundaryError("⊛ needs cylinders of equal dimension in consecutive homs")
        C = self.C
        if C.tgt_n(U.top, d) != C.src_n(V.top, d):
            raise BoundaryError(f"{U!r} and {V!r} are not in consecutive homs")
        out = self._zip(U, V, d)
        if self.cross_check:
            other = self.mult_by_commutation(U, V)
            if other != out:
                raise CrossCheckError(f"⊛ disagrees with the commutation formula on {U!r}, {V!r}")
        return out

    def whisker_right(self, U: Cylinder, v: Cell, d: int | None = None) -> Cylinder:
        """U ⋆ v for a cell v one level above U's cells, componentwise.

        Principal, top and bottom are composed with v; a flat at depth e with
        SRC_e v and a sharp with TGT_e v.
        """
        C = self.C
        if d is None:
            d = self._check_hom(U)
        e = U.depth
        if U.dim == 0:
            return U._replace(top=C.comp(U.top, v, d), bottom=C.comp(U.bottom, v, d),
                              principal=C.comp(U.principal, v, d))
        return U._replace(top=C.comp(U.top, v, d), bottom=C.comp(U.bottom, v, d),
                          flat=C.comp(U.flat, C.src_n(v, e), d), sharp=C.comp(U.sharp, C.tgt_n(v, e), d),
                          shift=self.whisker_right(U.shift, v, d))

    def whisker_left(self, u: Cell, V: Cylinder, d: int | None = None) -> Cylinder:
        C = self.C
        if d is None:
            d = self._check_hom(V)
        e = V.depth
        if V.dim == 0:
            return V._replace(top=C.comp(u, V.top, d), bottom=C.comp(u, V.bottom, d),
                              principal=C.comp(u, V.principal, d))
        return V._replace(top=C.comp(u, V.top, d), bottom=C.comp(u, V.bottom, d),
                          flat=C.comp(C.src_n(u, e), V.flat, d), sharp=C.comp(C.tgt_n(u, e), V.sharp, d),
                          shift=self.whisker_left(u, V.shift, d))

    def mult_by_commutation(self, U: Cylinder, V: Cylinder) -> Cylinder:
        """U ⋆ v ⋄ u′ ⋆ V with v = Top V and u′ = Bot U."""
        return self.concat(self.whisker_right(U, V.top), self.whisker_left(U.bottom, V))

    # -- concatenation, composition, units ---------------------------------
    def concat(self, U: Cylinder, V: Cylinder) -> Cylinder:
        """U ⋄ V for consecutive cylinders (Bot U = Top V)."""
        if U.dim != V.dim or U.depth != V.depth:
            raise BoundaryError("concatenation of cylinders of different shape")
        if U.bottom != V.top:
            raise BoundaryError(f"{U!r} and {V!r} are not consecutive")
        C, d = self.C, U.depth
        if U.dim == 0:
            return Cylinder(0, d, U.top, V.bottom, principal=C.comp(U.principal, V.principal, d))
        shift = self.concat(self.act_right(U.shift, V.sharp), self.act_left(U.flat, V.shift))
        return Cylinder(U.dim, d, U.top, V.bottom, flat=C.comp(U.flat, V.flat, d),
                        sharp=C.comp(U.sharp, V.sharp, d), shift=shift)

    def compose(self, U: Cylinder, V: Cylinder, n: int) -> Cylinder:
        """U ∘_n V for n-composable m-cylinders."""
        if U.dim != V.dim or U.depth != V.depth:
            raise BoundaryError("composition of cylinders of different shape")
        m = U.dim
        if not 0 <= n < m:
            raise BoundaryError(f"cannot compose {m}-cylinders along {n}")
        if self.target_n(U, n) != self.source_n(V, n):
            raise BoundaryError(f"{U!r} and {V!r} are not {n}-composable")
        C, d = self.C, U.depth
        top, bottom = C.comp(U.top, V.top, n + d), C.comp(U.bottom, V.bottom, n + d)
        if n == 0:
            shift = self.concat(self.act_left(U.top, V.shift), self.act_right(U.shift, V.bottom))
        else:
            shift = self.compose(U.shift, V.shift, n - 1)
        return Cylinder(m, d, top, bottom, flat=U.flat, sharp=V.sharp, shift=shift)

    def unit(self, U: Cylinder, m: int | None = None) -> Cylinder:
        """1^m U."""
        if m is None:
            m = U.dim + 1
        if m == U.dim:
            return U
        if m < U.dim:
            raise BoundaryError("unit to a lower dimension")
        C, d = self.C, U.depth
        top, bottom = C.unit(U.top, m + d), C.unit(U.bottom, m + d)
        if U.dim == 0:
            p = U.principal
            return Cylinder(m, d, top, bottom, flat=p, sharp=p, shift=self.triv(C.unit(p, m + d), d + 1))
        return Cylinder(m, d, top, bottom, flat=U.flat, sharp=U.sharp, shift=self.unit(U.shift, m - 1))

    # -- enumeration ----------------------------------------------------------
    def cylinders(self, n: int, depth: int, a: Cell, b: Cell) -> list[Cylinder]:
        """All n-cylinders a ⇝̂ b at the given depth."""
        key = (n, depth, a, b)
        got = self._cyl_memo.get(key)
        if got is not None:
            return got
        C, E = self.C, self.E
        out: list[Cylinder] = []
        if n == 0:
            out = [Cylinder(0, depth, a, b, principal=u) for u in E.reversible_cells(a, b)]
        else:
            flats = E.reversible_cells(C.src_n(a, depth), C.src_n(b, depth))
            sharps = E.reversible_cells(C.tgt_n(a, depth), C.tgt_n(b, depth)) if flats else []
            for fl in flats:
                for sh in sharps:
                    for S in self.cylinders(n - 1, depth + 1, C.comp(a, sh, depth), C.comp(fl, b, depth)):
                        out.append(Cylinder(n, depth, a, b, flat=fl, sharp=sh, shift=S))
        self._cyl_memo[key] = out
        return out

    def all_cylinders(self, n: int, depth: int = 0, budget: int = DEFAULT_CYLINDER_BUDGET) -> list[Cylinder]:
        """All n-cylinders at a depth (pairs of cells sharing their (depth-1)-boundaries)."""
        C = self.C
        cells = list(C.cells(n + depth))
        groups: dict[tuple, list[Cell]] = defaultdict(list)
        for c in cells:
            key = (C.src_n(c, depth - 1), C.tgt_n(c, depth - 1)) if depth > 0 else ()
            groups[key].append(c)
        out: list[Cylinder] = []
        for group in groups.values():
            for a in group:
                for b in group:
                    out.extend(self.cylinders(n, depth, a, b))
                    if len(out) > budget:
                        raise BudgetExceeded(f"{n}-cylinders at depth {depth}", len(out), budget)
        return out


# -- Γ(X) ------------------------------------------------------------------------

@dataclass
class GammaCat:
    """Γ(X) materialized, with the dictionary between cells and cylinders."""

    base: FiniteOmegaCat
    category: FiniteOmegaCat
    calc: CylinderCalculus
    cell_of: dict[Cylinder, Cell]
    cyl_of: dict[Cell, Cylinder]
    _functors: dict[str, OmegaFunctor] = field(default_factory=dict)

    @property
    def top(self) -> OmegaFunctor:
        if "top" not in self._functors:
            self._functors["top"] = OmegaFunctor(self.category, self.base,
                                                 {c: U.top for c, U in self.cyl_of.items()}, name="Top")
        return self._functors["top"]

    @property
    def bot(self) -> OmegaFunctor:
        if "bot" not in self._functors:
            self._functors["bot"] = OmegaFunctor(self.category, self.base,
                                                 {c: U.bottom for c, U in self.cyl_of.items()}, name="Bot")
        return self._functors["bot"]

    @property
    def triv(self) -> OmegaFunctor:
        if "triv" not in self._functors:
            self._functors["triv"] = OmegaFunctor(
                self.base, self.category,
                {x: self.cell_of[self.calc.triv(x)] for x in self.base.stored()}, name="Triv")
        return self._functors["triv"]

    def cell(self, U: Cylinder) -> Cell:
        """The Γ cell of a depth-0 cylinder (implicit units above the cap)."""
        cap = self.category.cap
        if U.dim <= cap:
            return self.cell_of[U]
        base = self.cell_of[self.calc.source_n(U, cap)]
        return Cell(U.dim, base.id)

    def cylinder(self, c: Cell) -> Cylinder:
        cap = self.category.cap
        if c.dim <= cap:
            return self.cyl_of[c]
        return self.calc.unit(self.cyl_of[Cell(cap, c.id)], c.dim)


def gamma(C: FiniteOmegaCat, budget: int = DEFAULT_CYLINDER_BUDGET, cross_check: bool = True) -> GammaCat:
    """Materialize Γ(C); it has the same cap as C."""
    cached = C.__dict__.get("_gamma")
    if cached is not None and cached.calc.cross_check == cross_check:
        return cached
    calc = CylinderCalculus(C, cross_check=cross_check)
    cap = C.cap
    levels: list[list[Cylinder]] = []
    total = 0
    for n in range(cap + 1):
        level = calc.all_cylinders(n, 0, budget=budget - total)
        total += len(level)
        levels.append(level)
    cell_of: dict[Cylinder, Cell] = {}
    for n, level in enumerate(levels):
        for U in level:
            cell_of[U] = Cell(n, U.key())
    cyl_of = {c: U for U, c in cell_of.items()}

    def look(U: Cylinder, what: str) -> Cell:
        try:
            return cell_of[U]
        except KeyError:
            raise StructuralError(f"Γ not closed: {what} gave {U!r}") from None

    src, tgt, unit, comp = {}, {}, {}, {}
    for n, level in enumerate(levels):
        for U in level:
            c = cell_of[U]
            if n > 0:
                src[c] = look(calc.source(U), "source")
                tgt[c] = look(calc.target(U), "target")
            if n < cap:
                unit[c] = look(calc.unit(U), "unit")
    for k in range(1, cap + 1):
        for p in range(k):
            by_src: dict[Cylinder, list[Cylinder]] = defaultdict(list)
            for V in levels[k]:
                by_src[calc.source_n(V, p)].append(V)
            for U in levels[k]:
                for V in by_src.get(calc.target_n(U, p), ()):
                    comp[(p, cell_of[U], cell_of[V])] = look(calc.compose(U, V, p), "composition")
    G = FiniteOmegaCat(cap, list(cyl_of), src, tgt, unit, comp, name=f"Γ({C.name})", cell_limit=None)
    out = GammaCat(C, G, calc, cell_of, cyl_of)
    C.__dict__["_gamma"] = out
    return out


def gamma_functor(f: OmegaFunctor, GX: GammaCat | None = None, GY: GammaCat | None = None) -> OmegaFunctor:
    """Γf : Γ(X) → Γ(Y), applying f to every component."""
    GX = GX or gamma(f.dom)
    GY = GY or gamma(f.cod)
    m = {c: GY.cell(CylinderCalculus.map_cells(f, U)) for c, U in GX.cyl_of.items()}
    return OmegaFunctor(GX.category, GY.category, m, name=f"Γ{f.name}")


def above_cap_units(G: GammaCat) -> list[Cylinder]:
    """(cap+1)-cylinders that are not units; empty for every valid base."""
    calc, cap = G.calc, G.base.cap
    bad = []
    for W in calc.all_cylinders(cap + 1, 0):
        if W != calc.unit(calc.source(W), cap + 1):
            bad.append(W)
    return bad


# -- operations on one base category ------------------------------------------

def calculus(C: FiniteOmegaCat) -> CylinderCalculus:
    """The cylinder calculus of C, shared with Γ(C) when it exists."""
    cached = C.__dict__.get("_gamma")
    if cached is not None:
        return cached.calc
    calc = C.__dict__.get("_calc")
    if calc is None:
        calc = C.__dict__["_calc"] = CylinderCalculus(C)
    return calc


def cyl_source(C: FiniteOmegaCat, W: Cylinder) -> Cylinder:
    return calculus(C).source(W)


def cyl_target(C: FiniteOmegaCat, W: Cylinder) -> Cylinder:
    return calculus(C).target(W)


def triv_cylinder(C: FiniteOmegaCat, x: Cell) -> Cylinder:
    return calculus(C).triv(x)


def cyl_act_left(C: FiniteOmegaCat, u: Cell, V: Cylinder) -> Cylinder:
    """u ⋆ V; cells above dimension 1 act through their trivial cylinder."""
    calc = calculus(C)
    return calc.act_left(u, V) if u.dim == V.depth + 1 else calc.act_left_extended(u, V)


def cyl_act_right(C: FiniteOmegaCat, V: Cylinder, v: Cell) -> Cylinder:
    calc = calculus(C)
    return calc.act_right(V, v) if v.dim == V.depth + 1 else calc.act_right_extended(V, v)


def cyl_mult(C: FiniteOmegaCat, U: Cylinder, V: Cylinder) -> Cylinder:
    return calculus(C).mult(U, V)


def cyl_concat(C: FiniteOmegaCat, U: Cylinder, V: Cylinder) -> Cylinder:
    return calculus(C).concat(U, V)


def cyl_compose(C: FiniteOmegaCat, U: Cylinder, V: Cylinder, n: int) -> Cylinder:
    return calculus(C).compose(U, V, n)


def cyl_unit(C: FiniteOmegaCat, U: Cylinder, m: int | None = None) -> Cylinder:
    return calculus(C).unit(U, m)


# -- Γ as a functor -------------------------------------------------------------

def gamma_product_report(X: FiniteOmegaCat, Y: FiniteOmegaCat) -> CheckReport:
    """(Γπ1, Γπ2) : Γ(X × Y) → ΓX × ΓY is a bijection in every dimension."""
    P, p1, p2 = product(X, Y)
    GP, GX, GY = gamma(P), gamma(X), gamma(Y)
    f1, f2 = gamma_functor(p1, GP, GX), gamma_functor(p2, GP, GY)
    fails = []
    for k in range(P.cap + 1):
        pairs = {(f1(c), f2(c)) for c in GP.category.cells(k)}
        have = len(GP.category.cells(k))
        want = len(GX.category.cells(k)) * len(GY.category.cells(k))
        if not (len(pairs) == have == want):
            fails.append({"law": "product", "dim": k, "cells": have, "pairs": len(pairs), "expected": want})
    return CheckReport.collect(f"Γ({X.name}×{Y.name})", fails)


def gamma_composition_report(f: OmegaFunctor, g: OmegaFunctor) -> CheckReport:
    """Γ(g∘f) = Γg∘Γf and Γ(id) = id."""
    fails = []
    GX, GY, GZ = gamma(f.dom), gamma(f.cod), gamma(g.cod)
    left = gamma_functor(g.after(f), GX, GZ)
    right = gamma_functor(g, GY, GZ).after(gamma_functor(f, GX, GY))
    if not left.equals(right):
        fails.append({"law": "composition", "f": f.name, "g": g.name})
    if not gamma_functor(identity(f.dom), GX, GX).equals(identity(GX.category)):
        fails.append({"law": "identity", "category": f.dom.name})
    return CheckReport.collect(f"Γ({g.name}∘{f.name})", fails)
