"""Reversible cells, ω-equivalence, weak division and weak equivalences.

ω-equivalence is coinductive, but in a category with cap N every cell above
N is a unit, so on k-cells with k >= N it is plain equality. The decider
works top-down from there:

* a k-cell u : x → y is reversible when some ū : y → x has
  u ∘ ū ≋ 1x and ū ∘ u ≋ 1y (≋ on k-cells, already known);
* two (k-1)-cells are ω-equivalent when a reversible k-cell joins them.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Any

from .core import Cell, FiniteOmegaCat, OmegaFunctor, cell_str
from .errors import BoundaryError, NotReversible
from .report import CheckReport


@dataclass(frozen=True)
class EqvWitness:
    """u : x ⇝ y with weak inverse ū.

    ``left`` witnesses u ∘ ū ≋ 1x and ``right`` witnesses ū ∘ u ≋ 1y; either
    is None when the composite is literally the unit.
    """

    forward: Cell
    backward: Cell
    left: "EqvWitness | None" = None
    right: "EqvWitness | None" = None

    def to_json(self) -> dict[str, Any]:
        return {
            "forward": cell_str(self.forward),
            "backward": cell_str(self.backward),
            "left": self.left.to_json() if self.left else None,
            "right": self.right.to_json() if self.right else None,
        }

    def depth(self) -> int:
        return 1 + max(self.left.depth() if self.left else 0, self.right.depth() if self.right else 0)


class Equivalence:
    """Decider for reversibility and ≋ on one finite category."""

    def __init__(self, C: FiniteOmegaCat):
        self.C = C
        self._inverse: dict[Cell, Cell] = {}
        self._joins: dict[tuple[Cell, Cell], Cell] = {}
        self._witness_memo: dict[Cell, EqvWitness] = {}
        N = C.cap
        for k in range(N, 0, -1):
            for u in C.cells(k):
                x, y = C.src(u), C.tgt(u)
                for ub in C.hom(y, x):
                    if self.equiv(C.comp(u, ub, k - 1), C.unit(x)) and self.equiv(C.comp(ub, u, k - 1), C.unit(y)):
                        self._inverse[u] = ub
                        break
            for u in C.cells(k):
                if u in self._inverse:
                    self._joins.setdefault((C.src(u), C.tgt(u)), u)

    # -- queries ---------------------------------------------------------------
    def weak_inverse(self, u: Cell) -> Cell | None:
        if u.dim > self.C.cap:
            return u
        return self._inverse.get(u)

    def reversible(self, u: Cell) -> bool:
        return self.weak_inverse(u) is not None

    def join(self, x: Cell, y: Cell) -> Cell | None:
        """Some reversible cell x → y, if any."""
        if x.dim >= self.C.cap:
            return self.C.unit(x) if x == y else None
        return self._joins.get((x, y))

    def equiv(self, x: Cell, y: Cell) -> bool:
        if x == y:
            return True
        if x.dim >= self.C.cap:
            return False
        return (x, y) in self._joins

    def reversible_cells(self, x: Cell, y: Cell) -> list[Cell]:
        return [u for u in self.C.hom(x, y) if self.reversible(u)]

    def classes(self, k: int) -> list[list[Cell]]:
        """≋-classes of k-cells, in cell order."""
        out: list[list[Cell]] = []
        for c in self.C.cells(k):
            for cls in out:
                if self.equiv(cls[0], c):
                    cls.append(c)
                    break
            else:
                out.append([c])
        return out

    # -- witnesses -------------------------------------------------------------
    def is_reversible(self, u: Cell) -> EqvWitness | None:
        if u.dim == 0:
            raise BoundaryError("0-cells cannot be reversible")
        ub = self.weak_inverse(u)
        if ub is None:
            return None
        if u in self._witness_memo:
            return self._witness_memo[u]
        C = self.C
        x, y = C.src(u), C.tgt(u)
        w = EqvWitness(u, ub, self.omega_equiv(C.comp(u, ub, u.dim - 1), C.unit(x), literal_none=True),
                       self.omega_equiv(C.comp(ub, u, u.dim - 1), C.unit(y), literal_none=True))
        self._witness_memo[u] = w
        return w

    def omega_equiv(self, x: Cell, y: Cell, literal_none: bool = False) -> EqvWitness | None:
        """Witness of x ≋ y (None if they are not equivalent).

        With ``literal_none`` the result is also None when x == y, which is
        how sub-witnesses record a composite that is literally a unit.
        """
        if not self.C.parallel(x, y):
            raise BoundaryError(f"{x!r} and {y!r} are not parallel")
        if x == y and literal_none:
            return None
        u = self.join(x, y)
        if u is None:
            if literal_none:
                raise AssertionError("sub-witness requested for non-equivalent cells")
            return None
        return self.is_reversible(u)


def check_witness(C: FiniteOmegaCat, w: EqvWitness, x: Cell | None = None, y: Cell | None = None) -> bool:
    """Independent check that a witness tree is valid in C."""
    u, ub = w.forward, w.backward
    if not (C.has(u) and C.has(ub)) or u.dim != ub.dim or u.dim == 0:
        return False
    a, b = C.src(u), C.tgt(u)
    if (x is not None and a != x) or (y is not None and b != y):
        return False
    if C.src(ub) != b or C.tgt(ub) != a:
        return False
    for comp, unit, sub in ((C.comp(u, ub, u.dim - 1), C.unit(a), w.left),
                            (C.comp(ub, u, u.dim - 1), C.unit(b), w.right)):
        if sub is None:
            if comp != unit:
                return False
        elif not check_witness(C, sub, comp, unit):
            return False
    return True


def map_witness(f: OmegaFunctor, w: EqvWitness | None) -> EqvWitness | None:
    """Image of a witness tree; a literal-unit leaf stays literal."""
    if w is None:
        return None
    return EqvWitness(f(w.forward), f(w.backward), map_witness(f, w.left), map_witness(f, w.right))


def decider(C: FiniteOmegaCat) -> Equivalence:
    """The decider of C, built once and cached on the category."""
    d = C.__dict__.get("_equivalence")
    if d is None:
        d = Equivalence(C)
        C.__dict__["_equivalence"] = d
    return d


def is_reversible(C: FiniteOmegaCat, u: Cell) -> EqvWitness | None:
    return decider(C).is_reversible(u)


def omega_equiv(C: FiniteOmegaCat, x: Cell, y: Cell) -> EqvWitness | None:
    return decider(C).omega_equiv(x, y)


# -- congruence ---------------------------------------------------------------

def congruence_suite(C: FiniteOmegaCat) -> CheckReport:
    """Reflexivity, symmetry, transitivity and whiskering-compatibility of ≋."""
    E = decider(C)
    fails: list[dict[str, Any]] = []
    top = C.cap + 1
    for k in range(top):
        for x in C.cells(k):
            w = E.is_reversible(C.unit(x))
            if w is None or not check_witness(C, w, x, x):
                fails.append({"law": "reflexivity", "cell": cell_str(x)})
    for k in range(1, top + 1):
        rev = [u for u in C.cells(k) if E.reversible(u)]
        for u in rev:
            w = E.is_reversible(u)
            if not check_witness(C, w):
                fails.append({"law": "witness", "cell": cell_str(u)})
            if not E.reversible(w.backward):
                fails.append({"law": "symmetry", "cell": cell_str(u)})
        by_src = defaultdict(list)
        for v in rev:
            by_src[C.src(v)].append(v)
        for u in rev:
            for v in by_src.get(C.tgt(u), ()):
                if not E.reversible(C.comp(u, v, k - 1)):
                    fails.append({"law": "transitivity", "cells": [cell_str(u), cell_str(v)]})
        # compatibility: whiskering a reversible k-cell along p < k-1 by a (p+1)-cell
        for p in range(k - 1):
            for v in rev:
                for u in C.cells(p + 1):
                    if C.tgt_n(u, p) == C.src_n(v, p) and not E.reversible(C.comp(u, v, p)):
                        fails.append({"law": "compatibility-left", "p": p, "cells": [cell_str(u), cell_str(v)]})
                    if C.src_n(u, p) == C.tgt_n(v, p) and not E.reversible(C.comp(v, u, p)):
                        fails.append({"law": "compatibility-right", "p": p, "cells": [cell_str(v), cell_str(u)]})
    return CheckReport.collect("congruence_suite", fails, category=C.name)


# -- division ---------------------------------------------------------------

def left_divide(C: FiniteOmegaCat, u: Cell, w: Cell, s: Cell | None = None, t: Cell | None = None,
                p: int | None = None) -> Cell:
    """v with u ∘_p v ≋ w, for a reversible (p+1)-cell u : x → y.

    When w is a (p+1)-cell the answer is ū ∘_p w. Otherwise w : u∘s → u∘t
    for given parallel s, t out of y, and the problem is moved one level up:
    with r : ū∘u ⇝ 1y, dividing (ū∘w) ∘ (r∘τ) by r∘σ where σ, τ are the
    (p+1)-boundaries of s, t.
    """
    E = decider(C)
    if p is None:
        p = u.dim - 1
    if u.dim != p + 1:
        raise BoundaryError("the divisor must be a (p+1)-cell")
    ub = E.weak_inverse(u)
    if ub is None:
        raise NotReversible(f"{u!r} is not reversible")
    x, y = C.src(u), C.tgt(u)
    if C.src_n(w, p) != x:
        raise BoundaryError(f"{w!r} does not start at {x!r}")
    if w.dim == p + 1:
        v = C.comp(ub, w, p)
    else:
        if s is None or t is None:
            raise BoundaryError("s and t are required when w is above the divisor")
        if not C.parallel(s, t) or s.dim != w.dim - 1 or C.src_n(s, p) != y:
            raise BoundaryError("s, t must be parallel cells starting at the divisor's target")
        if C.src(w) != C.comp(u, s, p) or C.tgt(w) != C.comp(u, t, p):
            raise BoundaryError(f"{w!r} is not a cell u∘s → u∘t")
        r = E.join(C.comp(ub, u, p), C.unit(y))
        sigma, tau = C.src_n(s, p + 1), C.tgt_n(t, p + 1)
        divisor = C.comp(r, sigma, p)
        w2 = C.comp(C.comp(ub, w, p), C.comp(r, tau, p), p + 1)
        if w.dim == p + 2:
            v = left_divide(C, divisor, w2, p=p + 1)
        else:
            v = left_divide(C, divisor, w2, s, t, p=p + 1)
    if not E.equiv(C.comp(u, v, p), w):
        raise AssertionError(f"left division check failed for {u!r}, {w!r}")
    return v


def right_divide(C: FiniteOmegaCat, u: Cell, w: Cell, s: Cell | None = None, t: Cell | None = None,
                 p: int | None = None) -> Cell:
    """v with v ∘_p u ≋ w, for a reversible (p+1)-cell u : x → y."""
    E = decider(C)
    if p is None:
        p = u.dim - 1
    if u.dim != p + 1:
        raise BoundaryError("the divisor must be a (p+1)-cell")
    ub = E.weak_inverse(u)
    if ub is None:
        raise NotReversible(f"{u!r} is not reversible")
    x, y = C.src(u), C.tgt(u)
    if C.tgt_n(w, p) != y:
        raise BoundaryError(f"{w!r} does not end at {y!r}")
    if w.dim == p + 1:
        v = C.comp(w, ub, p)
    else:
        if s is None or t is None:
            raise BoundaryError("s and t are required when w is above the divisor")
        if not C.parallel(s, t) or s.dim != w.dim - 1 or C.tgt_n(s, p) != x:
            raise BoundaryError("s, t must be parallel cells ending at the divisor's source")
        if C.src(w) != C.comp(s, u, p) or C.tgt(w) != C.comp(t, u, p):
            raise BoundaryError(f"{w!r} is not a cell s∘u → t∘u")
        r = E.join(C.comp(u, ub, p), C.unit(x))
        sigma, tau = C.src_n(s, p + 1), C.tgt_n(t, p + 1)
        divisor = C.comp(sigma, r, p)
        w2 = C.comp(C.comp(w, ub, p), C.comp(tau, r, p), p + 1)
        if w.dim == p + 2:
            v = left_divide(C, divisor, w2, p=p + 1)
        else:
            v = left_divide(C, divisor, w2, s, t, p=p + 1)
    if not E.equiv(C.comp(v, u, p), w):
        raise AssertionError(f"right division check failed for {u!r}, {w!r}")
    return v


def division_candidates(C: FiniteOmegaCat, u: Cell, w: Cell, s: Cell | None, t: Cell | None,
                        p: int, side: str = "left") -> list[Cell]:
    """Every v (by enumeration) with u ∘_p v ≋ w (or v ∘_p u ≋ w)."""
    E = decider(C)
    pool = list(C.cells(p + 1)) if w.dim == p + 1 else list(C.hom(s, t))
    out = []
    for v in pool:
        try:
            c = C.comp(u, v, p) if side == "left" else C.comp(v, u, p)
        except BoundaryError:
            continue
        if C.parallel(c, w) and E.equiv(c, w):
            out.append(v)
    return out


def weak_uniqueness(C: FiniteOmegaCat, u: Cell, w: Cell, s: Cell | None = None, t: Cell | None = None,
                    p: int | None = None, side: str = "left") -> CheckReport:
    """All solutions of the division problem are ω-equivalent to the constructed one."""
    if p is None:
        p = u.dim - 1
    v = (left_divide if side == "left" else right_divide)(C, u, w, s, t, p)
    E = decider(C)
    fails = [{"v": cell_str(v), "other": cell_str(o)}
             for o in division_candidates(C, u, w, s, t, p, side) if not E.equiv(v, o)]
    return CheckReport.collect("weak_uniqueness", fails, v=cell_str(v))


# -- functors ---------------------------------------------------------------

def _parallel_groups(X: FiniteOmegaCat, n: int) -> list[list[Cell]]:
    if n == 0:
        return [list(X.cells(0))]
    groups: dict[tuple[Cell, Cell], list[Cell]] = defaultdict(list)
    for x in X.cells(n):
        groups[(X.src(x), X.tgt(x))].append(x)
    return list(groups.values())


def _lifting_clauses(f: OmegaFunctor, weak: bool, name: str) -> CheckReport:
    X, Y = f.dom, f.cod
    EY = decider(Y) if weak else None
    same = (lambda a, b: EY.equiv(a, b)) if weak else (lambda a, b: a == b)
    fails: list[dict[str, Any]] = []
    images0 = {f(x) for x in X.cells(0)}
    for y in Y.cells(0):
        if not any(same(fx, y) for fx in images0):
            fails.append({"clause": "objects", "uncovered": cell_str(y)})
    for n in range(max(X.cap, Y.cap) + 1):
        for group in _parallel_groups(X, n):
            for x in group:
                for x2 in group:
                    images = {f(u) for u in X.hom(x, x2)}
                    for v in Y.hom(f(x), f(x2)):
                        if v in images or (weak and any(EY.equiv(i, v) for i in images)):
                            continue
                        fails.append({"clause": "cells", "x": cell_str(x), "x'": cell_str(x2), "v": cell_str(v)})
    return CheckReport.collect(name, fails, functor=f.name)


def is_weak_equivalence(f: OmegaFunctor) -> CheckReport:
    """Essential surjectivity up to ≋ on 0-cells and on every parallel hom."""
    return _lifting_clauses(f, True, "is_weak_equivalence")


def is_trivial_fibration(f: OmegaFunctor) -> CheckReport:
    """The same clauses with equality: f lifts against every globe inclusion."""
    return _lifting_clauses(f, False, "is_trivial_fibration")


def weak_injectivity_check(f: OmegaFunctor) -> CheckReport:
    """x ≋ x′ for all parallel x, x′ with f x ≋ f x′ (f a weak equivalence)."""
    if not is_weak_equivalence(f):
        raise ValueError("weak_injectivity_check expects a weak equivalence")
    X = f.dom
    EX, EY = decider(X), decider(f.cod)
    fails = []
    for n in range(X.cap + 1):
        for group in _parallel_groups(X, n):
            for x in group:
                for x2 in group:
                    if EY.equiv(f(x), f(x2)) and not EX.equiv(x, x2):
                        fails.append({"x": cell_str(x), "x'": cell_str(x2)})
    return CheckReport.collect("weak_injectivity", fails, functor=f.name)


def preserves_equivalence(f: OmegaFunctor) -> CheckReport:
    """Every witness in the domain maps to a valid witness in the codomain."""
    EX = decider(f.dom)
    fails = []
    for k in range(1, f.dom.cap + 1):
        for u in f.dom.cells(k):
            w = EX.is_reversible(u)
            if w is not None and not check_witness(f.cod, map_witness(f, w)):
                fails.append({"cell": cell_str(u)})
    return CheckReport.collect("preserves_equivalence", fails, functor=f.name)
