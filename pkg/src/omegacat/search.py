"""Backtracking search for ω-functors with constraint propagation.

Cells of the domain are assigned in order of dimension. Before branching on a
cell, its value is forced when it is a unit or a composite of cells already
assigned; candidate values are filtered by the images of its source and
target and by every composition entry whose operands are known.
"""
from __future__ import annotations

from collections import defaultdict
from typing import Callable, Iterable, Iterator, Mapping

from .core import Cell, FiniteOmegaCat, OmegaFunctor
from .errors import BoundaryError, BudgetExceeded

DEFAULT_NODE_BUDGET = 500_000


class FunctorSearch:
    def __init__(
        self,
        dom: FiniteOmegaCat,
        cod: FiniteOmegaCat,
        candidates: Callable[[Cell], Iterable[Cell]] | Mapping[Cell, Iterable[Cell]] | None = None,
        injective: bool = False,
        node_budget: int = DEFAULT_NODE_BUDGET,
    ):
        self.dom, self.cod = dom, cod
        if isinstance(candidates, Mapping):
            table = {c: list(v) for c, v in candidates.items()}
            self._cands = lambda c: table.get(c)
        else:
            self._cands = candidates or (lambda c: None)
        self.injective = injective
        self.node_budget = node_budget
        self.nodes = 0
        self.order = [c for k in range(dom.cap + 1) for c in dom.cells(k)]
        self._entries: dict[Cell, list[tuple[int, Cell, Cell, Cell]]] = defaultdict(list)
        self._result_of: dict[Cell, list[tuple[int, Cell, Cell]]] = defaultdict(list)
        for (p, u, v), r in dom._comp.items():
            for c in {u, v, r}:
                self._entries[c].append((p, u, v, r))
            self._result_of[r].append((p, u, v))

    def _domain(self, c: Cell, assign: dict[Cell, Cell], used: set[Cell]) -> list[Cell] | None:
        dom, cod = self.dom, self.cod
        if c.dim == 0:
            base = list(cod.cells(0))
        else:
            s, t = dom.src(c), dom.tgt(c)
            base = list(cod.hom(assign[s], assign[t]))
        forced = None
        if c in dom._base:
            forced = cod.unit(assign[dom._base[c]])
        for p, u, v in self._result_of.get(c, ()):
            if u in assign and v in assign:
                try:
                    val = cod.comp(assign[u], assign[v], p)
                except BoundaryError:
                    return []
                if forced is not None and forced != val:
                    return []
                forced = val
        if forced is not None:
            base = [forced] if forced in base else []
        extra = self._cands(c)
        if extra is not None:
            allowed = set(extra)
            base = [x for x in base if x in allowed]
        if self.injective:
            base = [x for x in base if x not in used]
        return [x for x in base if self._consistent(c, x, assign)]

    def _consistent(self, c: Cell, x: Cell, assign: dict[Cell, Cell]) -> bool:
        cod = self.cod
        assign[c] = x
        try:
            for p, u, v, r in self._entries.get(c, ()):
                if u in assign and v in assign and r in assign:
                    try:
                        if cod.comp(assign[u], assign[v], p) != assign[r]:
                            return False
                    except BoundaryError:
                        return False
            return True
        finally:
            del assign[c]

    def solutions(self) -> Iterator[dict[Cell, Cell]]:
        assign: dict[Cell, Cell] = {}
        used: set[Cell] = set()
        remaining = list(self.order)

        def go() -> Iterator[dict[Cell, Cell]]:
            self.nodes += 1
            if self.nodes > self.node_budget:
                raise BudgetExceeded("functor search nodes", self.nodes, self.node_budget)
            if not remaining:
                yield dict(assign)
                return
            low = remaining[0].dim
            best, best_dom = None, None
            for c in remaining:
                if c.dim != low:
                    break
                d = self._domain(c, assign, used)
                if best_dom is None or len(d) < len(best_dom):
                    best, best_dom = c, d
                    if len(d) <= 1:
                        break
            if not best_dom:
                return
            remaining.remove(best)
            for x in best_dom:
                assign[best] = x
                used.add(x)
                yield from go()
                used.discard(x)
                del assign[best]
            remaining.insert(0, best)

        yield from go()

    def functors(self, limit: int | None = None) -> Iterator[OmegaFunctor]:
        for i, sol in enumerate(self.solutions()):
            if limit is not None and i >= limit:
                return
            yield OmegaFunctor(self.dom, self.cod, sol)


def find_functor(dom: FiniteOmegaCat, cod: FiniteOmegaCat, **kw) -> OmegaFunctor | None:
    for f in FunctorSearch(dom, cod, **kw).functors(limit=1):
        return f
    return None


def enumerate_functors(dom: FiniteOmegaCat, cod: FiniteOmegaCat, limit: int | None = None, **kw) -> list[OmegaFunctor]:
    return list(FunctorSearch(dom, cod, **kw).functors(limit=limit))


def find_isomorphism(C: FiniteOmegaCat, D: FiniteOmegaCat, node_budget: int = DEFAULT_NODE_BUDGET) -> OmegaFunctor | None:
    """An isomorphism C → D (bijective functor), or None."""
    top = max(C.cap, D.cap)
    for k in range(top + 1):
        if len(C.cells(k)) != len(D.cells(k)):
            return None
    for X, other in ((C, D), (D, C)):
        for k in range(other.cap + 1, X.cap + 1):
            if not all(X.is_unit(c) for c in X.cells(k)):
                return None
    return find_functor(C, D, injective=True, node_budget=node_budget)


def isomorphic(C: FiniteOmegaCat, D: FiniteOmegaCat) -> bool:
    return find_isomorphism(C, D) is not None
