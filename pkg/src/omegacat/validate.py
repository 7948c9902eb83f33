"""Checkers for the strict ω-category axioms and for functors."""
from __future__ import annotations

from array import array
from typing import Any

from . import kernels
from .core import Cell, FiniteOmegaCat, OmegaFunctor, cell_str
from .report import CheckReport


class IntTables:
    """Dense integer form of a category's tables, as consumed by the kernels."""

    def __init__(self, C: FiniteOmegaCat):
        cap = C.cap
        self.cells = [list(C.cells(k)) for k in range(cap + 1)]
        self.index = [{c: i for i, c in enumerate(cs)} for cs in self.cells]
        self.n = [len(cs) for cs in self.cells]
        idx = self.index
        self.src: list[array | None] = [None]
        self.tgt: list[array | None] = [None]
        for k in range(1, cap + 1):
            self.src.append(array("i", [idx[k - 1][C._src[c]] for c in self.cells[k]]))
            self.tgt.append(array("i", [idx[k - 1][C._tgt[c]] for c in self.cells[k]]))
        self.unit = [array("i", [idx[k + 1][C._unit[c]] for c in self.cells[k]]) for k in range(cap)]
        self.comp: dict[tuple[int, int], array] = {}
        for k in range(1, cap + 1):
            for p in range(k):
                self.comp[(k, p)] = array("i", [-1]) * (self.n[k] * self.n[k])
        for (p, u, v), r in C._comp.items():
            k = u.dim
            self.comp[(k, p)][idx[k][u] * self.n[k] + idx[k][v]] = idx[k][r]

    def bound(self, k: int, p: int, which: str) -> array:
        """Iterated source or target from dimension k down to p, as an index array."""
        maps = self.src if which == "src" else self.tgt
        out = array("i", range(self.n[k]))
        for j in range(k, p, -1):
            m = maps[j]
            out = array("i", [m[i] for i in out])
        return out

    def lift(self, p: int, k: int) -> array:
        """Iterated unit from dimension p up to k, as an index array over p-cells."""
        out = array("i", range(self.n[p]))
        for j in range(p, k):
            m = self.unit[j]
            out = array("i", [m[i] for i in out])
        return out


def validate_category(C: FiniteOmegaCat, limit: int = 50, backend: Any = None) -> CheckReport:
    """Check globularity, units, composition domains and boundaries,
    associativity, unit laws, interchange and functoriality of units.

    Every violated instance is reported (up to ``limit`` per law and level).
    """
    kb = backend or kernels.backend
    T = IntTables(C)
    cap = C.cap
    fails: list[dict[str, Any]] = []

    def name(k: int, i: int) -> str:
        return cell_str(T.cells[k][i])

    for k in range(2, cap + 1):
        for i in kb.globular(T.src[k], T.tgt[k], T.src[k - 1], T.tgt[k - 1], limit):
            fails.append({"law": "globularity", "cell": name(k, i)})
    for k in range(cap):
        for i in kb.unit_sections(T.unit[k], T.src[k + 1], T.tgt[k + 1], limit):
            fails.append({"law": "unit-section", "cell": name(k, i)})
        seen: dict[int, int] = {}
        for i, u in enumerate(T.unit[k]):
            if u in seen:
                fails.append({"law": "unit-injective", "cells": [name(k, seen[u]), name(k, i)]})
            seen[u] = i
    bounds = {}
    for k in range(1, cap + 1):
        for p in range(k):
            bounds[(k, p)] = (T.bound(k, p, "src"), T.bound(k, p, "tgt"))
    for k in range(1, cap + 1):
        n = T.n[k]
        for p in range(k):
            tab = T.comp[(k, p)]
            sp, tp = bounds[(k, p)]
            for i, j, want in kb.comp_domain(tab, n, tp, sp, limit):
                fails.append({
                    "law": "composition-missing" if want else "composition-not-composable",
                    "k": k, "p": p, "cells": [name(k, i), name(k, j)],
                })
            if p == k - 1:
                bad = kb.comp_bounds_top(tab, n, T.src[k], T.tgt[k], limit)
            else:
                bad = kb.comp_bounds_low(tab, n, T.src[k], T.tgt[k], T.comp[(k - 1, p)], T.n[k - 1], limit)
            for i, j in bad:
                fails.append({"law": "composite-boundary", "k": k, "p": p, "cells": [name(k, i), name(k, j)]})
            for i, side in kb.unit_laws(tab, n, sp, tp, T.lift(p, k), limit):
                fails.append({"law": "left-unit" if side == 0 else "right-unit", "k": k, "p": p, "cell": name(k, i)})
            for i, j, l in kb.associativity(tab, n, limit):
                fails.append({"law": "associativity", "k": k, "p": p,
                              "cells": [name(k, i), name(k, j), name(k, l)]})
            for q in range(p + 1, k):
                for quad in kb.interchange(tab, T.comp[(k, q)], n, limit):
                    fails.append({"law": "interchange", "k": k, "p": p, "n": q,
                                  "cells": [name(k, i) for i in quad]})
    for k in range(1, cap):
        for p in range(k):
            for i, j in kb.unit_functoriality(T.comp[(k, p)], T.n[k], T.comp[(k + 1, p)], T.n[k + 1], T.unit[k], limit):
                fails.append({"law": "unit-functoriality", "k": k, "p": p, "cells": [name(k, i), name(k, j)]})
    return CheckReport.collect("validate_category", fails, category=C.name, cap=cap, cells=T.n)


def validate_functor(f: OmegaFunctor, limit: int = 50) -> CheckReport:
    """Check that f commutes with sources, targets, units and compositions."""
    dom, cod = f.dom, f.cod
    fails: list[dict[str, Any]] = []

    def note(entry: dict[str, Any]) -> None:
        if len(fails) < limit:
            fails.append(entry)

    for c in dom.stored():
        fc = f(c)
        if c.dim > 0:
            if cod.src(fc) != f(dom.src(c)):
                note({"law": "source", "cell": cell_str(c), "image": cell_str(fc)})
            if cod.tgt(fc) != f(dom.tgt(c)):
                note({"law": "target", "cell": cell_str(c), "image": cell_str(fc)})
        if c.dim < dom.cap and f(dom.unit(c)) != cod.unit(fc):
            note({"law": "unit", "cell": cell_str(c)})
    for (p, u, v), r in dom._comp.items():
        fu, fv = f(u), f(v)
        if not cod.composable(fu, fv, p) or cod.comp(fu, fv, p) != f(r):
            note({"law": "composition", "p": p, "cells": [cell_str(u), cell_str(v)]})
    return CheckReport.collect("validate_functor", fails, functor=f.name)


def is_valid(C: FiniteOmegaCat) -> bool:
    return validate_category(C, limit=1).holds


def cells_json(cs: list[Cell]) -> list[str]:
    return [cell_str(c) for c in cs]
