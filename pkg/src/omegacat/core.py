"""Finite strict n-categories stored as explicit tables.

A category has a cap N: cells of dimension k <= N are stored, cells above N
are implicit iterated units. An implicit k-cell (k > N) carries the id of the
N-cell it is a unit of, so ``Cell(k, x)`` for k > N means ``1^k x``.
"""
from __future__ import annotations

import json
from collections import defaultdict
from typing import Any, Callable, Iterable, Iterator, Mapping, NamedTuple

from .errors import BoundaryError, BudgetExceeded, StructuralError

DEFAULT_CELL_LIMIT = 10_000


class Cell(NamedTuple):
    dim: int
    id: str

    def __repr__(self) -> str:
        return f"{self.id}@{self.dim}"


def cell_str(c: Cell) -> str:
    return f"{c.id}@{c.dim}"


class FiniteOmegaCat:
    """Dimension-capped strict ω-category given by tables.

    ``src``/``tgt`` map every stored cell of dimension >= 1 to a cell one
    dimension down, ``unit`` maps every stored cell below the cap one
    dimension up, and ``comp`` maps ``(p, u, v)`` to ``u ∘_p v`` for stored
    k-cells u, v with p < k. Construction checks only that the data is well
    formed; the axioms are certified by :func:`validate_category`.
    """

    def __init__(
        self,
        cap: int,
        cells: Iterable[Cell],
        src: Mapping[Cell, Cell],
        tgt: Mapping[Cell, Cell],
        unit: Mapping[Cell, Cell],
        comp: Mapping[tuple[int, Cell, Cell], Cell],
        name: str = "",
        cell_limit: int | None = DEFAULT_CELL_LIMIT,
    ):
        if cap < 0:
            raise StructuralError("cap must be a natural number")
        self.cap = cap
        self.name = name
        by_dim: list[list[Cell]] = [[] for _ in range(cap + 1)]
        seen: set[Cell] = set()
        for c in cells:
            c = Cell(int(c[0]), str(c[1]))
            if not 0 <= c.dim <= cap:
                raise StructuralError(f"cell {c!r} outside dimensions 0..{cap}")
            if c in seen:
                raise StructuralError(f"duplicate cell {c!r}")
            seen.add(c)
            by_dim[c.dim].append(c)
        if cell_limit is not None:
            for k, cs in enumerate(by_dim):
                if len(cs) > cell_limit:
                    raise BudgetExceeded(f"cells in dimension {k}", len(cs), cell_limit)
        self._cells = [tuple(cs) for cs in by_dim]
        self._set = seen

        def resolve(c: Cell, dim: int, what: str) -> Cell:
            c = Cell(int(c[0]), str(c[1]))
            if c not in seen or c.dim != dim:
                raise StructuralError(f"{what}: dangling reference {c!r} (expected dimension {dim})")
            return c

        self._src: dict[Cell, Cell] = {}
        self._tgt: dict[Cell, Cell] = {}
        for table, out, what in ((src, self._src, "src"), (tgt, self._tgt, "tgt")):
            for c, d in table.items():
                c = resolve(c, c[0], what)
                if c.dim == 0:
                    raise StructuralError(f"{what} given for 0-cell {c!r}")
                out[c] = resolve(d, c.dim - 1, what)
            for k in range(1, cap + 1):
                for c in by_dim[k]:
                    if c not in out:
                        raise StructuralError(f"{what} missing for {c!r}")
        self._unit: dict[Cell, Cell] = {}
        for c, d in unit.items():
            c = resolve(c, c[0], "unit")
            if c.dim >= cap:
                raise StructuralError(f"unit given for {c!r} at or above the cap")
            self._unit[c] = resolve(d, c.dim + 1, "unit")
        for k in range(cap):
            for c in by_dim[k]:
                if c not in self._unit:
                    raise StructuralError(f"unit missing for {c!r}")
        self._comp: dict[tuple[int, Cell, Cell], Cell] = {}
        for (p, u, v), r in comp.items():
            u = resolve(u, u[0], "comp")
            v = resolve(v, u.dim, "comp")
            r = resolve(r, u.dim, "comp")
            if not 0 <= p < u.dim:
                raise StructuralError(f"comp: bad codimension {p} for {u!r}, {v!r}")
            self._comp[(int(p), u, v)] = r
        self._base: dict[Cell, Cell] = {}
        for c, d in self._unit.items():
            self._base.setdefault(d, c)
        self._homs: dict[tuple[Cell, Cell], list[Cell]] = defaultdict(list)
        for k in range(1, cap + 1):
            for c in by_dim[k]:
                self._homs[(self._src[c], self._tgt[c])].append(c)

    # -- basic queries -------------------------------------------------
    def __repr__(self) -> str:
        counts = [len(cs) for cs in self._cells]
        return f"FiniteOmegaCat({self.name or '?'}, cap={self.cap}, cells={counts})"

    def cells(self, k: int) -> tuple[Cell, ...] | list[Cell]:
        """All k-cells, including implicit units when k is above the cap."""
        if k <= self.cap:
            return self._cells[k]
        return [Cell(k, c.id) for c in self._cells[self.cap]]

    def stored(self) -> Iterator[Cell]:
        for cs in self._cells:
            yield from cs

    def has(self, c: Cell) -> bool:
        if c.dim <= self.cap:
            return c in self._set
        return Cell(self.cap, c.id) in self._set

    def count(self, k: int) -> int:
        return len(self._cells[min(k, self.cap)])

    @property
    def size(self) -> int:
        """Number of stored non-unit cells."""
        return sum(1 for c in self.stored() if c not in self._base)

    def src(self, c: Cell) -> Cell:
        if c.dim == 0:
            raise BoundaryError(f"0-cell {c!r} has no source")
        if c.dim > self.cap:
            return Cell(c.dim - 1, c.id)
        return self._src[c]

    def tgt(self, c: Cell) -> Cell:
        if c.dim == 0:
            raise BoundaryError(f"0-cell {c!r} has no target")
        if c.dim > self.cap:
            return Cell(c.dim - 1, c.id)
        return self._tgt[c]

    def src_n(self, c: Cell, n: int) -> Cell:
        """Iterated source down to dimension n (the cell itself if n >= dim)."""
        while c.dim > n:
            c = self.src(c)
        return c

    def tgt_n(self, c: Cell, n: int) -> Cell:
        while c.dim > n:
            c = self.tgt(c)
        return c

    def unit(self, c: Cell, m: int | None = None) -> Cell:
        """Iterated unit 1^m c (default one dimension up)."""
        if m is None:
            m = c.dim + 1
        while c.dim < m:
            c = self._unit[c] if c.dim < self.cap else Cell(c.dim + 1, c.id)
        return c

    def is_unit(self, c: Cell) -> bool:
        return c.dim > self.cap or c in self._base

    def unit_base(self, c: Cell) -> Cell:
        """Strip units: the lowest cell c is an iterated unit of."""
        if c.dim > self.cap:
            c = Cell(self.cap, c.id)
        while c in self._base:
            c = self._base[c]
        return c

    def parallel(self, x: Cell, y: Cell) -> bool:
        if x.dim != y.dim:
            return False
        if x.dim == 0:
            return True
        return self.src(x) == self.src(y) and self.tgt(x) == self.tgt(y)

    def hom(self, x: Cell, y: Cell) -> list[Cell]:
        """Cells u : x -> y one dimension above x."""
        if x.dim < self.cap:
            return self._homs.get((x, y), [])
        return [Cell(x.dim + 1, x.id)] if x == y else []

    def composable(self, u: Cell, v: Cell, p: int) -> bool:
        k = max(u.dim, v.dim)
        if p >= k:
            return False
        return self.tgt_n(self.unit(u, k), p) == self.src_n(self.unit(v, k), p)

    def comp(self, u: Cell, v: Cell, p: int) -> Cell:
        """u ∘_p v; a lower-dimensional operand is padded with units."""
        k = max(u.dim, v.dim)
        if p >= k:
            raise BoundaryError(f"cannot compose {u!r} and {v!r} along {p}")
        if u.dim < k:
            u = self.unit(u, k)
        if v.dim < k:
            v = self.unit(v, k)
        if k <= self.cap:
            r = self._comp.get((p, u, v))
            if r is None:
                raise BoundaryError(f"{u!r} and {v!r} are not {p}-composable")
            return r
        if p < self.cap:
            r = self.comp(Cell(self.cap, u.id), Cell(self.cap, v.id), p)
            return Cell(k, r.id)
        if u.id != v.id:
            raise BoundaryError(f"{u!r} and {v!r} are not {p}-composable")
        return u

    def composable_pairs(self, k: int, p: int) -> Iterator[tuple[Cell, Cell]]:
        """All pairs of k-cells (u, v) with TGT_p u = SRC_p v."""
        by_src: dict[Cell, list[Cell]] = defaultdict(list)
        for v in self.cells(k):
            by_src[self.src_n(v, p)].append(v)
        for u in self.cells(k):
            for v in by_src.get(self.tgt_n(u, p), ()):
                yield u, v

    def lookup(self, dim: int, id: str) -> Cell:
        c = Cell(dim, id)
        if not self.has(c):
            raise StructuralError(f"no cell {c!r} in {self.name or 'category'}")
        return c

    # -- comparison and serialization ----------------------------------
    def equals(self, other: "FiniteOmegaCat") -> bool:
        """Structural equality of all tables (ids included)."""
        return (
            self.cap == other.cap
            and self._set == other._set
            and self._src == other._src
            and self._tgt == other._tgt
            and self._unit == other._unit
            and self._comp == other._comp
        )

    def tables(self) -> dict[str, Any]:
        return {
            "cells": [c for c in self.stored()],
            "src": dict(self._src),
            "tgt": dict(self._tgt),
            "unit": dict(self._unit),
            "comp": dict(self._comp),
        }

    def to_json(self) -> dict[str, Any]:
        return {
            "schema": "category.v1",
            "name": self.name,
            "cap": self.cap,
            "cells": [{"dim": c.dim, "id": c.id} for c in self.stored()],
            "src": [{"dim": c.dim, "from": c.id, "to": d.id} for c, d in self._src.items()],
            "tgt": [{"dim": c.dim, "from": c.id, "to": d.id} for c, d in self._tgt.items()],
            "units": [{"dim": c.dim, "of": c.id, "is": d.id} for c, d in self._unit.items()],
            "comps": [
                {"dimK": u.dim, "dimP": p, "left": u.id, "right": v.id, "result": r.id}
                for (p, u, v), r in self._comp.items()
            ],
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "FiniteOmegaCat":
        schema = data.get("schema", "category.v1")
        if schema != "category.v1":
            raise StructuralError(f"unsupported schema {schema!r}")
        try:
            cap = int(data["cap"])
            cells = [Cell(int(c["dim"]), str(c["id"])) for c in data["cells"]]
        except (KeyError, TypeError, ValueError) as e:
            raise StructuralError(f"/cells: {e}") from e
        dims_of: dict[str, list[int]] = defaultdict(list)
        for c in cells:
            dims_of[c.id].append(c.dim)

        def ref(entry: dict, key: str, dim: int | None, path: str) -> Cell:
            if key not in entry:
                raise StructuralError(f"{path}: missing {key!r}")
            cid = str(entry[key])
            if dim is None:
                dims = dims_of.get(cid, [])
                if len(dims) != 1:
                    raise StructuralError(f"{path}/{key}: ambiguous or unknown id {cid!r}; give 'dim'")
                dim = dims[0]
            return Cell(dim, cid)

        src, tgt, unit, comp = {}, {}, {}, {}
        for key, table in (("src", src), ("tgt", tgt)):
            for i, e in enumerate(data.get(key, [])):
                c = ref(e, "from", e.get("dim"), f"/{key}/{i}")
                table[c] = ref(e, "to", c.dim - 1, f"/{key}/{i}")
        for i, e in enumerate(data.get("units", [])):
            c = ref(e, "of", e.get("dim"), f"/units/{i}")
            unit[c] = ref(e, "is", c.dim + 1, f"/units/{i}")
        for i, e in enumerate(data.get("comps", [])):
            k = int(e["dimK"])
            comp[(int(e["dimP"]), Cell(k, str(e["left"])), Cell(k, str(e["right"])))] = Cell(k, str(e["result"]))
        return cls(cap, cells, src, tgt, unit, comp, name=data.get("name", ""))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), ensure_ascii=False, indent=1)


class OmegaFunctor:
    """Structure-preserving map, given on stored cells of the domain.

    Entries for unit cells may be omitted; they are filled in as units of the
    image. Cells above the domain cap map to units of the image of their
    base.
    """

    def __init__(
        self,
        dom: FiniteOmegaCat,
        cod: FiniteOmegaCat,
        mapping: Mapping[Cell, Cell],
        name: str = "",
    ):
        self.dom = dom
        self.cod = cod
        self.name = name
        m: dict[Cell, Cell] = {}
        for k in range(dom.cap + 1):
            for c in dom.cells(k):
                if c in mapping:
                    img = Cell(int(mapping[c][0]), str(mapping[c][1]))
                elif c in dom._base:
                    img = cod.unit(m[dom._base[c]])
                else:
                    raise StructuralError(f"functor {name or '?'}: no image for {c!r}")
                if img.dim != c.dim or not cod.has(img):
                    raise StructuralError(f"functor {name or '?'}: image {img!r} of {c!r} is not a cell of the codomain")
                m[c] = img
        self._map = m

    def __call__(self, c: Cell) -> Cell:
        if c.dim <= self.dom.cap:
            return self._map[c]
        return self.cod.unit(self._map[Cell(self.dom.cap, c.id)], c.dim)

    def __repr__(self) -> str:
        return f"OmegaFunctor({self.name or '?'}: {self.dom.name or '?'} -> {self.cod.name or '?'})"

    @property
    def mapping(self) -> dict[Cell, Cell]:
        return dict(self._map)

    def after(self, f: "OmegaFunctor") -> "OmegaFunctor":
        """self ∘ f."""
        if f.cod is not self.dom:
            raise BoundaryError("functors are not composable")
        return OmegaFunctor(f.dom, self.cod, {c: self(f(c)) for c in f.dom.stored()},
                            name=f"{self.name}∘{f.name}")

    def equals(self, other: "OmegaFunctor") -> bool:
        top = max(self.dom.cap, other.dom.cap)
        return all(
            self(c) == other(c) for k in range(top + 1) for c in self.dom.cells(k)
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "schema": "functor.v1",
            "dom": self.dom.to_json(),
            "cod": self.cod.to_json(),
            "map": [{"dim": c.dim, "from": c.id, "to": d.id} for c, d in self._map.items()],
        }

    @classmethod
    def from_json(cls, data: dict[str, Any], dom: FiniteOmegaCat | None = None,
                  cod: FiniteOmegaCat | None = None) -> "OmegaFunctor":
        if data.get("schema", "functor.v1") != "functor.v1":
            raise StructuralError(f"unsupported schema {data.get('schema')!r}")
        dom = dom or FiniteOmegaCat.from_json(data["dom"])
        cod = cod or FiniteOmegaCat.from_json(data["cod"])
        mapping = {}
        for i, e in enumerate(data.get("map", [])):
            try:
                mapping[Cell(int(e["dim"]), str(e["from"]))] = Cell(int(e["dim"]), str(e["to"]))
            except KeyError as err:
                raise StructuralError(f"/map/{i}: missing {err}") from err
        return cls(dom, cod, mapping)


def identity(C: FiniteOmegaCat) -> OmegaFunctor:
    return OmegaFunctor(C, C, {c: c for c in C.stored()}, name="id")


def constant_functor(C: FiniteOmegaCat, D: FiniteOmegaCat, x: Cell) -> OmegaFunctor:
    """Send every cell of C to the appropriate iterated unit of the 0-cell x."""
    return OmegaFunctor(C, D, {c: D.unit(x, c.dim) for c in C.stored()}, name=f"const {x.id}")


# -- builder -----------------------------------------------------------------

class CategoryBuilder:
    """Declare non-unit cells and non-trivial composites; the rest is derived.

    ``build`` adds a unit ``1_x`` for every cell below the cap that lacks one
    and fills every composite determined by the unit laws and by
    functoriality of units. Composable pairs that remain undetermined are a
    structural error.
    """

    def __init__(self, cap: int, name: str = ""):
        self.cap = cap
        self.name = name
        self._cells: list[Cell] = []
        self._declared: set[Cell] = set()
        self._src: dict[Cell, Cell] = {}
        self._tgt: dict[Cell, Cell] = {}
        self._unit: dict[Cell, Cell] = {}
        self._comp: dict[tuple[int, Cell, Cell], Cell] = {}

    def add(self, dim: int, id: str, src: str | None = None, tgt: str | None = None) -> Cell:
        c = Cell(dim, id)
        if c in self._declared:
            raise StructuralError(f"cell {c!r} declared twice")
        self._declared.add(c)
        self._cells.append(c)
        if dim > 0:
            if src is None or tgt is None:
                raise StructuralError(f"{c!r} needs a source and a target")
            self._src[c] = Cell(dim - 1, src)
            self._tgt[c] = Cell(dim - 1, tgt)
        return c

    def unit(self, of: Cell, id: str) -> Cell:
        """Name the unit of ``of`` explicitly (it is added if not yet declared)."""
        u = Cell(of.dim + 1, id)
        if u not in self._declared:
            self._declared.add(u)
            self._cells.append(u)
        self._src[u] = of
        self._tgt[u] = of
        self._unit[of] = u
        return u

    def compose(self, p: int, left: str, right: str, result: str, dim: int) -> None:
        self._comp[(p, Cell(dim, left), Cell(dim, right))] = Cell(dim, result)

    def build(self) -> FiniteOmegaCat:
        cells = list(self._cells)
        src, tgt, unit = dict(self._src), dict(self._tgt), dict(self._unit)
        names = set(cells)
        for k in range(self.cap):
            for c in [c for c in cells if c.dim == k]:
                if c in unit:
                    continue
                u = Cell(k + 1, "1_" + c.id)
                if u in names:
                    raise StructuralError(f"unit name {u!r} already taken")
                names.add(u)
                cells.append(u)
                src[u] = tgt[u] = c
                unit[c] = u
        base = {u: c for c, u in unit.items()}
        comp = dict(self._comp)
        by_dim: dict[int, list[Cell]] = defaultdict(list)
        for c in cells:
            by_dim[c.dim].append(c)

        def strip(c: Cell) -> Cell:
            while c in base:
                c = base[c]
            return c

        def bnd(c: Cell, n: int, table: dict[Cell, Cell]) -> Cell:
            while c.dim > n:
                c = table[c]
            return c

        missing = []
        for k in range(1, self.cap + 1):
            for p in range(k):
                by_s: dict[Cell, list[Cell]] = defaultdict(list)
                for v in by_dim[k]:
                    by_s[bnd(v, p, src)].append(v)
                for u in by_dim[k]:
                    for v in by_s.get(bnd(u, p, tgt), ()):
                        if (p, u, v) in comp:
                            continue
                        if strip(u).dim <= p:
                            comp[(p, u, v)] = v
                        elif strip(v).dim <= p:
                            comp[(p, u, v)] = u
                        elif u in base and v in base and p < k - 1 and (p, base[u], base[v]) in comp:
                            comp[(p, u, v)] = unit[comp[(p, base[u], base[v])]]
                        else:
                            missing.append((p, u, v))
        if missing:
            shown = ", ".join(f"{u!r} ∘{p} {v!r}" for p, u, v in missing[:8])
            raise StructuralError(f"undetermined composites ({len(missing)}): {shown}")
        return FiniteOmegaCat(self.cap, cells, src, tgt, unit, comp, name=self.name)


# -- constructions -----------------------------------------------------------

def pair_cell(a: Cell, b: Cell) -> Cell:
    """The cell standing for (a, b) in products and pullbacks."""
    return Cell(a.dim, f"({a.id},{b.id})")


def _from_pairs(
    cap: int,
    pairs: list[list[tuple[Cell, Cell]]],
    A: FiniteOmegaCat,
    B: FiniteOmegaCat,
    name: str,
) -> tuple[FiniteOmegaCat, dict[tuple[Cell, Cell], Cell]]:
    """Materialize a subcategory of A × B given its cells, closed under everything."""
    cell_of: dict[tuple[Cell, Cell], Cell] = {}
    cells = []
    for k, level in enumerate(pairs):
        for a, b in level:
            c = pair_cell(a, b)
            if c in cell_of.values():
                raise StructuralError(f"pair id collision at {c!r}")
            cell_of[(a, b)] = c
            cells.append(c)
    src, tgt, unit, comp = {}, {}, {}, {}
    for k, level in enumerate(pairs):
        for a, b in level:
            c = cell_of[(a, b)]
            if k > 0:
                src[c] = cell_of[(A.src(a), B.src(b))]
                tgt[c] = cell_of[(A.tgt(a), B.tgt(b))]
            if k < cap:
                unit[c] = cell_of[(A.unit(a), B.unit(b))]
        for p in range(k):
            by_src: dict[tuple[Cell, Cell], list[tuple[Cell, Cell]]] = defaultdict(list)
            for a, b in level:
                by_src[(A.src_n(a, p), B.src_n(b, p))].append((a, b))
            for a, b in level:
                for a2, b2 in by_src.get((A.tgt_n(a, p), B.tgt_n(b, p)), ()):
                    r = cell_of[(A.comp(a, a2, p), B.comp(b, b2, p))]
                    comp[(p, cell_of[(a, b)], cell_of[(a2, b2)])] = r
    return FiniteOmegaCat(cap, cells, src, tgt, unit, comp, name=name), cell_of


def product(C: FiniteOmegaCat, D: FiniteOmegaCat) -> tuple[FiniteOmegaCat, OmegaFunctor, OmegaFunctor]:
    """C × D with its two projections."""
    cap = max(C.cap, D.cap)
    pairs = [[(a, b) for a in C.cells(k) for b in D.cells(k)] for k in range(cap + 1)]
    P, cell_of = _from_pairs(cap, pairs, C, D, f"{C.name}×{D.name}")
    p1 = OmegaFunctor(P, C, {c: a for (a, _), c in cell_of.items()}, name="π1")
    p2 = OmegaFunctor(P, D, {c: b for (_, b), c in cell_of.items()}, name="π2")
    return P, p1, p2


def pullback(f: OmegaFunctor, g: OmegaFunctor, name: str = "") -> tuple[FiniteOmegaCat, OmegaFunctor, OmegaFunctor]:
    """Pullback of A -f-> C <-g- B, enumerated by grouping B over its image."""
    if f.cod is not g.cod:
        raise BoundaryError("pullback of functors with different codomains")
    A, B = f.dom, g.dom
    cap = max(A.cap, B.cap)
    pairs = []
    for k in range(cap + 1):
        over: dict[Cell, list[Cell]] = defaultdict(list)
        for b in B.cells(k):
            over[g(b)].append(b)
        pairs.append([(a, b) for a in A.cells(k) for b in over.get(f(a), ())])
    P, cell_of = _from_pairs(cap, pairs, A, B, name or f"{A.name}×_{f.cod.name}{B.name}")
    p1 = OmegaFunctor(P, A, {c: a for (a, _), c in cell_of.items()}, name="pr1")
    p2 = OmegaFunctor(P, B, {c: b for (_, b), c in cell_of.items()}, name="pr2")
    return P, p1, p2


def coproduct(C: FiniteOmegaCat, D: FiniteOmegaCat) -> tuple[FiniteOmegaCat, OmegaFunctor, OmegaFunctor]:
    """Disjoint union with ids tagged ``0.`` and ``1.``."""
    cap = max(C.cap, D.cap)
    cells, src, tgt, unit, comp = [], {}, {}, {}, {}
    injections = []
    for tag, X in (("0.", C), ("1.", D)):
        inj = {}
        for k in range(cap + 1):
            for c in X.cells(k):
                inj[c] = Cell(k, tag + c.id)
        for c, t in inj.items():
            cells.append(t)
            if c.dim > 0:
                src[t] = inj[X.src(c)]
                tgt[t] = inj[X.tgt(c)]
            if c.dim < cap:
                unit[t] = inj[X.unit(c)]
        for k in range(1, cap + 1):
            for p in range(k):
                for u, v in X.composable_pairs(k, p):
                    comp[(p, inj[u], inj[v])] = inj[X.comp(u, v, p)]
        injections.append(inj)
    S = FiniteOmegaCat(cap, cells, src, tgt, unit, comp, name=f"{C.name}+{D.name}")
    return S, OmegaFunctor(C, S, injections[0], name="in0"), OmegaFunctor(D, S, injections[1], name="in1")


def raise_cap(C: FiniteOmegaCat, cap: int) -> FiniteOmegaCat:
    """The same ω-category with implicit units stored explicitly up to ``cap``."""
    if cap < C.cap:
        raise StructuralError("raise_cap cannot lower the cap")
    cells, src, tgt, unit, comp = [], {}, {}, {}, {}
    for k in range(cap + 1):
        for c in C.cells(k):
            cells.append(c)
            if k > 0:
                src[c], tgt[c] = C.src(c), C.tgt(c)
            if k < cap:
                unit[c] = C.unit(c)
    for k in range(1, cap + 1):
        for p in range(k):
            for u, v in C.composable_pairs(k, p):
                comp[(p, u, v)] = C.comp(u, v, p)
    return FiniteOmegaCat(cap, cells, src, tgt, unit, comp, name=C.name)


def full_subcategory(C: FiniteOmegaCat, keep: Callable[[Cell], bool], name: str = "") -> FiniteOmegaCat:
    """Restrict to the cells satisfying ``keep`` (must be closed under everything)."""
    cells = [c for c in C.stored() if keep(c)]
    kept = set(cells)
    src = {c: C.src(c) for c in cells if c.dim > 0}
    tgt = {c: C.tgt(c) for c in cells if c.dim > 0}
    unit = {c: C.unit(c) for c in cells if c.dim < C.cap}
    comp = {key: r for key, r in C._comp.items() if key[1] in kept and key[2] in kept}
    return FiniteOmegaCat(C.cap, cells, src, tgt, unit, comp, name=name or C.name)


# -- hom categories and whiskering ---------------------------------------------

class ShiftHom:
    """The hom ω-category ⟨x, y⟩ of a base category.

    Its k-cells are the (k+1)-cells u of the base with SRC_0 u = x and
    TGT_0 u = y. ``category`` materializes it with the base ids, so the cell
    ``Cell(k, i)`` of the view stands for ``Cell(k + 1, i)`` of the base.
    """

    def __init__(self, base: FiniteOmegaCat, x: Cell, y: Cell):
        if x.dim != 0 or y.dim != 0:
            raise BoundaryError("shift_hom needs two 0-cells")
        self.base, self.x, self.y = base, x, y
        cap = max(base.cap - 1, 0)
        cells, src, tgt, unit, comp = [], {}, {}, {}, {}
        for k in range(cap + 1):
            for u in base.cells(k + 1):
                if base.src_n(u, 0) == x and base.tgt_n(u, 0) == y:
                    c = self.down(u)
                    cells.append(c)
                    if k > 0:
                        src[c], tgt[c] = self.down(base.src(u)), self.down(base.tgt(u))
                    if k < cap:
                        unit[c] = self.down(base.unit(u))
        members = [self.up(c) for c in cells]
        for k in range(1, cap + 1):
            level = [u for u in members if u.dim == k + 1]
            for p in range(k):
                by_src = defaultdict(list)
                for v in level:
                    by_src[base.src_n(v, p + 1)].append(v)
                for u in level:
                    for v in by_src.get(base.tgt_n(u, p + 1), ()):
                        comp[(p, self.down(u), self.down(v))] = self.down(base.comp(u, v, p + 1))
        self.category = FiniteOmegaCat(cap, cells, src, tgt, unit, comp,
                                       name=f"⟨{x.id},{y.id}⟩")

    @staticmethod
    def down(u: Cell) -> Cell:
        return Cell(u.dim - 1, u.id)

    @staticmethod
    def up(c: Cell) -> Cell:
        return Cell(c.dim + 1, c.id)


def shift_hom(C: FiniteOmegaCat, x: Cell, y: Cell) -> ShiftHom:
    return ShiftHom(C, x, y)


def act_left(C: FiniteOmegaCat, u: Cell, v: Cell) -> Cell:
    """u ⋆ [v] = [u ∘_0 v] for a 1-cell u and a cell v of positive dimension."""
    if u.dim != 1 or v.dim < 1:
        raise BoundaryError("act_left needs a 1-cell acting on a cell of a hom")
    if C.tgt(u) != C.src_n(v, 0):
        raise BoundaryError(f"{u!r} does not end where {v!r} starts")
    return C.comp(u, v, 0)


def act_right(C: FiniteOmegaCat, v: Cell, u: Cell) -> Cell:
    """[v] ⋆ u = [v ∘_0 u]."""
    if u.dim != 1 or v.dim < 1:
        raise BoundaryError("act_right needs a 1-cell acting on a cell of a hom")
    if C.tgt_n(v, 0) != C.src(u):
        raise BoundaryError(f"{v!r} does not end where {u!r} starts")
    return C.comp(v, u, 0)


def act_left_functor(C: FiniteOmegaCat, u: Cell, z: Cell) -> OmegaFunctor:
    """The whole precomposition functor u ⋆ − : ⟨y, z⟩ → ⟨x, z⟩."""
    x, y = C.src(u), C.tgt(u)
    H1, H2 = ShiftHom(C, y, z), ShiftHom(C, x, z)
    return OmegaFunctor(H1.category, H2.category,
                        {c: H2.down(C.comp(u, H1.up(c), 0)) for c in H1.category.stored()},
                        name=f"{u.id}⋆−")


def act_right_functor(C: FiniteOmegaCat, x: Cell, v: Cell) -> OmegaFunctor:
    """− ⋆ v : ⟨x, y⟩ → ⟨x, z⟩."""
    y, z = C.src(v), C.tgt(v)
    H1, H2 = ShiftHom(C, x, y), ShiftHom(C, x, z)
    return OmegaFunctor(H1.category, H2.category,
                        {c: H2.down(C.comp(H1.up(c), v, 0)) for c in H1.category.stored()},
                        name=f"−⋆{v.id}")
