"""Polygraphs, their free categories up to dimension 2, globes and pushouts.

Free 1-cells are words of composable 1-generators. Free 2-cells are whisker
sequences: a list of steps ``(L, α, R)`` applied one after the other, each
rewriting ``L·src(α)·R`` into ``L·tgt(α)·R``. Two whisker sequences are equal
when one can be reached from the other by swapping adjacent steps that act on
disjoint positions (the interchange law); this is decided by breadth-first
search over such swaps, which is exact because the reachable set is finite.
"""
from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Any, Iterator, Mapping, Sequence, Union

from .core import Cell, CategoryBuilder, FiniteOmegaCat, OmegaFunctor
from .errors import BoundaryError, BudgetExceeded, StructuralError, Unsupported
from .report import CheckReport

SWAP_NODE_CAP = 20_000

Step = tuple[tuple[str, ...], str, tuple[str, ...]]
Letters = tuple[str, ...]


@dataclass(frozen=True)
class Word:
    """Free 1-cell: a path of 1-generators from ``src`` to ``tgt``."""

    src: str
    tgt: str
    letters: Letters = ()

    dim = 1

    def __len__(self) -> int:
        return len(self.letters)

    def ident(self) -> str:
        return "·".join(self.letters) if self.letters else "1_" + self.src


def swaps(steps: tuple[Step, ...], bnd: Mapping[str, tuple[Letters, Letters]]) -> Iterator[tuple[Step, ...]]:
    """All whisker sequences one interchange swap away from ``steps``."""
    for i in range(len(steps) - 1):
        (l1, a, r1), (l2, b, r2) = steps[i], steps[i + 1]
        sa, ta = bnd[a]
        sb, tb = bnd[b]
        if len(l2) >= len(l1) + len(ta):
            # b fires to the right of a
            middle = (l1 + ta + r1)[len(l1) + len(ta):len(l2)]
            first = (l1 + sa + middle, b, r2)
            second = (l1, a, middle + tb + r2)
            yield steps[:i] + (first, second) + steps[i + 2:]
        if len(l1) >= len(l2) + len(sb):
            middle = l1[len(l2) + len(sb):]
            first = (l2, b, middle + sa + r1)
            second = (l2 + tb + middle, a, r1)
            yield steps[:i] + (first, second) + steps[i + 2:]


def interchange_class(steps: tuple[Step, ...], bnd: Mapping[str, tuple[Letters, Letters]],
                      node_cap: int = SWAP_NODE_CAP) -> set[tuple[Step, ...]]:
    seen = {steps}
    queue = deque([steps])
    while queue:
        for nxt in swaps(queue.popleft(), bnd):
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > node_cap:
                    raise BudgetExceeded("interchange swap search", len(seen), node_cap)
                queue.append(nxt)
    return seen


class Pasting:
    """Free 2-cell: a whisker sequence starting at the word ``src``.

    ``bnd`` gives the source and target letters of each 2-generator; it is
    shared by every pasting of one polygraph.
    """

    __slots__ = ("src", "tgt", "steps", "bnd", "_canon")
    dim = 2

    def __init__(self, src: Word, tgt: Word, steps: Sequence[Step],
                 bnd: Mapping[str, tuple[Letters, Letters]]):
        self.src = src
        self.tgt = tgt
        self.steps: tuple[Step, ...] = tuple((tuple(l), a, tuple(r)) for l, a, r in steps)
        self.bnd = bnd
        self._canon: tuple[Step, ...] | None = None

    def canonical(self) -> tuple[Step, ...]:
        """Least sequence of the interchange class."""
        if self._canon is None:
            self._canon = min(interchange_class(self.steps, self.bnd))
        return self._canon

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Pasting):
            return NotImplemented
        if self.src != other.src or self.tgt != other.tgt or len(self.steps) != len(other.steps):
            return False
        if sorted(s[1] for s in self.steps) != sorted(s[1] for s in other.steps):
            return False
        return self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash((self.src, self.tgt, self.canonical()))

    def __repr__(self) -> str:
        return f"Pasting({self.ident()})"

    def ident(self) -> str:
        if not self.steps:
            return "1_" + self.src.ident()
        return ";".join(
            "".join(x + "·" for x in l) + a + "".join("·" + x for x in r) for l, a, r in self.canonical()
        )


FreeCell = Union[str, Word, Pasting]


@dataclass
class Polygraph:
    """Generators per dimension with attachments into the free category below.

    ``gens[0]`` lists 0-generators; ``gens[k]`` for k >= 1 maps a generator
    id to its (source, target) free cells of dimension k - 1. Dimension-3
    generators are accepted for bookkeeping (attached to free 2-cells).
    """

    gens: list[dict[str, Any]] = field(default_factory=list)
    name: str = ""

    def __post_init__(self) -> None:
        if not self.gens:
            self.gens = [{}]
        if isinstance(self.gens[0], (list, tuple, set)):
            self.gens[0] = {g: None for g in self.gens[0]}
        if len(self.gens) > 4:
            raise Unsupported("polygraphs are supported up to dimension 3")
        self.bnd: dict[str, tuple[Letters, Letters]] = {}
        for a, (s, t) in self.gens[2].items() if self.cap >= 2 else ():
            self.bnd[a] = (s.letters, t.letters)
        self._check()

    @property
    def cap(self) -> int:
        return len(self.gens) - 1

    def _check(self) -> None:
        for k in range(1, self.cap + 1):
            for g, (s, t) in self.gens[k].items():
                if k == 1:
                    if s not in self.gens[0] or t not in self.gens[0]:
                        raise StructuralError(f"1-generator {g} attached to unknown 0-generators")
                else:
                    if not self.is_cell(s) or not self.is_cell(t):
                        raise StructuralError(f"{k}-generator {g} attached to cells outside the free category")
                    if not self.parallel(s, t):
                        raise StructuralError(f"{k}-generator {g}: source and target are not parallel")

    # -- free cells ---------------------------------------------------------
    def word(self, letters: Sequence[str], at: str | None = None) -> Word:
        letters = tuple(letters)
        if not letters:
            if at is None:
                raise StructuralError("empty word needs a base object")
            return Word(at, at, ())
        for x, y in zip(letters, letters[1:]):
            if self.gens[1][x][1] != self.gens[1][y][0]:
                raise BoundaryError(f"letters {x}, {y} are not composable")
        return Word(self.gens[1][letters[0]][0], self.gens[1][letters[-1]][1], letters)

    def gen_cell(self, dim: int, g: str) -> FreeCell:
        """The free cell of a single generator."""
        if dim == 0:
            return g
        if dim == 1:
            return self.word((g,))
        if dim == 2:
            s, t = self.gens[2][g]
            return Pasting(s, t, [((), g, ())], self.bnd)
        raise Unsupported("free cells above dimension 2")

    def pasting(self, src: Word, steps: Sequence[Step]) -> Pasting:
        cur = src.letters
        for l, a, r in steps:
            s, t = self.bnd[a]
            if cur != tuple(l) + s + tuple(r):
                raise BoundaryError(f"step {a} does not apply to {cur}")
            cur = tuple(l) + t + tuple(r)
        tgt = Word(src.src, src.tgt, cur)
        return Pasting(src, tgt, steps, self.bnd)

    def is_cell(self, c: FreeCell) -> bool:
        if isinstance(c, str):
            return c in self.gens[0]
        if isinstance(c, Word):
            try:
                return self.word(c.letters, c.src) == c
            except (BoundaryError, KeyError):
                return False
        if isinstance(c, Pasting):
            try:
                return self.pasting(c.src, c.steps).tgt == c.tgt and self.is_cell(c.src)
            except (BoundaryError, KeyError):
                return False
        return False

    def parallel(self, a: FreeCell, b: FreeCell) -> bool:
        if isinstance(a, str) and isinstance(b, str):
            return True
        if isinstance(a, Word) and isinstance(b, Word):
            return a.src == b.src and a.tgt == b.tgt
        if isinstance(a, Pasting) and isinstance(b, Pasting):
            return a.src == b.src and a.tgt == b.tgt
        return False

    # -- JSON ---------------------------------------------------------------
    def to_json(self) -> dict[str, Any]:
        gens = [{"dim": 0, "id": g} for g in self.gens[0]]
        for k in range(1, self.cap + 1):
            for g, (s, t) in self.gens[k].items():
                gens.append({"dim": k, "id": g, "src": free_to_json(s), "tgt": free_to_json(t)})
        return {"schema": "polygraph.v1", "name": self.name, "cap": self.cap, "gens": gens}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "Polygraph":
        if data.get("schema", "polygraph.v1") != "polygraph.v1":
            raise StructuralError(f"unsupported schema {data.get('schema')!r}")
        cap = int(data["cap"])
        gens: list[dict[str, Any]] = [dict() for _ in range(cap + 1)]
        for e in sorted(data["gens"], key=lambda e: e["dim"]):
            gens[e["dim"]][e["id"]] = None
        P = cls([gens[0]], name=data.get("name", ""))
        for k in range(1, cap + 1):
            level = {}
            for e in data["gens"]:
                if e["dim"] == k:
                    level[e["id"]] = (free_from_json(P, e["src"], k - 1), free_from_json(P, e["tgt"], k - 1))
            P = cls(P.gens + [level], name=P.name)
        return P


def free_to_json(c: FreeCell) -> Any:
    if isinstance(c, str):
        return c
    if isinstance(c, Word):
        return {"src": c.src, "tgt": c.tgt, "letters": list(c.letters)}
    return {"src": free_to_json(c.src), "tgt": free_to_json(c.tgt),
            "steps": [[list(l), a, list(r)] for l, a, r in c.steps]}


def free_from_json(P: Polygraph, data: Any, dim: int) -> FreeCell:
    if dim == 0:
        return str(data)
    if dim == 1:
        return P.word(data["letters"], data["src"])
    src = free_from_json(P, data["src"], 1)
    return P.pasting(src, [(tuple(l), a, tuple(r)) for l, a, r in data["steps"]])


# -- the free category -------------------------------------------------------

class FreeCategory:
    """Lazy view of the free category Q(S) of a polygraph of dimension <= 2."""

    def __init__(self, S: Polygraph):
        if S.cap > 2:
            raise Unsupported("free-cell equality is only available up to dimension 2")
        self.S = S

    def unit(self, c: FreeCell) -> FreeCell:
        if isinstance(c, str):
            return Word(c, c, ())
        if isinstance(c, Word):
            return Pasting(c, c, (), self.S.bnd)
        raise Unsupported("free cells above dimension 2")

    def src(self, c: FreeCell) -> FreeCell:
        if isinstance(c, str):
            raise BoundaryError("0-cells have no source")
        return c.src

    def tgt(self, c: FreeCell) -> FreeCell:
        if isinstance(c, str):
            raise BoundaryError("0-cells have no target")
        return c.tgt

    def comp(self, a: FreeCell, b: FreeCell, p: int) -> FreeCell:
        k = max(_dim(a), _dim(b))
        while _dim(a) < k:
            a = self.unit(a)
        while _dim(b) < k:
            b = self.unit(b)
        if p >= k:
            raise BoundaryError("composition index too large")
        if k == 1:
            if a.tgt != b.src:
                raise BoundaryError(f"{a.ident()} and {b.ident()} are not composable")
            return Word(a.src, b.tgt, a.letters + b.letters)
        if p == 1:
            if a.tgt != b.src:
                raise BoundaryError("2-cells are not 1-composable")
            return Pasting(a.src, b.tgt, a.steps + b.steps, self.S.bnd)
        if a.src.tgt != b.src.src:
            raise BoundaryError("2-cells are not 0-composable")
        g, f2 = b.src.letters, a.tgt.letters
        steps = [(l, x, r + g) for l, x, r in a.steps] + [(f2 + l, x, r) for l, x, r in b.steps]
        src = Word(a.src.src, b.src.tgt, a.src.letters + g)
        tgt = Word(a.src.src, b.src.tgt, f2 + b.tgt.letters)
        return Pasting(src, tgt, steps, self.S.bnd)

    def words(self, max_len: int, at: str | None = None) -> Iterator[Word]:
        """Words of length <= max_len (starting at ``at`` when given)."""
        starts = [at] if at is not None else list(self.S.gens[0])
        frontier = [Word(x, x, ()) for x in starts]
        for _ in range(max_len + 1):
            nxt = []
            for w in frontier:
                yield w
                for g, (s, t) in self.S.gens[1].items():
                    if s == w.tgt:
                        nxt.append(Word(w.src, t, w.letters + (g,)))
            frontier = nxt

    def rewrites(self, w: Word) -> Iterator[Step]:
        """Single whiskered 2-generators applicable to the word w."""
        for a, (s, _) in self.S.bnd.items():
            n = len(s)
            for i in range(len(w.letters) - n + 1):
                if w.letters[i:i + n] == s:
                    yield (w.letters[:i], a, w.letters[i + n:])

    def pastings(self, w: Word, max_steps: int) -> Iterator[Pasting]:
        """Distinct free 2-cells out of w with at most ``max_steps`` steps."""
        seen = set()
        frontier = [Pasting(w, w, (), self.S.bnd)]
        for _ in range(max_steps + 1):
            nxt = []
            for c in frontier:
                if c in seen:
                    continue
                seen.add(c)
                yield c
                for l, a, r in self.rewrites(c.tgt):
                    t = Word(w.src, w.tgt, l + self.S.bnd[a][1] + r)
                    nxt.append(Pasting(w, t, c.steps + ((l, a, r),), self.S.bnd))
            frontier = nxt

    def materialize(self, budget: int = 2_000) -> "Materialized":
        return materialize(self.S, budget)


def _dim(c: FreeCell) -> int:
    if isinstance(c, str):
        return 0
    return c.dim


def free_category(S: Polygraph) -> FreeCategory:
    return FreeCategory(S)


@dataclass
class Materialized:
    """A free category turned into a table, with the dictionary between them."""

    category: FiniteOmegaCat
    encode: dict[Any, Cell]
    decode: dict[Cell, Any]
    polygraph: Polygraph

    def gen(self, dim: int, g: str) -> Cell:
        if dim <= 2:
            return self.encode[self.polygraph.gen_cell(dim, g)]
        return Cell(dim, g)


def materialize(S: Polygraph, budget: int = 2_000) -> Materialized:
    """Tabulate Q(S); fails with BudgetExceeded when closure does not terminate.

    Generators of dimension 3 are supported when every composable pair of
    3-cells involves a unit, which is the case for globes and their
    pushouts; otherwise the free 3-cells would need a word-problem solver.
    """
    low = Polygraph(S.gens[:3], name=S.name)
    F = FreeCategory(low)
    cap = low.cap
    words: list[Word] = []
    if cap >= 1:
        for w in F.words(budget + 1):
            words.append(w)
            if len(words) > budget:
                raise BudgetExceeded(f"free 1-cells of {S.name or 'polygraph'} (infinite or over budget)",
                                     len(words), budget)
    two: list[Pasting] = []
    if cap >= 2:
        for w in words:
            for c in F.pastings(w, budget + 1):
                two.append(c)
                if len(two) > budget:
                    raise BudgetExceeded(f"free 2-cells of {S.name or 'polygraph'} (infinite or over budget)",
                                         len(two), budget)
    encode: dict[Any, Cell] = {}
    for g in low.gens[0]:
        encode[g] = Cell(0, g)
    for w in words:
        encode[w] = Cell(1, w.ident())
    for c in two:
        encode[c] = Cell(2, c.ident())
    b = CategoryBuilder(S.cap, S.name)
    for g in low.gens[0]:
        b.add(0, g)
    for w in words:
        if w.letters:
            b.add(1, encode[w].id, w.src, w.tgt)
        else:
            b.unit(Cell(0, w.src), encode[w].id)
    for c in two:
        if c.steps:
            b.add(2, encode[c].id, encode[c.src].id, encode[c.tgt].id)
        else:
            b.unit(encode[c.src], encode[c].id)
    by_end: dict[str, list[Word]] = defaultdict(list)
    for w in words:
        by_end[w.src].append(w)
    for u in words:
        for v in by_end[u.tgt]:
            b.compose(0, encode[u].id, encode[v].id, encode[F.comp(u, v, 0)].id, dim=1)
    if cap >= 2:
        from_word: dict[Word, list[Pasting]] = defaultdict(list)
        at_obj: dict[str, list[Pasting]] = defaultdict(list)
        for c in two:
            from_word[c.src].append(c)
            at_obj[c.src.src].append(c)
        for a in two:
            for c in from_word[a.tgt]:
                b.compose(1, encode[a].id, encode[c].id, encode[F.comp(a, c, 1)].id, dim=2)
            for c in at_obj[a.src.tgt]:
                r = F.comp(a, c, 0)
                if r not in encode:
                    raise StructuralError("free 2-cells not closed under composition (budget too small?)")
                b.compose(0, encode[a].id, encode[c].id, encode[r].id, dim=2)
    for k in range(3, S.cap + 1):
        for g, (s, t) in S.gens[k].items():
            b.add(k, g, _encode_high(encode, s).id, _encode_high(encode, t).id)
    try:
        C = b.build()
    except StructuralError as e:
        raise Unsupported(f"free category above dimension 2 is not rigid: {e}") from e
    decode = {c: f for f, c in encode.items()}
    return Materialized(C, encode, decode, S)


def _encode_high(encode: dict[Any, Cell], c: Any) -> Cell:
    if isinstance(c, Cell):
        return c
    return encode[c]


def evaluate(S: Polygraph, c: FreeCell, assign: Mapping[tuple[int, str], Cell], C: FiniteOmegaCat) -> Cell:
    """Image of a free cell under the functor Q(S) → C given on generators."""
    if isinstance(c, str):
        return assign[(0, c)]
    if isinstance(c, Word):
        out = assign[(0, c.src)]
        out = C.unit(out)
        for g in c.letters:
            out = C.comp(out, assign[(1, g)], 0)
        return out
    if isinstance(c, Pasting):
        out = C.unit(evaluate(S, c.src, assign, C))
        for l, a, r in c.steps:
            x = S.gens[2][a][0].src
            left = evaluate(S, Word(x, x, ()) if not l else S.word(l), assign, C)
            right = evaluate(S, S.word(r) if r else Word(S.gens[2][a][0].tgt, S.gens[2][a][0].tgt, ()), assign, C)
            whisk = C.comp(C.comp(left, assign[(2, a)], 0), right, 0)
            out = C.comp(out, whisk, 1)
        return out
    raise Unsupported(f"cannot evaluate {c!r}")


def poly_functors(S: Polygraph, C: FiniteOmegaCat, limit: int | None = None) -> Iterator[dict[tuple[int, str], Cell]]:
    """All generator assignments defining functors Q(S) → C."""
    gens = [(k, g) for k in range(S.cap + 1) for g in S.gens[k]]

    def bound(k: int, x: Any, assign: dict) -> Cell:
        if k == 3:
            raise Unsupported("evaluating attachments of 3-generators")
        return evaluate(S, x, assign, C)

    count = 0

    def go(i: int, assign: dict) -> Iterator[dict]:
        nonlocal count
        if limit is not None and count >= limit:
            return
        if i == len(gens):
            count += 1
            yield dict(assign)
            return
        k, g = gens[i]
        if k == 0:
            cands = C.cells(0)
        else:
            s, t = S.gens[k][g]
            if k == 3:
                cands = C.hom(_eval_high(S, s, assign, C), _eval_high(S, t, assign, C))
            else:
                cands = C.hom(bound(k, s, assign), bound(k, t, assign))
        for x in cands:
            assign[(k, g)] = x
            yield from go(i + 1, assign)
            del assign[(k, g)]

    yield from go(0, {})


def _eval_high(S: Polygraph, c: Any, assign: dict, C: FiniteOmegaCat) -> Cell:
    return evaluate(S, c, assign, C)


def functor_from_assignment(M: Materialized, assign: Mapping[tuple[int, str], Cell], C: FiniteOmegaCat) -> OmegaFunctor:
    S = M.polygraph
    mapping = {}
    for cell in M.category.stored():
        if cell.dim <= 2:
            mapping[cell] = evaluate(S, M.decode[cell], assign, C)
        elif (cell.dim, cell.id) in assign:
            mapping[cell] = assign[(cell.dim, cell.id)]
    return OmegaFunctor(M.category, C, mapping)


# -- globes ------------------------------------------------------------------

def _globe_builder(n: int, with_top: bool) -> CategoryBuilder:
    cap = n if with_top else max(n - 1, 0)
    b = CategoryBuilder(cap, f"O({n})" if with_top else f"∂O({n})")
    if n == 0:
        if with_top:
            b.add(0, "o")
        return b
    b.add(0, "s0")
    b.add(0, "t0")
    for i in range(1, n):
        b.add(i, f"s{i}", f"s{i - 1}", f"t{i - 1}")
        b.add(i, f"t{i}", f"s{i - 1}", f"t{i - 1}")
    if with_top:
        b.add(n, "o", f"s{n - 1}", f"t{n - 1}")
    return b


def globe(n: int) -> FiniteOmegaCat:
    """O(n): the free category on one n-cell ``o``; its i-cells below are s_i, t_i."""
    return _globe_builder(n, True).build()


def boundary_globe(n: int) -> FiniteOmegaCat:
    """∂O(n): O(n) without its top cell (empty for n = 0)."""
    if n == 0:
        return FiniteOmegaCat(0, [], {}, {}, {}, {}, name="∂O(0)")
    return _globe_builder(n, False).build()


def globe_inclusion(n: int) -> OmegaFunctor:
    """i_n : ∂O(n) → O(n)."""
    B, G = boundary_globe(n), globe(n)
    return OmegaFunctor(B, G, {c: c for c in B.stored()}, name=f"i_{n}")


def pushout_cocone(n: int) -> tuple[OmegaFunctor, OmegaFunctor]:
    """The two functors O(n) → ∂O(n+1) sending o to s_n and to t_n."""
    G, B = globe(n), boundary_globe(n + 1)
    maps = []
    for top in (f"s{n}", f"t{n}"):
        m = {c: c for c in G.stored() if c.id != "o" and not c.id.endswith("_o")}
        m[Cell(n, "o")] = Cell(n, top)
        maps.append(OmegaFunctor(G, B, m, name=f"o↦{top}"))
    return maps[0], maps[1]


def sng(C: FiniteOmegaCat, x: Cell) -> OmegaFunctor:
    """The functor O(n) → C picking the n-cell x."""
    n = x.dim
    G = globe(n)
    m = {Cell(n, "o"): x}
    for i in range(n):
        m[Cell(i, f"s{i}")] = C.src_n(x, i)
        m[Cell(i, f"t{i}")] = C.tgt_n(x, i)
    return OmegaFunctor(G, C, m, name=f"sng {x.id}")


def pair_functor(C: FiniteOmegaCat, x: Cell, y: Cell) -> OmegaFunctor:
    """⟨x, y⟩ : ∂O(n+1) → C for parallel n-cells x, y."""
    if not C.parallel(x, y):
        raise BoundaryError(f"{x!r} and {y!r} are not parallel")
    n = x.dim
    B = boundary_globe(n + 1)
    m = {Cell(n, f"s{n}"): x, Cell(n, f"t{n}"): y}
    for i in range(n):
        m[Cell(i, f"s{i}")] = C.src_n(x, i)
        m[Cell(i, f"t{i}")] = C.tgt_n(x, i)
    return OmegaFunctor(B, C, m, name=f"⟨{x.id},{y.id}⟩")


def collapsing_map(n: int) -> OmegaFunctor:
    """o_n : ∂O(n+1) → O(n), sending both n-cells to the top cell."""
    f = pair_functor(globe(n), Cell(n, "o"), Cell(n, "o"))
    f.name = f"o_{n}"
    return f


def globe_polygraph(n: int, boundary: bool = False) -> Polygraph:
    """The polygraph whose free category is O(n) (or ∂O(n))."""
    top = n - 1 if boundary else n
    if n == 0:
        return Polygraph([{} if boundary else {"o": None}], name="∂O(0)" if boundary else "O(0)")
    P = Polygraph([{"s0": None, "t0": None}])
    for i in range(1, top + 1):
        s, t = P.gen_cell(i - 1, f"s{i - 1}"), P.gen_cell(i - 1, f"t{i - 1}")
        level = {f"s{i}": (s, t), f"t{i}": (s, t)} if i < n else {"o": (s, t)}
        P = Polygraph(P.gens + [level])
    P.name = f"∂O({n})" if boundary else f"O({n})"
    return P


# -- morphisms and pushouts --------------------------------------------------

@dataclass
class PolyMorphism:
    """Generator-to-generator map compatible with attachments."""

    dom: Polygraph
    cod: Polygraph
    maps: list[dict[str, str]]

    def __post_init__(self) -> None:
        for k in range(self.dom.cap + 1):
            level = self.maps[k] if k < len(self.maps) else {}
            for g in self.dom.gens[k]:
                if level.get(g) not in self.cod.gens[k]:
                    raise StructuralError(f"morphism: generator {g} has no image")
            if k >= 1:
                for g, (s, t) in self.dom.gens[k].items():
                    cs, ct = self.cod.gens[k][level[g]]
                    if self.apply(s) != cs or self.apply(t) != ct:
                        raise StructuralError(f"morphism: attachment of {g} not preserved")

    def apply(self, c: Any) -> Any:
        if isinstance(c, str):
            return self.maps[0][c]
        if isinstance(c, Word):
            if not c.letters:
                return Word(self.maps[0][c.src], self.maps[0][c.src], ())
            return self.cod.word([self.maps[1][x] for x in c.letters])
        if isinstance(c, Pasting):
            steps = [(tuple(self.maps[1][x] for x in l), self.maps[2][a], tuple(self.maps[1][x] for x in r))
                     for l, a, r in c.steps]
            return self.cod.pasting(self.apply(c.src), steps)
        raise Unsupported(f"cannot map {c!r}")

    def after(self, other: "PolyMorphism") -> "PolyMorphism":
        """self ∘ other."""
        return PolyMorphism(other.dom, self.cod, [
            {g: self.maps[k][h] for g, h in other.maps[k].items()} for k in range(other.dom.cap + 1)
        ])


def identity_morphism(S: Polygraph) -> PolyMorphism:
    return PolyMorphism(S, S, [{g: g for g in S.gens[k]} for k in range(S.cap + 1)])


def pushout_polygraph(m1: PolyMorphism, m2: PolyMorphism) -> tuple[Polygraph, PolyMorphism, PolyMorphism]:
    """Dimensionwise pushout of generator sets with the induced attachments.

    Generators keep their names when no clash arises; otherwise the ones
    coming from the second leg get a ``'`` suffix.
    """
    if m1.dom is not m2.dom and m1.dom.to_json() != m2.dom.to_json():
        raise StructuralError("pushout of morphisms with different domains")
    S, S1, S2 = m1.dom, m1.cod, m2.cod
    cap = max(S1.cap, S2.cap)
    P = Polygraph([{}], name=f"{S1.name}⊔{S2.name}")
    j1: list[dict[str, str]] = []
    j2: list[dict[str, str]] = []
    for k in range(cap + 1):
        parent: dict[tuple[int, str], tuple[int, str]] = {}

        def find(x):
            while parent.get(x, x) != x:
                x = parent[x]
            return x

        g1 = list(S1.gens[k]) if k <= S1.cap else []
        g2 = list(S2.gens[k]) if k <= S2.cap else []
        if k <= S.cap:
            for g in S.gens[k]:
                a, b = find((1, m1.maps[k][g])), find((2, m2.maps[k][g]))
                if a != b:
                    parent[max(a, b)] = min(a, b)
        classes: dict[tuple[int, str], list[tuple[int, str]]] = defaultdict(list)
        for x in [(1, g) for g in g1] + [(2, g) for g in g2]:
            classes[find(x)].append(x)
        names: dict[tuple[int, str], str] = {}
        used: set[str] = set()
        for rep in sorted(classes):
            members = classes[rep]
            base = min(g for _, g in members)
            nm = base
            while nm in used:
                nm += "'"
            used.add(nm)
            for x in members:
                names[x] = nm
        l1 = {g: names[(1, g)] for g in g1}
        l2 = {g: names[(2, g)] for g in g2}
        j1.append(l1)
        j2.append(l2)
        if k == 0:
            P = Polygraph([{n: None for n in sorted(set(names.values()))}], name=P.name)
            continue
        partial1 = PolyMorphism.__new__(PolyMorphism)
        partial1.dom, partial1.cod, partial1.maps = S1, P, j1[:k]
        partial2 = PolyMorphism.__new__(PolyMorphism)
        partial2.dom, partial2.cod, partial2.maps = S2, P, j2[:k]
        level: dict[str, tuple[Any, Any]] = {}
        for g in g1:
            s, t = S1.gens[k][g]
            level[l1[g]] = (partial1.apply(s), partial1.apply(t))
        for g in g2:
            s, t = S2.gens[k][g]
            att = (partial2.apply(s), partial2.apply(t))
            if l2[g] in level and level[l2[g]] != att:
                raise AssertionError(f"incompatible attachments for {l2[g]}")
            level[l2[g]] = att
        P = Polygraph(P.gens + [dict(sorted(level.items()))], name=P.name)
    return P, PolyMorphism(S1, P, j1), PolyMorphism(S2, P, j2)


def free_functor(m: PolyMorphism, M1: Materialized, M2: Materialized) -> OmegaFunctor:
    """Q(m) between materialized free categories."""
    assign = {}
    for k in range(m.dom.cap + 1):
        for g in m.dom.gens[k]:
            assign[(k, g)] = M2.gen(k, m.maps[k][g])
    return functor_from_assignment(M1, assign, M2.category)


# -- structural checks on globes -------------------------------------------------

def globe_count_report(n: int) -> CheckReport:
    """O(n) has two non-unit i-cells for i < n and one non-unit n-cell; ∂O(n) lacks the latter."""
    fails = []
    for C, with_top in ((globe(n), True), (boundary_globe(n), False)):
        counts = [sum(1 for c in C.cells(k) if not C.is_unit(c)) for k in range(n + 1)]
        expected = [2] * n + [1 if with_top else 0]
        if n == 0:
            expected = [1 if with_top else 0]
        if counts != expected:
            fails.append({"category": C.name, "non_unit_counts": counts, "expected": expected})
    return CheckReport.collect(f"globe-counts-{n}", fails)


def globe_pushout_report(n: int, budget: int = 2_000) -> CheckReport:
    """∂O(n+1) is the pushout of i_n along itself, computed on polygraphs.

    The comparison map from the computed pushout to ∂O(n+1) is the one
    induced by the two functors o ↦ s_n and o ↦ t_n; it must be bijective.
    """
    from .search import find_isomorphism
    from .validate import validate_functor

    B, G = globe_polygraph(n, boundary=True), globe_polygraph(n)
    incl = PolyMorphism(B, G, [{g: g for g in B.gens[k]} for k in range(B.cap + 1)])
    P, j1, j2 = pushout_polygraph(incl, incl)
    MP = materialize(P, budget)
    target = boundary_globe(n + 1)
    legs = pushout_cocone(n)
    assign: dict[tuple[int, str], Cell] = {}
    for leg, j in zip(legs, (j1, j2)):
        for k in range(G.cap + 1):
            for g, p in j.maps[k].items():
                img = leg(Cell(k, g))
                if assign.setdefault((k, p), img) != img:
                    return CheckReport("globe-pushout", False, [{"law": "cocone legs disagree", "generator": p}])
    fails = []
    try:
        u = functor_from_assignment(MP, assign, target)
    except StructuralError as e:
        return CheckReport("globe-pushout", False, [{"law": "comparison map", "error": str(e)}])
    if not validate_functor(u):
        fails.append({"law": "comparison map is not a functor"})
    images = [u(c) for c in MP.category.stored()]
    if len(set(images)) != len(images) or len(images) != sum(1 for _ in target.stored()):
        fails.append({"law": "comparison map is not bijective"})
    if find_isomorphism(MP.category, target) is None:
        fails.append({"law": "pushout not isomorphic to the boundary globe"})
    return CheckReport.collect(f"globe-pushout-{n}", fails, generators=[len(level) for level in P.gens])


# -- random polygraphs ---------------------------------------------------------

def _words_between(S: Polygraph, max_len: int = 4) -> list[Word]:
    out = [Word(x, x, ()) for x in S.gens[0]]
    frontier = [S.word((g,)) for g in S.gens[1]] if S.cap >= 1 else []
    while frontier:
        out.extend(frontier)
        nxt = []
        for w in frontier:
            if len(w.letters) >= max_len:
                continue
            for g, (s, _) in S.gens[1].items():
                if s == w.tgt:
                    nxt.append(S.word(w.letters + (g,)))
        frontier = nxt
    return out


def random_polygraph(rng, max_gens: int = 8, cap: int = 2, prefix: str = "") -> Polygraph:
    """A polygraph whose free category is finite.

    1-generators go from lower- to higher-numbered objects and 2-generators
    from a word to a strictly larger one (by length, then letters), so every
    rewriting sequence is bounded.
    """
    n0 = rng.randint(1, 3)
    objs = [f"{prefix}x{i}" for i in range(n0)]
    gens: list[dict[str, Any]] = [{x: None for x in objs}]
    budget = max_gens - n0
    if cap >= 1:
        level = {}
        for j in range(rng.randint(0, max(0, min(budget, 4)))):
            a, b = sorted(rng.sample(range(n0), 2)) if n0 > 1 else (0, 0)
            if a == b:
                break
            level[f"{prefix}f{j}"] = (objs[a], objs[b])
        gens.append(level)
        budget -= len(level)
    S = Polygraph(gens)
    if cap >= 2 and budget > 0:
        words = _words_between(S)
        pairs = [(u, v) for u in words for v in words
                 if u.src == v.src and u.tgt == v.tgt and (len(u.letters), u.letters) < (len(v.letters), v.letters)]
        level = {}
        for j in range(min(len(pairs), rng.randint(0, min(budget, 2)))):
            u, v = rng.choice(pairs)
            level[f"{prefix}α{j}"] = (u, v)
        S = Polygraph(S.gens + [level])
    return S


def relabel(S: Polygraph, rename: Mapping[str, str]) -> tuple[Polygraph, PolyMorphism]:
    """A copy of S with generators renamed, and the isomorphism onto it."""
    maps = [{g: rename.get(g, g) for g in S.gens[k]} for k in range(S.cap + 1)]
    T = Polygraph([{maps[0][g]: None for g in S.gens[0]}], name=S.name + "′")
    for k in range(1, S.cap + 1):
        partial = PolyMorphism.__new__(PolyMorphism)
        partial.dom, partial.cod, partial.maps = S, T, maps[:k]
        level = {maps[k][g]: (partial.apply(s), partial.apply(t)) for g, (s, t) in S.gens[k].items()}
        T = Polygraph(T.gens + [level], name=T.name)
    return T, PolyMorphism(S, T, maps)


def random_extension(rng, S: Polygraph, extra: int = 2) -> tuple[Polygraph, PolyMorphism]:
    """S with up to ``extra`` new generators, keeping the free category finite, and the inclusion."""
    gens = [dict(level) for level in S.gens]
    for j in range(rng.randint(1, extra)):
        kind = rng.choice(["obj", "arrow"]) if S.cap >= 1 else "obj"
        if kind == "obj":
            gens[0][f"y{j}"] = None
            continue
        objs = sorted(gens[0])
        new = [o for o in objs if o.startswith("y")]
        if not new:
            gens[0][f"y{j}"] = None
            new = [f"y{j}"]
        a = rng.choice([o for o in objs if not o.startswith("y")])
        gens[1][f"g{j}"] = (a, rng.choice(new))
    T = Polygraph([gens[0]], name=S.name + "+")
    for k in range(1, len(gens)):
        T = Polygraph(T.gens + [gens[k]], name=T.name)
    incl = PolyMorphism(S, T, [{g: g for g in S.gens[k]} for k in range(S.cap + 1)])
    return T, incl
