"""Named small categories and seeded random families of valid categories."""
from __future__ import annotations

import itertools
import random
from typing import Callable, Sequence

from .core import Cell, CategoryBuilder, FiniteOmegaCat, coproduct, product, raise_cap
from .errors import StructuralError


def terminal() -> FiniteOmegaCat:
    b = CategoryBuilder(0, "TERMINAL")
    b.add(0, "*")
    return b.build()


def empty(cap: int = 0) -> FiniteOmegaCat:
    return FiniteOmegaCat(cap, [], {}, {}, {}, {}, name="EMPTY")


def interval_iso() -> FiniteOmegaCat:
    """Two objects a, b with an isomorphism u : a → b and inverse ū."""
    b = CategoryBuilder(1, "INTERVAL_ISO")
    b.add(0, "a")
    b.add(0, "b")
    b.add(1, "u", "a", "b")
    b.add(1, "ū", "b", "a")
    b.compose(0, "u", "ū", "1_a", dim=1)
    b.compose(0, "ū", "u", "1_b", dim=1)
    return b.build()


def walking_arrow() -> FiniteOmegaCat:
    b = CategoryBuilder(1, "WALKING_ARROW")
    b.add(0, "a")
    b.add(0, "b")
    b.add(1, "f", "a", "b")
    return b.build()


def discrete(n: int = 2) -> FiniteOmegaCat:
    b = CategoryBuilder(0, f"DISCRETE_{n}")
    for i in range(n):
        b.add(0, "ab"[i] if n <= 2 else f"x{i}")
    return b.build()


TERMINAL = terminal()
INTERVAL_ISO = interval_iso()
WALKING_ARROW = walking_arrow()
DISCRETE_2 = discrete(2)


# -- families ---------------------------------------------------------------

def monoid_category(elements: Sequence, mult: Callable, one, name: str = "monoid") -> FiniteOmegaCat:
    """One-object category of a finite monoid (composition read left to right)."""
    ids = {e: ("1_*" if e == one else f"m{i}") for i, e in enumerate(elements)}
    b = CategoryBuilder(1, name)
    b.add(0, "*")
    for e in elements:
        if e != one:
            b.add(1, ids[e], "*", "*")
    for x in elements:
        for y in elements:
            if x != one and y != one:
                b.compose(0, ids[x], ids[y], ids[mult(x, y)], dim=1)
    return b.build()


def cyclic_group(k: int) -> FiniteOmegaCat:
    return monoid_category(list(range(k)), lambda a, b: (a + b) % k, 0, name=f"Z/{k}")


def symmetric_group_3() -> FiniteOmegaCat:
    perms = list(itertools.permutations(range(3)))
    return monoid_category(perms, lambda a, b: tuple(b[a[i]] for i in range(3)), (0, 1, 2), name="S3")


def transformation_monoid(rng: random.Random, points: int = 2, gens: int = 2, limit: int = 11) -> FiniteOmegaCat:
    """Submonoid of maps on a finite set generated by random maps."""
    one = tuple(range(points))
    mult = lambda a, b: tuple(b[a[i]] for i in range(points))  # noqa: E731
    while True:
        seeds = [tuple(rng.randrange(points) for _ in range(points)) for _ in range(gens)]
        elems = {one}
        frontier = [one]
        while frontier:
            x = frontier.pop()
            for g in seeds:
                y = mult(x, g)
                if y not in elems:
                    elems.add(y)
                    frontier.append(y)
        if len(elems) <= limit:
            return monoid_category(sorted(elems), mult, one, name="Trans")


def poset_category(rng: random.Random, n: int = 3, density: float = 0.5) -> FiniteOmegaCat:
    """Thin 1-category of a random partial order (transitively closed)."""
    rel = {(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < density}
    changed = True
    while changed:
        changed = False
        for (i, j), (k, l) in itertools.product(list(rel), list(rel)):
            if j == k and (i, l) not in rel:
                rel.add((i, l))
                changed = True
    b = CategoryBuilder(1, "poset")
    for i in range(n):
        b.add(0, f"x{i}")
    for i, j in sorted(rel):
        b.add(1, f"r{i}{j}", f"x{i}", f"x{j}")
    for (i, j), (k, l) in itertools.product(sorted(rel), sorted(rel)):
        if j == k:
            b.compose(0, f"r{i}{j}", f"r{k}{l}", f"r{i}{l}", dim=1)
    return b.build()


def chaotic_groupoid(m: int) -> FiniteOmegaCat:
    b = CategoryBuilder(1, f"Chaotic{m}")
    for i in range(m):
        b.add(0, f"o{i}")
    edges = [(i, j) for i in range(m) for j in range(m) if i != j]
    for i, j in edges:
        b.add(1, f"e{i}{j}", f"o{i}", f"o{j}")
    for (i, j), (k, l) in itertools.product(edges, edges):
        if j == k:
            b.compose(0, f"e{i}{j}", f"e{k}{l}", f"e{i}{l}" if i != l else f"1_o{i}", dim=1)
    return b.build()


def thin_2cat(C: FiniteOmegaCat, seeds: Sequence[tuple[Cell, Cell]] = (), chaotic: bool = False,
              name: str = "thin2") -> FiniteOmegaCat:
    """2-category with at most one 2-cell between parallel 1-cells.

    The 2-cells form the smallest preorder on each hom that contains
    ``seeds`` (or all parallel pairs when ``chaotic``) and is compatible with
    composition on both sides.
    """
    if C.cap != 1:
        raise StructuralError("thin_2cat expects a 1-category")
    ones = list(C.cells(1))
    rel = {(f, f) for f in ones}
    if chaotic:
        rel |= {(f, g) for f in ones for g in ones if C.parallel(f, g)}
    rel |= set(seeds)
    changed = True
    while changed:
        changed = False
        new = set()
        for f, g in rel:
            for h, k in rel:
                if g == h:
                    new.add((f, k))
            for h in ones:
                if C.tgt(h) == C.src(f):
                    new.add((C.comp(h, f, 0), C.comp(h, g, 0)))
                if C.tgt(f) == C.src(h):
                    new.add((C.comp(f, h, 0), C.comp(g, h, 0)))
        if not new <= rel:
            rel |= new
            changed = True
    b = _copy_into_builder(C, 2, name)

    def two(f: Cell, g: Cell) -> str:
        return "1_" + f.id if f == g else f"{f.id}⇒{g.id}"

    for f, g in sorted(rel):
        if f != g:
            b.add(2, two(f, g), f.id, g.id)
    for (f, g), (h, k) in itertools.product(sorted(rel), sorted(rel)):
        if g == h and (f != g or h != k):
            b.compose(1, two(f, g), two(h, k), two(f, k), dim=2)
        if C.tgt(f) == C.src(h) and (f != g or h != k):
            b.compose(0, two(f, g), two(h, k), two(C.comp(f, h, 0), C.comp(g, k, 0)), dim=2)
    return b.build()


def endo_2cells(C: FiniteOmegaCat, k: int, name: str = "") -> FiniteOmegaCat:
    """Give every 1-cell of a 1-category a cyclic group Z/k of 2-endocells."""
    b = _copy_into_builder(C, 2, name or f"{C.name}⋉Z/{k}")

    def two(f: Cell, i: int) -> str:
        return "1_" + f.id if i == 0 else f"{f.id}^{i}"

    ones = list(C.cells(1))
    for f in ones:
        for i in range(1, k):
            b.add(2, two(f, i), f.id, f.id)
    for f in ones:
        for i, j in itertools.product(range(k), range(k)):
            if i or j:
                b.compose(1, two(f, i), two(f, j), two(f, (i + j) % k), dim=2)
    for f, g in itertools.product(ones, ones):
        if C.tgt(f) == C.src(g):
            for i, j in itertools.product(range(k), range(k)):
                if i or j:
                    b.compose(0, two(f, i), two(g, j), two(C.comp(f, g, 0), (i + j) % k), dim=2)
    return b.build()


def _copy_into_builder(C: FiniteOmegaCat, cap: int, name: str) -> CategoryBuilder:
    b = CategoryBuilder(cap, name)
    for c in C.stored():
        if c in C._base:
            continue
        if c.dim == 0:
            b.add(0, c.id)
        else:
            b.add(c.dim, c.id, C.src(c).id, C.tgt(c).id)
    for c, u in C._unit.items():
        b.unit(c, u.id)
    for (p, u, v), r in C._comp.items():
        b.compose(p, u.id, v.id, r.id, dim=u.dim)
    return b


def suspension(C: FiniteOmegaCat, name: str = "") -> FiniteOmegaCat:
    """ΣC: two objects ⊥, ⊤ with hom(⊥, ⊤) = C and trivial endo-homs."""
    b = CategoryBuilder(C.cap + 1, name or f"Σ{C.name}")
    b.add(0, "⊥")
    b.add(0, "⊤")
    for c in C.stored():
        if c in C._base:
            continue
        if c.dim == 0:
            b.add(1, c.id, "⊥", "⊤")
        else:
            b.add(c.dim + 1, c.id, C.src(c).id, C.tgt(c).id)
    for c, u in C._unit.items():
        b.unit(Cell(c.dim + 1, c.id), u.id)
    for (p, u, v), r in C._comp.items():
        b.compose(p + 1, u.id, v.id, r.id, dim=u.dim + 1)
    return b.build()


def invertible_globe2() -> FiniteOmegaCat:
    """Two parallel 1-cells f, g : a → b with an invertible 2-cell α : f ⇒ g."""
    b = CategoryBuilder(2, "O2iso")
    b.add(0, "a")
    b.add(0, "b")
    b.add(1, "f", "a", "b")
    b.add(1, "g", "a", "b")
    b.add(2, "α", "f", "g")
    b.add(2, "α⁻", "g", "f")
    b.compose(1, "α", "α⁻", "1_f", dim=2)
    b.compose(1, "α⁻", "α", "1_g", dim=2)
    return b.build()


def _cartesian_pieces(rng: random.Random) -> FiniteOmegaCat:
    small = [terminal, walking_arrow, interval_iso, lambda: cyclic_group(2), lambda: discrete(2)]
    A = rng.choice(small)()
    B = rng.choice(small)()
    if rng.random() < 0.5:
        return product(A, B)[0]
    return coproduct(A, B)[0]


def _collapsed(rng: random.Random) -> FiniteOmegaCat:
    from .transfer import collapse

    C = rng.choice([invertible_globe2, lambda: endo_2cells(cyclic_group(2), 2)])()
    return collapse(C, 1)


FAMILIES: dict[str, Callable[[random.Random], FiniteOmegaCat]] = {
    "poset": lambda r: poset_category(r, r.randint(1, 4), r.choice([0.3, 0.6, 0.9])),
    "cyclic": lambda r: cyclic_group(r.randint(1, 4)),
    "s3": lambda r: symmetric_group_3(),
    "transformations": lambda r: transformation_monoid(r, r.choice([2, 3]), r.randint(1, 2)),
    "chaotic": lambda r: chaotic_groupoid(r.randint(1, 3)),
    "discrete": lambda r: discrete(r.randint(1, 3)),
    "walking": lambda r: walking_arrow(),
    "interval": lambda r: interval_iso(),
    "thin-chaotic": lambda r: thin_2cat(r.choice([walking_arrow, interval_iso, lambda: cyclic_group(2)])(), chaotic=True),
    "thin-preorder": lambda r: _random_thin(r),
    "endo2": lambda r: endo_2cells(r.choice([terminal_1, lambda: cyclic_group(2), walking_arrow])(), r.randint(2, 3)),
    "suspension": lambda r: suspension(_small_for_suspension(r)),
    "globe": lambda r: _globe(r.randint(0, 3)),
    "globe-iso": lambda r: invertible_globe2(),
    "cartesian": _cartesian_pieces,
    "collapse": _collapsed,
    "padded": lambda r: raise_cap(r.choice([interval_iso, walking_arrow, lambda: cyclic_group(2)])(), r.randint(2, 3)),
}


def terminal_1() -> FiniteOmegaCat:
    return raise_cap(terminal(), 1)


def _globe(n: int) -> FiniteOmegaCat:
    from .polygraph import globe

    return globe(n)


def _random_thin(rng: random.Random) -> FiniteOmegaCat:
    base = rng.choice([lambda: cyclic_group(2), lambda: transformation_monoid(rng, 2, 1), walking_arrow,
                       lambda: poset_category(rng, 3, 0.7)])()
    ones = [f for f in base.cells(1)]
    pairs = [(f, g) for f in ones for g in ones if f != g and base.parallel(f, g)]
    seeds = rng.sample(pairs, min(len(pairs), rng.randint(0, 2)))
    return thin_2cat(base, seeds)


def _small_for_suspension(rng: random.Random) -> FiniteOmegaCat:
    options = [terminal, discrete, walking_arrow, interval_iso, lambda: cyclic_group(2),
               lambda: cyclic_group(3), invertible_globe2, lambda: endo_2cells(terminal_1(), 2)]
    return rng.choice(options)()


def random_category(rng: random.Random, max_cells: int = 12, max_cap: int = 3,
                    families: Sequence[str] | None = None) -> FiniteOmegaCat:
    """Draw a valid category with at most ``max_cells`` non-unit cells."""
    names = list(families or FAMILIES)
    for _ in range(200):
        fam = rng.choice(names)
        C = FAMILIES[fam](rng)
        if C.size <= max_cells and C.cap <= max_cap:
            C.name = C.name or fam
            return C
    raise RuntimeError("no category within bounds was drawn")


def random_categories(seed: int, count: int, **kw) -> list[FiniteOmegaCat]:
    rng = random.Random(seed)
    return [random_category(rng, **kw) for _ in range(count)]


def chain(n: int) -> FiniteOmegaCat:
    """The poset 0 < 1 < … < n-1 as a category."""
    b = CategoryBuilder(1, f"CHAIN_{n}")
    for i in range(n):
        b.add(0, f"x{i}")
    for i, j in itertools.combinations(range(n), 2):
        b.add(1, f"r{i}{j}", f"x{i}", f"x{j}")
    for i, j, k in itertools.combinations(range(n), 3):
        b.compose(0, f"r{i}{j}", f"r{j}{k}", f"r{i}{k}", dim=1)
    return b.build()


def _named(C: FiniteOmegaCat, name: str) -> FiniteOmegaCat:
    C.name = name
    return C


def small_family(max_cells: int = 8) -> list[FiniteOmegaCat]:
    """Named categories with at most ``max_cells`` non-unit cells, for exhaustive functor families."""
    from .polygraph import globe

    pool = [
        terminal(), discrete(2), walking_arrow(), interval_iso(), cyclic_group(2), chain(3),
        chaotic_groupoid(3), _named(terminal_1(), "TERMINAL_1"), _named(globe(2), "O(2)"), invertible_globe2(),
        _named(thin_2cat(interval_iso(), chaotic=True), "THIN_INTERVAL"),
        _named(suspension(cyclic_group(2)), "ΣC2"),
    ]
    return [C for C in pool if C.size <= max_cells]


def one_categories(max_objects: int = 4) -> list[FiniteOmegaCat]:
    """1-categories with at most ``max_objects`` objects, for the n = 1 comparison."""
    pool = [
        _named(terminal_1(), "TERMINAL_1"), raise_cap(discrete(2), 1), raise_cap(discrete(3), 1), walking_arrow(), interval_iso(),
        cyclic_group(2), cyclic_group(3), chain(3), chaotic_groupoid(3), chaotic_groupoid(2),
        _named(coproduct(walking_arrow(), terminal())[0], "WALKING_ARROW+1"),
        _named(coproduct(interval_iso(), terminal_1())[0], "INTERVAL_ISO+1"),
        _named(raise_cap(discrete(4), 1), "DISCRETE_4"),
        _named(product(walking_arrow(), walking_arrow())[0], "SQUARE"),
    ]
    return [C for C in pool if len(C.cells(0)) <= max_objects and C.cap <= 1]
