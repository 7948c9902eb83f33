"""Small constructors shared by the tests."""
from __future__ import annotations

import random

from omegacat.core import Cell, FiniteOmegaCat


def rebuild(C, comp=None, src=None, tgt=None, name="mutant") -> FiniteOmegaCat:
    T = C.tables()
    return FiniteOmegaCat(C.cap, T["cells"], src or T["src"], tgt or T["tgt"], T["unit"],
                          comp if comp is not None else T["comp"], name=name)


def rebind_composite(C, rng: random.Random):
    """Copy of C with one composite sent to another cell of the same dimension, or None."""
    T = C.tables()
    keys = sorted(T["comp"], key=repr)
    rng.shuffle(keys)
    for key in keys:
        r = T["comp"][key]
        others = [c for c in C.cells(r.dim) if c != r]
        if others:
            comp = dict(T["comp"])
            comp[key] = rng.choice(others)
            return rebuild(C, comp=comp), key
    return None, None


def cell(dim: int, id: str) -> Cell:
    return Cell(dim, id)
