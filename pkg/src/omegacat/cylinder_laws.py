"""Every cylinder identity of the calculus as an executable law.

Each law is evaluated on instances drawn from one base category: every
cylinder of the relevant shape is tried as the leading operand (in seeded
random order, up to ``per_law`` instances), and the remaining operands are
drawn at random among the compatible ones. Unary laws are exhaustive within
the same bound.
"""
from __future__ import annotations

import random
from collections import defaultdict
from typing import Callable, Iterable

from .core import Cell, FiniteOmegaCat, OmegaFunctor, identity, product
from .cylinders import Cylinder, CylinderCalculus
from .errors import OmegaError
from .report import CheckReport
from .search import FunctorSearch

DEFAULT_PER_LAW = 40
MAX_DEPTH = 2


class _Runner:
    def __init__(self, C: FiniteOmegaCat, rng: random.Random, per_law: int):
        self.C = C
        self.calc = CylinderCalculus(C)
        self.rng = rng
        self.per_law = per_law
        self.counts: dict[str, int] = defaultdict(int)
        self.failures: list[dict] = []
        self.cyl: dict[tuple[int, int], list[Cylinder]] = {}
        cap = C.cap
        for e in range(min(MAX_DEPTH, cap) + 1):
            for n in range(cap - e + 1):
                self.cyl[(e, n)] = self.calc.all_cylinders(n, e)
        self.by_top: dict[tuple[int, int], dict[Cell, list[Cylinder]]] = {}
        for key, cs in self.cyl.items():
            idx: dict[Cell, list[Cylinder]] = defaultdict(list)
            for U in cs:
                idx[U.top].append(U)
            self.by_top[key] = idx

    # -- plumbing ---------------------------------------------------------------
    def check(self, law: str, lhs: Callable[[], object], rhs: Callable[[], object], ctx: Callable[[], dict]):
        self.counts[law] += 1
        try:
            a, b = lhs(), rhs()
        except OmegaError as exc:
            self.failures.append({"law": law, "error": f"{type(exc).__name__}: {exc}", **ctx()})
            return
        if a != b:
            self.failures.append({"law": law, "lhs": _show(a), "rhs": _show(b), **ctx()})

    def lead(self, items: list) -> list:
        items = list(items)
        self.rng.shuffle(items)
        return items[: self.per_law]

    def pick(self, items: list):
        return self.rng.choice(items) if items else None

    def shapes(self, min_depth: int = 0, min_dim: int = 0):
        for (e, n), cs in sorted(self.cyl.items()):
            if e >= min_depth and n >= min_dim and cs:
                yield e, n, cs

    def after(self, e: int, n: int, U: Cylinder) -> Cylinder | None:
        """A random V with U ⋄ V defined."""
        return self.pick(self.by_top[(e, n)].get(U.bottom, []))

    def composable(self, e: int, m: int, k: int, U: Cylinder) -> Cylinder | None:
        """A random V with U ∘_k V defined."""
        calc = self.calc
        want = calc.target_n(U, k)
        cands = [V for V in self._by_source(e, m, k).get(want, [])]
        return self.pick(cands)

    def _by_source(self, e: int, m: int, k: int) -> dict[Cylinder, list[Cylinder]]:
        key = ("src", e, m, k)
        got = self.__dict__.get(key)
        if got is None:
            got = defaultdict(list)
            for V in self.cyl.get((e, m), []):
                got[self.calc.source_n(V, k)].append(V)
            self.__dict__[key] = got
        return got

    def cells_ending_at(self, d: int, x: Cell, dim: int) -> list[Cell]:
        C = self.C
        return [u for u in C.cells(dim) if C.tgt_n(u, d) == x]

    def cells_starting_at(self, d: int, x: Cell, dim: int) -> list[Cell]:
        C = self.C
        return [u for u in C.cells(dim) if C.src_n(u, d) == x]


def _show(v) -> object:
    if isinstance(v, Cylinder):
        return v.key()
    if isinstance(v, Cell):
        return repr(v)
    return repr(v)


def _ctx(**kw) -> Callable[[], dict]:
    return lambda: {k: _show(v) for k, v in kw.items()}


# -- laws on cylinders at any depth ---------------------------------------------

def _globular(r: _Runner):
    calc = r.calc
    for e, n, cs in r.shapes(min_dim=2):
        for W in r.lead(cs):
            r.check("globularity-src", lambda: calc.source(calc.source(W)), lambda: calc.source(calc.target(W)), _ctx(W=W))
            r.check("globularity-tgt", lambda: calc.target(calc.source(W)), lambda: calc.target(calc.target(W)), _ctx(W=W))
    for e, n, cs in r.shapes():
        for U in r.lead(cs):
            r.check("well-formed", lambda: calc.is_cylinder(U), lambda: True, _ctx(U=U))


def _trivial(r: _Runner):
    C, calc = r.C, r.calc
    for e in range(min(MAX_DEPTH, C.cap) + 1):
        for k in range(e, C.cap + 1):
            for z in r.lead(C.cells(k)):
                if k > e:
                    r.check("triv-source", lambda: calc.source(calc.triv(z, e)), lambda: calc.triv(C.src(z), e), _ctx(z=z))
                    r.check("triv-target", lambda: calc.target(calc.triv(z, e)), lambda: calc.triv(C.tgt(z), e), _ctx(z=z))
                r.check("triv-degenerate", lambda: calc.principal_of(calc.triv(z, e)), lambda: C.unit(z), _ctx(z=z))
                r.check("degenerate-unit", lambda: calc.degenerate_of(C.unit(z), e), lambda: calc.triv(z, e), _ctx(z=z))
    for e in range(min(MAX_DEPTH, C.cap) + 1):
        for k in range(e + 1, C.cap + 1):
            for u in r.lead([u for u in C.cells(k) if calc.E.reversible(u)]):
                r.check("degenerate-roundtrip", lambda: calc.principal_of(calc.degenerate_of(u, e)), lambda: u, _ctx(u=u))
                r.check("degenerate-detected", lambda: calc.is_degenerate(calc.degenerate_of(u, e)), lambda: True, _ctx(u=u))


def _concatenation(r: _Runner):
    calc = r.calc
    for e, n, cs in r.shapes():
        for U in r.lead(cs):
            r.check("concat-left-unit", lambda: calc.concat(calc.triv(U.top, e), U), lambda: U, _ctx(U=U))
            r.check("concat-right-unit", lambda: calc.concat(U, calc.triv(U.bottom, e)), lambda: U, _ctx(U=U))
            V = r.after(e, n, U)
            if V is None:
                continue
            r.check("concat-wellformed", lambda: calc.is_cylinder(calc.concat(U, V)), lambda: True, _ctx(U=U, V=V))
            W = r.after(e, n, V)
            if W is not None:
                r.check("concat-associativity", lambda: calc.concat(calc.concat(U, V), W),
                        lambda: calc.concat(U, calc.concat(V, W)), _ctx(U=U, V=V, W=W))
        if n >= 1:
            # W ⋄ W′ : U ⋄ U′ → V ⋄ V′
            for W in r.lead(cs):
                W2 = r.after(e, n, W)
                if W2 is None:
                    continue
                r.check("concat-source", lambda: calc.source(calc.concat(W, W2)),
                        lambda: calc.concat(calc.source(W), calc.source(W2)), _ctx(W=W, W2=W2))
                r.check("concat-target", lambda: calc.target(calc.concat(W, W2)),
                        lambda: calc.concat(calc.target(W), calc.target(W2)), _ctx(W=W, W2=W2))


def _compositions(r: _Runner):
    C, calc = r.C, r.calc
    for e, m, cs in r.shapes(min_dim=1):
        for k in range(m):
            for U in r.lead(cs):
                S, T = calc.source_n(U, k), calc.target_n(U, k)
                r.check("compose-left-unit", lambda: calc.compose(calc.unit(S, m), U, k), lambda: U, _ctx(U=U, k=k))
                r.check("compose-right-unit", lambda: calc.compose(U, calc.unit(T, m), k), lambda: U, _ctx(U=U, k=k))
                V = r.composable(e, m, k, U)
                if V is None:
                    continue
                r.check("compose-wellformed", lambda: calc.is_cylinder(calc.compose(U, V, k)), lambda: True,
                        _ctx(U=U, V=V, k=k))
                r.check("compose-top", lambda: calc.compose(U, V, k).top, lambda: C.comp(U.top, V.top, k + e),
                        _ctx(U=U, V=V, k=k))
                r.check("compose-bottom", lambda: calc.compose(U, V, k).bottom,
                        lambda: C.comp(U.bottom, V.bottom, k + e), _ctx(U=U, V=V, k=k))
                if k < m - 1:
                    r.check("compose-source", lambda: calc.source(calc.compose(U, V, k)),
                            lambda: calc.compose(calc.source(U), calc.source(V), k), _ctx(U=U, V=V, k=k))
                    r.check("compose-target", lambda: calc.target(calc.compose(U, V, k)),
                            lambda: calc.compose(calc.target(U), calc.target(V), k), _ctx(U=U, V=V, k=k))
                else:
                    r.check("compose-source", lambda: calc.source(calc.compose(U, V, k)), lambda: calc.source(U),
                            _ctx(U=U, V=V, k=k))
                    r.check("compose-target", lambda: calc.target(calc.compose(U, V, k)), lambda: calc.target(V),
                            _ctx(U=U, V=V, k=k))
                W = r.composable(e, m, k, V)
                if W is not None:
                    r.check("compose-associativity", lambda: calc.compose(calc.compose(U, V, k), W, k),
                            lambda: calc.compose(U, calc.compose(V, W, k), k), _ctx(U=U, V=V, W=W, k=k))
    # units
    for e, n, cs in r.shapes():
        for U in r.lead(cs):
            for m in range(n + 1, n + 3):
                r.check("unit-source", lambda: calc.source(calc.unit(U, m + 1)), lambda: calc.unit(U, m), _ctx(U=U, m=m))
                r.check("unit-target", lambda: calc.target(calc.unit(U, m + 1)), lambda: calc.unit(U, m), _ctx(U=U, m=m))
                r.check("unit-wellformed", lambda: calc.is_cylinder(calc.unit(U, m)), lambda: True, _ctx(U=U, m=m))
                r.check("unit-iterated", lambda: calc.unit(calc.unit(U, m), m + 1), lambda: calc.unit(U, m + 1),
                        _ctx(U=U, m=m))


def _interchange(r: _Runner):
    calc = r.calc
    for e, m, cs in r.shapes(min_dim=2):
        for n in range(1, m):
            for p in range(n):
                for U in r.lead(cs):
                    U2 = r.composable(e, m, n, U)
                    V = r.composable(e, m, p, U)
                    if U2 is None or V is None:
                        continue
                    cands = [V2 for V2 in r._by_source(e, m, n).get(calc.target_n(V, n), [])
                             if calc.target_n(U2, p) == calc.source_n(V2, p)]
                    V2 = r.pick(cands)
                    if V2 is None:
                        continue
                    r.check("interchange", lambda: calc.compose(calc.compose(U, U2, n), calc.compose(V, V2, n), p),
                            lambda: calc.compose(calc.compose(U, V, p), calc.compose(U2, V2, p), n),
                            _ctx(U=U, U2=U2, V=V, V2=V2, n=n, p=p))
    for e, n, cs in r.shapes(min_dim=1):
        for p in range(n):
            for S in r.lead(cs):
                T = r.composable(e, n, p, S)
                if T is None:
                    continue
                for m in (n + 1, n + 2):
                    r.check("interchange-units", lambda: calc.compose(calc.unit(S, m), calc.unit(T, m), p),
                            lambda: calc.unit(calc.compose(S, T, p), m), _ctx(S=S, T=T, m=m, p=p))
    for e, n, cs in r.shapes():
        for R in r.lead(cs):
            r.check("interchange-iterated-units", lambda: calc.unit(calc.unit(R, n + 1), n + 2),
                    lambda: calc.unit(R, n + 2), _ctx(R=R))


def _triv_compat(r: _Runner):
    C, calc = r.C, r.calc
    for e in range(min(MAX_DEPTH, C.cap) + 1):
        for m in range(e + 1, C.cap + 1):
            for k in range(e, m):
                n = k - e
                for u in r.lead(C.cells(m)):
                    vs = [v for v in C.cells(m) if C.tgt_n(u, k) == C.src_n(v, k)]
                    v = r.pick(vs)
                    if v is None:
                        continue
                    r.check("triv-compose", lambda: calc.triv(C.comp(u, v, k), e),
                            lambda: calc.compose(calc.triv(u, e), calc.triv(v, e), n), _ctx(u=u, v=v, n=n))
        for k in range(e, C.cap + 1):
            for x in r.lead(C.cells(k)):
                for m in (k - e + 1, k - e + 2):
                    r.check("triv-unit", lambda: calc.triv(C.unit(x, m + e), e), lambda: calc.unit(calc.triv(x, e), m),
                            _ctx(x=x, m=m))


# -- laws inside homs (depth >= 1): actions and multiplication -------------------

def _acting_cells(r: _Runner, V: Cylinder, side: str, extended: bool) -> list[Cell]:
    """Cells that can act on V from the given side."""
    d = V.depth - 1
    dims = range(d + 1, V.dim + d + 2) if extended else (d + 1,)
    out = []
    for dim in dims:
        if dim > r.C.cap:
            continue
        if side == "left":
            out.extend(r.cells_ending_at(d, r.C.src_n(V.top, d), dim))
        else:
            out.extend(r.cells_starting_at(d, r.C.tgt_n(V.top, d), dim))
    return out


def _bimodularity(r: _Runner):
    C, calc = r.C, r.calc
    for e, n, cs in r.shapes(min_depth=1):
        d = e - 1
        for V in r.lead(cs):
            x, y = C.src_n(V.top, d), C.tgt_n(V.top, d)
            r.check("bimodularity-left-unit", lambda: calc.act_left(C.unit(x, d + 1), V), lambda: V, _ctx(V=V))
            r.check("bimodularity-right-unit", lambda: calc.act_right(V, C.unit(y, d + 1)), lambda: V, _ctx(V=V))
            for extended in (False, True):
                tag = "-extended" if extended else ""
                v = r.pick(_acting_cells(r, V, "left", extended))
                if v is not None:
                    us = [u for u in C.cells(v.dim) if C.tgt_n(u, d) == C.src_n(v, d)]
                    u = r.pick(us)
                    if u is not None:
                        r.check("bimodularity-left" + tag, lambda: calc.act_left(C.comp(u, v, d), V),
                                lambda: calc.act_left(u, calc.act_left(v, V)), _ctx(u=u, v=v, V=V))
                w = r.pick(_acting_cells(r, V, "right", extended))
                if w is not None:
                    ws = [w2 for w2 in C.cells(w.dim) if C.src_n(w2, d) == C.tgt_n(w, d)]
                    w2 = r.pick(ws)
                    if w2 is not None:
                        r.check("bimodularity-right" + tag, lambda: calc.act_right(calc.act_right(V, w), w2),
                                lambda: calc.act_right(V, C.comp(w, w2, d)), _ctx(V=V, w=w, w2=w2))
                    if v is not None:
                        r.check("bimodularity-middle" + tag, lambda: calc.act_right(calc.act_left(v, V), w),
                                lambda: calc.act_left(v, calc.act_right(V, w)), _ctx(v=v, V=V, w=w))


def _distributivity(r: _Runner):
    C, calc = r.C, r.calc
    for e, n, cs in r.shapes(min_depth=1):
        d = e - 1
        for V in r.lead(cs):
            for extended in (False, True):
                tag = "-extended" if extended else ""
                u = r.pick(_acting_cells(r, V, "left", extended))
                w = r.pick(_acting_cells(r, V, "right", extended))
                W = r.after(e, n, V)
                if W is not None:
                    if u is not None:
                        r.check("distributivity-concat-left" + tag, lambda: calc.act_left(u, calc.concat(V, W)),
                                lambda: calc.concat(calc.act_left(u, V), calc.act_left(u, W)), _ctx(u=u, V=V, W=W))
                    if w is not None:
                        r.check("distributivity-concat-right" + tag, lambda: calc.act_right(calc.concat(V, W), w),
                                lambda: calc.concat(calc.act_right(V, w), calc.act_right(W, w)), _ctx(V=V, W=W, w=w))
                for m in (n + 1, n + 2):
                    if u is not None and (extended is False or u.dim <= n + d + 1):
                        r.check("distributivity-unit-left" + tag, lambda: calc.act_left(u, calc.unit(V, m)),
                                lambda: calc.unit(calc.act_left(u, V), m), _ctx(u=u, V=V, m=m))
                    if w is not None:
                        r.check("distributivity-unit-right" + tag, lambda: calc.act_right(calc.unit(V, m), w),
                                lambda: calc.unit(calc.act_right(V, w), m), _ctx(V=V, w=w, m=m))
                # only 1-cells distribute over ∘_k; higher cells obey action-compose instead
                for k in range(n if not extended else 0):
                    V2 = r.composable(e, n, k, V)
                    if V2 is None:
                        continue
                    if u is not None:
                        r.check("distributivity-compose-left" + tag, lambda: calc.act_left(u, calc.compose(V, V2, k)),
                                lambda: calc.compose(calc.act_left(u, V), calc.act_left(u, V2), k),
                                _ctx(u=u, V=V, V2=V2, k=k))
                    if w is not None:
                        r.check("distributivity-compose-right" + tag, lambda: calc.act_right(calc.compose(V, V2, k), w),
                                lambda: calc.compose(calc.act_right(V, w), calc.act_right(V2, w), k),
                                _ctx(V=V, V2=V2, w=w, k=k))
        # u ⋆ τ[v] = τ[u ∘0 v]
        for v in r.lead([c for c in C.cells(n + e) if n + e <= C.cap]):
            V = calc.triv(v, e)
            for extended in (False, True):
                tag = "-extended" if extended else ""
                u = r.pick(_acting_cells(r, V, "left", extended))
                if u is not None:
                    r.check("distributivity-triv-left" + tag, lambda: calc.act_left(u, V),
                            lambda: calc.triv(C.comp(u, v, d), e), _ctx(u=u, v=v))
                w = r.pick(_acting_cells(r, V, "right", extended))
                if w is not None:
                    r.check("distributivity-triv-right" + tag, lambda: calc.act_right(V, w),
                            lambda: calc.triv(C.comp(v, w, d), e), _ctx(v=v, w=w))


def _next_hom(r: _Runner, e: int, n: int, U: Cylinder) -> Cylinder | None:
    """A random V of the same shape in the hom following U's."""
    C, d = r.C, e - 1
    y = C.tgt_n(U.top, d)
    cands = [V for V in r.cyl[(e, n)] if C.src_n(V.top, d) == y]
    return r.pick(cands)


def _multiplication(r: _Runner):
    C, calc = r.C, r.calc
    for e, n, cs in r.shapes(min_depth=1):
        d = e - 1
        for U in r.lead(cs):
            V = _next_hom(r, e, n, U)
            if V is None:
                continue
            r.check("mult-wellformed", lambda: calc.is_cylinder(calc.mult(U, V)), lambda: True, _ctx(U=U, V=V))
            r.check("commutation-first", lambda: calc.concat(calc.act_right(U, V.top), calc.act_left(U.bottom, V)),
                    lambda: calc.mult(U, V), _ctx(U=U, V=V))
            r.check("commutation-second", lambda: calc.concat(calc.act_left(U.top, V), calc.act_right(U, V.bottom)),
                    lambda: calc.mult(U, V), _ctx(U=U, V=V))
            W = _next_hom(r, e, n, V)
            if W is not None:
                r.check("mult-associativity", lambda: calc.mult(calc.mult(U, V), W),
                        lambda: calc.mult(U, calc.mult(V, W)), _ctx(U=U, V=V, W=W))
            U2, V2 = r.after(e, n, U), r.after(e, n, V)
            if U2 is not None and V2 is not None:
                r.check("mult-concat", lambda: calc.mult(calc.concat(U, U2), calc.concat(V, V2)),
                        lambda: calc.concat(calc.mult(U, V), calc.mult(U2, V2)), _ctx(U=U, U2=U2, V=V, V2=V2))
            for m in (n + 1, n + 2):
                r.check("mult-unit", lambda: calc.mult(calc.unit(U, m), calc.unit(V, m)),
                        lambda: calc.unit(calc.mult(U, V), m), _ctx(U=U, V=V, m=m))
            for k in range(n):
                U2 = r.composable(e, n, k, U)
                if U2 is None:
                    continue
                cands = [V2 for V2 in r._by_source(e, n, k).get(calc.target_n(V, k), [])
                         if C.src_n(V2.top, d) == C.tgt_n(U2.top, d)]
                V2 = r.pick(cands)
                if V2 is None:
                    continue
                r.check("mult-compose", lambda: calc.mult(calc.compose(U, U2, k), calc.compose(V, V2, k)),
                        lambda: calc.compose(calc.mult(U, V), calc.mult(U2, V2), k), _ctx(U=U, U2=U2, V=V, V2=V2, k=k))
        # τ[u] ⊛ τ[v] = τ[u ∘0 v]
        for u in r.lead(list(C.cells(n + e))):
            vs = [v for v in C.cells(n + e) if C.src_n(v, d) == C.tgt_n(u, d)]
            v = r.pick(vs)
            if v is None:
                continue
            r.check("mult-triv", lambda: calc.mult(calc.triv(u, e), calc.triv(v, e)),
                    lambda: calc.triv(C.comp(u, v, d), e), _ctx(u=u, v=v))


def _representability(r: _Runner):
    C, calc = r.C, r.calc
    for e, n, cs in r.shapes(min_depth=1):
        for V in r.lead(cs):
            u = r.pick(_acting_cells(r, V, "left", False))
            if u is not None:
                r.check("representability-left", lambda: calc.act_left(u, V), lambda: calc.act_left_extended(u, V),
                        _ctx(u=u, V=V))
                r.check("representability-left-triv",
                        lambda: calc.mult(calc.triv(C.unit(u, n + e), e), V), lambda: calc.act_left(u, V), _ctx(u=u, V=V))
            w = r.pick(_acting_cells(r, V, "right", False))
            if w is not None:
                r.check("representability-right", lambda: calc.act_right(V, w), lambda: calc.act_right_extended(V, w),
                        _ctx(V=V, w=w))


def _action_compat(r: _Runner):
    """(u ∘_{n+1} u′) ⋆ (V ∘_n V′) = u ⋆ V ∘_n u′ ⋆ V′ and 1^{m+1}s ⋆ 1^m T = 1^m(s ⋆ T)."""
    C, calc = r.C, r.calc
    for e, m, cs in r.shapes(min_depth=1, min_dim=1):
        d = e - 1
        top = m + e  # dimension of the acting cells, padded with units above the cap
        for k in range(m):
            for V in r.lead(cs):
                V2 = r.composable(e, m, k, V)
                if V2 is None:
                    continue
                pool = [C.unit(c, top) for c in r.cells_ending_at(d, C.src_n(V.top, d), min(top, C.cap))]
                u = r.pick(pool)
                if u is None:
                    continue
                u2 = r.pick([c for c in pool if C.src_n(c, k + e) == C.tgt_n(u, k + e)])
                if u2 is None:
                    continue
                r.check("action-compose-left", lambda: calc.act_left(C.comp(u, u2, k + e), calc.compose(V, V2, k)),
                        lambda: calc.compose(calc.act_left(u, V), calc.act_left(u2, V2), k),
                        _ctx(u=u, u2=u2, V=V, V2=V2, k=k))
    for e, n, cs in r.shapes(min_depth=1):
        d = e - 1
        for T in r.lead(cs):
            s = r.pick([c for c in _acting_cells(r, T, "left", True) if c.dim == n + d + 1])
            if s is None:
                continue
            for m in (n + 1, n + 2):
                r.check("action-unit-left", lambda: calc.act_left(C.unit(s, m + d + 1), calc.unit(T, m)),
                        lambda: calc.unit(calc.act_left(s, T), m), _ctx(s=s, T=T, m=m))


def _concat_compat(r: _Runner):
    calc = r.calc
    for e, m, cs in r.shapes(min_dim=1):
        for k in range(m):
            for U in r.lead(cs):
                V = r.composable(e, m, k, U)
                U2 = r.after(e, m, U)
                if V is None or U2 is None:
                    continue
                cands = [V2 for V2 in r.by_top[(e, m)].get(V.bottom, [])
                         if calc.target_n(U2, k) == calc.source_n(V2, k)]
                V2 = r.pick(cands)
                if V2 is None:
                    continue
                r.check("concat-compose", lambda: calc.concat(calc.compose(U, V, k), calc.compose(U2, V2, k)),
                        lambda: calc.compose(calc.concat(U, U2), calc.concat(V, V2), k),
                        _ctx(U=U, V=V, U2=U2, V2=V2, k=k))
    for e, n, cs in r.shapes():
        for S in r.lead(cs):
            T = r.after(e, n, S)
            if T is None:
                continue
            for m in (n + 1, n + 2):
                r.check("concat-unit", lambda: calc.concat(calc.unit(S, m), calc.unit(T, m)),
                        lambda: calc.unit(calc.concat(S, T), m), _ctx(S=S, T=T, m=m))


# -- Γf ----------------------------------------------------------------------------

def sample_functors(C: FiniteOmegaCat, rng: random.Random, count: int = 3, node_budget: int = 20_000) -> list[OmegaFunctor]:
    """Identity, the diagonal into C × C, and a few endofunctors found by search."""
    out = [identity(C)]
    P, _, _ = product(C, C)
    out.append(OmegaFunctor(C, P, {c: Cell(c.dim, f"({c.id},{c.id})") for c in C.stored()}, name="diag"))
    found = []
    try:
        for i, sol in enumerate(FunctorSearch(C, C, node_budget=node_budget).solutions()):
            found.append(sol)
            if i >= 30:
                break
    except OmegaError:
        pass
    for sol in rng.sample(found, min(count, len(found))):
        out.append(OmegaFunctor(C, C, sol))
    return out


def _gamma_functoriality(r: _Runner, functors: Iterable[OmegaFunctor]):
    C, calc = r.C, r.calc
    for f in functors:
        fc = CylinderCalculus(f.cod, cross_check=False)
        fm = lambda U: calc.map_cells(f, U)  # noqa: E731
        for e, n, cs in r.shapes():
            for U in r.lead(cs):
                r.check("gamma-f-wellformed", lambda: fc.is_cylinder(fm(U)), lambda: True, _ctx(f=f.name, U=U))
                r.check("naturality-top", lambda: fm(U).top, lambda: f(U.top), _ctx(f=f.name, U=U))
                r.check("naturality-bot", lambda: fm(U).bottom, lambda: f(U.bottom), _ctx(f=f.name, U=U))
                if n > 0:
                    r.check("gamma-f-source", lambda: fm(calc.source(U)), lambda: fc.source(fm(U)), _ctx(f=f.name, U=U))
                V = r.after(e, n, U)
                if V is not None:
                    r.check("gamma-f-concat", lambda: fm(calc.concat(U, V)), lambda: fc.concat(fm(U), fm(V)),
                            _ctx(f=f.name, U=U, V=V))
                for k in range(n):
                    V = r.composable(e, n, k, U)
                    if V is not None:
                        r.check("gamma-f-compose", lambda: fm(calc.compose(U, V, k)),
                                lambda: fc.compose(fm(U), fm(V), k), _ctx(f=f.name, U=U, V=V, k=k))
                r.check("gamma-f-unit", lambda: fm(calc.unit(U, n + 1)), lambda: fc.unit(fm(U), n + 1),
                        _ctx(f=f.name, U=U))
        for k in range(C.cap + 1):
            for x in r.lead(C.cells(k)):
                r.check("naturality-triv", lambda: fm(calc.triv(x)), lambda: fc.triv(f(x)), _ctx(f=f.name, x=x))


LAW_GROUPS: dict[str, Callable[[_Runner], None]] = {
    "globular": _globular,
    "trivial": _trivial,
    "concatenation": _concatenation,
    "compositions": _compositions,
    "interchange": _interchange,
    "triv-compatibility": _triv_compat,
    "bimodularity": _bimodularity,
    "distributivity": _distributivity,
    "multiplication": _multiplication,
    "representability": _representability,
    "action-compatibility": _action_compat,
    "concat-compatibility": _concat_compat,
}


def appendix_laws(C: FiniteOmegaCat, rng: random.Random | int = 0, per_law: int = DEFAULT_PER_LAW,
                  functors: Iterable[OmegaFunctor] | None = None) -> CheckReport:
    """Run every cylinder law on one category."""
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    r = _Runner(C, rng, per_law)
    for group in LAW_GROUPS.values():
        group(r)
    if functors is None:
        functors = sample_functors(C, rng)
    _gamma_functoriality(r, functors)
    return CheckReport.collect(f"appendix-laws({C.name})", r.failures, instances=dict(sorted(r.counts.items())))
