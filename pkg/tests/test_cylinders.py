import random

import pytest
from hypothesis import given, settings, strategies as st

from omegacat import cylinders as cyl
from omegacat.core import Cell, identity, product
from omegacat.cylinder_laws import appendix_laws, sample_functors
from omegacat.cylinders import (CylinderCalculus, above_cap_units, cyl_act_left, cyl_act_right, cyl_compose,
                                cyl_concat, cyl_mult, cyl_source, cyl_target, cyl_unit, gamma,
                                gamma_composition_report, gamma_product_report, triv_cylinder)
from omegacat.errors import NotReversible
from omegacat.fixtures import (INTERVAL_ISO, TERMINAL, WALKING_ARROW, invertible_globe2, random_categories,
                               random_category)
from omegacat.search import enumerate_functors, find_isomorphism
from omegacat.validate import validate_category, validate_functor
from oracles import as_tuple, naive_cylinders

a, b = Cell(0, "a"), Cell(0, "b")
u, ubar = Cell(1, "u"), Cell(1, "ū")
seeds = st.integers(min_value=0, max_value=2**32 - 1)


def test_triv_boundaries_and_principal():
    C = INTERVAL_ISO
    T = triv_cylinder(C, u)
    assert cyl_source(C, T) == triv_cylinder(C, a)
    assert cyl_target(C, T) == triv_cylinder(C, b)
    assert T.top == T.bottom == u
    calc = CylinderCalculus(C)
    assert calc.is_degenerate(T) and calc.principal_of(T) == C.unit(u)


def test_degenerate_round_trip_on_interval_iso():
    C = INTERVAL_ISO
    calc = CylinderCalculus(C)
    for x in C.cells(0):
        assert calc.degenerate_of(C.unit(x)) == calc.triv(x)
    for v in C.cells(1):
        assert calc.principal_of(calc.degenerate_of(v)) == v
    with pytest.raises(NotReversible):
        CylinderCalculus(WALKING_ARROW).degenerate_of(Cell(1, "f"))


def test_principal_of_non_degenerate_fails():
    C = INTERVAL_ISO
    calc = CylinderCalculus(C)
    W = next(W for W in calc.all_cylinders(1) if not calc.is_degenerate(W))
    with pytest.raises(ValueError):
        calc.principal_of(W)


def test_concatenation_examples():
    C = INTERVAL_ISO
    calc = CylinderCalculus(C)
    U, V = calc.degenerate_of(u), calc.degenerate_of(ubar)
    assert cyl_concat(C, U, V) == triv_cylinder(C, a)
    assert cyl_concat(C, triv_cylinder(C, a), U) == U == cyl_concat(C, U, triv_cylinder(C, b))


def test_actions_and_multiplication_examples():
    C = invertible_globe2()
    calc = CylinderCalculus(C)
    for V in calc.all_cylinders(0, 1):
        x = C.src_n(V.top, 0)
        y = C.tgt_n(V.top, 0)
        assert cyl_act_left(C, C.unit(x), V) == V
        assert cyl_act_right(C, V, C.unit(y)) == V
    for e in C.cells(1):
        for g in C.cells(1):
            if C.tgt(e) == C.src(g):
                Te, Tg = calc.triv(e, 1), calc.triv(g, 1)
                assert cyl_mult(C, Te, Tg) == calc.triv(C.comp(e, g, 0), 1)


def test_compose_and_unit_wrappers():
    C = INTERVAL_ISO
    U = triv_cylinder(C, u)
    assert cyl_unit(C, U, 2) == triv_cylinder(C, C.unit(u))
    V = triv_cylinder(C, ubar)
    assert cyl_compose(C, U, V, 0) == triv_cylinder(C, C.comp(u, ubar, 0))


def test_gamma_of_terminal_and_interval_iso():
    assert find_isomorphism(gamma(TERMINAL).category, TERMINAL) is not None
    G = gamma(INTERVAL_ISO)
    assert validate_category(G.category).holds
    for F in (G.top, G.bot, G.triv):
        assert validate_functor(F).holds
    assert G.top.after(G.triv).equals(identity(INTERVAL_ISO))
    assert G.bot.after(G.triv).equals(identity(INTERVAL_ISO))


def test_gamma_products_and_functoriality():
    assert gamma_product_report(INTERVAL_ISO, WALKING_ARROW).holds
    assert gamma_product_report(INTERVAL_ISO, INTERVAL_ISO).holds
    C = INTERVAL_ISO
    ends = enumerate_functors(C, C)
    for F in ends:
        for G in ends:
            assert gamma_composition_report(F, G).holds
    P, p1, p2 = product(C, WALKING_ARROW)
    for F in enumerate_functors(C, P):
        assert gamma_composition_report(F, p1).holds and gamma_composition_report(F, p2).holds


@pytest.mark.parametrize("C", random_categories(11, 12, max_cells=8), ids=lambda C: C.name)
def test_cylinder_enumeration_matches_the_definition(C):
    calc = CylinderCalculus(C)
    for n in range(C.cap + 1):
        got = {as_tuple(U) for U in calc.all_cylinders(n)}
        assert got == naive_cylinders(C, n)
    assert not above_cap_units(gamma(C))


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_globularity_on_random_two_cylinders(seed):
    C = random_category(random.Random(seed), max_cells=8)
    calc = CylinderCalculus(C)
    for W in calc.all_cylinders(min(2, C.cap))[:20]:
        if W.dim < 2:
            break
        for S in (calc.source(calc.source(W)), calc.source(calc.target(W))):
            assert S == calc.source_n(W, 0)
        assert calc.source_n(W, 0).principal == W.flat


@settings(max_examples=10, deadline=None)
@given(seeds)
def test_triv_is_natural(seed):
    rng = random.Random(seed)
    C = random_category(rng, max_cells=6)
    calc = CylinderCalculus(C)
    for F in sample_functors(C, rng):
        fc = CylinderCalculus(F.cod)
        for k in range(C.cap + 1):
            for x in C.cells(k):
                assert calc.map_cells(F, calc.triv(x)) == fc.triv(F(x))


@settings(max_examples=8, deadline=None)
@given(seeds)
def test_appendix_laws_hold(seed):
    rng = random.Random(seed)
    C = random_category(rng, max_cells=8)
    rep = appendix_laws(C, rng, per_law=10)
    assert rep.holds, rep.failures[:3]


def test_law_suite_catches_a_broken_horizontal_composition(monkeypatch):
    original = CylinderCalculus.compose

    def broken(self, U, V, n):
        if n == 0 and U.dim > 0 and U != V:
            return original(self, V, U, n) if self.C.src_n(U.top, 0) == self.C.tgt_n(V.top, 0) else U
        return original(self, U, V, n)

    cats = [invertible_globe2()] + random_categories(5, 30, max_cells=8)
    monkeypatch.setattr(CylinderCalculus, "compose", broken)
    caught = [C.name for C in cats if not appendix_laws(C, random.Random(0), per_law=20).holds]
    monkeypatch.undo()
    assert caught
    assert all(appendix_laws(C, random.Random(0), per_law=20).holds for C in cats[:5])


def test_wrappers_share_one_calculus():
    C = random_categories(2, 1)[0]
    assert cyl.calculus(C) is cyl.calculus(C)
