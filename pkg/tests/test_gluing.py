import random

from hypothesis import given, settings, strategies as st

from omegacat.core import Cell, identity
from omegacat.cylinders import CylinderCalculus, gamma
from omegacat.equivalence import decider, is_trivial_fibration, is_weak_equivalence, omega_equiv
from omegacat.fixtures import DISCRETE_2, INTERVAL_ISO, TERMINAL, random_categories, random_category, small_family
from omegacat.gluing import (charweq, check_gluing, check_top_bot_fibrations, equiv_factor_witness, glue,
                             transport_bottomup, transport_instances, transport_report, transport_topdown)
from omegacat.search import enumerate_functors, find_isomorphism
from omegacat.validate import validate_category, validate_functor
from oracles import as_tuple, naive_cylinders, naive_equiv

a, b = Cell(0, "a"), Cell(0, "b")
u = Cell(1, "u")
seeds = st.integers(min_value=0, max_value=2**32 - 1)


def bang(C):
    (F,) = enumerate_functors(C, TERMINAL)
    return F


def test_glue_identity_is_gamma():
    C = INTERVAL_ISO
    G = glue(identity(C))
    assert find_isomorphism(G.category, gamma(C).category) is not None
    assert check_gluing(G).holds


def test_glue_to_terminal():
    G = glue(bang(INTERVAL_ISO))
    assert len(G.category.cells(0)) == 2
    for c in G.category.cells(0):
        assert G.cylinder(c) == CylinderCalculus(TERMINAL).triv(Cell(0, "*"))


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_gluing_legs(seed):
    rng = random.Random(seed)
    fam = small_family(6)
    A, B = rng.choice(fam), rng.choice(fam)
    fs = enumerate_functors(A, B, limit=50)
    if not fs:
        return
    f = rng.choice(fs)
    G = glue(f)
    assert check_gluing(G).holds
    assert validate_category(G.category).holds
    assert G.lft.after(G.rht).equals(f)
    assert is_weak_equivalence(G.rht).holds
    assert is_trivial_fibration(G.top_pullback).holds


def test_transport_along_trivial_cylinders():
    C = INTERVAL_ISO
    calc = CylinderCalculus(C)
    for z in C.cells(1):
        U, V = calc.triv(C.src(z)), calc.triv(C.tgt(z))
        z2, W = transport_topdown(C, U, V, z)
        assert z2 == z and W == calc.triv(z)


def test_transport_along_u():
    C = INTERVAL_ISO
    U = CylinderCalculus(C).degenerate_of(u)
    z2, _ = transport_topdown(C, U, U, C.unit(a))
    assert omega_equiv(C, z2, C.unit(b)) is not None
    z1, _ = transport_bottomup(C, U, U, C.unit(b))
    assert omega_equiv(C, z1, C.unit(a)) is not None


def _boundary(C, W, side):
    """Source or target of a cylinder in nested tuple form."""
    step = C.src if side == "src" else C.tgt
    if len(W) == 5 and len(W[4]) == 3:
        return (step(W[0]), step(W[1]), W[2] if side == "src" else W[3])
    return (step(W[0]), step(W[1]), W[2], W[3], _boundary(C, W[4], side))


@settings(max_examples=10, deadline=None)
@given(seeds)
def test_transport_matches_definition(seed):
    C = random_category(random.Random(seed), max_cells=6, max_cap=2)
    memo: dict = {}
    for n in range(C.cap):
        walls = naive_cylinders(C, n + 1)
        for U, V, z in list(transport_instances(C, n))[:30]:
            if U.dim != n:
                continue
            z2, W = transport_topdown(C, U, V, z)
            sols = {w[1] for w in walls if w[0] == z and _boundary(C, w, "src") == as_tuple(U)
                    and _boundary(C, w, "tgt") == as_tuple(V)}
            assert z2 in sols
            assert all(naive_equiv(C, s, z2, memo) for s in sols)
            assert transport_report(C, U, V, z).holds


def test_top_bot_fibrations_examples():
    assert check_top_bot_fibrations(TERMINAL).holds
    assert check_top_bot_fibrations(INTERVAL_ISO).holds
    for C in random_categories(21, 10):
        assert check_top_bot_fibrations(C).holds


def test_charweq_examples():
    rep = charweq(identity(INTERVAL_ISO))
    assert rep.holds and rep.details["weq"] and rep.details["lambda_tfib"]
    rep = charweq(bang(DISCRETE_2))
    assert rep.holds and not rep.details["weq"] and not rep.details["lambda_tfib"]


def test_equiv_factor_witness():
    C = INTERVAL_ISO
    for x, y in [(a, a), (a, b), (u, u)]:
        W = omega_equiv(C, x, y)
        glu, k, p, q, rep = equiv_factor_witness(C, x, y, W)
        assert rep.holds, rep.failures
        assert all(validate_functor(F).holds for F in (k, p, q))
        assert is_trivial_fibration(p).holds


def test_decider_is_shared():
    C = INTERVAL_ISO
    assert decider(C) is decider(C)
