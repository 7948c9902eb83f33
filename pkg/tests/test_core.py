import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import cell, rebind_composite, rebuild
from omegacat.core import (Cell, act_left, act_left_functor, act_right, coproduct, identity, product,
                           shift_hom)
from omegacat.errors import BoundaryError, StructuralError
from omegacat.fixtures import (DISCRETE_2, INTERVAL_ISO, TERMINAL, WALKING_ARROW, random_categories,
                               random_category)
from omegacat.search import enumerate_functors, find_isomorphism
from omegacat.validate import validate_category, validate_functor
from oracles import axiom_violations, functor_violations

a, b = cell(0, "a"), cell(0, "b")
u, ubar = cell(1, "u"), cell(1, "ū")
seeds = st.integers(min_value=0, max_value=2**32 - 1)


def test_terminal_and_interval_iso_are_valid():
    assert validate_category(TERMINAL).holds
    assert validate_category(INTERVAL_ISO).holds


def test_interval_iso_composites_by_hand():
    C = INTERVAL_ISO
    assert C.comp(u, ubar, 0) == C.unit(a)
    assert C.comp(ubar, u, 0) == C.unit(b)
    assert C.comp(C.unit(a), u, 0) == u


def test_rebound_composite_is_reported_with_the_pair():
    T = INTERVAL_ISO.tables()
    comp = dict(T["comp"])
    comp[(0, u, ubar)] = cell(1, "1_b")
    rep = validate_category(rebuild(INTERVAL_ISO, comp=comp))
    assert not rep.holds
    assert any(f.get("cells", [])[:2] == ["u@1", "ū@1"] for f in rep.failures)


def test_dangling_reference_is_structural():
    T = INTERVAL_ISO.tables()
    src = dict(T["src"])
    src[u] = cell(0, "nowhere")
    with pytest.raises(StructuralError):
        rebuild(INTERVAL_ISO, src=src)


def test_functor_examples():
    assert validate_functor(identity(INTERVAL_ISO)).holds
    bang = enumerate_functors(INTERVAL_ISO, TERMINAL)
    assert len(bang) == 1 and validate_functor(bang[0]).holds


def test_misdeclared_functor_fails():
    from omegacat.core import OmegaFunctor
    C = INTERVAL_ISO
    f = OmegaFunctor(C, C, {a: a, b: b, u: C.unit(a), ubar: ubar})
    rep = validate_functor(f)
    assert not rep.holds and functor_violations(f)


def test_product_counts_and_terminal_unit():
    P, p1, p2 = product(INTERVAL_ISO, INTERVAL_ISO)
    for k in range(2):
        assert len(P.cells(k)) == len(INTERVAL_ISO.cells(k)) ** 2
    Q, _, _ = product(INTERVAL_ISO, TERMINAL)
    assert find_isomorphism(Q, INTERVAL_ISO) is not None
    assert validate_functor(p1).holds and validate_functor(p2).holds


def test_product_universal_property_on_walking_arrow():
    C, D = WALKING_ARROW, INTERVAL_ISO
    P, p1, p2 = product(C, D)
    X = WALKING_ARROW
    for f in enumerate_functors(X, C):
        for g in enumerate_functors(X, D):
            lifts = [h for h in enumerate_functors(X, P) if p1.after(h).equals(f) and p2.after(h).equals(g)]
            assert len(lifts) == 1


def test_shift_hom_examples():
    H = shift_hom(TERMINAL, cell(0, "*"), cell(0, "*")).category
    assert [len(H.cells(k)) for k in range(H.cap + 1)] == [1]
    H = shift_hom(INTERVAL_ISO, a, b).category
    assert list(H.cells(0)) == [cell(0, "u")]
    with pytest.raises(BoundaryError):
        shift_hom(INTERVAL_ISO, u, b)


def test_actions():
    C = INTERVAL_ISO
    assert act_left(C, u, C.unit(b)) == u
    assert act_left(C, C.unit(a), u) == u
    assert act_right(C, u, C.unit(b)) == u
    with pytest.raises(BoundaryError):
        act_left(C, u, u)
    F = act_left_functor(C, u, a)
    assert validate_functor(F).holds


def test_coproduct_injections_are_valid():
    S, i, j = coproduct(INTERVAL_ISO, DISCRETE_2)
    assert validate_category(S).holds
    assert validate_functor(i).holds and validate_functor(j).holds
    assert len(S.cells(0)) == 4


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_random_categories_pass_validator_and_oracle(seed):
    C = random_category(random.Random(seed))
    assert C.size <= 12 and C.cap <= 3
    assert axiom_violations(C) == set()
    assert validate_category(C).holds


@settings(max_examples=80, deadline=None)
@given(seeds, seeds)
def test_validator_agrees_with_oracle_on_mutants(seed, mseed):
    C = random_category(random.Random(seed), max_cells=8)
    M, _ = rebind_composite(C, random.Random(mseed))
    if M is None:
        return
    rep = validate_category(M, limit=10_000)
    assert {f["law"] for f in rep.failures} == axiom_violations(M)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_products_and_shift_homs_are_valid(seed):
    rng = random.Random(seed)
    C, D = random_category(rng, max_cells=4), random_category(rng, max_cells=4)
    P, p1, p2 = product(C, D)
    assert validate_category(P).holds
    assert not functor_violations(p1) and not functor_violations(p2)
    x, y = rng.choice(C.cells(0)), rng.choice(C.cells(0))
    assert validate_category(shift_hom(C, x, y).category).holds


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_left_action_is_associative(seed):
    rng = random.Random(seed)
    C = random_category(rng, max_cells=8)
    ones = [c for c in C.cells(1)]
    for w in [c for k in range(1, C.cap + 1) for c in C.cells(k)][:20]:
        for v in ones:
            if C.tgt(v) != C.src_n(w, 0):
                continue
            for x in ones:
                if C.tgt(x) == C.src(v):
                    assert act_left(C, C.comp(x, v, 0), w) == act_left(C, x, act_left(C, v, w))


def test_json_round_trip():
    for C in random_categories(3, 20):
        D = type(C).from_json(C.to_json())
        assert D.equals(C)


def test_cell_repr_is_stable():
    assert repr(Cell(1, "u")) == "u@1"
