import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from omegacat.core import Cell, OmegaFunctor, coproduct, identity
from omegacat.errors import StructuralError
from omegacat.fixtures import DISCRETE_2, INTERVAL_ISO, TERMINAL, WALKING_ARROW, random_category, small_family
from omegacat.modelcheck import (LiftingProblem, RetractDiagram, check_immersion_certificate, coproduct_retract,
                                 empty_polygraph, fibrancy_report, find_lift, globe_squares, identity_certificate,
                                 immersion_implies_weq, immersion_search, inclusion, is_immersion, lift_search,
                                 pushout_immersion_suite, retract_check, self_retract, soa_stage, tfib_cross_check,
                                 three_for_two)
from omegacat.polygraph import materialize
from omegacat.search import enumerate_functors
from oracles import functor_violations, naive_weq

a, b, star = Cell(0, "a"), Cell(0, "b"), Cell(0, "*")
u, f_ = Cell(1, "u"), Cell(1, "f")
seeds = st.integers(min_value=0, max_value=2**32 - 1)


def bang(C):
    return OmegaFunctor(C, TERMINAL, {c: TERMINAL.unit(star, c.dim) for c in C.stored()}, name="!")


def point(C, x):
    return OmegaFunctor(TERMINAL, C, {star: x}, name=x.id)


def square(C, x, y):
    i = inclusion(1)
    top = OmegaFunctor(i.dom, C, {Cell(0, "s0"): x, Cell(0, "t0"): y})
    f = bang(C)
    bottom = OmegaFunctor(i.cod, TERMINAL, {c: TERMINAL.unit(star, c.dim) for c in i.cod.stored()})
    return LiftingProblem(i, f, top, bottom)


def naive_lift_exists(P) -> bool:
    """Try every dimension-preserving map on the stored cells outside the image of i."""
    B, T = P.i.cod, P.f.dom
    forced = {P.i(c): P.top(c) for c in P.i.dom.stored()}
    free = [c for c in B.stored() if c not in forced]
    pools = [T.cells(c.dim) for c in free]
    for choice in itertools.product(*pools):
        h = OmegaFunctor(B, T, {**forced, **dict(zip(free, choice))})
        if functor_violations(h):
            continue
        if all(h(P.i(c)) == P.top(c) for k in range(P.i.dom.cap + 1) for c in P.i.dom.cells(k)) and \
                all(P.f(h(c)) == P.bottom(c) for k in range(B.cap + 1) for c in B.cells(k)):
            return True
    return False


def test_lift_in_interval_picks_u():
    h = find_lift(square(INTERVAL_ISO, a, b))
    assert h(Cell(1, "o")) == u


def test_reversed_arrow_has_no_lift():
    h, cert = lift_search(square(WALKING_ARROW, b, a))
    assert h is None
    assert cert.to_json()["exhaustive"] and not cert.found


def test_noncommuting_square_rejected():
    i = inclusion(0)
    with pytest.raises(StructuralError):
        LiftingProblem(i, identity(WALKING_ARROW), OmegaFunctor(i.dom, WALKING_ARROW, {}),
                       OmegaFunctor(i.cod, TERMINAL, {Cell(0, "o"): star}))


@settings(max_examples=12, deadline=None)
@given(seeds)
def test_lift_search_matches_brute_force(seed):
    rng = random.Random(seed)
    fam = small_family(5)
    A, B = rng.choice(fam), rng.choice(fam)
    fs = enumerate_functors(A, B, limit=20)
    if not fs:
        return
    f = rng.choice(fs)
    for n in range(min(A.cap, B.cap) + 2):
        for P in itertools.islice(globe_squares(n, f), 6):
            assert (find_lift(P) is not None) == naive_lift_exists(P)


def test_immersion_examples():
    cert = identity_certificate(INTERVAL_ISO)
    assert check_immersion_certificate(cert).holds
    assert is_immersion(identity(WALKING_ARROW)) is not None
    cert = is_immersion(point(INTERVAL_ISO, a))
    assert cert is not None and check_immersion_certificate(cert).holds
    found, sc = immersion_search(point(WALKING_ARROW, a))
    assert found is None and sc.to_json()["exhaustive"]


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_immersions_are_weak_equivalences(seed):
    rng = random.Random(seed)
    fam = small_family(5)
    A, B = rng.choice(fam), rng.choice(fam)
    for f in enumerate_functors(A, B, limit=10):
        cert = is_immersion(f)
        if cert is None:
            continue
        assert naive_weq(f)
        assert immersion_implies_weq(f, cert).holds
        g = cert.g
        assert all(g(f(x)) == x for x in A.stored())


def test_pushout_along_summand():
    _, in1, _ = coproduct(TERMINAL, TERMINAL)
    f = point(INTERVAL_ISO, a)
    rep = pushout_immersion_suite(f, in1)
    assert rep.holds, rep.failures
    rep = pushout_immersion_suite(f, identity(TERMINAL))
    assert rep.holds and rep.details["reused"]
    assert not pushout_immersion_suite(point(WALKING_ARROW, a), in1).holds


def test_retracts():
    f = point(INTERVAL_ISO, a)
    assert retract_check(self_retract(f)).holds
    e = bang(DISCRETE_2)
    rep = retract_check(coproduct_retract(f, e, star))
    assert rep.holds and rep.details["g_weq"] is False
    d = self_retract(f)
    broken = RetractDiagram(d.f, d.g, d.s, d.r, d.s2, OmegaFunctor(INTERVAL_ISO, INTERVAL_ISO,
                                                                   {c: INTERVAL_ISO.unit(a, c.dim) if c.dim < 2 and c != u
                                                                    else c for c in INTERVAL_ISO.stored()}))
    assert not retract_check(broken, check_weq=False).holds


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_three_for_two(seed):
    rng = random.Random(seed)
    fam = small_family(5)
    A, B, C = (rng.choice(fam) for _ in range(3))
    fs, gs = enumerate_functors(A, B, limit=8), enumerate_functors(B, C, limit=8)
    for f in fs:
        for g in gs:
            rep = three_for_two(f, g)
            assert rep.holds
            assert rep.details["weq"] == [naive_weq(f), naive_weq(g), naive_weq(g.after(f))]


def test_soa_from_empty():
    M = materialize(empty_polygraph())
    f = OmegaFunctor(M.category, TERMINAL, {}, name="∅")
    res = soa_stage(M, f, 0, 1)
    assert [x["generator"] for x in res.attached] == ["e0_0"]
    assert res.polygraph.gens[0] == {"e0_0": None}
    assert not res.unfilled


def test_tfib_cross_check_examples():
    for f in (bang(INTERVAL_ISO), bang(DISCRETE_2), point(WALKING_ARROW, a), identity(WALKING_ARROW)):
        assert tfib_cross_check(f).holds
    assert tfib_cross_check(bang(INTERVAL_ISO)).details["tfib"]
    assert not tfib_cross_check(bang(DISCRETE_2)).details["tfib"]


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_fibrancy(seed):
    rng = random.Random(seed)
    X = random_category(rng, max_cells=5, max_cap=2)
    f = point(INTERVAL_ISO, a)
    rep = fibrancy_report(f, [X, TERMINAL])
    assert rep.holds and rep.details["extensions"] == len(X.cells(0)) + 1
