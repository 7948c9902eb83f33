import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from omegacat.core import Cell, identity
from omegacat.equivalence import is_weak_equivalence
from omegacat.fixtures import (DISCRETE_2, INTERVAL_ISO, TERMINAL, WALKING_ARROW, invertible_globe2, one_categories,
                               random_category, small_family)
from omegacat.polygraph import boundary_globe, globe
from omegacat.search import enumerate_functors, find_isomorphism
from omegacat.transfer import (collapse, collapsed_inclusion_report, congruence, include, is_equivalence_of_categories,
                               lambda_checks, transfer_identities, truncate)
from omegacat.validate import validate_category
from oracles import naive_weq

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def test_collapse_examples():
    assert find_isomorphism(collapse(WALKING_ARROW, 0), TERMINAL) is not None
    assert find_isomorphism(collapse(INTERVAL_ISO, 0), TERMINAL) is not None
    assert len(collapse(DISCRETE_2, 0).cells(0)) == 2
    O = invertible_globe2()
    part = congruence(O, 1)
    assert [sorted(c.id for c in cls) for cls in part.classes if len(cls) > 1] == [["f", "g"]]
    S = collapse(O, 1)
    assert S.cap == 1 and len(S.cells(1)) == 3 and S.size == 3


def test_truncate_globe_is_boundary():
    for n in range(1, 4):
        assert find_isomorphism(truncate(globe(n), n - 1), boundary_globe(n)) is not None


def test_include_only_pads():
    for C in small_family(6):
        D = include(C, C.cap + 2)
        assert D.cap == C.cap + 2 and D.size == C.size
        assert all(D.is_unit(c) for c in D.cells(C.cap + 1))


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_transfer_identities(seed):
    C = random_category(random.Random(seed), max_cells=8)
    for n in range(C.cap + 2):
        rep = transfer_identities(C, n)
        assert rep.holds, rep.failures
        S = collapse(C, n)
        assert S.cap <= n and validate_category(S).holds


@pytest.mark.parametrize("k,n", [(k, n) for k in range(5) for n in range(3)])
def test_collapsed_inclusions(k, n):
    rep = collapsed_inclusion_report(k, n)
    assert rep.holds, rep.failures
    assert rep.details["case"] == ("inclusion" if k <= n else "collapsing" if k == n + 1 else "identity")


def test_lambda_on_small_family():
    fam = small_family(5)
    for C in fam:
        ends = enumerate_functors(C, C, limit=4)
        for n in range(C.cap + 1):
            assert lambda_checks(C, n, ends).holds


def _invertible(C, e):
    return any(C.comp(e, v, 0) == C.unit(C.src(e)) and C.comp(v, e, 0) == C.unit(C.tgt(e))
               for v in C.hom(C.tgt(e), C.src(e)))


def _natural_iso(C, F, G):
    """A natural isomorphism F ⇒ G between functors into the 1-category C, by exhaustive choice."""
    D = F.dom
    objs = list(D.cells(0))
    pools = [[e for e in C.hom(F(x), G(x)) if _invertible(C, e)] for x in objs]
    for comps in itertools.product(*pools):
        eta = dict(zip(objs, comps))
        if all(C.comp(eta[D.src(u)], G(u), 0) == C.comp(F(u), eta[D.tgt(u)], 0) for u in D.cells(1)):
            return True
    return False


def quasi_inverse_exists(f) -> bool:
    A, B = f.dom, f.cod
    for g in enumerate_functors(B, A):
        if _natural_iso(A, identity(A), g.after(f)) and _natural_iso(B, identity(B), f.after(g)):
            return True
    return False


def test_one_categories_weq_is_equivalence():
    fam = one_categories()
    checked = 0
    for A in fam:
        for B in fam:
            for f in enumerate_functors(A, B, limit=12):
                eq = quasi_inverse_exists(f)
                assert is_equivalence_of_categories(f) == eq, (A.name, B.name)
                assert bool(is_weak_equivalence(f)) == eq == naive_weq(f), (A.name, B.name)
                checked += 1
    assert checked > 500


def test_equivalence_of_categories_needs_cap_one():
    with pytest.raises(ValueError):
        is_equivalence_of_categories(identity(invertible_globe2()))


def test_collapse_keeps_cells_below():
    C = invertible_globe2()
    S = collapse(C, 1)
    assert {c.id for c in S.cells(0)} == {c.id for c in C.cells(0)}
    assert Cell(0, "a") in S.cells(0)
