"""The nine acceptance criteria, each run with the default configuration and printed as one line."""
import time

import pytest

from omegacat.suite import SUITES, SuiteConfig, negative_fixtures

CFG = SuiteConfig()


def run_criterion(capsys, number, title, suites, budget_s, min_instances=1):
    start = time.perf_counter()
    outs = [SUITES[name](CFG) for name in suites]
    elapsed = time.perf_counter() - start
    failures = [f for o in outs for f in o.failures]
    inconclusive = [i for o in outs for i in o.inconclusive]
    instances = sum(o.instances for o in outs)
    problems = []
    if failures:
        problems.append(f"{len(failures)} failures")
    if inconclusive:
        problems.append(f"{len(inconclusive)} inconclusive")
    if instances < min_instances:
        problems.append(f"only {instances} instances")
    if elapsed > budget_s:
        problems.append(f"{elapsed:.1f}s over the {budget_s}s budget")
    verdict = "PASS" if not problems else "FAIL"
    line = f"[{verdict}] criterion {number}: {title} ({instances} instances, {elapsed:.1f}s)"
    if problems:
        line += " " + "; ".join(problems)
    with capsys.disabled():
        print("\n" + line)
    assert not problems, (failures[:3], inconclusive[:3])
    return outs


def test_criterion_1_cylinder_laws(capsys):
    run_criterion(capsys, 1, "cylinder laws on random categories", ["laws"], 300, min_instances=200)


def test_criterion_2_gamma(capsys):
    run_criterion(capsys, 2, "Γ validates, Top and Bot are trivial fibrations, Triv is a weak equivalence",
                  ["gamma"], 120, min_instances=200)


def test_criterion_3_charweq(capsys):
    outs = run_criterion(capsys, 3, "weak equivalence iff λf is a trivial fibration", ["charweq"], 300)
    assert outs[0].details["weak_equivalences"] > 0


def test_criterion_4_transport(capsys):
    outs = run_criterion(capsys, 4, "transport matches the oracle and is weakly unique", ["transport"], 180,
                         min_instances=200)
    assert outs[0].details["problems"] > 0


def test_criterion_5_closure(capsys):
    run_criterion(capsys, 5, "3-for-2 and retract closure of weak equivalences", ["w-closure"], 300)


def test_criterion_6_immersions(capsys):
    outs = run_criterion(capsys, 6, "immersions are weak equivalences, stable under pushout; negatives refused",
                         ["immersion", "pushout-immersion"], 180)
    refusals = outs[0].details["refusals"]
    assert set(refusals) == {name for name, _ in negative_fixtures()}
    assert all(c["exhaustive"] and not c["found"] for c in refusals.values())
    assert outs[0].details["certified"] > 0


def test_criterion_7_transfer(capsys):
    outs = run_criterion(capsys, 7, "transfer identities, collapsed inclusions, n=1 equivalences", ["transfer"], 180,
                         min_instances=200)
    assert outs[0].details["one_category_equivalences"] > 0


def test_criterion_8_globes(capsys):
    run_criterion(capsys, 8, "globe and boundary counts, boundary pushout square", ["globes"], 60, min_instances=9)


def test_criterion_9_fibrancy(capsys):
    outs = run_criterion(capsys, 9, "every map extends along a certified immersion", ["fibrancy"], 60)
    assert outs[0].details["extensions"] > 0


@pytest.fixture(autouse=True)
def _fresh_caches():
    """Each criterion pays for its own families."""
    from omegacat import suite
    suite._random_family.cache_clear()
    suite._small.cache_clear()
    yield
