import os
import random
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from omegacat import kernels
from omegacat.cylinders import gamma
from omegacat.fixtures import random_category
from omegacat.validate import validate_category
from helpers import rebind_composite
from oracles import axiom_violations

seeds = st.integers(min_value=0, max_value=2**32 - 1)
needs_compiled = pytest.mark.skipif(kernels.compiled_backend is None, reason="compiled kernels not built")


def laws(rep):
    return sorted((f["law"], str(f.get("cells"))) for f in rep.failures)


@needs_compiled
def test_compiled_is_default():
    assert kernels.backend is kernels.compiled_backend and kernels.BACKEND_NAME == "compiled"


def test_pure_python_forced_by_env():
    env = dict(os.environ, OMC_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import omegacat; print(omegacat.BACKEND_NAME)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@needs_compiled
@settings(max_examples=60, deadline=None)
@given(seeds)
def test_backends_agree(seed):
    rng = random.Random(seed)
    C = random_category(rng)
    cats = [D for D in (C, rebind_composite(C, rng)[0]) if D is not None]
    if C.size <= 4:
        cats.append(gamma(C).category)
    for D in cats:
        py = validate_category(D, limit=10_000, backend=kernels.python_backend)
        cc = validate_category(D, limit=10_000, backend=kernels.compiled_backend)
        assert py.holds == cc.holds
        assert laws(py) == laws(cc)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_python_backend_matches_oracle(seed):
    rng = random.Random(seed)
    M, _ = rebind_composite(random_category(rng), rng)
    if M is None:
        return
    rep = validate_category(M, limit=10_000, backend=kernels.python_backend)
    assert {f["law"] for f in rep.failures} == axiom_violations(M)
