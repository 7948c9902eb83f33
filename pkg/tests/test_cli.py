import json
import random
import subprocess
import sys

import pytest

from omegacat.cli import main
from omegacat.core import OmegaFunctor
from omegacat.fixtures import DISCRETE_2, INTERVAL_ISO, TERMINAL, WALKING_ARROW, random_category
from omegacat.polygraph import boundary_globe, globe
from helpers import rebind_composite


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj.to_json() if hasattr(obj, "to_json") else obj, ensure_ascii=False), encoding="utf-8")
    return str(p)


def bang(C):
    return OmegaFunctor(C, TERMINAL, {c: TERMINAL.unit(TERMINAL.cells(0)[0], c.dim) for c in C.stored()}, name="!")


def corrupted(seed=0):
    rng = random.Random(seed)
    while True:
        M, _ = rebind_composite(random_category(rng, max_cells=6), rng)
        if M is not None:
            return M


def test_validate_exit_codes(tmp_path, capsys):
    code, rep = run(capsys, "validate", write(tmp_path, "i.json", INTERVAL_ISO))
    assert code == 0 and rep["holds"]
    code, rep = run(capsys, "validate", write(tmp_path, "bad.json", corrupted()))
    assert code == 1 and not rep["holds"]


def test_usage_and_schema_errors(tmp_path, capsys):
    assert main(["no-such-command"]) == 3
    p = tmp_path / "junk.json"
    p.write_text("{not json", encoding="utf-8")
    assert main(["validate", str(p)]) == 3
    assert main(["validate", write(tmp_path, "s.json", {"schema": "category.v9"})]) == 3
    assert main(["is-weq", write(tmp_path, "c.json", INTERVAL_ISO)]) == 3
    assert main(["validate", str(tmp_path / "missing.json")]) == 3
    assert main(["suite", "--suite", "nonsense"]) == 3
    capsys.readouterr()


def test_weq_commands(tmp_path, capsys):
    code, rep = run(capsys, "is-weq", write(tmp_path, "f.json", bang(INTERVAL_ISO)))
    assert code == 0 and rep["holds"]
    code, rep = run(capsys, "is-weq", write(tmp_path, "g.json", bang(DISCRETE_2)))
    assert code == 1 and not rep["holds"]
    code, _ = run(capsys, "charweq", write(tmp_path, "h.json", bang(WALKING_ARROW)))
    assert code == 0


def test_eqv(tmp_path, capsys):
    p = write(tmp_path, "i.json", INTERVAL_ISO)
    code, out = run(capsys, "eqv", p, "a", "b")
    assert code == 0 and out["equivalent"] and out["witness"]
    code, out = run(capsys, "eqv", write(tmp_path, "w.json", WALKING_ARROW), "a", "b")
    assert code == 1 and not out["equivalent"]


def test_globe_and_iso(tmp_path, capsys):
    g2 = str(tmp_path / "g2.json")
    assert main(["--out", g2, "globe", "2"]) == 0
    b2 = str(tmp_path / "b2.json")
    assert main(["--out", b2, "globe", "2", "--boundary"]) == 0
    assert json.loads(open(g2, encoding="utf-8").read())["cells"] == globe(2).to_json()["cells"]
    assert json.loads(open(b2, encoding="utf-8").read())["cells"] == boundary_globe(2).to_json()["cells"]
    code, out = run(capsys, "iso", g2, g2)
    assert code == 0 and out["isomorphic"]
    code, out = run(capsys, "iso", g2, b2)
    assert code == 1 and not out["isomorphic"]


def test_suite_none_is_empty(capsys):
    code, out = run(capsys, "suite", "--suite", "none")
    assert code == 0 and out["suites"] == [] and out["status"] == "pass"
    assert out["summary"] == {"failures": 0, "inconclusive": 0, "instances": 0}


def test_suite_is_deterministic(tmp_path):
    outs = []
    for name in ("a.json", "b.json"):
        p = str(tmp_path / name)
        assert main(["--out", p, "suite", "--suite", "globes,transport", "--seed", "7", "--count", "5"]) == 0
        outs.append(open(p, "rb").read())
    assert outs[0] == outs[1]
    p = str(tmp_path / "c.json")
    main(["--out", p, "suite", "--suite", "transport", "--seed", "8", "--count", "5"])
    assert open(p, "rb").read() != outs[0]


def test_corrupted_corpus_fails(tmp_path, capsys):
    good = write(tmp_path, "good.json", INTERVAL_ISO)
    code, _ = run(capsys, "suite", "--suite", "corpus", "--corpus", good)
    assert code == 0
    bad = write(tmp_path, "bad.json", corrupted(3))
    code, out = run(capsys, "suite", "--suite", "corpus", "--corpus", good, "--corpus", bad)
    assert code == 1 and out["status"] == "fail" and out["summary"]["failures"] >= 1


def test_budget_env_override(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("OMC_BUDGET_CYLINDERS", "1")
    code, out = run(capsys, "gamma", write(tmp_path, "i.json", INTERVAL_ISO))
    assert code == 2 and out["inconclusive"]
    monkeypatch.setenv("OMC_BUDGET_CYLINDERS", "many")
    assert main(["gamma", write(tmp_path, "j.json", INTERVAL_ISO)]) == 3


def test_entry_point(tmp_path):
    out = subprocess.run([sys.executable, "-m", "omegacat.cli", "globe", "1"], capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["cap"] == 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_pushout_poly_globe(capsys, n):
    code, out = run(capsys, "pushout-poly", "--globe", str(n))
    assert code == 0
