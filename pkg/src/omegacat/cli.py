"""The ``omc`` command: a thin layer over the library.

Exit codes: 0 pass, 1 law or verdict failure, 2 inconclusive only (budget),
3 usage or schema error. Reports go to stdout as canonical JSON.
"""
from __future__ import annotations

import argparse
import os
import random
import sys
from typing import Any, Sequence

from . import documents
from .core import Cell, FiniteOmegaCat, OmegaFunctor, cell_str
from .cylinder_laws import appendix_laws
from .cylinders import cylinder_from_json, gamma
from .equivalence import is_trivial_fibration, is_weak_equivalence, omega_equiv
from .errors import BudgetExceeded, OmegaError, StructuralError, Unsupported
from .fixtures import random_categories
from .gluing import charweq, check_gluing, glue, transport_instances, transport_report
from .modelcheck import LiftingProblem, immersion_search, lift_search, soa_stage
from .polygraph import (PolyMorphism, Polygraph, boundary_globe, functor_from_assignment, globe,
                        globe_pushout_report, materialize, pushout_polygraph)
from .report import CheckReport
from .search import DEFAULT_NODE_BUDGET, find_isomorphism
from .suite import EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_PASS, EXIT_USAGE, SUITE_NAMES, SuiteConfig, run_suite
from .transfer import collapse, include, truncate
from .validate import validate_category, validate_functor


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2
        raise UsageError(message)


def _env_int(name: str, default: int) -> int:
    try:
        return int(os.environ.get(name, default))
    except ValueError as e:
        raise UsageError(f"{name}: expected an integer") from e


def _nodes() -> int:
    return _env_int("OMC_BUDGET_NODES", DEFAULT_NODE_BUDGET)


def _cells() -> int:
    return _env_int("OMC_BUDGET_CELLS", 2_000)


def _cylinders() -> int:
    return _env_int("OMC_BUDGET_CYLINDERS", 50_000)


def _category(path: str) -> FiniteOmegaCat:
    return documents.load(path, "category.v1")


def _functor(path: str) -> OmegaFunctor:
    return documents.load(path, "functor.v1")


def _polygraph(path: str) -> Polygraph:
    return documents.load(path, "polygraph.v1")


def _cell(C: FiniteOmegaCat, spec: str) -> Cell:
    """``id`` or ``dim:id``."""
    if ":" in spec:
        d, cid = spec.split(":", 1)
        return C.lookup(int(d), cid)
    for k in range(C.cap + 1):
        for c in C.cells(k):
            if c.id == spec:
                return c
    raise StructuralError(f"no cell {spec!r} in {C.name or 'category'}")


def _verdict(rep: CheckReport) -> int:
    if rep.inconclusive:
        return EXIT_INCONCLUSIVE
    return EXIT_PASS if rep.holds else EXIT_FAIL


# -- commands --------------------------------------------------------------------

def cmd_validate(a) -> tuple[int, Any]:
    doc = documents.load(a.file)
    if isinstance(doc, FiniteOmegaCat):
        rep = validate_category(doc)
    elif isinstance(doc, OmegaFunctor):
        rep = CheckReport.combine("validate", [validate_category(doc.dom), validate_category(doc.cod),
                                               validate_functor(doc)])
    else:
        rep = validate_category(materialize(doc, _cells()).category)
    return _verdict(rep), rep


def cmd_is_weq(a):
    rep = is_weak_equivalence(_functor(a.file))
    return _verdict(rep), rep


def cmd_is_tfib(a):
    rep = is_trivial_fibration(_functor(a.file))
    return _verdict(rep), rep


def cmd_eqv(a):
    C = _category(a.file)
    x, y = _cell(C, a.x), _cell(C, a.y)
    w = omega_equiv(C, x, y)
    out = {"x": repr(x), "y": repr(y), "equivalent": w is not None, "witness": w.to_json() if w else None}
    return (EXIT_PASS if w else EXIT_FAIL), out


def cmd_gamma(a):
    C = _category(a.file)
    G = gamma(C, budget=_cylinders())
    rep = validate_category(G.category)
    return _verdict(rep), {"gamma": G.category.to_json(), "validate": rep.to_json()}


def cmd_glue(a):
    G = glue(_functor(a.file))
    rep = check_gluing(G)
    return _verdict(rep), {"glue": G.category.to_json(), "check": rep.to_json()}


def cmd_transport(a):
    C = _category(a.file)
    if a.problem:
        data = documents.read_json(a.problem)
        U, V = cylinder_from_json(data["U"]), cylinder_from_json(data["V"])
        rep = transport_report(C, U, V, _cell(C, data["z"]), bool(data.get("bottom_up", False)))
        return _verdict(rep), rep
    fails, count = [], 0
    for U, V, z in transport_instances(C, a.dim):
        count += 1
        rep = transport_report(C, U, V, z)
        if not rep:
            fails.append({"U": U.to_json(), "V": V.to_json(), "z": repr(z), "failures": rep.failures})
    rep = CheckReport.collect("transport", fails, problems=count)
    return _verdict(rep), rep


def cmd_charweq(a):
    rep = charweq(_functor(a.file))
    return _verdict(rep), rep


def cmd_lift(a):
    data = documents.read_json(a.file)
    try:
        parts = {k: documents.from_data(data[k], "functor.v1") for k in ("i", "f", "top", "bottom")}
    except KeyError as e:
        raise StructuralError(f"/{e.args[0]}: missing functor") from e
    h, cert = lift_search(LiftingProblem(**parts), _nodes())
    out = {"lift": h.to_json()["map"] if h else None, "certificate": cert.to_json()}
    return (EXIT_PASS if h else EXIT_FAIL), out


def cmd_is_immersion(a):
    f = _functor(a.file)
    cert, search = immersion_search(f, _nodes())
    out = {"immersion": cert is not None, "search": search.to_json(), "certificate": cert.to_json() if cert else None}
    return (EXIT_PASS if cert else EXIT_FAIL), out


def cmd_soa(a):
    S = _polygraph(a.polygraph)
    Y = _category(a.target)
    M = materialize(S, _cells())
    assign = {}
    for item in a.assign:
        try:
            lhs, rhs = item.split("=", 1)
            d, g = lhs.split(":", 1)
        except ValueError as e:
            raise UsageError(f"--assign expects dim:generator=cell, got {item!r}") from e
        assign[(int(d), g)] = _cell(Y, rhs)
    missing = [(k, g) for k in range(S.cap + 1) for g in S.gens[k] if (k, g) not in assign]
    if missing:
        raise UsageError(f"--assign: no image for generators {missing}")
    f = functor_from_assignment(M, assign, Y)
    res = soa_stage(M, f, a.dim, a.stages, _cells(), _nodes())
    return (EXIT_PASS if not res.unfilled else EXIT_FAIL), res.to_json()


def cmd_collapse(a):
    return EXIT_PASS, collapse(_category(a.file), a.dim)


def cmd_include(a):
    return EXIT_PASS, include(_category(a.file), a.cap)


def cmd_truncate(a):
    return EXIT_PASS, truncate(_category(a.file), a.dim)


def cmd_iso(a):
    A, B = _category(a.file), _category(a.other)
    iso = find_isomorphism(A, B)
    out = {"isomorphic": iso is not None,
           "map": None if iso is None else [[cell_str(c), cell_str(iso(c))] for c in sorted(A.stored())]}
    return (EXIT_PASS if iso else EXIT_FAIL), out


def cmd_free(a):
    return EXIT_PASS, materialize(_polygraph(a.file), _cells()).category


def cmd_globe(a):
    return EXIT_PASS, boundary_globe(a.n) if a.boundary else globe(a.n)


def cmd_pushout_poly(a):
    if a.globe is not None:
        rep = globe_pushout_report(a.globe, _cells())
        return _verdict(rep), rep
    if not a.file:
        raise UsageError("pushout-poly needs a span file or --globe N")
    data = documents.read_json(a.file)
    S = documents.from_data(data["dom"], "polygraph.v1")
    legs = []
    for side in ("left", "right"):
        T = documents.from_data(data[side]["cod"], "polygraph.v1")
        legs.append(PolyMorphism(S, T, data[side]["maps"]))
    P, j1, j2 = pushout_polygraph(*legs)
    return EXIT_PASS, {"pushout": P.to_json(), "left": j1.maps, "right": j2.maps}


def _suite_config(a, names: Sequence[str]) -> SuiteConfig:
    return SuiteConfig.from_env(seed=a.seed, count=a.count, per_law=a.per_law, small_count=a.small_count,
                                functor_limit=a.functor_limit, suites=tuple(names), corpus=tuple(a.corpus))


def cmd_suite(a):
    names: list[str] = []
    for chunk in list(a.names) + ([a.suite] if a.suite else []):
        names.extend(x for x in chunk.split(",") if x)
    if not names or names == ["all"]:
        names = list(SUITE_NAMES)
    if names == ["none"]:
        names = []
    bad = [n for n in names if n not in SUITE_NAMES]
    if bad:
        raise UsageError(f"unknown suites {bad}; choose from {', '.join(SUITE_NAMES)}, all, none")
    return run_suite(_suite_config(a, names))


def cmd_cyl_laws(a):
    cats = random_categories(a.seed, a.count)
    parts = []
    for i, C in enumerate(cats):
        gamma(C, budget=_cylinders())
        parts.append(appendix_laws(C, random.Random(f"{a.seed}:laws:{i}"), per_law=a.per_law))
    rep = CheckReport.combine("cyl-laws", parts)
    rep.details["categories"] = len(cats)
    return _verdict(rep), rep


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="omc", description="Finite strict ω-categories: validation, equivalences, cylinders, "
                                        "gluing, lifting and law suites.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name: str, fn, help: str, file: bool = True):
        sp = sub.add_parser(name, help=help)
        if file:
            sp.add_argument("file", help="JSON document")
        sp.set_defaults(fn=fn)
        return sp

    add("validate", cmd_validate, "validate a category, functor or polygraph")
    add("is-weq", cmd_is_weq, "is the functor a weak equivalence")
    add("is-tfib", cmd_is_tfib, "is the functor a trivial fibration")
    sp = add("eqv", cmd_eqv, "decide x ≋ y and print a witness")
    sp.add_argument("x", help="cell id or dim:id")
    sp.add_argument("y", help="cell id or dim:id")
    add("gamma", cmd_gamma, "the category of cylinders Γ(X)")
    add("glue", cmd_glue, "the gluing category Glu f")
    sp = add("transport", cmd_transport, "transport along cylinders against the brute-force oracle")
    sp.add_argument("--problem", help="JSON with U, V (cylinders), z and bottom_up")
    sp.add_argument("--dim", type=int, default=None, help="largest cylinder dimension")
    add("charweq", cmd_charweq, "compare weak equivalence with λf a trivial fibration")
    add("lift", cmd_lift, "solve a lifting problem given as JSON with i, f, top, bottom")
    add("is-immersion", cmd_is_immersion, "search an immersion certificate")
    sp = add("soa", cmd_soa, "finite small-object stages", file=False)
    sp.add_argument("polygraph")
    sp.add_argument("target")
    sp.add_argument("--assign", action="append", default=[], help="dim:generator=cell")
    sp.add_argument("--stages", type=int, default=1)
    sp.add_argument("--dim", type=int, default=0)
    sp = add("collapse", cmd_collapse, "𝕊: collapse above dimension n")
    sp.add_argument("--dim", type=int, required=True)
    sp = add("include", cmd_include, "𝕀: pad with units up to the cap")
    sp.add_argument("--cap", type=int, required=True)
    sp = add("truncate", cmd_truncate, "𝕋: drop cells above dimension n")
    sp.add_argument("--dim", type=int, required=True)
    sp = add("iso", cmd_iso, "search an isomorphism between two categories")
    sp.add_argument("other", help="second category")
    add("free", cmd_free, "materialize the free category of a polygraph")
    sp = add("globe", cmd_globe, "the globe O(n) or its boundary", file=False)
    sp.add_argument("n", type=int)
    sp.add_argument("--boundary", action="store_true")
    sp = add("pushout-poly", cmd_pushout_poly, "pushout of polygraph morphisms", file=False)
    sp.add_argument("file", nargs="?", help="JSON with dom, left{cod,maps}, right{cod,maps}")
    sp.add_argument("--globe", type=int, default=None, help="check the boundary pushout square for O(n)")
    sp = add("suite", cmd_suite, "run seeded law suites", file=False)
    sp.add_argument("names", nargs="*", help=f"suites ({', '.join(SUITE_NAMES)}), all or none")
    sp.add_argument("--suite", default=None, help="comma-separated suites, all or none")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--count", type=int, default=None)
    sp.add_argument("--small-count", type=int, default=None)
    sp.add_argument("--per-law", type=int, default=None)
    sp.add_argument("--functor-limit", type=int, default=None)
    sp.add_argument("--corpus", action="append", default=[], help="extra JSON documents to validate")
    sp = add("cyl-laws", cmd_cyl_laws, "cylinder laws on seeded random categories", file=False)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=20)
    sp.add_argument("--per-law", type=int, default=40)
    p.add_argument("--out", help="write the report here instead of stdout")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
        code, result = a.fn(a)
    except UsageError as e:
        print(f"omc: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (StructuralError, OSError) as e:
        print(f"omc: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExceeded, Unsupported) as e:
        code, result = EXIT_INCONCLUSIVE, {"inconclusive": True, "reason": str(e)}
    except OmegaError as e:
        code, result = EXIT_FAIL, {"error": type(e).__name__, "reason": str(e)}
    text = documents.dumps(result)
    if a.out:
        with open(a.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
