"""Seeded law suites over generated families, with a deterministic JSON report.

Each suite walks a family of instances and records, per instance, a pass,
a failure (with the offending law instances) or an inconclusive run cut
short by a budget. Inconclusive runs are listed separately and never count
as passes.
"""
from __future__ import annotations

import dataclasses
import os
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Iterable

from .core import Cell, FiniteOmegaCat, OmegaFunctor, coproduct
from .cylinder_laws import appendix_laws
from .cylinders import above_cap_units, gamma, gamma_composition_report, gamma_product_report
from .errors import BudgetExceeded, StructuralError, Unsupported
from .equivalence import is_weak_equivalence
from .fixtures import (INTERVAL_ISO, TERMINAL, WALKING_ARROW, one_categories, random_categories,
                       small_family)
from .gluing import charweq, check_top_bot_fibrations, transport_instances, transport_report
from .modelcheck import (LiftingProblem, coproduct_retract, fibrancy_report, immersion_implies_weq,
                         immersion_search, inclusion, lift_search, pushout_immersion_suite, retract_check,
                         self_retract, tfib_cross_check, three_for_two)
from .polygraph import (free_functor, globe_count_report, globe_pushout_report, materialize, random_extension,
                        random_polygraph, relabel)
from .report import CheckReport
from .search import enumerate_functors
from .transfer import collapsed_inclusion_report, is_equivalence_of_categories, lambda_checks, transfer_identities
from .validate import validate_category, validate_functor

SUITE_NAMES = (
    "corpus", "laws", "gamma", "charweq", "lifting", "transport", "w-closure", "immersion",
    "pushout-immersion", "transfer", "gamma-functor", "globes", "fibrancy",
)

ENV = {
    "seed": "OMC_SEED",
    "count": "OMC_COUNT",
    "small_count": "OMC_SMALL_COUNT",
    "per_law": "OMC_PER_LAW",
    "budget_cells": "OMC_BUDGET_CELLS",
    "budget_cylinders": "OMC_BUDGET_CYLINDERS",
    "budget_nodes": "OMC_BUDGET_NODES",
}


@dataclass(frozen=True)
class SuiteConfig:
    """Seed, family sizes, budgets and suite selection.

    ``budget_cells`` bounds materialized free categories, ``budget_cylinders``
    the cylinders enumerated per Γ(X) and ``budget_nodes`` every functor
    search. ``functor_limit`` of 0 means exhaustive families.
    """

    seed: int = 0
    count: int = 200
    max_cells: int = 12
    max_cap: int = 3
    small_count: int = 25
    small_cells: int = 8
    per_law: int = 40
    budget_cells: int = 2_000
    budget_cylinders: int = 50_000
    budget_nodes: int = 500_000
    functor_limit: int = 0
    polygraphs: int = 40
    suites: tuple[str, ...] = SUITE_NAMES
    corpus: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        for name in ("budget_cells", "budget_cylinders", "budget_nodes", "per_law"):
            if getattr(self, name) <= 0:
                raise StructuralError(f"config: {name} must be positive")
        for name in ("count", "small_count", "polygraphs", "functor_limit"):
            if getattr(self, name) < 0:
                raise StructuralError(f"config: {name} must be non-negative")
        unknown = [s for s in self.suites if s not in SUITE_NAMES]
        if unknown:
            raise StructuralError(f"config: unknown suites {unknown}")

    @classmethod
    def from_env(cls, env: dict[str, str] | None = None, **overrides: Any) -> "SuiteConfig":
        env = os.environ if env is None else env
        values: dict[str, Any] = {}
        for key, var in ENV.items():
            if var in env:
                try:
                    values[key] = int(env[var])
                except ValueError as e:
                    raise StructuralError(f"{var}: expected an integer") from e
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def to_json(self) -> dict[str, Any]:
        out = dataclasses.asdict(self)
        out["suites"] = list(self.suites)
        out["corpus"] = list(self.corpus)
        return out


@dataclass
class SuiteOutcome:
    name: str
    instances: int = 0
    failures: list[dict[str, Any]] = field(default_factory=list)
    inconclusive: list[dict[str, Any]] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return not self.failures

    def run(self, instance: str, thunk: Callable[[], CheckReport | bool]) -> CheckReport | None:
        """Run one instance; budget overruns and unsupported cases are inconclusive."""
        try:
            rep = thunk()
        except (BudgetExceeded, Unsupported) as e:
            self.inconclusive.append({"instance": instance, "reason": str(e)})
            return None
        if isinstance(rep, bool):
            rep = CheckReport(instance, rep)
        self.instances += 1
        if rep.inconclusive:
            self.inconclusive.append({"instance": instance, "reason": rep.failures[:3] or rep.details})
        elif not rep.holds:
            self.failures.append({"instance": instance, "failures": rep.failures[:5]})
        return rep

    def to_json(self) -> dict[str, Any]:
        return {
            "suite": self.name,
            "holds": self.holds,
            "instances": self.instances,
            "failures": self.failures,
            "inconclusive": self.inconclusive,
            "details": self.details,
        }


# -- families ------------------------------------------------------------------

@lru_cache(maxsize=8)
def _random_family(seed: int, count: int, max_cells: int, max_cap: int) -> tuple[FiniteOmegaCat, ...]:
    return tuple(random_categories(seed, count, max_cells=max_cells, max_cap=max_cap))


def random_family(cfg: SuiteConfig) -> tuple[FiniteOmegaCat, ...]:
    return _random_family(cfg.seed, cfg.count, cfg.max_cells, cfg.max_cap)


@lru_cache(maxsize=8)
def _small(seed: int, small_count: int, small_cells: int) -> tuple[FiniteOmegaCat, ...]:
    extra = random_categories(seed + 1, small_count, max_cells=small_cells)
    return tuple(small_family(small_cells)) + tuple(extra)


def exhaustive_family(cfg: SuiteConfig) -> tuple[FiniteOmegaCat, ...]:
    """Named categories with ≤ small_cells cells plus seeded random ones."""
    return _small(cfg.seed, cfg.small_count, cfg.small_cells)


def _label(i: int, C: FiniteOmegaCat) -> str:
    return f"{i}:{C.name}"


def _functors(cfg: SuiteConfig, A: FiniteOmegaCat, B: FiniteOmegaCat) -> list[OmegaFunctor]:
    return enumerate_functors(A, B, limit=cfg.functor_limit or None, node_budget=cfg.budget_nodes)


def functor_pairs(cfg: SuiteConfig, fam: Iterable[FiniteOmegaCat],
                  out: SuiteOutcome | None = None) -> Iterable[tuple[str, OmegaFunctor]]:
    """All functors between members of ``fam``; families over the search budget are inconclusive."""
    fam = list(fam)
    for ia, A in enumerate(fam):
        for ib, B in enumerate(fam):
            pair = f"{_label(ia, A)}->{_label(ib, B)}"
            try:
                fs = _functors(cfg, A, B)
            except BudgetExceeded as e:
                if out is not None:
                    out.inconclusive.append({"instance": pair, "reason": str(e)})
                continue
            for j, f in enumerate(fs):
                yield f"{pair}#{j}", f


def _gamma(cfg: SuiteConfig, C: FiniteOmegaCat):
    return gamma(C, budget=cfg.budget_cylinders)


# -- suites ---------------------------------------------------------------------

def suite_corpus(cfg: SuiteConfig) -> SuiteOutcome:
    """Every named fixture and every supplied JSON document validates."""
    from .documents import load
    from .polygraph import Polygraph

    out = SuiteOutcome("corpus")
    named = [TERMINAL, INTERVAL_ISO, WALKING_ARROW, *small_family(cfg.small_cells), *one_categories()]
    for i, C in enumerate(named):
        out.run(f"fixture {_label(i, C)}", lambda C=C: validate_category(C))
    for path in cfg.corpus:
        doc = load(path)
        if isinstance(doc, FiniteOmegaCat):
            out.run(path, lambda doc=doc: validate_category(doc))
        elif isinstance(doc, OmegaFunctor):
            out.run(path, lambda doc=doc: CheckReport.combine(
                "functor", [validate_category(doc.dom), validate_category(doc.cod), validate_functor(doc)]))
        elif isinstance(doc, Polygraph):
            out.run(path, lambda doc=doc: validate_category(materialize(doc, cfg.budget_cells).category))
    return out


def suite_laws(cfg: SuiteConfig) -> SuiteOutcome:
    out = SuiteOutcome("laws")
    totals: dict[str, int] = {}
    for i, C in enumerate(random_family(cfg)):
        def one(C=C, i=i):
            _gamma(cfg, C)
            rng = random.Random(f"{cfg.seed}:laws:{i}")
            return appendix_laws(C, rng, per_law=cfg.per_law)
        rep = out.run(_label(i, C), one)
        if rep is not None:
            for law, n in rep.details.get("instances", {}).items():
                totals[law] = totals.get(law, 0) + n
    out.details["law_instances"] = dict(sorted(totals.items()))
    return out


def suite_gamma(cfg: SuiteConfig) -> SuiteOutcome:
    out = SuiteOutcome("gamma")

    def one(C: FiniteOmegaCat) -> CheckReport:
        G = _gamma(cfg, C)
        extra = above_cap_units(G)
        parts = [validate_category(G.category), check_top_bot_fibrations(C),
                 CheckReport.collect("above-cap-units", [{"cylinder": repr(U)} for U in extra[:3]])]
        return CheckReport.combine("gamma", parts)

    for i, C in enumerate(random_family(cfg)):
        out.run(_label(i, C), lambda C=C: one(C))
    return out


def suite_charweq(cfg: SuiteConfig) -> SuiteOutcome:
    out = SuiteOutcome("charweq")
    weq = 0
    for name, f in functor_pairs(cfg, exhaustive_family(cfg), out):
        rep = out.run(name, lambda f=f: charweq(f))
        weq += bool(rep and rep.details.get("weq"))
    out.details["weak_equivalences"] = weq
    return out


def suite_lifting(cfg: SuiteConfig) -> SuiteOutcome:
    """is_trivial_fibration agrees with raw lifting against the globe inclusions."""
    out = SuiteOutcome("lifting")
    for name, f in functor_pairs(cfg, small_family(cfg.small_cells), out):
        out.run(name, lambda f=f: tfib_cross_check(f))
    return out


def suite_transport(cfg: SuiteConfig) -> SuiteOutcome:
    out = SuiteOutcome("transport")
    problems = 0

    def one(C: FiniteOmegaCat) -> CheckReport:
        nonlocal problems
        fails = []
        seen = set()
        for U, V, z in transport_instances(C):
            parts = [(z, False)]
            if (U, V) not in seen:
                seen.add((U, V))
                parts += [(z2, True) for z2 in C.hom(U.bottom, V.bottom)]
            for cell, bottom in parts:
                problems += 1
                rep = transport_report(C, U, V, cell, bottom)
                if not rep:
                    fails.append({"U": U.to_json(), "V": V.to_json(), "z": repr(cell), "bottom_up": bottom,
                                  "failures": rep.failures[:3]})
        return CheckReport.collect("transport", fails)

    for i, C in enumerate(random_family(cfg)):
        out.run(_label(i, C), lambda C=C: one(C))
    out.details["problems"] = problems
    return out


def suite_w_closure(cfg: SuiteConfig) -> SuiteOutcome:
    """3-for-2 over all composable pairs and retract stability over all functors."""
    out = SuiteOutcome("w-closure")
    fam = list(small_family(cfg.small_cells))
    F = {}
    for a, A in enumerate(fam):
        for b, B in enumerate(fam):
            try:
                F[(a, b)] = _functors(cfg, A, B)
            except BudgetExceeded as e:
                out.inconclusive.append({"instance": f"{_label(a, A)}->{_label(b, B)}", "reason": str(e)})
                F[(a, b)] = []
    pairs = 0
    for a, b, c in ((a, b, c) for a in range(len(fam)) for b in range(len(fam)) for c in range(len(fam))):
        for i, f in enumerate(F[(a, b)]):
            for j, g in enumerate(F[(b, c)]):
                pairs += 1
                out.run(f"3-for-2 {_label(a, fam[a])}->{_label(b, fam[b])}->{_label(c, fam[c])}#{i},{j}",
                        lambda f=f, g=g: three_for_two(f, g))
    for (a, b), fs in F.items():
        A = fam[a]
        for i, f in enumerate(fs):
            label = f"retract {_label(a, A)}->{_label(b, fam[b])}#{i}"
            out.run(label + " self", lambda f=f: retract_check(self_retract(f)))
            if A.cells(0):
                a0 = sorted(A.cells(0))[0]
                for k, e in enumerate(F[(a, b)][:3]):
                    out.run(f"{label} ⊔{k}", lambda f=f, e=e: retract_check(coproduct_retract(f, e, a0)))
    out.details["composable_pairs"] = pairs
    return out


def negative_fixtures() -> list[tuple[str, Callable[[], tuple[bool, dict]]]]:
    """The WALKING_ARROW cases that must be refused: (name, thunk → (refused, certificate))."""
    def reversed_square():
        i1 = inclusion(1)
        f = OmegaFunctor(WALKING_ARROW, TERMINAL, {c: TERMINAL.unit(Cell(0, "*"), c.dim)
                                                    for c in WALKING_ARROW.stored()}, name="!")
        top = OmegaFunctor(i1.dom, WALKING_ARROW, {Cell(0, "s0"): Cell(0, "b"), Cell(0, "t0"): Cell(0, "a")})
        bottom = OmegaFunctor(i1.cod, TERMINAL, {c: TERMINAL.unit(Cell(0, "*"), c.dim) for c in i1.cod.stored()})
        h, cert = lift_search(LiftingProblem(i1, f, top, bottom))
        return h is None, cert.to_json()

    def point_into_arrow():
        f = OmegaFunctor(TERMINAL, WALKING_ARROW, {Cell(0, "*"): Cell(0, "a")}, name="a")
        found, cert = immersion_search(f)
        return found is None, cert.to_json()

    return [("lift: WALKING_ARROW square with top (b,a)", reversed_square),
            ("immersion: a : TERMINAL → WALKING_ARROW", point_into_arrow)]


def certified_immersions(cfg: SuiteConfig, fam: Iterable[FiniteOmegaCat], out: SuiteOutcome | None = None):
    for name, f in functor_pairs(cfg, fam, out):
        try:
            cert, _ = immersion_search(f, cfg.budget_nodes)
        except BudgetExceeded as e:
            if out is not None:
                out.inconclusive.append({"instance": name, "reason": str(e)})
            continue
        if cert is not None:
            yield name, f, cert


def suite_immersion(cfg: SuiteConfig) -> SuiteOutcome:
    out = SuiteOutcome("immersion")
    for name, thunk in negative_fixtures():
        def one(thunk=thunk):
            refused, cert = thunk()
            ok = refused and cert["exhaustive"]
            return CheckReport.collect("refused", [] if ok else [{"law": "negative fixture accepted", "certificate": cert}],
                                       certificate=cert)
        rep = out.run(name, one)
        if rep is not None:
            out.details.setdefault("refusals", {})[name] = rep.details["certificate"]
    certified = 0
    for name, f in functor_pairs(cfg, exhaustive_family(cfg), out):
        def one(f=f):
            nonlocal certified
            cert, _ = immersion_search(f, cfg.budget_nodes)
            if cert is None:
                return CheckReport("imm", True)
            certified += 1
            return immersion_implies_weq(f, cert)
        out.run(name, one)
    out.details["certified"] = certified
    return out


def suite_pushout_immersion(cfg: SuiteConfig) -> SuiteOutcome:
    """Pushouts of certified immersions along polygraph morphisms and summand inclusions."""
    out = SuiteOutcome("pushout-immersion")
    rng = random.Random(f"{cfg.seed}:pushouts")
    for j in range(cfg.polygraphs):
        S = random_polygraph(rng)
        T, mf = relabel(S, {g: g + "_t" for k in range(S.cap + 1) for g in S.gens[k]})
        _, mi = random_extension(rng, S)

        def one(S=S, T=T, mf=mf, mi=mi):
            f = free_functor(mf, materialize(S, cfg.budget_cells), materialize(T, cfg.budget_cells))
            return pushout_immersion_suite(f, mi, mf=mf, budget=cfg.budget_cells)
        out.run(f"polygraph #{j}", one)
    fam = list(small_family(cfg.small_cells))
    summands = fam[:4]
    for name, f, cert in certified_immersions(cfg, fam, out):
        for k, R in enumerate(summands):
            def one(f=f, R=R):
                _, in0, _ = coproduct(f.dom, R)
                return pushout_immersion_suite(f, in0)
            out.run(f"{name} ⊔ {R.name}", one)
    return out


def suite_transfer(cfg: SuiteConfig) -> SuiteOutcome:
    out = SuiteOutcome("transfer")
    for i, C in enumerate(random_family(cfg)):
        def one(C=C, i=i):
            return CheckReport.combine("transfer", [transfer_identities(C, n) for n in range(C.cap + 1)])
        out.run(_label(i, C), one)
    for k in range(5):
        for n in range(3):
            out.run(f"S(i_{k}) n={n}", lambda k=k, n=n: collapsed_inclusion_report(k, n))
    ones = one_categories()
    agree = 0
    for name, f in functor_pairs(cfg, ones, out):
        def one(f=f):
            nonlocal agree
            a, b = bool(is_weak_equivalence(f)), is_equivalence_of_categories(f)
            agree += a
            return CheckReport.collect("weq-vs-equivalence", [] if a == b else [{"weq": a, "equivalence": b}])
        out.run(f"n=1 {name}", one)
    out.details["one_category_equivalences"] = agree
    return out


def suite_gamma_functor(cfg: SuiteConfig) -> SuiteOutcome:
    """Γ as a functor: products, composites, and λ : GΓ → ΓG natural along the small family."""
    out = SuiteOutcome("gamma-functor")
    fam = list(small_family(cfg.small_cells))
    along: dict[int, list[OmegaFunctor]] = {}
    for _, f in functor_pairs(cfg, fam, out):
        along.setdefault(id(f.dom), []).append(f)
    for C in fam:
        for n in range(C.cap + 1):
            out.run(f"{C.name} n={n}", lambda C=C, n=n: lambda_checks(C, n, along.get(id(C), [])))
    small = [C for C in fam if C.size <= 3]
    for A in small:
        for B in small:
            out.run(f"Γ({A.name}×{B.name})", lambda A=A, B=B: gamma_product_report(A, B))
    for fs in along.values():
        for f in fs:
            for g in along.get(id(f.cod), [])[:4]:
                out.run(f"Γ({g.name}∘{f.name})", lambda f=f, g=g: gamma_composition_report(f, g))
    return out


def suite_globes(cfg: SuiteConfig) -> SuiteOutcome:
    out = SuiteOutcome("globes")
    for n in range(5):
        out.run(f"counts n={n}", lambda n=n: globe_count_report(n))
    for n in range(4):
        out.run(f"pushout n={n}", lambda n=n: globe_pushout_report(n, cfg.budget_cells))
    return out


def suite_fibrancy(cfg: SuiteConfig) -> SuiteOutcome:
    out = SuiteOutcome("fibrancy")
    fam = list(small_family(cfg.small_cells))
    extensions = 0
    for name, f, cert in certified_immersions(cfg, fam, out):
        rep = out.run(name, lambda f=f, cert=cert: fibrancy_report(f, fam, cfg.functor_limit or None, cert))
        if rep is not None:
            extensions += rep.details.get("extensions", 0)
    out.details["extensions"] = extensions
    return out


SUITES: dict[str, Callable[[SuiteConfig], SuiteOutcome]] = {
    "corpus": suite_corpus,
    "laws": suite_laws,
    "gamma": suite_gamma,
    "charweq": suite_charweq,
    "lifting": suite_lifting,
    "transport": suite_transport,
    "w-closure": suite_w_closure,
    "immersion": suite_immersion,
    "pushout-immersion": suite_pushout_immersion,
    "transfer": suite_transfer,
    "gamma-functor": suite_gamma_functor,
    "globes": suite_globes,
    "fibrancy": suite_fibrancy,
}

EXIT_PASS, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 3


def run_suite(cfg: SuiteConfig) -> tuple[int, dict[str, Any]]:
    """Run the selected suites in order; returns (exit status, report)."""
    outcomes = [SUITES[name](cfg) for name in cfg.suites]
    failures = sum(len(o.failures) for o in outcomes)
    inconclusive = sum(len(o.inconclusive) for o in outcomes)
    if failures:
        status, code = "fail", EXIT_FAIL
    elif inconclusive:
        status, code = "inconclusive", EXIT_INCONCLUSIVE
    else:
        status, code = "pass", EXIT_PASS
    report = {
        "schema": "suite-report.v1",
        "config": cfg.to_json(),
        "status": status,
        "summary": {
            "instances": sum(o.instances for o in outcomes),
            "failures": failures,
            "inconclusive": inconclusive,
        },
        "suites": [o.to_json() for o in outcomes],
    }
    return code, report
