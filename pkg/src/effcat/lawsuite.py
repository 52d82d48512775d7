"""Suite registry, execution and witness re-checking.

Each suite id names one law-list builder. A run builds the instance from
its config, runs the laws (optionally one law per worker process) and
returns a report whose entries are sorted by law id, so the JSON form does
not depend on scheduling.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import arrows, effectcat, evlogic, monadlaws, products, strength
from .finworld import HomBudget, StructuralError
from .instances import ConfigError, InstanceConfig, build_instance
from .laws import LawReport, run_laws, replay

SUITES = {
    "consistency-axioms": effectcat.consistency_laws,
    "extended-consistency": effectcat.extended_laws,
    "semipure-universal": products.semipure_laws,
    "product-props": products.product_laws,
    "centrality": products.centrality_laws,
    "functoriality": products.functoriality_laws,
    "naturality": products.naturality_laws,
    "sequential-property": products.sequential_laws,
    "strength-theorem": strength.strength_laws,
    "arrow-laws": arrows.arrow_laws,
    "evlogic-compare": evlogic.evlogic_laws,
    "monad-laws": monadlaws.monad_laws,
}

# a mutant each suite is expected to fail on
SENSITIVE_TO = {
    "consistency-axioms": "cons-always-true",
    "extended-consistency": "ext-empty",
    "semipure-universal": "semipure-shifted",
    "product-props": "semipure-shifted",
    "centrality": "semipure-shifted",
    "functoriality": "semipure-shifted",
    "naturality": "semipure-shifted",
    "sequential-property": "semipure-shifted",
    "strength-theorem": "strength-constant",
    "arrow-laws": "then-shifted",
    "evlogic-compare": "results-as-consistency",
    "monad-laws": "compose-relabel",
}


@dataclass(frozen=True)
class SuiteSpec:
    suite: str
    config: InstanceConfig
    budget: HomBudget = field(default_factory=HomBudget)

    def validate(self) -> "SuiteSpec":
        if self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}; valid: {', '.join(SUITES)}")
        return SuiteSpec(self.suite, self.config.validate(), self.budget)


def config_echo(config: InstanceConfig, budget: HomBudget) -> dict:
    d = config.validate().echo()
    d["max_hom_size"] = budget.max_hom_size
    return d


def law_ids(spec: SuiteSpec) -> list[str]:
    spec = spec.validate()
    return [law.law_id for law in SUITES[spec.suite](build_instance(spec.config))]


def _run_one(spec: SuiteSpec, law_id: str):
    inst = build_instance(spec.config)
    report = run_laws(spec.suite, inst, SUITES[spec.suite](inst), spec.budget, only=[law_id])
    return report.entries[0]


def run(spec: SuiteSpec, workers: int = 1) -> LawReport:
    """Run a suite. ``workers > 1`` spreads the laws over processes."""
    spec = spec.validate()
    start = time.perf_counter()
    inst = build_instance(spec.config)
    laws = SUITES[spec.suite](inst)  # raises ConfigError for unsupported instances
    if workers > 1 and len(laws) > 1:
        ids = [law.law_id for law in laws]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            entries = list(pool.map(_run_one, [spec] * len(ids), ids))
        report = LawReport(spec.suite, {}, entries)
    else:
        report = run_laws(spec.suite, inst, laws, spec.budget)
    report.config = config_echo(spec.config, spec.budget)
    report.wall_time = round(time.perf_counter() - start, 3)
    return report.sort()


def recheck_witness(report: LawReport, law_id: str, config: InstanceConfig,
                    budget: HomBudget | None = None) -> bool:
    """Replay the recorded witness of ``law_id``.

    True iff evaluating the law on the witness reproduces the recorded
    outcome (a counterexample for universal laws, an instance for
    existence laws).
    """
    budget = budget or HomBudget()
    if report.config != config_echo(config, budget):
        raise StructuralError("report was produced under a different configuration")
    entry = report.entry(law_id)
    if entry.witness is None:
        raise StructuralError(f"law {law_id!r} has no witness to recheck")
    inst = build_instance(config)
    for law in SUITES[report.suite](inst):
        if law.law_id == law_id:
            return replay(inst, law, entry.witness, budget)
    raise StructuralError(f"suite {report.suite!r} has no law {law_id!r}")
