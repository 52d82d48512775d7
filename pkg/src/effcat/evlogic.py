"""Results of computations, compared with consistency.

A global element ``c : 1 -> Y`` has result ``a`` (written ``c => a``) when:

* errors: ``c`` is the value ``a``;
* state: some initial state makes ``c`` return ``a``;
* lists and powersets: ``a`` occurs in ``c``.

The comparison suite looks for three kinds of witness showing that ``=>``
is not a consistency relation. Where an instance cannot produce a kind,
the suite instead checks that it is absent everywhere.
"""

from __future__ import annotations

from .effectcat import KMor
from .finworld import HomBudget, constant
from .instances import ConfigError
from .laws import Law, run_laws

SUPPORTED = ("error", "partiality", "state", "list", "powerset")

# which witness kinds each instance exhibits; the rest are checked absent
_EXHIBITS = {
    "error": {"consistent-without-result"},
    "partiality": {"consistent-without-result"},
    "state": {"result-without-consistency", "same-effect-same-results"},
    "list": {"consistent-without-result", "result-without-consistency",
             "same-effect-same-results"},
    "powerset": {"consistent-without-result", "result-without-consistency"},
}


def _require_supported(inst) -> None:
    if inst.tag not in SUPPORTED:
        raise ConfigError(f"results are not defined for instance {inst.tag!r}; "
                          f"supported: {', '.join(SUPPORTED)}")


def results(inst, c: KMor) -> frozenset:
    """All ``a`` with ``c => a`` for a global element ``c``."""
    _require_supported(inst)
    if c.dom.size != 1:
        raise ConfigError("results are defined for global elements only")
    return inst.results(c)


def result_of(inst, c: KMor, a: int) -> bool:
    return a in results(inst, c)


# ------------------------------------------------------------------ laws


def _element_cases(ctx):
    for Y in ctx.world:
        for c in ctx.homs(ctx.one, Y):
            for a in range(Y.size):
                yield {"c": c, "a": a}


def _point(ctx, c: KMor, a: int):
    return ctx.inst.pure(constant(ctx.one, c.cod, a))


def _consistent_without_result(ctx, case):
    c, a = case["c"], case["a"]
    return ctx.inst.consistent(c, _point(ctx, c, a)) and not result_of(ctx.inst, c, a)


def _result_without_consistency(ctx, case):
    c, a = case["c"], case["a"]
    return result_of(ctx.inst, c, a) and not ctx.inst.consistent(c, _point(ctx, c, a))


def _consistency_bounds_results(ctx, case):
    c, a = case["c"], case["a"]
    if not ctx.inst.consistent(c, _point(ctx, c, a)):
        return True
    return results(ctx.inst, c) <= {a}


def _pair_cases(ctx):
    for Y in ctx.world:
        homs = ctx.homs(ctx.one, Y)
        buckets = {}
        for c in homs:
            buckets.setdefault((ctx.eff(c), results(ctx.inst, c)), []).append(c)
        for c in homs:
            for c2 in buckets[(ctx.eff(c), results(ctx.inst, c))]:
                yield {"c": c, "c2": c2}


def _same_effect_same_results(ctx, case):
    c, c2 = case["c"], case["c2"]
    return (c != c2 and ctx.eff(c) == ctx.eff(c2)
            and results(ctx.inst, c) == results(ctx.inst, c2))


def _negate(check):
    return lambda ctx, case: not check(ctx, case)


_KINDS = {
    "consistent-without-result": (
        "consistency without a matching result", _element_cases,
        _consistent_without_result, "consistency-implies-result"),
    "result-without-consistency": (
        "a result without consistency", _element_cases,
        _result_without_consistency, "result-implies-consistency"),
    "same-effect-same-results": (
        "distinct elements with equal effect and equal results", _pair_cases,
        _same_effect_same_results, "effect-and-results-determine"),
}


def evlogic_laws(inst) -> list[Law]:
    _require_supported(inst)
    laws = [Law("consistency-bounds-results", "consistency with a forces results into {a}",
                _element_cases, _consistency_bounds_results)]
    for kind, (anchor, cases, check, absent_id) in _KINDS.items():
        if kind in _EXHIBITS[inst.tag]:
            laws.append(Law(kind, anchor, cases, check, kind="exists"))
        else:
            laws.append(Law(absent_id, f"no {anchor}", cases, _negate(check)))
    return laws


def compare_results_vs_consistency(inst, budget: HomBudget | None = None):
    return run_laws("evlogic-compare", inst, evlogic_laws(inst), budget)
