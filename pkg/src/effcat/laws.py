"""Law definitions, exhaustive runner and reports.

A law enumerates *cases* (dicts of named inputs) in a fixed order and checks
each one. Universal laws stop at the first counterexample, existence laws
at the first witness. Cases whose evaluation overflows a cap are skipped
and counted against coverage.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

from .effectcat import KMor, PureMor
from .finworld import (
    BudgetExceeded,
    FinFun,
    FinObj,
    HomBudget,
    Overflow,
    StructuralError,
    Terminal,
    enumerate_hom,
    from_description,
)

PASS, FAIL = "pass", "fail"
SKIPPED, INCOMPLETE = "skipped-overflow", "incomplete-budget"
MIN_COVERAGE = 0.9


@dataclass
class Law:
    law_id: str
    anchor: str
    cases: Callable[["Context"], Iterable[dict]]
    check: Callable[["Context", dict], bool]
    kind: str = "forall"  # or "exists"
    informational: bool = False
    note: str | None = None


class Context:
    """Per-run caches over one instance and its configured world."""

    def __init__(self, inst, budget: HomBudget | None = None):
        self.inst = inst
        self.budget = budget or HomBudget()
        self.world = inst.world()
        self.one = Terminal()
        self._homs: dict = {}
        self._pures: dict = {}
        self._memo: dict = {}

    def clear(self) -> None:
        self._memo.clear()

    def cached(self, key, thunk):
        r = self._memo.get(key)
        if r is None:
            r = self._memo[key] = thunk()
        return r

    def comp(self, g: KMor, f: KMor) -> KMor:
        """Memoized ``g . f``; overflow is not cached."""
        key = ("c", g, f)
        r = self._memo.get(key)
        if r is None:
            r = self._memo[key] = self.inst.compose(g, f)
        return r

    def eff(self, f: KMor) -> KMor:
        key = ("e", f)
        r = self._memo.get(key)
        if r is None:
            r = self._memo[key] = self.inst.effect(f)
        return r

    def cons(self, f: KMor) -> tuple:
        """Pure morphisms ``v`` with ``f <| v``."""
        key = ("v", f)
        r = self._memo.get(key)
        if r is None:
            tables = self.inst.consistent_tables(f)
            if tables is None:
                r = tuple(v for v in self.pures(f.dom, f.cod) if self.inst.consistent(f, v))
            else:
                by_table = self.cached(("pure-index", f.dom, f.cod), lambda: {
                    p.v0.table: p for p in self.pures(f.dom, f.cod)})
                r = tuple(by_table[t] for t in tables)
            self._memo[key] = r
        return r

    def lrcons(self, f: KMor, f2: KMor) -> bool:
        """``f <|> f2`` by enumerating pure candidates."""
        c2 = set(self.cons(f2))
        return any(v in c2 for v in self.cons(f))

    def homs(self, X: FinObj, Y: FinObj) -> list[KMor]:
        key = (X, Y)
        if key not in self._homs:
            self._homs[key] = list(self.inst.homs(X, Y, self.budget))
        return self._homs[key]

    def pures(self, X: FinObj, Y: FinObj) -> list[PureMor]:
        key = (X, Y)
        if key not in self._pures:
            self._pures[key] = [self.inst.pure(v0) for v0 in enumerate_hom(X, Y, self.budget)]
        return self._pures[key]

    def objects(self, n: int):
        return itertools.product(self.world, repeat=n)


# ------------------------------------------------------------------ report


@dataclass
class LawEntry:
    law_id: str
    anchor: str
    kind: str
    verdict: str
    cases_checked: int
    cases_skipped: int
    coverage: float
    witness: dict | None = None
    informational: bool = False
    note: str | None = None


@dataclass
class LawReport:
    suite: str
    config: dict
    entries: list[LawEntry] = field(default_factory=list)
    wall_time: float | None = None

    def sort(self) -> "LawReport":
        self.entries.sort(key=lambda e: e.law_id)
        return self

    def status(self) -> str:
        """``fail`` beats ``inconclusive`` beats ``pass``; informational laws never count."""
        verdicts = [e.verdict for e in self.entries if not e.informational]
        if FAIL in verdicts:
            return FAIL
        if SKIPPED in verdicts or INCOMPLETE in verdicts:
            return "inconclusive"
        return PASS

    def entry(self, law_id: str) -> LawEntry:
        for e in self.entries:
            if e.law_id == law_id:
                return e
        raise KeyError(law_id)

    def to_dict(self, timing: bool = False) -> dict:
        d = {"suite": self.suite, "config": self.config,
             "entries": [asdict(e) for e in self.entries], "status": self.status()}
        if timing and self.wall_time is not None:
            d["wall_time"] = self.wall_time
        return d

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "LawReport":
        return cls(d["suite"], d["config"], [LawEntry(**e) for e in d["entries"]],
                   d.get("wall_time"))


# ---------------------------------------------------------------- witnesses


def encode_value(x):
    if isinstance(x, KMor):
        return {"type": "kmor", "dom": x.dom.describe(), "cod": x.cod.describe(),
                "table": list(x.kl.table)}
    if isinstance(x, PureMor):
        return {"type": "pure", "dom": x.dom.describe(), "cod": x.cod.describe(),
                "table": list(x.v0.table)}
    if isinstance(x, FinObj):
        return {"type": "obj", "obj": x.describe()}
    if isinstance(x, bool) or not isinstance(x, int):
        raise StructuralError(f"cannot encode witness component {x!r}")
    return {"type": "elem", "value": x}


def decode_value(inst, d):
    try:
        t = d["type"]
        if t == "kmor":
            return inst.kmor(from_description(d["dom"]), from_description(d["cod"]), d["table"])
        if t == "pure":
            dom, cod = from_description(d["dom"]), from_description(d["cod"])
            return inst.pure(FinFun(dom, cod, tuple(d["table"])))
        if t == "obj":
            return from_description(d["obj"])
        if t == "elem":
            return int(d["value"])
    except (KeyError, TypeError) as exc:
        raise StructuralError(f"malformed witness component: {exc}") from exc
    raise StructuralError(f"unknown witness component type {t!r}")


def encode_case(case: dict) -> dict:
    return {k: encode_value(v) for k, v in case.items()}


def decode_case(inst, witness: dict) -> dict:
    if not isinstance(witness, dict):
        raise StructuralError("witness must be an object")
    return {k: decode_value(inst, v) for k, v in witness.items()}


# ------------------------------------------------------------------ runner


def run_law(ctx: Context, law: Law) -> LawEntry:
    checked = skipped = 0
    witness = None
    found = False
    note = None
    try:
        for case in law.cases(ctx):
            try:
                ok = law.check(ctx, case)
            except Overflow:
                skipped += 1
                continue
            checked += 1
            if ok != (law.kind == "forall"):
                witness = encode_case(case)
                found = True
                break
    except BudgetExceeded as exc:
        total = checked + skipped
        return LawEntry(law.law_id, law.anchor, law.kind, INCOMPLETE, checked, skipped,
                        _coverage(checked, total), None, law.informational, str(exc))
    coverage = _coverage(checked, checked + skipped)
    if law.kind == "forall":
        verdict = FAIL if found else PASS
    else:
        verdict = PASS if found else FAIL
        if not found:
            note = "no witness exists in the configured world"
    if law.note:
        note = law.note if note is None else f"{law.note}; {note}"
    if verdict == PASS and not found and coverage < MIN_COVERAGE:
        verdict = SKIPPED
    return LawEntry(law.law_id, law.anchor, law.kind, verdict, checked, skipped,
                    coverage, witness, law.informational, note)


def _coverage(checked: int, total: int) -> float:
    return 1.0 if total == 0 else round(checked / total, 6)


def run_laws(suite: str, inst, laws: list[Law], budget: HomBudget | None = None,
             only: Iterable[str] | None = None) -> LawReport:
    start = time.perf_counter()
    ctx = Context(inst, budget)
    wanted = set(only) if only is not None else None
    entries = []
    for law in laws:
        if wanted is None or law.law_id in wanted:
            entries.append(run_law(ctx, law))
            ctx.clear()
    report = LawReport(suite, inst.config.echo(), entries)
    report.wall_time = round(time.perf_counter() - start, 3)
    return report.sort()


def replay(inst, law: Law, witness: dict, budget: HomBudget | None = None) -> bool:
    """Does the law's check on ``witness`` give the outcome that was recorded?"""
    ctx = Context(inst, budget)
    case = decode_case(inst, witness)
    return law.check(ctx, case) == (law.kind == "exists")


# --------------------------------------------------------------- helpers


def pairs(xs: list, ys: list | None = None):
    """All ordered pairs, as case dicts are built from them."""
    return itertools.product(xs, xs if ys is None else ys)
