"""Command line: ``effcat check --instance TAG --suite ID|all ...``.

Settings are layered: built-in defaults, then ``EFFCAT_BUDGET`` for the
hom-set budget, then the ``--config`` JSON file, then ``--set`` overrides
in order (the last one wins). ``--instance`` and ``--suite`` override the
file.

Exit codes: 0 all pass, 1 some law failed, 2 configuration or I/O error,
3 inconclusive (budget exhausted or coverage too low).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .finworld import HomBudget
from .instances import TAGS, ConfigError, InstanceConfig
from .lawsuite import SUITES, SuiteSpec, run
from .laws import FAIL, PASS, LawReport

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG, EXIT_INCONCLUSIVE = 0, 1, 2, 3

DEFAULTS = {
    "instance": None,
    "suite": None,
    "sizes": {"A": 2},
    "E": 2,
    "S": 2,
    "list_cap": 2,
    "mult_cap": 2,
    "list_eval_cap": 8,
    "mult_eval_cap": 64,
    "max_hom_size": 20_000,
    "mutant": None,
    "workers": 1,
}
_ALIASES = {"L": "list_cap", "multiplicity_cap": "mult_cap", "budget": "max_hom_size"}
_INT_KEYS = ("E", "S", "list_cap", "mult_cap", "list_eval_cap", "mult_eval_cap",
             "max_hom_size", "workers")


def _parse_sizes(text: str) -> dict:
    """``A:2,B:3`` to a sizes map."""
    out = {}
    for part in text.split(","):
        name, sep, n = part.partition(":")
        if not sep or not name.strip():
            raise ConfigError(f"bad sizes entry {part!r}; expected NAME:SIZE")
        out[name.strip()] = _as_int("sizes", n)
    return out


def _as_int(key: str, value) -> int:
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{key} must be an integer, got {value!r}") from None


def apply_setting(settings: dict, key: str, value) -> None:
    """Apply one ``key=value`` (values from ``--set`` arrive as strings)."""
    key = _ALIASES.get(key, key)
    if key.startswith("sizes."):
        settings["sizes"] = dict(settings["sizes"])
        settings["sizes"][key[6:]] = _as_int(key, value)
    elif key == "sizes":
        if isinstance(value, dict):
            settings["sizes"] = {str(k): _as_int(key, v) for k, v in value.items()}
        else:
            settings["sizes"] = _parse_sizes(str(value))
    elif key in _INT_KEYS:
        settings[key] = _as_int(key, value)
    elif key in ("instance", "suite", "mutant"):
        settings[key] = None if value in (None, "", "none") else str(value)
    else:
        raise ConfigError(f"unknown setting {key!r}; valid: "
                          f"{', '.join(sorted(set(DEFAULTS) | set(_ALIASES)))}")


def resolve_settings(config_path: str | None, sets: list[str], instance: str | None,
                     suite: str | None, env: dict | None = None) -> dict:
    env = os.environ if env is None else env
    settings = dict(DEFAULTS)
    if env.get("EFFCAT_BUDGET"):
        settings["max_hom_size"] = _as_int("EFFCAT_BUDGET", env["EFFCAT_BUDGET"])
    if config_path:
        try:
            with open(config_path, encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {config_path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {config_path} is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
        for k, v in data.items():
            apply_setting(settings, k, v)
    for item in sets:
        key, sep, value = item.partition("=")
        if not sep:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        apply_setting(settings, key.strip(), value.strip())
    if instance is not None:
        settings["instance"] = instance
    if suite is not None:
        settings["suite"] = suite
    if settings["instance"] not in TAGS:
        raise ConfigError(f"unknown instance {settings['instance']!r}; valid: {', '.join(TAGS)}")
    if settings["suite"] != "all" and settings["suite"] not in SUITES:
        raise ConfigError(f"unknown suite {settings['suite']!r}; valid: all, {', '.join(SUITES)}")
    if settings["workers"] < 1:
        raise ConfigError("workers must be at least 1")
    return settings


def instance_config(settings: dict) -> InstanceConfig:
    return InstanceConfig(
        tag=settings["instance"], E=settings["E"], S=settings["S"],
        list_cap=settings["list_cap"], mult_cap=settings["mult_cap"],
        list_eval_cap=settings["list_eval_cap"], mult_eval_cap=settings["mult_eval_cap"],
        sizes=tuple(sorted(settings["sizes"].items())), mutant=settings["mutant"],
    ).validate()


# ---------------------------------------------------------------- output


def overall_status(reports: list[LawReport]) -> str:
    statuses = [r.status() for r in reports]
    if FAIL in statuses:
        return FAIL
    if any(s != PASS for s in statuses):
        return "inconclusive"
    return PASS


def exit_code(status: str) -> int:
    return {PASS: EXIT_PASS, FAIL: EXIT_FAIL}.get(status, EXIT_INCONCLUSIVE)


def emit_report(reports: list[LawReport], fmt: str, skipped: dict | None = None) -> bytes:
    """Serialize one or more reports; JSON is canonical (sorted keys)."""
    skipped = skipped or {}
    if fmt == "json":
        if len(reports) == 1 and not skipped:
            return reports[0].to_json().encode()
        doc = {"reports": [r.to_dict() for r in reports], "status": overall_status(reports),
               "unsupported": skipped}
        return (json.dumps(doc, sort_keys=True, indent=2) + "\n").encode()
    lines = []
    for r in reports:
        cfg = ", ".join(f"{k}={v}" for k, v in sorted(r.config.items()))
        lines.append(f"== {r.suite} [{cfg}] -> {r.status()}")
        for e in r.entries:
            label = "existence" if e.kind == "exists" else "universal"
            if e.informational:
                label += ", informational"
            lines.append(f"  {e.verdict:<18} {e.law_id:<44} {label:<26} "
                         f"cases={e.cases_checked} coverage={e.coverage:.3f}  # {e.anchor}")
            if e.note:
                lines.append(f"  {'':<18} note: {e.note}")
    for suite, why in sorted(skipped.items()):
        lines.append(f"== {suite} -> not applicable: {why}")
    lines.append(f"overall: {overall_status(reports)}")
    return ("\n".join(lines) + "\n").encode()


# ------------------------------------------------------------------ main


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="effcat", description="Exhaustive law checks "
                                     "for finite effect categories.")
    sub = parser.add_subparsers(dest="command", required=True)
    check = sub.add_parser("check", help="run law suites on an instance")
    check.add_argument("--instance", help=f"one of: {', '.join(TAGS)}")
    check.add_argument("--suite", help=f"'all' or one of: {', '.join(SUITES)}")
    check.add_argument("--config", help="JSON file with settings")
    check.add_argument("--report", help="write the report here instead of stdout")
    check.add_argument("--format", choices=("json", "text"), default="text")
    check.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                       help="override a setting (repeatable; last wins)")
    check.add_argument("--workers", type=int, default=None,
                       help="worker processes per suite")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_PASS
    try:
        sets = list(args.set)
        if args.workers is not None:
            sets.append(f"workers={args.workers}")
        settings = resolve_settings(args.config, sets, args.instance, args.suite)
        config = instance_config(settings)
        budget = HomBudget(max_hom_size=settings["max_hom_size"])
        suites = list(SUITES) if settings["suite"] == "all" else [settings["suite"]]
        reports, skipped = [], {}
        for suite in suites:
            try:
                reports.append(run(SuiteSpec(suite, config, budget), settings["workers"]))
            except ConfigError as exc:
                if settings["suite"] != "all":
                    raise
                skipped[suite] = str(exc)
    except ConfigError as exc:
        print(f"effcat: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    data = emit_report(reports, args.format, skipped)
    try:
        if args.report:
            with open(args.report, "wb") as fh:
                fh.write(data)
        else:
            sys.stdout.buffer.write(data)
            sys.stdout.flush()
    except OSError as exc:
        print(f"effcat: cannot write report: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return exit_code(overall_status(reports))


if __name__ == "__main__":
    sys.exit(main())
