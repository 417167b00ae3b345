"""Command-line entry point.

    afh analyze --family t2.4 --n 4
    afh analyze --surface surf.json
    afh verify theorem2 --n 4..6 --jobs 4
    afh catalog list
    afh report --format text

Exit status: 0 when every check passes, 1 when any check fails, 2 on a
configuration or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import __version__
from .algebra import PolyParseError, exact_str, parse_poly, parse_rational
from .catalog import CLI_NAMES, FAMILIES, SurfaceId, default_point, make_surface, surface_polynomial
from .suites import (
    FAIL,
    Check,
    analyze_surface,
    section6_checks,
    section6_summary,
    summarize,
    theorem1_checks,
    theorem2_checks,
)
from .symmetry import Hypersurface, ReducibleSurfaceError

SCHEMA_VERSION = 1
N_RANGE = (2, 8)
CAP_RANGE = (3, 8)
EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2

# smallest n each suite makes sense for
SUITE_MIN_N = {"theorem1": 2, "theorem2": 4, "section6": 3}
SUITE_DEFAULT_N = {"theorem1": [2, 3, 4, 5, 6], "theorem2": [4, 5, 6], "section6": [4, 5]}


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    target: str | None = None
    ns: list[int] = field(default_factory=list)
    family: str | None = None
    alpha: Fraction | None = None
    point: tuple | None = None
    surface: str | None = None
    cap: int = 6
    out: str | None = None
    jobs: int = 1
    seed: int = 0
    fmt: str = "json"
    timings: bool = False

    def echo(self) -> dict:
        out = {"command": self.command}
        if self.target:
            out["target"] = self.target
        if self.ns:
            out["n"] = self.ns
        if self.family:
            out["family"] = self.family
        if self.alpha is not None:
            out["alpha"] = exact_str(self.alpha)
        if self.point is not None:
            out["point"] = [exact_str(x) for x in self.point]
        if self.surface:
            out["surface"] = self.surface
        out["cap"] = self.cap
        out["seed"] = self.seed
        # jobs is left out on purpose: the report must not depend on it
        return out


def parse_n_range(text: str) -> list[int]:
    """``"5"``, ``"4..6"`` or ``"4,6"``."""
    out: list[int] = []
    try:
        for part in str(text).split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = part.split("..", 1)
                lo_i, hi_i = int(lo), int(hi)
                if lo_i > hi_i:
                    raise ConfigError(f"empty range {part!r}")
                out.extend(range(lo_i, hi_i + 1))
            else:
                out.append(int(part))
    except ValueError as exc:
        raise ConfigError(f"bad --n value {text!r}") from exc
    for n in out:
        if not N_RANGE[0] <= n <= N_RANGE[1]:
            raise ConfigError(f"n = {n} outside [{N_RANGE[0]}, {N_RANGE[1]}]")
    return sorted(set(out))


def _parse_point(text: str) -> tuple:
    try:
        return tuple(parse_rational(v) for v in text.split(","))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def resolve_jobs(flag: int | None, env: dict | None = None) -> int:
    env = os.environ if env is None else env
    raw = env.get("AFH_JOBS")
    if raw:
        try:
            jobs = int(raw)
        except ValueError as exc:
            raise ConfigError(f"AFH_JOBS must be an integer, got {raw!r}") from exc
    else:
        jobs = 1 if flag is None else flag
    if jobs < 1:
        raise ConfigError("jobs must be at least 1")
    return jobs


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=None, help="worker processes (AFH_JOBS overrides)")
    common.add_argument("--cap", type=int, default=6, help="series truncation bound, 3..8")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--format", dest="fmt", choices=("json", "text"), default="json")
    common.add_argument("--timings", action="store_true", help="include wall-clock seconds per check")

    parser = argparse.ArgumentParser(prog="afh", description="Affinely homogeneous hypersurface toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="symmetry algebra and invariants of one surface")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--family", help="catalog family: " + ", ".join(CLI_NAMES))
    src.add_argument("--surface", help="surface definition JSON file")
    p.add_argument("--n", default=None)
    p.add_argument("--alpha", default=None, help="parameter of family t2.3")
    p.add_argument("--point", default=None, help="comma separated exact coordinates")

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("target", choices=("theorem1", "theorem2", "section6"))
    p.add_argument("--n", default=None, help="n, a range lo..hi, or a comma list")

    p = sub.add_parser("catalog", help="surface catalog")
    p.add_argument("action", choices=("list",))
    p.add_argument("--n", default="4")
    p.add_argument("--format", dest="fmt", choices=("json", "text"), default="text")

    p = sub.add_parser("report", parents=[common], help="all suites in one report, or re-render a saved one")
    p.add_argument("--input", help="previously written JSON report to render")
    p.add_argument("--n", default=None, help="restrict every suite to these n")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command, fmt=getattr(args, "fmt", "json"))
    if args.command == "catalog":
        cfg.ns = parse_n_range(args.n)
        return cfg
    cfg.cap = args.cap
    if not CAP_RANGE[0] <= cfg.cap <= CAP_RANGE[1]:
        raise ConfigError(f"cap = {cfg.cap} outside [{CAP_RANGE[0]}, {CAP_RANGE[1]}]")
    cfg.out = args.out
    cfg.seed = args.seed
    cfg.timings = args.timings
    cfg.jobs = resolve_jobs(args.jobs)
    if args.command == "analyze":
        if args.family:
            if args.family not in CLI_NAMES and args.family not in FAMILIES:
                raise ConfigError(f"unknown family {args.family!r}")
            cfg.family = args.family
            if args.n is None:
                raise ConfigError("--family needs --n")
            ns = parse_n_range(args.n)
            if len(ns) != 1:
                raise ConfigError("analyze takes a single n")
            cfg.ns = ns
            if args.alpha is not None:
                try:
                    cfg.alpha = parse_rational(args.alpha)
                except ValueError as exc:
                    raise ConfigError(str(exc)) from exc
        else:
            cfg.surface = args.surface
            if args.alpha is not None or args.n is not None:
                raise ConfigError("--n and --alpha only apply to --family")
        if args.point is not None:
            cfg.point = _parse_point(args.point)
    elif args.command == "verify":
        cfg.target = args.target
        cfg.ns = parse_n_range(args.n) if args.n else list(SUITE_DEFAULT_N[args.target])
        low = SUITE_MIN_N[args.target]
        if any(n < low for n in cfg.ns):
            raise ConfigError(f"{args.target} needs n >= {low}")
    elif args.command == "report":
        cfg.surface = args.input
        if args.n:
            cfg.ns = parse_n_range(args.n)
    return cfg


# ----------------------------------------------------------------------------
# surfaces

def load_surface_file(path: str, point: tuple | None = None) -> Hypersurface:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from exc
    if not isinstance(data, dict) or "n" not in data or "F" not in data:
        raise ConfigError(f"{path}: expected an object with keys 'n' and 'F'")
    n = data["n"]
    if not isinstance(n, int) or not N_RANGE[0] <= n <= N_RANGE[1]:
        raise ConfigError(f"{path}: n must be an integer in [{N_RANGE[0]}, {N_RANGE[1]}]")
    try:
        F = parse_poly(str(data["F"]), n + 1)
    except PolyParseError as exc:
        raise ConfigError(f"{path}: F: {exc}") from exc
    if point is None:
        raw = data.get("point")
        if raw is None:
            point = (Fraction(0),) * (n + 1)
        else:
            try:
                point = tuple(parse_rational(v) for v in raw)
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"{path}: point: {exc}") from exc
    try:
        return Hypersurface(n, F, point, constraint=data.get("constraint"), name=Path(path).stem)
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def surface_for(cfg: RunConfig) -> Hypersurface:
    if cfg.surface:
        return load_surface_file(cfg.surface, cfg.point)
    try:
        sid = SurfaceId(cfg.family, cfg.ns[0], cfg.alpha)
        return make_surface(sid, cfg.point)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


# ----------------------------------------------------------------------------
# commands

def _base_report(cfg: RunConfig) -> dict:
    return {"schema_version": SCHEMA_VERSION, "tool": "afh", "version": __version__, "config": cfg.echo()}


def _with_checks(report: dict, checks: Sequence[Check], timings: bool) -> dict:
    report["checks"] = [c.to_json(timings) for c in checks]
    report["summary"] = summarize(checks)
    return report


def cmd_analyze(cfg: RunConfig) -> tuple[dict, int]:
    S = surface_for(cfg)
    try:
        result = analyze_surface(S)
    except ReducibleSurfaceError as exc:
        raise ConfigError(str(exc)) from exc
    report = _base_report(cfg)
    report["result"] = result
    return report, EXIT_OK


def run_suite(target: str, ns: Sequence[int], cfg: RunConfig) -> list[Check]:
    checks: list[Check] = []
    for n in ns:
        if target == "theorem1":
            checks += theorem1_checks(n)
        elif target == "theorem2":
            checks += theorem2_checks(n, cfg.jobs)
        else:
            checks += section6_checks(n, cfg.seed, cfg.cap)
    return checks


def cmd_verify(cfg: RunConfig) -> tuple[dict, int]:
    checks = run_suite(cfg.target, cfg.ns, cfg)
    report = _base_report(cfg)
    if cfg.target == "section6":
        report["section6"] = [section6_summary(n, checks) for n in cfg.ns]
    report = _with_checks(report, checks, cfg.timings)
    return report, EXIT_FAIL if any(c.status == FAIL for c in checks) else EXIT_OK


def cmd_report(cfg: RunConfig) -> tuple[dict, int]:
    if cfg.surface:
        try:
            report = json.loads(Path(cfg.surface).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot load report {cfg.surface}: {exc}") from exc
        if not isinstance(report, dict) or report.get("schema_version") != SCHEMA_VERSION:
            raise ConfigError("unsupported report schema")
        failed = report.get("summary", {}).get(FAIL, 0)
        return report, EXIT_FAIL if failed else EXIT_OK
    checks: list[Check] = []
    for target in ("theorem1", "theorem2", "section6"):
        ns = cfg.ns or SUITE_DEFAULT_N[target]
        ns = [n for n in ns if n >= SUITE_MIN_N[target]]
        checks += run_suite(target, ns, cfg)
    report = _with_checks(_base_report(cfg), checks, cfg.timings)
    return report, EXIT_FAIL if any(c.status == FAIL for c in checks) else EXIT_OK


def cmd_catalog(cfg: RunConfig) -> tuple[dict, int]:
    rows = []
    for n in cfg.ns:
        for cli_name, family in CLI_NAMES.items():
            try:
                sid = SurfaceId(family, n)
            except ValueError:
                continue
            rows.append({
                "name": cli_name,
                "family": family,
                "n": n,
                "F": surface_polynomial(sid).to_text(),
                "point": [exact_str(x) for x in default_point(sid)],
            })
    return {"schema_version": SCHEMA_VERSION, "tool": "afh", "version": __version__, "catalog": rows}, EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "verify": cmd_verify, "report": cmd_report, "catalog": cmd_catalog}


# ----------------------------------------------------------------------------
# rendering

def render_text(report: dict) -> str:
    lines = [f"afh {report.get('version', '?')} (schema {report.get('schema_version')})"]
    if "catalog" in report:
        for row in report["catalog"]:
            lines.append(f"{row['name']:<6} n={row['n']}  {row['F']} = 0  at ({', '.join(row['point'])})")
        return "\n".join(lines) + "\n"
    config = report.get("config", {})
    lines.append("config: " + ", ".join(f"{k}={v}" for k, v in config.items()))
    if "result" in report:
        for key, value in report["result"].items():
            lines.append(f"  {key}: {_text_value(value)}")
    for c in report.get("checks", []):
        line = f"{c['status'].upper():<4}  {c['name']}"
        if c.get("witness"):
            line += f"  [{c['witness']}]"
        if "seconds" in c:
            line += f"  ({c['seconds']}s)"
        lines.append(line)
    if "summary" in report:
        s = report["summary"]
        lines.append(f"summary: {s.get('pass', 0)} pass, {s.get('fail', 0)} fail, {s.get('n/a', 0)} n/a")
    return "\n".join(lines) + "\n"


def _text_value(value) -> str:
    if isinstance(value, list):
        return "(" + ", ".join(str(v) for v in value) + ")"
    if value is True or value is False:
        return str(value).lower()
    return str(value)


def render(report: dict, fmt: str) -> str:
    if fmt == "text":
        return render_text(report)
    return json.dumps(report, indent=2, sort_keys=False) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; keep --help and --version at 0
        return int(exc.code or 0)
    try:
        cfg = config_from_args(args)
        report, code = COMMANDS[cfg.command](cfg)
    except ConfigError as exc:
        print(f"afh: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    text = render(report, cfg.fmt)
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
