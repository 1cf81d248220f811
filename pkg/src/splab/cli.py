"""Command-line front end: ``splab {verify,experiment,catalog,norms,check-omega}``.

Exit codes: 0 pass, 1 verification failure, 2 configuration error,
3 uncertified tail under ``--strict``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

from . import __version__, experiments, verify
from .config import Grids, Thresholds
from .experiments import PreconditionError, RateReport
from .families import CATALOG, FamilyError, FamilySpec
from .moduli import Modulus, ModulusEvaluationError, check_basic_conditions, check_condition_B
from .spectrum import ResourceError, profile_of, sp_norm
from .svg import loglog_svg

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG, EXIT_UNCERTIFIED = 0, 1, 2, 3
CSV_HEADER = ["parameter", "value_low", "value_high", "bound", "ratio"]
EXPERIMENTS = ("prop1", "thm1", "thm2", "equiv7")


class ConfigError(ValueError):
    """Invalid or inconsistent run configuration."""


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved settings for one command; serialised into every output."""

    family: dict = field(default_factory=lambda: {"name": "power"})
    p: float = 2.0
    r: int = 1
    s: float = 1.0
    alpha: float = 0.5
    omega: str | None = None
    cutoff: int | None = None
    rho_grid: tuple[int, int] = (1, 14)
    n_grid: tuple[int, int] = (2, 16)
    h_grid: tuple[int, int] = (1, 20)
    seed: int | None = None
    thresholds: dict = field(default_factory=lambda: Thresholds().as_dict())

    def grids(self) -> Grids:
        return Grids(tuple(self.rho_grid), tuple(self.n_grid), tuple(self.h_grid))

    def modulus(self) -> Modulus:
        return parse_omega(self.omega or f"power:{self.alpha}")

    def family_spec(self) -> FamilySpec:
        return FamilySpec(**self.family)

    def to_json(self) -> dict:
        out = asdict(self)
        out["rho_grid"], out["n_grid"], out["h_grid"] = list(self.rho_grid), list(self.n_grid), list(self.h_grid)
        out["omega"] = self.omega or f"power:{self.alpha}"
        return out


def parse_omega(text: str) -> Modulus:
    """``power:a``, ``power_log:a:b`` or ``inverse_log``."""
    kind, *args = text.split(":")
    try:
        if kind == "power" and len(args) == 1:
            return Modulus.power(float(args[0]))
        if kind == "power_log" and len(args) == 2:
            return Modulus.power_log(float(args[0]), float(args[1]))
        if kind == "inverse_log" and not args:
            return Modulus.inverse_log()
    except ValueError as exc:
        raise ConfigError(f"bad modulus {text!r}: {exc}") from None
    raise ConfigError(f"bad modulus {text!r}; use power:a, power_log:a:b or inverse_log")


def parse_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(".."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected j1..j2, got {text!r}") from None
    if lo > hi or lo < 0:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


_FAMILY_FLAGS = ("q", "d", "beta", "nu0", "base")
_RUN_FLAGS = ("p", "r", "s", "alpha", "omega", "cutoff", "rho_grid", "n_grid", "h_grid", "seed")


def _experiment_defaults(kind: str | None) -> dict:
    if kind == "equiv7":
        return {"family": {"name": "geometric", "q": 0.5, "d": 2}, "s": 2.0}
    return {}


def resolve_config(args: argparse.Namespace, kind: str | None = None) -> RunConfig:
    """Defaults, then the JSON config file, then explicit flags."""
    merged = _experiment_defaults(kind)
    if getattr(args, "config", None):
        try:
            loaded = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        unknown = set(loaded) - {f.name for f in fields(RunConfig)}
        if unknown:
            raise ConfigError(f"unknown config keys {sorted(unknown)}")
        if "family" in loaded and isinstance(loaded["family"], str):
            loaded["family"] = {"name": loaded["family"]}
        merged.update(loaded)
    family = dict(merged.get("family", {"name": "power"}))
    if getattr(args, "family", None):
        family = {"name": args.family} if args.family != family.get("name") else family
    for key in _FAMILY_FLAGS:
        if getattr(args, key, None) is not None:
            family[key] = getattr(args, key)
    merged["family"] = family
    for key in _RUN_FLAGS:
        if getattr(args, key, None) is not None:
            merged[key] = getattr(args, key)
    thresholds = {**Thresholds().as_dict(), **merged.get("thresholds", {})}
    try:
        Thresholds(**thresholds)
    except TypeError as exc:
        raise ConfigError(f"bad thresholds: {exc}") from None
    merged["thresholds"] = thresholds
    for key in ("rho_grid", "n_grid", "h_grid"):
        if key in merged:
            merged[key] = tuple(merged[key])
    cfg = RunConfig(**merged)
    if cfg.p < 1:
        raise ConfigError("p must be >= 1")
    if family["name"] in ("power", "y_power") and "beta" not in family:
        order = {"thm1": cfg.r, "thm2": cfg.s}.get(kind, 1)
        family["beta"] = cfg.alpha + 1.0 / cfg.p + (order - 1)
        cfg = replace(cfg, family=family)
    cfg.modulus()
    try:
        cfg.family_spec().check(cfg.p)
    except TypeError as exc:
        raise ConfigError(f"bad family parameters: {exc}") from None
    return cfg


def _fmt(x: float) -> str:
    return repr(float(x))


def report_csv(report: RateReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in report.rows():
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _json_safe(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    return obj


def run_experiment(kind: str, cfg: RunConfig):
    """Build the family instance and run one experiment; returns reports and extras."""
    fam = cfg.family_spec()
    th = Thresholds(**cfg.thresholds)
    grids = cfg.grids()
    f = fam.spectrum(cfg.p, cfg.cutoff, seed=cfg.seed)
    if kind == "equiv7":
        rep = experiments.equivalence7_experiment(f, cfg.p, cfg.s, grids.rho_grid(), th)
        return {"equivalence7": rep}, {}
    omega = cfg.modulus()
    if kind == "prop1":
        out = experiments.proposition1_experiment(f, cfg.p, omega, grids.n_grid(), grids.h_grid(), th)
    elif kind == "thm1":
        out = experiments.theorem1_experiment(f, cfg.p, cfg.r, omega, grids.rho_grid(), grids.h_grid(), th)
    else:
        out = experiments.theorem2_experiment(f, cfg.p, cfg.s, omega, grids.rho_grid(), grids.h_grid(), th)
    return out.reports, {"equivalences": out.equivalence_verdict, "y_supported": out.y_supported}


def write_outputs(kind: str, cfg: RunConfig, reports: dict, extras: dict, out: Path, svg: bool) -> dict:
    out.mkdir(parents=True, exist_ok=True)
    for name, rep in reports.items():
        (out / f"{kind}_{name}.csv").write_text(report_csv(rep))
        if svg:
            label = "h" if name == "statement3" else ("n" if kind == "prop1" else "1 - rho")
            plot = loglog_svg(
                rep.parameters,
                {"value": [v.upper for v in rep.values], "bound": rep.bound_values},
                f"{kind} {name}",
                label,
            )
            (out / f"{kind}_{name}.svg").write_text(plot)
    doc = {
        "experiment": kind,
        "config": cfg.to_json(),
        "reports": [rep.to_dict() for rep in reports.values()],
        **extras,
        "version": __version__,
    }
    (out / f"{kind}.json").write_text(json.dumps(_json_safe(doc), indent=2, sort_keys=False) + "\n")
    return doc


def cmd_experiment(args) -> int:
    cfg = resolve_config(args, args.kind)
    reports, extras = run_experiment(args.kind, cfg)
    write_outputs(args.kind, cfg, reports, extras, Path(args.out), args.svg)
    uncertified = any(not v.certified for rep in reports.values() for v in rep.values)
    for name, rep in reports.items():
        slope = "nan" if rep.fitted_slope is None else f"{rep.fitted_slope:.4f}"
        print(f"{args.kind} {name}: {rep.verdict} (slope {slope})")
    if args.strict and uncertified:
        print("uncertified tail encountered", file=sys.stderr)
        return EXIT_UNCERTIFIED
    return EXIT_PASS if all(rep.passed for rep in reports.values()) else EXIT_FAIL


def cmd_verify(args) -> int:
    checks = verify.run_checks(quick=args.quick, fault=args.inject_fault)
    summary = verify.summary(checks)
    print(json.dumps(summary, indent=2))
    return EXIT_PASS if summary["passed"] else EXIT_FAIL


def cmd_catalog(args) -> int:
    print(json.dumps(CATALOG, indent=2))
    return EXIT_PASS


def cmd_norms(args) -> int:
    cfg = resolve_config(args)
    fam = cfg.family_spec()
    prof = fam.profile(cfg.p, cfg.cutoff)
    norm = sp_norm(prof)
    if cfg.seed is not None or fam.name in ("single_block", "lacunary"):
        norm = sp_norm(profile_of(fam.spectrum(cfg.p, cfg.cutoff, seed=cfg.seed), cfg.p))
    doc = {
        "family": fam.describe(),
        "p": cfg.p,
        "cutoff": prof.cutoff,
        "norm": [norm.lower, norm.upper],
        "tail_bound": prof.tail_bound,
        "profile_head": prof.values[: args.head].tolist(),
    }
    print(json.dumps(_json_safe(doc), indent=2))
    return EXIT_PASS


def cmd_check_omega(args) -> int:
    omega = parse_omega(args.omega or f"power:{args.alpha if args.alpha is not None else 0.5}")
    basic = check_basic_conditions(omega)
    cond_b = check_condition_B(omega)
    doc = {
        "omega": omega.name,
        "conditions_1_to_4": {"verdict": basic.verdict, **basic.details},
        "condition_B": {"verdict": cond_b.verdict, "ratios": cond_b.ratios, **cond_b.details},
    }
    print(json.dumps(_json_safe(doc), indent=2))
    return EXIT_PASS if basic.passed and cond_b.passed else EXIT_FAIL


def _add_run_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--config", help="JSON config file; flags override its fields")
    sp.add_argument("--family", choices=sorted(CATALOG))
    sp.add_argument("--p", type=float)
    sp.add_argument("--r", type=int)
    sp.add_argument("--s", type=float)
    sp.add_argument("--alpha", type=float, help="exponent of the default modulus power(alpha)")
    sp.add_argument("--omega", help="power:a | power_log:a:b | inverse_log")
    sp.add_argument("--q", type=float)
    sp.add_argument("--d", type=int)
    sp.add_argument("--beta", type=float)
    sp.add_argument("--nu0", type=int)
    sp.add_argument("--base", type=int)
    sp.add_argument("--cutoff", type=int)
    sp.add_argument("--rho-grid", type=parse_range, help="j1..j2 for rho = 1 - 2**-j")
    sp.add_argument("--n-grid", type=parse_range, help="j1..j2 for n = 2**j")
    sp.add_argument("--h-grid", type=parse_range, help="j1..j2 for h = 2**-j")
    sp.add_argument("--seed", type=int, help="random phases (S^p quantities are phase-invariant)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="splab", description="S^p approximation laboratory")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("verify", help="run the identity and oracle suite")
    sp.add_argument("--quick", action="store_true")
    sp.add_argument("--inject-fault", choices=["lambda_short"], help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("experiment", help="run one equivalence experiment")
    sp.add_argument("kind", choices=EXPERIMENTS)
    _add_run_flags(sp)
    sp.add_argument("--out", default="out")
    sp.add_argument("--svg", action="store_true")
    sp.add_argument("--strict", action="store_true", help="exit 3 on any uncertified tail")
    sp.set_defaults(func=cmd_experiment)

    sp = sub.add_parser("catalog", help="list function families")
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("norms", help="S^p norm and profile head of a family")
    _add_run_flags(sp)
    sp.add_argument("--head", type=int, default=8)
    sp.set_defaults(func=cmd_norms)

    sp = sub.add_parser("check-omega", help="admissibility and condition B for a modulus")
    sp.add_argument("--omega")
    sp.add_argument("--alpha", type=float)
    sp.set_defaults(func=cmd_check_omega)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_PASS
    try:
        return args.func(args)
    except (ConfigError, FamilyError, PreconditionError, ModulusEvaluationError, ResourceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
