"""Command line verification harness.

    tulczyjew verify [--config cfg.json] [--seed N] [--suite NAME ...] [--report out.json]
    tulczyjew sample MAP [--scenario NAME] [-n N] [--seed N]
    tulczyjew report out.json

Exit codes: 0 when every pass-required invariant passes, 1 when one fails,
2 for usage or configuration errors.  TULCZYJEW_SEED overrides the seed from
the config file and the command line.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import zlib
from dataclasses import asdict, dataclass, field, fields, is_dataclass

import numpy as np

from . import __version__
from . import bundle as B
from . import reduce as R
from . import sampling as S
from . import suites as U
from . import triplet as P
from .numerics import TolerancePolicy
from .trivialize import SPACES, lambda_inv, lambda_map

SCHEMA_VERSION = 1


class ConfigError(ValueError):
    pass


@dataclass
class VerifyConfig:
    scenarios: list = field(default_factory=lambda: sorted(B.SCENARIOS))
    seed: int = 0
    samples_per_property: int = 100
    tolerances: dict = field(default_factory=dict)
    suites: list = field(default_factory=lambda: list(U.SUITES))

    def __post_init__(self):
        if self.samples_per_property < 1:
            raise ConfigError("samples_per_property must be at least 1")
        for name in self.scenarios:
            if name not in B.SCENARIOS:
                raise ConfigError(f"unknown scenario {name!r}; known: {sorted(B.SCENARIOS)}")
        for name in self.suites:
            if name not in U.SUITES:
                raise ConfigError(f"unknown suite {name!r}; known: {list(U.SUITES)}")
        tiers = {k: v for k, v in self.tolerances.items() if k in ("exact", "fd", "audit")}
        try:
            self.policy = TolerancePolicy(**tiers)
        except (TypeError, ValueError) as e:
            raise ConfigError(f"bad tolerance overrides: {e}") from None

    @classmethod
    def from_dict(cls, d: dict) -> "VerifyConfig":
        known = {f.name for f in fields(cls)}
        extra = set(d) - known
        if extra:
            raise ConfigError(f"unknown config keys {sorted(extra)}")
        return cls(**d)

    def to_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass
class Record:
    suite: str
    invariant: str
    scenario: str
    samples: int
    max_residual: float
    tolerance: float
    status: str
    notes: dict


@dataclass
class Report:
    config: dict
    records: list

    @property
    def status(self):
        return "fail" if any(r.status == "fail" for r in self.records) else "pass"

    def to_dict(self):
        counts = {k: sum(r.status == k for r in self.records) for k in ("pass", "fail", "discrepancy")}
        return {"schema_version": SCHEMA_VERSION, "version": __version__, "config": self.config,
                "status": self.status, "summary": counts,
                "records": [asdict(r) for r in self.records]}


def cell_rng(seed: int, suite: str, invariant: str, scenario: str):
    """Independent generator for one (invariant, scenario) cell."""
    key = zlib.crc32(f"{suite}/{invariant}/{scenario}".encode())
    return np.random.default_rng([int(seed), key])


def _tolerance(cfg: VerifyConfig, c: U.Check) -> float:
    per = cfg.tolerances.get("invariants", {})
    if f"{c.suite}/{c.name}" in per:
        return float(per[f"{c.suite}/{c.name}"])
    if c.tier in ("exact", "fd", "audit"):
        return float(getattr(cfg.policy, c.tier))
    return float(c.tier)


def run_verify(cfg: VerifyConfig, checks=None) -> Report:
    checks = U.checks_for(cfg.suites) if checks is None else checks
    records = []
    for c in checks:
        for name in cfg.scenarios:
            if c.scenarios is not None and name not in c.scenarios:
                continue
            s = B.get_scenario(name)
            rng = cell_rng(cfg.seed, c.suite, c.name, name)
            res, n, notes = c.fn(s, rng, cfg.samples_per_property)
            tol = _tolerance(cfg, c)
            ok = bool(np.isfinite(res)) and res <= tol
            status = "pass" if ok else ("discrepancy" if c.audit else "fail")
            records.append(Record(c.suite, c.name, name, int(n), float(res), tol, status,
                                  _jsonable(notes)))
    records.sort(key=lambda r: (r.suite, r.invariant, r.scenario))
    return Report(cfg.to_dict(), records)


def emit_report(report: Report, path=None) -> str:
    text = json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)
    return text


# --- sample subcommand ---------------------------------------------------------------------

def _jsonable(obj):
    if is_dataclass(obj):
        out = {f.name: _jsonable(getattr(obj, f.name)) for f in fields(obj)}
        if hasattr(obj, "space"):
            out["space"] = obj.space
        return out
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    return obj


def _sample_map(name, s, rng):
    """One evaluation of a named map on a fresh random input: (inputs, output)."""
    if name.startswith("lambda:"):
        sp = name.split(":", 1)[1]
        w = S.intrinsic(sp, rng, s)
        return [w], lambda_map(s, sp, w)
    if name.startswith("lambda_inv:"):
        sp = name.split(":", 1)[1]
        t = S.trivialized(sp, rng, s)
        return [t], lambda_inv(s, sp, t)
    if name.startswith("reduce:"):
        sp = name.split(":", 1)[1]
        t = S.trivialized(sp, rng, s)
        return [t], R.reduce(s, sp, t)
    if name == "kappa_hat":
        t = S.trivialized("TTQ", rng, s)
        return [t], P.kappa_hat(t, s)
    if name in ("alpha_hat", "omega_flat_hat"):
        t = S.trivialized("TT*Q", rng, s)
        return [t], getattr(P, name)(t, s)
    if name == "theta_hat":
        t = S.trivialized("T*Q", rng, s)
        return [t], P.theta_hat(t)
    if name == "Omega_hat":
        a, b = S.same_foot_pair(rng, s)
        return [a, b], P.Omega_hat(a, b, s)
    if name == "dT_Omega_hat":
        _, x1, x2 = U.ttt_pair(rng, s)
        return [x1, x2], P.dT_Omega_terms(x1, x2, s)
    if name == "curvature":
        x, u, w = (S.draw("base", rng, s) for _ in range(3))
        return [x, u, w], B.curvature_base(s, x, u, w)
    return [], S.draw(name, rng, s)


SAMPLE_MAPS = (["kappa_hat", "alpha_hat", "omega_flat_hat", "theta_hat", "Omega_hat",
                "dT_Omega_hat", "curvature"]
               + [f"{p}:{sp}" for p in ("lambda", "lambda_inv", "reduce") for sp in SPACES])


# --- report pretty-printer ---------------------------------------------------------------------

def format_report(d: dict) -> str:
    lines = [f"schema {d.get('schema_version')}  status {d.get('status')}  "
             f"summary {json.dumps(d.get('summary', {}), sort_keys=True)}"]
    for r in d.get("records", []):
        lines.append(f"{r['status']:<12} {r['suite']:<11} {r['invariant']:<40} {r['scenario']:<12} "
                     f"n={r['samples']:<4} res={r['max_residual']:.2e} tol={r['tolerance']:.0e}")
        if r["status"] == "discrepancy":
            for k, v in sorted(r.get("notes", {}).items()):
                lines.append(f"{'':14}{k}: {json.dumps(v, sort_keys=True)}")
    return "\n".join(lines)


# --- entry point ----------------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="tulczyjew", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("verify", help="run property suites and write a JSON report")
    v.add_argument("--config", help="JSON config file")
    v.add_argument("--seed", type=int)
    v.add_argument("--suite", nargs="+", action="extend", choices=U.SUITES)
    v.add_argument("--scenario", nargs="+", action="extend")
    v.add_argument("--samples", type=int, help="samples per property")
    v.add_argument("--report", default="-", help="output path ('-' for stdout)")

    sp = sub.add_parser("sample", help="dump sampled evaluations of a named map")
    sp.add_argument("map", help="one of: " + ", ".join(SAMPLE_MAPS) + ", or a sample tag")
    sp.add_argument("--scenario", default="monopole")
    sp.add_argument("-n", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)

    rp = sub.add_parser("report", help="pretty-print a JSON report")
    rp.add_argument("path")
    return ap


def _load_config(args) -> VerifyConfig:
    d = {}
    if args.config:
        try:
            with open(args.config) as fh:
                d = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read config {args.config}: {e}") from None
        if not isinstance(d, dict):
            raise ConfigError("config must be a JSON object")
    if args.seed is not None:
        d["seed"] = args.seed
    if args.suite:
        d["suites"] = args.suite
    if args.scenario:
        d["scenarios"] = args.scenario
    if args.samples is not None:
        d["samples_per_property"] = args.samples
    env = os.environ.get("TULCZYJEW_SEED")
    if env is not None:
        try:
            d["seed"] = int(env)
        except ValueError:
            raise ConfigError(f"TULCZYJEW_SEED must be an integer, got {env!r}") from None
    try:
        return VerifyConfig.from_dict(d)
    except TypeError as e:
        raise ConfigError(str(e)) from None


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        if args.cmd == "verify":
            cfg = _load_config(args)
            report = run_verify(cfg)
            emit_report(report, args.report)
            return 0 if report.status == "pass" else 1
        if args.cmd == "sample":
            if args.scenario not in B.SCENARIOS:
                raise ConfigError(f"unknown scenario {args.scenario!r}")
            s = B.get_scenario(args.scenario)
            rng = np.random.default_rng(args.seed)
            try:
                rows = [dict(zip(("inputs", "output"), _sample_map(args.map, s, rng)))
                        for _ in range(args.n)]
            except KeyError as e:
                raise ConfigError(str(e)) from None
            json.dump(_jsonable(rows), sys.stdout, sort_keys=True, indent=1)
            sys.stdout.write("\n")
            return 0
        try:
            with open(args.path) as fh:
                d = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read report {args.path}: {e}") from None
        print(format_report(d))
        return 0 if d.get("status") == "pass" else 1
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
