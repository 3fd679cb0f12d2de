"""Run the full verification harness and print a summary table.

    python scripts/run_verify.py --samples 100 --out report.json
"""

import argparse
import sys
import time

from tulczyjew.cli import VerifyConfig, emit_report, format_report, run_verify


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--scenario", nargs="+")
    ap.add_argument("--out", default="verify_report.json")
    args = ap.parse_args()

    cfg = VerifyConfig(seed=args.seed, samples_per_property=args.samples)
    if args.scenario:
        cfg = VerifyConfig(scenarios=args.scenario, seed=args.seed, samples_per_property=args.samples)
    t0 = time.perf_counter()
    report = run_verify(cfg)
    emit_report(report, args.out)
    print(format_report(report.to_dict()))
    print(f"\n{len(report.records)} records in {time.perf_counter() - t0:.1f}s -> {args.out}")
    return 0 if report.status == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())
