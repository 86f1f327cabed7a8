#!/usr/bin/env python3
"""Convergence table for the pointwise identity suite.

Runs every applicable identity check on the chosen scenarios at a base
resolution and its doubling, and prints one row per (scenario, check) with
the coarse/fine residuals and the measured convergence order.  This is the
long-form view of what the acceptance battery asserts in bulk.

Usage:
    python3 scripts/convergence_table.py
    python3 scripts/convergence_table.py --scenario graph_S2xR_cos03 \
        --resolution 32 --json table.json
"""

import argparse
import json

from prodsurf import list_scenarios, run_suite
from prodsurf.zoo import instantiate


def parse_args(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--scenario", action="append", default=None,
                   help="scenario name (repeatable; default: all compact)")
    p.add_argument("--resolution", type=int, default=None,
                   help="base resolution (default: scenario default)")
    p.add_argument("--json", default=None,
                   help="also write the rows as JSON to this path")
    return p.parse_args(argv)


def main(argv=None) -> int:
    args = parse_args(argv)
    if args.scenario:
        names = args.scenario
    else:
        names = [s.name for s in list_scenarios() if s.compact]

    header = (f"{'scenario':28s} {'check':16s} {'res':>4s} "
              f"{'coarse':>10s} {'fine':>10s} {'order':>7s} pass")
    print(header)
    print("-" * len(header))
    rows = []
    for name in names:
        overrides = {}
        if args.resolution is not None:
            overrides["resolution"] = args.resolution
        surface, grid, _ = instantiate(name, overrides)
        for res in run_suite(surface, grid.resolution, refine=1):
            order = res.convergence_order
            order_text = "floor" if res.floored else f"{order:7.2f}"
            print(f"{name:28s} {res.name:16s} {grid.resolution:4d} "
                  f"{res.coarse_residual:10.2e} {res.max_residual:10.2e} "
                  f"{order_text:>7s} {'ok' if res.passed else 'FAIL'}")
            rows.append(res.to_dict())
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2, sort_keys=True)
        print(f"\nwrote {len(rows)} rows to {args.json}")
    failed = [r for r in rows if not r["passed"]]
    print(f"\n{len(rows) - len(failed)}/{len(rows)} checks passed")
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
