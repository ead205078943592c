"""Run every brute-force check over a seed range and print a summary table.

    python3 scripts/oracle_sweep.py --seeds 1000 --min-individuals 3
"""
import argparse
import json
import sys
import time

from reserves import oracle


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seeds", type=int, default=200)
    parser.add_argument("--first-seed", type=int, default=0)
    parser.add_argument("--min-individuals", type=int, default=3)
    parser.add_argument("--all-shapes", action="store_true",
                        help="try every shape with and without HR, not just the natural ones")
    parser.add_argument("--json", action="store_true", help="print the raw reports")
    args = parser.parse_args(argv)

    seeds = range(args.first_seed, args.first_seed + args.seeds)
    settings = [(s, hr) for s in oracle.SHAPES for hr in (False, True)] if args.all_shapes else None
    reports, failed = [], False
    for theorem in sorted(oracle.THEOREMS):
        start = time.perf_counter()
        r = oracle.sweep(theorem, seeds, settings, min_individuals=args.min_individuals,
                         stop_at_first=False)
        r["seconds"] = round(time.perf_counter() - start, 2)
        reports.append(r)
        failed |= not r["passed"]
        if not args.json:
            print(f"{theorem:<24} {'PASS' if r['passed'] else 'FAIL'}  checked={r['checked']:<6} "
                  f"skipped={r['skipped']:<6} counterexamples={len(r['counterexamples'])}  "
                  f"{r['seconds']}s")
    if args.json:
        print(json.dumps(reports, indent=2))
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
