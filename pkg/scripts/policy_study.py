"""Seeded policy study: how admissions by group and cut-offs move across policies.

Generates populations from a spec (default: data/population.json), runs each
policy plus the two loophole orders, and prints mean admissions per group and
mean cut-off per category over the seeds.

    python3 scripts/policy_study.py --runs 20 --loophole sc
"""
import argparse
import json
import statistics
import sys
from pathlib import Path

from reserves.policy import BASE_POLICIES, PopulationSpec, compare_policies, generate_population

DEFAULT_SPEC = Path(__file__).resolve().parent.parent / "data" / "population.json"


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--spec", type=Path, default=DEFAULT_SPEC)
    parser.add_argument("--runs", type=int, default=20)
    parser.add_argument("--loophole", default="sc", help="comma-separated caste categories")
    parser.add_argument("--out", type=Path, help="also write the per-seed reports as JSON")
    args = parser.parse_args(argv)

    base = PopulationSpec.from_dict(json.loads(args.spec.read_text()))
    favoured = [c for c in args.loophole.split(",") if c]
    per_seed, admitted, cutoffs = [], {}, {}
    for seed in range(base.seed, base.seed + args.runs):
        inst = generate_population(PopulationSpec(**{**base.__dict__, "seed": seed}))
        policies = [p for p in BASE_POLICIES if p != "moa" or not inst.quotas.has_hr]
        report = compare_policies(inst, policies, favoured)
        per_seed.append({"seed": seed, **report.to_dict()})
        for name, r in report.results.items():
            for g, n in r.group_totals.items():
                admitted.setdefault(name, {}).setdefault(g, []).append(n)
            for v, s in r.cutoffs.items():
                cutoffs.setdefault(name, {}).setdefault(v, []).append(float(s))

    groups = sorted({g for rows in admitted.values() for g in rows})
    cats = list(dict.fromkeys(v for rows in cutoffs.values() for v in rows))
    width = max(len(n) for n in admitted) + 2
    print(f"mean admissions per group over {args.runs} seeds")
    print(" " * width + "".join(f"{g:>9}" for g in groups))
    for name, rows in admitted.items():
        print(f"{name:<{width}}" + "".join(f"{statistics.mean(rows.get(g, [0])):>9.2f}" for g in groups))
    print("\nmean cut-off per category (seeds with an empty category are left out)")
    print(" " * width + "".join(f"{v:>9}" for v in cats))
    for name, rows in cutoffs.items():
        print(f"{name:<{width}}" + "".join(
            f"{statistics.mean(rows[v]):>9.2f}" if v in rows else f"{'-':>9}" for v in cats))
    if args.out:
        args.out.write_text(json.dumps(per_seed, indent=2, default=str) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
