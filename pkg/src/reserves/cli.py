"""Command-line entry point: ``reserves <command> ...``."""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import axioms as ax
from . import oracle
from .io import (InstanceError, emit_report, outcome_from_dict, outcome_to_dict,
                 parse_instance, read_json)
from .model import (Instance, PrecedenceOrder, ProfileError, build_rho_star,
                    validate_instance)
from .policy import BASE_POLICIES, PopulationSpec, compare_policies, cutoff_report, \
    generate_population
from .rules import (HRUnsupported, OverlapError, ews_first, ews_last,
                    meritorious_over_and_above, over_and_above, smh)

EXIT_OK, EXIT_INVALID, EXIT_AUDIT, EXIT_COUNTEREXAMPLE = 0, 2, 3, 4
POLICIES = ("oa", "moa", "ews_first", "ews_last", "smh")


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    instance: Optional[Path] = None
    individuals: Optional[Path] = None
    policy: str = "oa"
    precedence: Optional[tuple] = None
    profile: Optional[str] = None
    axioms: tuple = ax.HR_AXIOMS
    format: str = "json"
    seed: int = 0
    budget: oracle.OracleBudget = oracle.DEFAULT_BUDGET

    def __post_init__(self):
        policy = self.policy.lower()
        if policy not in POLICIES:
            raise UsageError(f"unknown policy {self.policy!r}; choose from {', '.join(POLICIES)}")
        object.__setattr__(self, "policy", policy)
        if (policy == "smh") != (self.precedence is not None):
            raise UsageError("--precedence is required with, and only with, --policy smh")
        unknown = [a for a in self.axioms if a not in ax.AXIOMS]
        if unknown:
            raise UsageError(f"unknown axiom(s) {', '.join(unknown)}; choose from "
                             f"{', '.join(ax.AXIOMS)}")
        if self.profile not in (None, "base", "rho_star"):
            raise UsageError(f"unknown profile {self.profile!r}")

    def check_against(self, instance: Instance):
        if self.precedence is not None:
            order = PrecedenceOrder(self.precedence, instance.categories.open)
            if not order.is_permutation_of(instance.categories.all):
                raise UsageError(f"precedence {','.join(self.precedence)} is not a permutation "
                                 f"of {','.join(instance.categories.all)}")

    @property
    def resolved_profile(self) -> str:
        if self.profile:
            return self.profile
        return "base" if self.policy == "oa" else "rho_star"


def _profile(cfg: RunConfig, instance: Instance):
    if cfg.resolved_profile == "base" or instance.categories.ews is None or not instance.j_set:
        return instance.base_profile
    return build_rho_star(instance.base_profile, instance.j_set, instance)


def allocate(cfg: RunConfig, instance: Instance):
    cfg.check_against(instance)
    rho = _profile(cfg, instance)
    if cfg.policy == "oa":
        return over_and_above(rho, None, instance), rho
    if cfg.policy == "moa":
        return meritorious_over_and_above(rho, None, instance), rho
    if cfg.policy in ("ews_first", "ews_last"):
        if cfg.resolved_profile == "base":
            raise UsageError(f"{cfg.policy} always runs on the extended EWS profile")
        run = ews_first if cfg.policy == "ews_first" else ews_last
        return run(instance), rho
    return smh(cfg.precedence, rho, None, instance), rho


def _scores(instance, ids):
    return {i: str(instance.score(i)) for i in instance.ranked(ids)}


def _config(args, **extra) -> RunConfig:
    precedence = tuple(x.strip() for x in args.precedence.split(",")) \
        if getattr(args, "precedence", None) else None
    axioms = getattr(args, "axioms", None)
    return RunConfig(
        instance=getattr(args, "instance", None),
        individuals=getattr(args, "individuals", None),
        policy=getattr(args, "policy", "oa"),
        precedence=precedence,
        profile=getattr(args, "profile", None),
        axioms=tuple(a.strip() for a in axioms.split(",")) if axioms else ax.HR_AXIOMS,
        format=args.format,
        **extra)


def _load(cfg: RunConfig) -> Instance:
    return parse_instance(cfg.instance, cfg.individuals)


# -- commands; each returns (exit code, result dict) ---------------------------

def cmd_validate(args):
    try:
        instance = parse_instance(args.instance, args.individuals, validate=False)
    except InstanceError as exc:
        return EXIT_INVALID, {"command": "validate", "ok": False,
                              "violations": exc.problems, "warnings": []}
    report = validate_instance(instance)
    return (EXIT_OK if report.ok else EXIT_INVALID), {
        "command": "validate", "ok": report.ok,
        "violations": report.violations, "warnings": report.warnings}


def cmd_allocate(args):
    cfg = _config(args)
    instance = _load(cfg)
    out, _ = allocate(cfg, instance)
    cutoffs = cutoff_report(out, instance)
    return EXIT_OK, {"command": "allocate", "policy": cfg.policy,
                     "outcome": outcome_to_dict(out, instance),
                     "cutoffs": {v: str(s) for v, s in cutoffs.items()},
                     "scores": _scores(instance, out.aggregate)}


def cmd_audit(args):
    cfg = _config(args)
    instance = _load(cfg)
    if args.outcome:
        out = outcome_from_dict(read_json(args.outcome), instance, str(args.outcome))
        rho = _profile(cfg, instance) if cfg.profile else instance.base_profile
    else:
        out, rho = allocate(cfg, instance)
    problems = out.problems(instance, rho)
    if problems:
        raise InstanceError(problems, str(args.outcome or "outcome"))
    verdicts = ax.audit(out, rho, None, instance, cfg.axioms)
    passed = all(v.passed for v in verdicts)
    code = EXIT_AUDIT if args.strict and not passed else EXIT_OK
    return code, {"command": "audit", "profile": rho.label,
                  "outcome": outcome_to_dict(out, instance),
                  "verdicts": [v.to_dict() for v in verdicts], "passed": passed}


def cmd_suffering(args):
    cfg = _config(args)
    instance = _load(cfg)
    if instance.categories.ews is None:
        raise UsageError("the instance designates no EWS category")
    base = over_and_above(None, None, instance).aggregate
    last = ews_last(instance).aggregate
    sufferers = ax.maximal_suffering_set(None, instance.j_set, None, instance)
    return EXIT_OK, {"command": "suffering",
                     "income_eligible_caste": instance.ranked(instance.j_set),
                     "baseline_aggregate": instance.ranked(base),
                     "ews_last_aggregate": instance.ranked(last),
                     "maximal_suffering_set": instance.ranked(sufferers),
                     "materially_unaffected": not sufferers,
                     "ews_last_gains_equal_suffering_set": (last - base) == sufferers}


def _policies(args, instance):
    if args.policies:
        return [p.strip() for p in args.policies.split(",")]
    names = list(BASE_POLICIES)
    if instance.quotas.has_hr:
        names.remove("moa")
    return names


def _loophole(args):
    return [c.strip() for c in args.loophole.split(",")] if args.loophole else None


def _report(instance, args):
    try:
        rep = compare_policies(instance, _policies(args, instance), _loophole(args))
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    d = rep.to_dict()
    chosen = set()
    for r in rep.results.values():
        chosen |= r.outcome.aggregate
    d["scores"] = _scores(instance, chosen)
    return d


def cmd_compare(args):
    cfg = _config(args)
    instance = _load(cfg)
    return EXIT_OK, {"command": "compare", "report": _report(instance, args)}


def cmd_simulate(args):
    spec_doc = read_json(args.spec)
    try:
        base = PopulationSpec.from_dict(spec_doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceError(f"bad population spec: {exc}", str(args.spec)) from None
    first = args.seed if args.seed is not None else base.seed
    runs = []
    for seed in range(first, first + args.runs):
        spec = PopulationSpec(**{**base.__dict__, "seed": seed})
        instance = generate_population(spec)
        report = validate_instance(instance)
        if not report.ok:
            raise InstanceError(report.violations, str(args.spec))
        runs.append({"seed": seed, "individuals": len(instance.individuals),
                     "income_eligible_caste": len(instance.j_set),
                     "report": _report(instance, args)})
    return EXIT_OK, {"command": "simulate", "runs": runs}


def cmd_oracle(args):
    budget = oracle.OracleBudget(max_individuals=args.max_individuals)
    names = sorted(oracle.THEOREMS) if args.theorem == "all" else [args.theorem]
    settings = None
    if args.shape:
        settings = [(args.shape, hr) for hr in ((False, True) if args.hr == "both" else
                                                (args.hr == "yes",))]
    seeds = range(args.seed, args.seed + args.seeds)
    results = [oracle.sweep(t, seeds, settings, budget, args.min_individuals) for t in names]
    code = EXIT_OK if all(r["passed"] for r in results) else EXIT_COUNTEREXAMPLE
    return code, {"command": "oracle", "seed": args.seed, "seeds": args.seeds,
                  "results": results}


# -- argument parsing -----------------------------------------------------------

def _add_instance(p):
    p.add_argument("instance", type=Path, help="instance JSON file")
    p.add_argument("--individuals", type=Path, help="CSV file replacing the individuals list")


def _add_policy(p):
    p.add_argument("--policy", default="oa", type=str.lower,
                   help=f"one of {', '.join(POLICIES)} (default oa)")
    p.add_argument("--precedence", help="comma-separated category order, for --policy smh")
    p.add_argument("--profile", choices=("base", "rho_star"),
                   help="membership profile; default base for oa, extended EWS otherwise")


def _add_compare(p):
    p.add_argument("--policies", help=f"comma-separated; default {','.join(BASE_POLICIES)}; "
                   "'smh:o,c1,e' runs an explicit order")
    p.add_argument("--loophole", help="caste categories to favour in the two loophole orders")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="reserves",
                                     description="Reserve-system allocation and auditing.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--output", type=Path, help="write the report here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check an instance file")
    _add_instance(p)
    p.set_defaults(run=cmd_validate)

    p = sub.add_parser("allocate", parents=[common], help="run an allocation rule")
    _add_instance(p)
    _add_policy(p)
    p.set_defaults(run=cmd_allocate)

    p = sub.add_parser("audit", parents=[common], help="check an outcome against the axioms")
    _add_instance(p)
    _add_policy(p)
    p.add_argument("--outcome", type=Path, help="outcome JSON to audit instead of running a policy")
    p.add_argument("--axioms", help=f"comma-separated; default {','.join(ax.HR_AXIOMS)}")
    p.add_argument("--strict", action="store_true", help="exit 3 when an axiom fails")
    p.set_defaults(run=cmd_audit)

    p = sub.add_parser("suffering", parents=[common], help="Equality-Code suffering set under the baseline")
    _add_instance(p)
    p.set_defaults(run=cmd_suffering)

    p = sub.add_parser("compare", parents=[common], help="compare policies on one instance")
    _add_instance(p)
    _add_compare(p)
    p.set_defaults(run=cmd_compare)

    p = sub.add_parser("simulate", parents=[common], help="generate populations and compare policies")
    p.add_argument("spec", type=Path, help="population spec JSON")
    p.add_argument("--seed", type=int, help="first seed (default: the seed in the population file)")
    p.add_argument("--runs", type=int, default=1)
    _add_compare(p)
    p.set_defaults(run=cmd_simulate)

    p = sub.add_parser("oracle", parents=[common], help="brute-force checks on seeded random instances")
    p.add_argument("--theorem", default="all", choices=("all",) + tuple(sorted(oracle.THEOREMS)))
    p.add_argument("--shape", choices=oracle.SHAPES,
                   help="instance shape (default: the natural shape(s) for each check)")
    p.add_argument("--hr", choices=("no", "yes", "both"), default="both",
                   help="with --shape: draw HR quotas")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--seeds", type=int, default=50)
    p.add_argument("--max-individuals", type=int, default=oracle.DEFAULT_BUDGET.max_individuals)
    p.add_argument("--min-individuals", type=int, default=3)
    p.set_defaults(run=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, result = args.run(args)
    except InstanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (UsageError, OverlapError, HRUnsupported, ProfileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    data = emit_report(result, args.format)
    if args.output:
        args.output.write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
