"""Acceptance criteria 1-9.

Each criterion runs at its stated sample size and tolerance (exact equality
everywhere) and records one PASS/FAIL line, printed at the end of the pytest
run. ``python3 tests/test_acceptance.py`` runs them without pytest.
"""
import os
import random
import subprocess
import sys
import time
from pathlib import Path

import pytest

from reserves import axioms as ax
from reserves import fixtures as F
from reserves import oracle
from reserves.matching import gale_dominates, greedy_assignable, hr_compliance, vr_maximality
from reserves.model import build_rho_star, substitute_memberships
from reserves.policy import compare_policies, cutoff_report
from reserves.rules import (ews_first, ews_last, meritorious_horizontal,
                            meritorious_over_and_above, over_and_above, serial_dictatorship)

ROOT = Path(__file__).resolve().parent.parent
RESULTS = []
MIN_INDIVIDUALS = 3


def record(number, title, passed, detail, seconds=None, limit=None):
    timing = f" in {seconds:.1f}s (target < {limit}s)" if seconds is not None else ""
    line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}: {detail}{timing}"
    RESULTS.append(line)
    print(line)
    return passed


def sweep(theorem, settings, n):
    return oracle.sweep(theorem, range(n), settings, min_individuals=MIN_INDIVIDUALS,
                        stop_at_first=False)


def run_sweeps(number, title, theorems, settings, n, limit):
    start = time.perf_counter()
    reports = [sweep(t, settings, n) for t in theorems]
    seconds = time.perf_counter() - start
    checked = sum(r["checked"] for r in reports)
    skipped = sum(r["skipped"] for r in reports)
    bad = [(r["theorem"], cx["seed"], cx["shape"], cx["hr"]) for r in reports
           for cx in r["counterexamples"]]
    ok = not bad and skipped == 0 and seconds < limit
    detail = f"{checked} checks, {len(bad)} counterexamples" + (f" {bad[:3]}" if bad else "")
    if skipped:
        detail += f", {skipped} instances missed the shape"
    return record(number, title, ok, detail, seconds, limit)


def criterion_1():
    return run_sweeps(1, "unique axiom outcome equals over-and-above (VR only)",
                      ["oa_uniqueness"], [("non_overlapping", False)], 200, 60)


def criterion_2():
    return run_sweeps(2, "unique axiom outcome equals two-step SMH (with HR)",
                      ["smh2_uniqueness"], [("non_overlapping", True)], 200, 120)


def criterion_3():
    return run_sweeps(3, "meritorious over-and-above Gale-dominates all axiom outcomes",
                      ["moa_gale_maximality"], [("overlapping", False)], 200, 120)


def criterion_4():
    start = time.perf_counter()
    reports = [sweep(t, [("rho_star", False), ("rho_star", True)], 200)
               for t in ("ews_last_suffering", "ews_last_unaffected")]
    seconds = time.perf_counter() - start
    nonempty = sum(bool(ax.maximal_suffering_set(None, inst.j_set, None, inst))
                   for hr in (False, True) for s in range(200)
                   for inst in [oracle.random_instance(s, shape="rho_star", hr=hr,
                                                       min_individuals=MIN_INDIVIDUALS)])
    bad = [(r["theorem"], cx["seed"], cx["hr"]) for r in reports for cx in r["counterexamples"]]
    checked = sum(r["checked"] for r in reports)
    skipped = sum(r["skipped"] for r in reports)
    ok = not bad and not skipped and seconds < 180
    detail = (f"{checked} checks over 400 instances ({nonempty} with a non-empty suffering set), "
              f"{len(bad)} counterexamples" + (f" {bad[:3]}" if bad else ""))
    return record(4, "EWS-last gain = closed-form = enumerated maximal suffering set",
                  ok, detail, seconds, 180)


def criterion_5():
    return run_sweeps(5, "unique outcome with mobility equals EWS-first",
                      ["ews_first_uniqueness"], [("mobility", False), ("mobility", True)], 200, 120)


def criterion_6():
    start = time.perf_counter()
    rng = random.Random("matching-queries")
    mismatches = []
    for k in range(500):
        inst = oracle.random_instance(k, shape="overlapping", hr=True, min_individuals=1)
        subset = {i for i in sorted(inst.ids) if rng.random() < 0.6}
        v = rng.choice(inst.categories.all)
        eta, eta_o = hr_compliance(v, subset, inst), oracle.oracle_eta(v, subset, inst)
        beta, beta_o = vr_maximality(subset, inst), oracle.oracle_beta(subset, inst)
        if (eta, beta) != (eta_o, beta_o):
            mismatches.append((k, v, sorted(subset), eta, eta_o, beta, beta_o))
    structural = []
    for k in range(500):
        inst = oracle.random_instance(k, shape="overlapping", hr=True, min_individuals=1)
        for theorem in ("matroid", "greedy_dominance"):
            if not oracle.verify_theorem(theorem, inst).passed:
                structural.append((theorem, k))
    seconds = time.perf_counter() - start
    ok = not mismatches and not structural and seconds < 60
    detail = (f"500 eta/beta queries, {len(mismatches)} mismatches; matroid and greedy checks "
              f"on 500 families, {len(structural)} failures")
    return record(6, "matching substrate equals exhaustive enumeration", ok, detail, seconds, 60)


def criterion_7():
    return run_sweeps(7, "universal EWS eligibility: EWS-first equals transfer to open",
                      ["universal_ews_transfer"], [("universal_ews", False)], 100, 30)


def _agg(outcome):
    return set(outcome.aggregate)


def _chosen(outcome):
    return {v: set(s) for v, s in outcome.chosen.items() if s or v != "o"}


def fixture_checks():
    """(label, produced, expected, oracle-confirmed) for every fixture output."""
    e1, e2, e3, e4 = F.e1(), F.e2(), F.e3(), F.e4()
    star = {n: build_rho_star(i.base_profile, i.j_set, i) for n, i in (("e1", e1), ("e2", e2))}
    q3 = e3.quotas.with_capacity("o", 0)
    fam3 = oracle.assignable_family(q3, e3.ids, e3)
    oa1 = over_and_above(None, None, e1)
    unique1 = oracle.enumerate_axiom_outcomes(None, None, ax.VR_AXIOMS, e1)
    unique4 = oracle.enumerate_axiom_outcomes(None, None, ax.HR_AXIOMS, e4)
    mob = ax.HR_AXIOMS + ("respects_mobility",)
    first2 = oracle.enumerate_axiom_outcomes(star["e2"], None, mob, e2)
    first1 = oracle.enumerate_axiom_outcomes(star["e1"], None, mob, e1)
    axiom3 = oracle.enumerate_axiom_outcomes(None, None, ax.VR_AXIOMS, e3)
    gale3 = all(gale_dominates({"i1", "i2"}, o.aggregate, e3) for o in axiom3)
    suff = {n: oracle.maximal_suffering_sets(None, None, i) for n, i in (("e1", e1), ("e2", e2))}
    last1_gain = ews_last(e1).aggregate - oa1.aggregate
    return [
        ("E1 rho* membership of i3", set(star["e1"]["i3"]), {"c1", "e"}, True),
        ("E1 substitution J={i3}", set(substitute_memberships(e1.base_profile, {"i3"}, e1)["i3"]),
         {"e"}, True),
        ("E4 eta(o, {j1,j3})", hr_compliance("o", {"j1", "j3"}, e4), 1,
         oracle.oracle_eta("o", {"j1", "j3"}, e4) == 1),
        ("E4 eta(o, all)", hr_compliance("o", e4.ids, e4), 1, oracle.oracle_eta("o", e4.ids, e4) == 1),
        ("E3 beta({i1,i2})", vr_maximality({"i1", "i2"}, e3), 2,
         oracle.oracle_beta({"i1", "i2"}, e3) == 2),
        ("E3 beta(all)", vr_maximality(e3.ids, e3), 2, oracle.oracle_beta(e3.ids, e3) == 2),
        ("E1 beta({i2,i3,i4})", vr_maximality({"i2", "i3", "i4"}, e1), 2,
         oracle.oracle_beta({"i2", "i3", "i4"}, e1) == 2),
        ("E3 greedy under q'", set(greedy_assignable(q3, e3.ids, e3)[0]), {"i1", "i2"},
         all(gale_dominates({"i1", "i2"}, J, e3) for J in fam3)
         and oracle.oracle_greedy(q3, e3.ids, e3) == {"i1", "i2"}),
        ("E1 serial dictatorship for o", set(serial_dictatorship("o", e1.ids, e1)), {"i1"},
         True),
        ("E4 meritorious horizontal for o", set(meritorious_horizontal("o", e4.ids, e4)),
         {"j1", "j3"}, len(unique4) == 1 and unique4[0]["o"] == {"j1", "j3"}),
        ("E1 over-and-above", _chosen(oa1), {"o": {"i1"}, "c1": {"i2"}, "e": {"i4"}},
         unique1 == [oa1]),
        ("E4 two-step SMH", _chosen(over_and_above(None, None, e4)), {"o": {"j1", "j3"}},
         len(unique4) == 1),
        ("E3 meritorious over-and-above", _chosen(meritorious_over_and_above(None, None, e3)),
         {"c1": {"i2"}, "e": {"i1"}}, gale3),
        ("E1 meritorious over-and-above", _chosen(meritorious_over_and_above(None, None, e1)),
         _chosen(oa1), unique1 == [oa1]),
        ("E3 axiom outcomes include {i1,i2} and {i1,i3}",
         {frozenset({"i1", "i2"}), frozenset({"i1", "i3"})} <= {o.aggregate for o in axiom3},
         True, len(axiom3) >= 2),
        ("E1 EWS-last", _chosen(ews_last(e1)), {"o": {"i1"}, "c1": {"i2"}, "e": {"i3"}},
         suff["e1"] == [last1_gain]),
        ("E2 EWS-last", _chosen(ews_last(e2)), {"o": {"i1"}, "c1": {"i2"}, "e": {"i4"}},
         suff["e2"] == [frozenset()]),
        ("E2 EWS-first", _chosen(ews_first(e2)), {"o": {"i1"}, "e": {"i2"}, "c1": {"i3"}},
         len(first2) == 1 and first2[0] == ews_first(e2)),
        ("E1 EWS-first", _chosen(ews_first(e1)), {"o": {"i1"}, "e": {"i3"}, "c1": {"i2"}},
         len(first1) == 1 and first1[0] == ews_first(e1)),
        ("E1 maximal suffering set", set(ax.maximal_suffering_set(None, e1.j_set, None, e1)),
         {"i3"}, suff["e1"] == [frozenset({"i3"})]),
        ("E2 maximal suffering set", set(ax.maximal_suffering_set(None, e2.j_set, None, e2)),
         set(), suff["e2"] == [frozenset()]),
        ("E1 suffers violation J={i3}", ax.suffers_violation({"i3"}, None, None, e1), True, True),
        ("E2 materially unaffected", ax.materially_unaffected(None, e2), True, True),
        ("E1 materially unaffected", ax.materially_unaffected(None, e1), False, True),
        ("E2 mobility fails under EWS-last",
         ax.check_respects_mobility(ews_last(e2), star["e2"], None, e2).witness.individuals,
         ("i2", "i4"), True),
        ("E4 accommodation witness for {j1,j2}",
         ax.check_max_hr_accommodation(type(oa1)({"o": {"j1", "j2"}}), None, None, e4)
         .witness.individuals, ("j3",), oracle.oracle_eta("o", {"j1", "j2"}, e4) == 0),
        ("E1 non-wastefulness witness with e empty",
         ax.check_non_wastefulness(type(oa1)({"o": {"i1"}, "c1": {"i2"}}), None, None, e1)
         .witness.individuals, ("i4",), True),
        ("E1 cut-offs", {v: str(s) for v, s in cutoff_report(oa1, e1).items()},
         {"o": "90", "c1": "80", "e": "60"}, True),
        ("E1 EWS-last cut-off for e", str(cutoff_report(ews_last(e1), e1)["e"]), "70", True),
        ("E2 EWS-first vs EWS-last",
         compare_policies(e2, ["ews_first", "ews_last"]).differences["ews_first vs ews_last"],
         {"only_first": ["i3"], "only_second": ["i4"]}, True),
    ]


def criterion_8():
    start = time.perf_counter()
    bad = [label for label, got, want, confirmed in fixture_checks() if got != want or not confirmed]
    seconds = time.perf_counter() - start
    n = len(fixture_checks())
    return record(8, "fixture outputs match and are oracle-confirmed", not bad,
                  f"{n - len(bad)}/{n} checks" + (f"; failing: {bad}" if bad else ""), seconds, 60)


DETERMINISM_COMMANDS = [
    ["allocate", "data/e1.json", "--policy", "oa"],
    ["allocate", "data/e2.json", "--policy", "ews_first", "--format", "table"],
    ["simulate", "data/population.json", "--runs", "2", "--loophole", "sc,st"],
    ["oracle", "--seeds", "5", "--theorem", "ews_last_suffering"],
]


def _cli(argv, hash_seed):
    env = dict(os.environ, PYTHONHASHSEED=str(hash_seed))
    return subprocess.run([sys.executable, "-m", "reserves.cli", *argv], cwd=ROOT, env=env,
                          capture_output=True, check=False)


def criterion_9():
    start = time.perf_counter()
    differing = []
    for argv in DETERMINISM_COMMANDS:
        a, b = _cli(argv, 1), _cli(argv, 2)
        if a.returncode != 0 or a.stdout != b.stdout or a.returncode != b.returncode or not a.stdout:
            differing.append(argv[0] + ":" + a.stderr.decode()[-200:])
    seconds = time.perf_counter() - start
    return record(9, "CLI reports byte-identical across runs", not differing,
                  f"{len(DETERMINISM_COMMANDS) - len(differing)}/{len(DETERMINISM_COMMANDS)} "
                  "commands identical under different hash seeds"
                  + (f"; differing: {differing}" if differing else ""), seconds, 120)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{k}" for k in range(1, 10)])
def test_criterion(criterion):
    assert criterion()


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
