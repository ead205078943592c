"""Synthetic populations and side-by-side policy comparisons."""
from __future__ import annotations

import itertools
import random
from decimal import Decimal
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .model import (CategorySpace, Individual, Instance, PrecedenceOrder, ReservationVector,
                    as_score, build_rho_star)
from .rules import (ChoiceOutcome, ews_first, ews_last, meritorious_over_and_above,
                    over_and_above, smh)

GENERAL = "general"


@dataclass(frozen=True)
class GroupSpec:
    """One population group.

    ``name`` is ``general`` (no reserved-category membership), a caste
    category id, or the EWS category id (general candidates who meet the
    income test). ``income_eligible`` is the share of a caste group that
    also meets the income test.
    """

    name: str
    count: int
    income_eligible: float = 0.0
    mean: float = 50.0
    sd: float = 15.0
    traits: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if self.count < 0:
            raise ValueError(f"group {self.name!r}: negative count")
        if not 0.0 <= self.income_eligible <= 1.0:
            raise ValueError(f"group {self.name!r}: income_eligible outside [0, 1]")
        if self.sd < 0:
            raise ValueError(f"group {self.name!r}: negative sd")
        for t, p in self.traits.items():
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"group {self.name!r}: trait {t!r} incidence outside [0, 1]")


@dataclass(frozen=True)
class PopulationSpec:
    seed: int
    groups: tuple
    total_positions: int
    vr_quotas: Mapping
    hr_quotas: Mapping = field(default_factory=dict)
    ews: Optional[str] = "e"
    traits: tuple = ()
    score_range: tuple = (0.0, 100.0)
    decimals: int = 2

    def __post_init__(self):
        object.__setattr__(self, "groups", tuple(self.groups))
        object.__setattr__(self, "traits", tuple(self.traits))
        names = [g.name for g in self.groups]
        if len(set(names)) != len(names):
            raise ValueError("duplicate group name")
        for g in self.groups:
            if g.name != GENERAL and g.name not in self.vr_quotas:
                raise ValueError(f"group {g.name!r} is neither 'general' nor a VR category")
            if g.income_eligible and g.name in (GENERAL, self.ews):
                raise ValueError(f"group {g.name!r}: income_eligible applies to caste groups only; "
                                 "model income-eligible general candidates as the EWS group")

    @classmethod
    def from_dict(cls, d: Mapping) -> "PopulationSpec":
        groups = tuple(GroupSpec(**g) for g in d["groups"])
        rest = {k: v for k, v in d.items() if k != "groups"}
        if "score_range" in rest:
            rest["score_range"] = tuple(rest["score_range"])
        return cls(groups=groups, **rest)


def _truncated_normal(rng, mean, sd, lo, hi):
    if sd == 0:
        return min(max(mean, lo), hi)
    for _ in range(1000):
        x = rng.gauss(mean, sd)
        if lo <= x <= hi:
            return x
    return min(max(mean, lo), hi)


def generate_population(spec: PopulationSpec) -> Instance:
    rng = random.Random(spec.seed)
    lo, hi = spec.score_range
    step = Decimal(1).scaleb(-spec.decimals)
    floor, top = as_score(lo).quantize(step), as_score(hi).quantize(step)
    if spec.decimals < 0 or sum(g.count for g in spec.groups) > (top - floor) / step + 1:
        raise ValueError("score range too narrow for distinct scores at this precision")
    used = set()
    people = []
    for g in spec.groups:
        for k in range(g.count):
            raw = _truncated_normal(rng, g.mean, g.sd, lo, hi)
            score = as_score(raw).quantize(step)
            # nudge down to keep scores distinct, wrapping to the top at the floor
            while score in used:
                score -= step
                if score < floor:
                    score = top
            used.add(score)
            flag = rng.random() < g.income_eligible
            traits = frozenset(t for t in spec.traits if rng.random() < g.traits.get(t, 0.0))
            memberships = frozenset() if g.name == GENERAL else frozenset({g.name})
            people.append(Individual(f"{g.name}-{k + 1}", score, memberships, traits, flag))
    vr = tuple(spec.vr_quotas)
    cats = CategorySpace(vr, spec.ews if spec.ews in vr else None, spec.traits)
    q = ReservationVector(spec.total_positions, spec.vr_quotas, spec.hr_quotas)
    return Instance(cats, q, tuple(people))


# -- policies ----------------------------------------------------------------

BASE_POLICIES = ("exclusionary", "ews_last", "ews_first", "moa", "transfer_open")


def loophole_orders(instance: Instance, favoured: Iterable) -> dict:
    """The two open-first orders that put EWS between caste categories.

    ``aid`` processes the favoured categories after EWS, so their members keep
    mobility to EWS; ``hinder`` processes them before EWS.
    """
    cats = instance.categories
    favoured = tuple(c for c in cats.caste if c in set(favoured))
    others = tuple(c for c in cats.caste if c not in favoured)
    tag = "+".join(favoured)
    return {
        f"loophole_aid:{tag}": (cats.open,) + others + (cats.ews,) + favoured,
        f"loophole_hinder:{tag}": (cats.open,) + favoured + (cats.ews,) + others,
    }


def run_policy(name: str, instance: Instance, pool: Iterable = None) -> ChoiceOutcome:
    """Run a named policy. ``smh:o,c1,e`` runs the given order on the extended profile."""
    cats = instance.categories
    if name == "exclusionary":
        return over_and_above(None, pool, instance)
    if name == "ews_last":
        return ews_last(instance, pool=pool)
    if name == "ews_first":
        return ews_first(instance, pool=pool)
    if name == "moa":
        rho = build_rho_star(instance.base_profile, instance.j_set, instance) if cats.ews else None
        return meritorious_over_and_above(rho, pool, instance)
    if name == "transfer_open":
        return over_and_above(None, pool, instance, q=instance.quotas.transfer_to_open(cats.ews))
    if ":" in name:
        kind, arg = name.split(":", 1)
        if kind == "smh":
            order = tuple(x.strip() for x in arg.split(","))
        elif kind.startswith("loophole_"):
            order = loophole_orders(instance, arg.split("+"))[name]
        else:
            raise ValueError(f"unknown policy {name!r}")
        order = PrecedenceOrder(order, cats.open)
        if not order.is_permutation_of(cats.all):
            raise ValueError(f"{name!r}: not a permutation of {cats.all}")
        rho = build_rho_star(instance.base_profile, instance.j_set, instance) if cats.ews else None
        return smh(order, rho, pool, instance, rule=name)
    raise ValueError(f"unknown policy {name!r}")


def group_of(instance: Instance, i) -> str:
    """``general``, or the base category id; caste members in the EWS-eligible set get ``+J``."""
    ind = instance.by_id[i]
    if not ind.memberships:
        return GENERAL
    label = "/".join(sorted(ind.memberships))
    return label + "+J" if i in instance.j_set else label


def cutoff_report(outcome: ChoiceOutcome, instance: Instance) -> dict:
    """Lowest admitted score per category; empty categories are left out."""
    return {v: min(instance.score(i) for i in outcome[v])
            for v in instance.categories.all if outcome[v]}


@dataclass
class PolicyResult:
    name: str
    outcome: ChoiceOutcome
    counts: dict
    cutoffs: dict
    group_totals: dict

    def to_dict(self, instance: Instance) -> dict:
        return {
            "aggregate": instance.ranked(self.outcome.aggregate),
            "chosen": {v: instance.ranked(self.outcome[v]) for v in instance.categories.all},
            "counts": self.counts,
            "cutoffs": {v: str(s) for v, s in self.cutoffs.items()},
            "group_totals": self.group_totals,
        }


@dataclass
class PolicyReport:
    instance: Instance
    results: dict
    differences: dict

    def to_dict(self) -> dict:
        return {
            "policies": {n: r.to_dict(self.instance) for n, r in self.results.items()},
            "differences": self.differences,
        }


def compare_policies(instance: Instance, policies: Sequence[str] = BASE_POLICIES,
                     loophole: Iterable = None, pool: Iterable = None) -> PolicyReport:
    policies = list(policies)
    if loophole:
        policies.extend(n for n in loophole_orders(instance, loophole) if n not in policies)
    groups = sorted({group_of(instance, i) for i in instance.ids})
    results = {}
    for name in policies:
        out = run_policy(name, instance, pool)
        counts = {}
        for v in instance.categories.all:
            row = {g: 0 for g in groups}
            for i in out[v]:
                row[group_of(instance, i)] += 1
            counts[v] = row
        totals = {g: sum(counts[v][g] for v in counts) for g in groups}
        results[name] = PolicyResult(name, out, counts, cutoff_report(out, instance), totals)
    diffs = {}
    for a, b in itertools.combinations(policies, 2):
        A, B = results[a].outcome.aggregate, results[b].outcome.aggregate
        diffs[f"{a} vs {b}"] = {"only_first": instance.ranked(A - B),
                                "only_second": instance.ranked(B - A)}
    return PolicyReport(instance, results, diffs)
