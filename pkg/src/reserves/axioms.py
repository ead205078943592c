"""Axiom checks with counterexample witnesses, and the Equality-Code suffering sets.

Every checker takes ``(outcome, rho, pool, instance)`` and returns an
``AxiomVerdict``. The HR-aware form of each axiom is the only one implemented;
with no HR quotas every HR-compliance term is zero and the checks reduce to
their VR-only versions. ``eta`` may be injected so that a caller (the oracle)
can evaluate the axioms with an independent HR-compliance function.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .matching import hr_compliance
from .model import Instance, MembershipProfile, ProfileError, substitute_memberships
from .rules import ChoiceOutcome, over_and_above


@dataclass(frozen=True)
class Witness:
    category: str
    individuals: tuple
    condition: str

    def to_dict(self) -> dict:
        return {"category": self.category, "individuals": list(self.individuals),
                "condition": self.condition}


@dataclass(frozen=True)
class AxiomVerdict:
    axiom: str
    passed: bool
    witness: Optional[Witness] = None

    def __post_init__(self):
        if self.passed == (self.witness is not None):
            raise ValueError("a verdict carries a witness exactly when it fails")

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        return {"axiom": self.axiom, "pass": self.passed,
                "witness": self.witness.to_dict() if self.witness else None}


def _eta(instance, rho, eta):
    if eta is not None:
        return eta
    cache = {}

    def f(v, subset):
        key = (v, frozenset(subset))
        if key not in cache:
            cache[key] = hr_compliance(v, key[1], instance, rho)
        return cache[key]

    return f


def _setup(rho, pool, instance):
    rho = rho if rho is not None else instance.base_profile
    pool = frozenset(pool) if pool is not None else instance.ids
    return rho, pool


def _pass(name):
    return AxiomVerdict(name, True)


def _fail(name, v, individuals, condition):
    return AxiomVerdict(name, False, Witness(v, tuple(individuals), condition))


def check_non_wastefulness(outcome: ChoiceOutcome, rho: Optional[MembershipProfile],
                           pool: Iterable, instance: Instance, eta: Callable = None) -> AxiomVerdict:
    name = "non_wastefulness"
    rho, pool = _setup(rho, pool, instance)
    unchosen = instance.ranked(pool - outcome.aggregate)
    for v in instance.categories.all:
        if len(outcome[v]) >= instance.quotas.capacity(v):
            continue
        for j in unchosen:
            if instance.eligible(j, v, rho):
                return _fail(name, v, (j,), f"|C^{v}| = {len(outcome[v])} < "
                             f"{instance.quotas.capacity(v)} while eligible {j} is unchosen")
    return _pass(name)


def check_max_hr_accommodation(outcome: ChoiceOutcome, rho: Optional[MembershipProfile],
                               pool: Iterable, instance: Instance, eta: Callable = None) -> AxiomVerdict:
    name = "max_hr_accommodation"
    rho, pool = _setup(rho, pool, instance)
    eta = _eta(instance, rho, eta)
    unchosen = instance.ranked(pool - outcome.aggregate)
    for v in instance.categories.all:
        if instance.quotas.hr_total(v) == 0:
            continue
        cv = outcome[v]
        base = eta(v, cv)
        for j in unchosen:
            if instance.eligible(j, v, rho) and eta(v, cv | {j}) > base:
                return _fail(name, v, (j,), f"eta^{v}(C^{v}) = {base} < eta^{v}(C^{v} + {j})")
    return _pass(name)


def check_no_justified_envy(outcome: ChoiceOutcome, rho: Optional[MembershipProfile],
                            pool: Iterable, instance: Instance, eta: Callable = None) -> AxiomVerdict:
    name = "no_justified_envy"
    rho, pool = _setup(rho, pool, instance)
    eta = _eta(instance, rho, eta)
    unchosen = instance.ranked(pool - outcome.aggregate)
    for v in instance.categories.all:
        cv = outcome[v]
        for i in instance.ranked(cv):
            for j in unchosen:
                if not instance.eligible(j, v, rho) or instance.beats(i, j):
                    continue
                if eta(v, cv) > eta(v, (cv - {i}) | {j}):
                    continue
                return _fail(name, v, (i, j), f"{j} outscores {i} and swapping them "
                             f"does not lower eta^{v}")
    return _pass(name)


def _deserves_better(name, outcome, instance, eta, upper, i, origin):
    """Shared body of VR compliance (upper = open) and mobility (upper = EWS):
    ``i`` sitting in ``origin`` must not deserve a seat in ``upper``."""
    cap = instance.quotas.capacity(upper)
    cu = outcome[upper]
    if len(cu) != cap:
        return _fail(name, origin, (i,), f"{i} holds a {origin} seat while "
                     f"|C^{upper}| = {len(cu)} != {cap}")
    base = eta(upper, cu)
    for j in instance.ranked(cu):
        if instance.beats(j, i) or base > eta(upper, (cu - {j}) | {i}):
            continue
        return _fail(name, origin, (i, j), f"{i} outscores {upper} holder {j} and "
                     f"swapping them does not lower eta^{upper}")
    if eta(upper, cu | {i}) > base:
        return _fail(name, origin, (i,), f"adding {i} to C^{upper} raises eta^{upper}")
    return None


def check_compliance_vr(outcome: ChoiceOutcome, rho: Optional[MembershipProfile],
                        pool: Iterable, instance: Instance, eta: Callable = None) -> AxiomVerdict:
    name = "compliance_vr"
    rho, pool = _setup(rho, pool, instance)
    eta = _eta(instance, rho, eta)
    open_id = instance.categories.open
    for c in instance.categories.vr:
        for i in instance.ranked(outcome[c]):
            bad = _deserves_better(name, outcome, instance, eta, open_id, i, c)
            if bad is not None:
                return bad
    return _pass(name)


def check_respects_mobility(outcome: ChoiceOutcome, rho: Optional[MembershipProfile],
                            pool: Iterable, instance: Instance, eta: Callable = None) -> AxiomVerdict:
    name = "respects_mobility"
    rho, pool = _setup(rho, pool, instance)
    e = instance.categories.ews
    if e is None:
        raise ValueError("no EWS category designated")
    eta = _eta(instance, rho, eta)
    for c in instance.categories.caste:
        for i in instance.ranked(outcome[c]):
            if e not in rho[i]:
                continue
            bad = _deserves_better(name, outcome, instance, eta, e, i, c)
            if bad is not None:
                return bad
    return _pass(name)


AXIOMS = {
    "non_wastefulness": check_non_wastefulness,
    "max_hr_accommodation": check_max_hr_accommodation,
    "no_justified_envy": check_no_justified_envy,
    "compliance_vr": check_compliance_vr,
    "respects_mobility": check_respects_mobility,
}
VR_AXIOMS = ("non_wastefulness", "no_justified_envy", "compliance_vr")
HR_AXIOMS = ("non_wastefulness", "max_hr_accommodation", "no_justified_envy", "compliance_vr")


def audit(outcome: ChoiceOutcome, rho, pool, instance: Instance,
          axioms: Iterable = HR_AXIOMS, eta: Callable = None) -> list:
    rho, pool = _setup(rho, pool, instance)
    eta = _eta(instance, rho, eta)
    return [AXIOMS[a](outcome, rho, pool, instance, eta) for a in axioms]


def passes_all(outcome, rho, pool, instance, axioms=HR_AXIOMS, eta=None) -> bool:
    rho, pool = _setup(rho, pool, instance)
    eta = _eta(instance, rho, eta)
    return all(AXIOMS[a](outcome, rho, pool, instance, eta).passed for a in axioms)


# -- Equality Code -----------------------------------------------------------

def _base_rule(rho, pool, instance):
    return over_and_above(rho, pool, instance)


def suffers_violation(j_subset: Iterable, rho: Optional[MembershipProfile], pool: Iterable,
                      instance: Instance, rule: Callable = _base_rule) -> bool:
    """Every member of ``j_subset`` is rejected under ``rho`` yet admitted once the
    whole subset is switched to EWS-only membership."""
    rho, pool = _setup(rho, pool, instance)
    j_subset = frozenset(j_subset)
    if not j_subset <= instance.j_set & pool:
        raise ProfileError("subset must lie inside the income-eligible caste members in the pool")
    before = rule(rho, pool, instance).aggregate
    if j_subset & before:
        return False
    after = rule(substitute_memberships(rho, j_subset, instance), pool, instance).aggregate
    return j_subset <= after


def maximal_suffering_set(rho: Optional[MembershipProfile], j_universe: Iterable,
                          pool: Iterable, instance: Instance,
                          rule: Callable = _base_rule) -> frozenset:
    """The unique maximal suffering set, from two runs of the base rule: switch every
    rejected income-eligible caste member to EWS, and keep the newly admitted."""
    rho, pool = _setup(rho, pool, instance)
    if rho.overlapping:
        raise ProfileError("base profile must be non-overlapping")
    before = rule(rho, pool, instance).aggregate
    rejected = (frozenset(j_universe) & pool) - before
    after = rule(substitute_memberships(rho, rejected, instance), pool, instance).aggregate
    return after - before


def materially_unaffected(pool: Iterable, instance: Instance,
                          rho: Optional[MembershipProfile] = None,
                          j_universe: Iterable = None) -> bool:
    j_universe = instance.j_set if j_universe is None else j_universe
    return not maximal_suffering_set(rho, j_universe, pool, instance)
