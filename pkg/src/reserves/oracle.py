"""Brute-force ground truth for small instances.

Nothing in here calls the augmenting-path matcher or the greedy: HR
compliance, VR maximality and assignability come from exhaustive matching
enumeration, and axiom-satisfying outcomes come from enumerating every
feasible outcome and filtering it with the axiom checkers (fed the
brute-force HR-compliance function). Enumeration order is canonical:
individuals by descending score, slots and categories in declared order.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from decimal import Decimal
from typing import Iterable, Iterator, Optional

from . import axioms as ax
from .matching import NIL, Matching, gale_dominates, greedy_assignable, slot_capacities
from .model import (CategorySpace, Individual, Instance, MembershipProfile, ReservationVector,
                    build_rho_star, substitute_memberships)
from .rules import (ChoiceOutcome, ews_last, meritorious_horizontal, meritorious_over_and_above,
                    over_and_above, smh)


class BudgetExceeded(ValueError):
    pass


class HypothesisUnmet(ValueError):
    """The instance does not satisfy the assumptions of the requested result."""


@dataclass(frozen=True)
class OracleBudget:
    max_individuals: int = 8
    max_categories: int = 4
    max_traits: int = 3
    max_permutations: int = 24

    def __post_init__(self):
        for name in ("max_individuals", "max_categories", "max_traits", "max_permutations"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    def check(self, instance: Instance, pool: Iterable = None):
        n = len(instance.ids if pool is None else frozenset(pool))
        if n > self.max_individuals:
            raise BudgetExceeded(f"{n} individuals > {self.max_individuals}")
        if len(instance.categories.all) > self.max_categories:
            raise BudgetExceeded(f"{len(instance.categories.all)} categories > {self.max_categories}")
        if len(instance.categories.traits) > self.max_traits:
            raise BudgetExceeded(f"{len(instance.categories.traits)} traits > {self.max_traits}")


DEFAULT_BUDGET = OracleBudget()


def _setup(instance, rho, pool):
    rho = rho if rho is not None else instance.base_profile
    pool = frozenset(pool) if pool is not None else instance.ids
    return rho, pool


# -- matchings ---------------------------------------------------------------

def enumerate_matchings(q: ReservationVector, ground: Iterable, instance: Instance,
                        rho: Optional[MembershipProfile] = None,
                        budget: OracleBudget = DEFAULT_BUDGET) -> Iterator[Matching]:
    """Every matching of ``ground`` under ``q``, each exactly once."""
    rho, ground = _setup(instance, rho, ground)
    budget.check(instance, ground)
    order = instance.ranked(ground)
    remaining = {s: n for s, n in slot_capacities(q, instance.categories.all,
                                                  instance.categories.traits).items() if n > 0}
    options = {i: [s for s in remaining
                   if instance.eligible(i, s[0], rho) and (s[1] is NIL or s[1] in instance.traits(i))]
               for i in order}
    current = {}

    def rec(k):
        if k == len(order):
            yield Matching(current, q)
            return
        i = order[k]
        yield from rec(k + 1)
        for s in options[i]:
            if remaining[s]:
                remaining[s] -= 1
                current[i] = s
                yield from rec(k + 1)
                del current[i]
                remaining[s] += 1

    yield from rec(0)


def _trait_slots_only(q: ReservationVector, v, instance) -> ReservationVector:
    # keeps only the (v, trait) slots; the maximum below is taken over exactly
    # the positions being counted, so dropping the rest cannot change it
    n = q.hr_total(v)
    if v == instance.categories.open:
        return ReservationVector(n, {c: 0 for c in instance.categories.vr}, {v: q.hr.get(v, {})})
    vr = {c: (n if c == v else 0) for c in instance.categories.vr}
    return ReservationVector(n, vr, {v: q.hr.get(v, {})})


def _vr_nil_only(q: ReservationVector, instance) -> ReservationVector:
    vr = {c: q.capacity(c) for c in instance.categories.vr}
    return ReservationVector(sum(vr.values()), vr, {})


def oracle_eta(v, subset: Iterable, instance: Instance, rho: Optional[MembershipProfile] = None,
               budget: OracleBudget = DEFAULT_BUDGET) -> int:
    q = _trait_slots_only(instance.quotas, v, instance)
    return max(sum(1 for (w, t) in m.assignment.values() if w == v and t is not NIL)
               for m in enumerate_matchings(q, subset, instance, rho, budget))


def oracle_beta(subset: Iterable, instance: Instance, rho: Optional[MembershipProfile] = None,
                budget: OracleBudget = DEFAULT_BUDGET) -> int:
    q = _vr_nil_only(instance.quotas, instance)
    vr = set(instance.categories.vr)
    return max(sum(1 for (w, t) in m.assignment.values() if w in vr and t is NIL)
               for m in enumerate_matchings(q, subset, instance, rho, budget))


def assignable_family(q: ReservationVector, ground: Iterable, instance: Instance,
                      rho: Optional[MembershipProfile] = None,
                      budget: OracleBudget = DEFAULT_BUDGET) -> set:
    """All subsets of ``ground`` covered by at least one matching."""
    covered = {m.matched() for m in enumerate_matchings(q, ground, instance, rho, budget)}
    family = set()
    for top in covered:
        items = sorted(top)
        for r in range(len(items) + 1):
            family.update(frozenset(c) for c in itertools.combinations(items, r))
    return family


def oracle_greedy(q, ground, instance, rho=None, budget=DEFAULT_BUDGET) -> frozenset:
    """Greedy basis computed against the enumerated family instead of a matcher."""
    family = assignable_family(q, ground, instance, rho, budget)
    chosen = frozenset()
    for i in instance.ranked(ground):
        if chosen | {i} in family:
            chosen |= {i}
    return chosen


# -- outcomes ----------------------------------------------------------------

def enumerate_outcomes(rho: Optional[MembershipProfile], pool: Iterable, instance: Instance,
                       budget: OracleBudget = DEFAULT_BUDGET) -> Iterator[ChoiceOutcome]:
    """Every feasible outcome: eligible, within capacity, disjoint."""
    rho, pool = _setup(instance, rho, pool)
    budget.check(instance, pool)
    cats = instance.categories.all
    order = instance.ranked(pool)
    room = {v: max(instance.quotas.capacity(v), 0) for v in cats}
    options = {i: [v for v in cats if instance.eligible(i, v, rho)] for i in order}
    chosen = {v: [] for v in cats}

    def rec(k):
        if k == len(order):
            yield ChoiceOutcome({v: chosen[v] for v in cats}, "enumerated", None, rho.label)
            return
        i = order[k]
        yield from rec(k + 1)
        for v in options[i]:
            if len(chosen[v]) < room[v]:
                chosen[v].append(i)
                yield from rec(k + 1)
                chosen[v].pop()

    yield from rec(0)


def brute_eta(instance: Instance, rho: MembershipProfile, budget: OracleBudget = DEFAULT_BUDGET):
    """Memoised brute-force HR compliance, in the shape the axiom checkers expect."""
    cache = {}

    def eta(v, subset):
        key = (v, frozenset(subset))
        if key not in cache:
            cache[key] = oracle_eta(v, key[1], instance, rho, budget) \
                if instance.quotas.hr_total(v) else 0
        return cache[key]

    return eta


def enumerate_axiom_outcomes(rho: Optional[MembershipProfile], pool: Iterable, axioms: Iterable,
                             instance: Instance, budget: OracleBudget = DEFAULT_BUDGET) -> list:
    rho, pool = _setup(instance, rho, pool)
    axioms = list(axioms)
    # cheapest check first; the result does not depend on the order
    axioms.sort(key=lambda a: a != "non_wastefulness")
    eta = brute_eta(instance, rho, budget)
    return [o for o in enumerate_outcomes(rho, pool, instance, budget)
            if all(ax.AXIOMS[a](o, rho, pool, instance, eta).passed for a in axioms)]


# -- Equality Code -----------------------------------------------------------

def maximal_suffering_sets(rho: Optional[MembershipProfile], pool: Iterable, instance: Instance,
                           rule=None, budget: OracleBudget = DEFAULT_BUDGET) -> list:
    """Every set meeting the definition of a maximal suffering set, by subset enumeration."""
    rho, pool = _setup(instance, rho, pool)
    budget.check(instance, pool)
    rule = rule or (lambda r, p, inst: over_and_above(r, p, inst))
    before = rule(rho, pool, instance).aggregate
    candidates = instance.ranked((instance.j_set & pool) - before)
    subsets = [frozenset(c) for r in range(len(candidates) + 1)
               for c in itertools.combinations(candidates, r)]
    after = {J: rule(substitute_memberships(rho, J, instance), pool, instance).aggregate
             for J in subsets}
    suffers = {J: J <= after[J] for J in subsets}
    return [J for J in subsets if suffers[J]
            and all(not suffers[K] and J <= after[K] for K in subsets if J < K)]


# -- theorem checks ----------------------------------------------------------

@dataclass
class TheoremVerdict:
    theorem: str
    passed: bool
    detail: dict = field(default_factory=dict)
    witness: Optional[dict] = None

    def to_dict(self) -> dict:
        return {"theorem": self.theorem, "pass": self.passed,
                "detail": self.detail, "witness": self.witness}


def _names(instance, s):
    return instance.ranked(s)


def _outcome_dict(instance, o):
    return {v: _names(instance, o[v]) for v in instance.categories.all}


def _require(cond, msg):
    if not cond:
        raise HypothesisUnmet(msg)


def _uniqueness(name, instance, rho, pool, axioms, expected, budget):
    found = enumerate_axiom_outcomes(rho, pool, axioms, instance, budget)
    ok = len(found) == 1 and found[0] == expected
    witness = None if ok else {"expected": _outcome_dict(instance, expected),
                               "found": [_outcome_dict(instance, o) for o in found]}
    return TheoremVerdict(name, ok, {"outcomes": len(found)}, witness)


def _oa_uniqueness(instance, rho, pool, budget):
    _require(not rho.overlapping, "memberships must be non-overlapping")
    _require(not instance.quotas.has_hr, "no HR quotas allowed")
    return _uniqueness("oa_uniqueness", instance, rho, pool, ax.VR_AXIOMS,
                       over_and_above(rho, pool, instance), budget)


def _smh2_uniqueness(instance, rho, pool, budget):
    _require(not rho.overlapping, "memberships must be non-overlapping")
    return _uniqueness("smh2_uniqueness", instance, rho, pool, ax.HR_AXIOMS,
                       over_and_above(rho, pool, instance), budget)


def _mobility_shape(instance, rho):
    e = instance.categories.ews
    _require(e is not None, "no EWS category designated")
    for i in rho:
        _require(len(rho[i]) <= 2 and (len(rho[i]) < 2 or e in rho[i]),
                 f"{i} has memberships {sorted(rho[i])}; only EWS may overlap")


def _ews_first_uniqueness(instance, rho, pool, budget):
    _mobility_shape(instance, rho)
    cats = instance.categories
    expected = smh((cats.open, cats.ews) + cats.caste, rho, pool, instance, rule="ews_first")
    return _uniqueness("ews_first_uniqueness", instance, rho, pool,
                       ax.HR_AXIOMS + ("respects_mobility",), expected, budget)


def _moa_gale(instance, rho, pool, budget):
    _require(not instance.quotas.has_hr, "no HR quotas allowed")
    top = meritorious_over_and_above(rho, pool, instance).aggregate
    found = enumerate_axiom_outcomes(rho, pool, ax.VR_AXIOMS, instance, budget)
    bad = [o for o in found if not gale_dominates(top, o.aggregate, instance)]
    witness = {"moa": _names(instance, top), "dominated_by_none_of": _names(instance, bad[0].aggregate)} \
        if bad else None
    return TheoremVerdict("moa_gale_maximality", not bad, {"outcomes": len(found)}, witness)


def _rho_star_shape(instance, rho):
    _require(instance.categories.ews is not None, "no EWS category designated")
    _require(not rho.overlapping, "base memberships must be non-overlapping")


def _ews_last_suffering(instance, rho, pool, budget):
    _rho_star_shape(instance, rho)
    base = over_and_above(rho, pool, instance).aggregate
    last = ews_last(instance, pool=pool, base=rho).aggregate
    closed = ax.maximal_suffering_set(rho, instance.j_set, pool, instance)
    definitional = maximal_suffering_sets(rho, pool, instance, budget=budget)
    ok = (last - base) == closed and definitional == [closed]
    detail = {"ews_last_minus_base": _names(instance, last - base),
              "closed_form": _names(instance, closed),
              "definitional": [_names(instance, J) for J in definitional]}
    return TheoremVerdict("ews_last_suffering", ok, detail, None if ok else detail)


def _ews_last_unaffected(instance, rho, pool, budget):
    _rho_star_shape(instance, rho)
    base = over_and_above(rho, pool, instance).aggregate
    last = ews_last(instance, pool=pool, base=rho).aggregate
    unaffected = ax.materially_unaffected(pool, instance, rho)
    by_enumeration = maximal_suffering_sets(rho, pool, instance, budget=budget) == [frozenset()]
    ok = (last == base) == unaffected == by_enumeration
    detail = {"aggregates_equal": last == base, "materially_unaffected": unaffected,
              "unaffected_by_enumeration": by_enumeration}
    return TheoremVerdict("ews_last_unaffected", ok, detail, None if ok else detail)


def _ews_last_equality_code(instance, rho, pool, budget):
    _rho_star_shape(instance, rho)
    cats = instance.categories
    rho_star = build_rho_star(rho, instance.j_set, instance)
    order = (cats.open,) + cats.caste + (cats.ews,)

    def rule(r, p, inst):
        return smh(order, r, p, inst)

    out = rule(rho_star, pool, instance)
    failed = [v.to_dict() for v in ax.audit(out, rho_star, pool, instance) if not v.passed]
    cands = instance.ranked(instance.j_set & pool)
    sufferers = [list(c) for r in range(1, len(cands) + 1)
                 for c in itertools.combinations(cands, r)
                 if ax.suffers_violation(c, rho_star, pool, instance, rule)]
    ok = not failed and not sufferers
    witness = None if ok else {"axioms": failed, "suffering_sets": sufferers}
    return TheoremVerdict("ews_last_equality_code", ok, {}, witness)


def _open_set(instance, rho, pool, budget):
    blank = MembershipProfile({i: () for i in rho}, "blank")
    expected = over_and_above(blank, pool, instance)[instance.categories.open]
    found = enumerate_axiom_outcomes(rho, pool, ax.HR_AXIOMS, instance, budget)
    bad = [o for o in found if o[instance.categories.open] != expected]
    witness = {"expected": _names(instance, expected),
               "found": _names(instance, bad[0][instance.categories.open])} if bad else None
    return TheoremVerdict("open_set_invariance", not bad, {"outcomes": len(found)}, witness)


def _matroid(instance, rho, pool, budget):
    family = assignable_family(instance.quotas, pool, instance, rho, budget)
    for F in family:
        for x in F:
            if F - {x} not in family:
                return TheoremVerdict("matroid", False, {}, {"not_downward_closed": sorted(F)})
    for F, G in itertools.product(family, family):
        if len(G) < len(F) and not any(G | {x} in family for x in F - G):
            return TheoremVerdict("matroid", False, {}, {"no_exchange": [sorted(F), sorted(G)]})
    return TheoremVerdict("matroid", True, {"independent_sets": len(family)})


def _greedy_dominance(instance, rho, pool, budget):
    family = assignable_family(instance.quotas, pool, instance, rho, budget)
    greedy, witness = greedy_assignable(instance.quotas, pool, instance, rho)
    ok = greedy in family and witness.matched() == greedy
    ok = ok and greedy == oracle_greedy(instance.quotas, pool, instance, rho, budget)
    bad = [J for J in family if not gale_dominates(greedy, J, instance) or len(greedy) < len(J)]
    ok = ok and not bad
    detail = {"greedy": _names(instance, greedy), "independent_sets": len(family)}
    return TheoremVerdict("greedy_dominance", ok, detail,
                          None if ok else {"undominated": _names(instance, bad[0]) if bad else None})


def _iri(instance, rho, pool, budget):
    for v in instance.categories.all:
        full = meritorious_horizontal(v, pool, instance, rho)
        for i in instance.ranked(pool - full):
            if meritorious_horizontal(v, pool - {i}, instance, rho) != full:
                return TheoremVerdict("mh_iri", False, {}, {"category": v, "removed": i})
    return TheoremVerdict("mh_iri", True)


def _sequential_axioms(instance, rho, pool, budget):
    cats = instance.categories
    eta = brute_eta(instance, rho, budget)
    orders = itertools.islice(itertools.permutations(cats.all), budget.max_permutations)
    for order in orders:
        out = smh(order, rho, pool, instance)
        wanted = ["non_wastefulness", "max_hr_accommodation", "no_justified_envy"]
        if order[0] == cats.open:
            wanted.append("compliance_vr")
        for a in wanted:
            v = ax.AXIOMS[a](out, rho, pool, instance, eta)
            if not v.passed:
                return TheoremVerdict("sequential_axioms", False, {},
                                      {"order": list(order), **v.to_dict()})
    return TheoremVerdict("sequential_axioms", True)


def _moa_axioms(instance, rho, pool, budget):
    _require(not instance.quotas.has_hr, "no HR quotas allowed")
    out = meritorious_over_and_above(rho, pool, instance)
    failed = [v.to_dict() for v in ax.audit(out, rho, pool, instance, ax.VR_AXIOMS) if not v.passed]
    return TheoremVerdict("moa_axioms", not failed, {}, {"axioms": failed} if failed else None)


def _universal_transfer(instance, rho, pool, budget):
    _rho_star_shape(instance, rho)
    _require(not instance.quotas.has_hr, "no HR quotas allowed")
    cats = instance.categories
    rho_star = build_rho_star(rho, instance.j_set, instance)
    _require(all(cats.ews in rho_star[i] for i in pool), "someone in the pool is not EWS-eligible")
    first = smh((cats.open, cats.ews) + cats.caste, rho_star, pool, instance).aggregate
    q = instance.quotas.transfer_to_open(cats.ews)
    moved = over_and_above(rho, pool, instance, q=q).aggregate
    ok = first == moved
    detail = {"ews_first": _names(instance, first), "transferred": _names(instance, moved)}
    return TheoremVerdict("universal_ews_transfer", ok, detail, None if ok else detail)


THEOREMS = {
    "oa_uniqueness": _oa_uniqueness,
    "smh2_uniqueness": _smh2_uniqueness,
    "moa_gale_maximality": _moa_gale,
    "moa_axioms": _moa_axioms,
    "ews_last_suffering": _ews_last_suffering,
    "ews_last_unaffected": _ews_last_unaffected,
    "ews_last_equality_code": _ews_last_equality_code,
    "ews_first_uniqueness": _ews_first_uniqueness,
    "open_set_invariance": _open_set,
    "sequential_axioms": _sequential_axioms,
    "matroid": _matroid,
    "greedy_dominance": _greedy_dominance,
    "mh_iri": _iri,
    "universal_ews_transfer": _universal_transfer,
}


def verify_theorem(theorem: str, instance: Instance, rho: Optional[MembershipProfile] = None,
                   pool: Iterable = None, budget: OracleBudget = DEFAULT_BUDGET) -> TheoremVerdict:
    if theorem not in THEOREMS:
        raise KeyError(f"unknown theorem {theorem!r}; choose from {sorted(THEOREMS)}")
    rho, pool = _setup(instance, rho, pool)
    budget.check(instance, pool)
    return THEOREMS[theorem](instance, rho, pool, budget)


# -- random instances --------------------------------------------------------

SHAPES = ("non_overlapping", "overlapping", "rho_star", "mobility", "universal_ews")


def random_instance(seed: int, budget: OracleBudget = DEFAULT_BUDGET, shape: str = "non_overlapping",
                    hr: bool = False, min_individuals: int = 1) -> Instance:
    """Seeded small instance with distinct integer scores.

    Shapes: ``non_overlapping`` and ``overlapping`` VR memberships; ``rho_star``
    (non-overlapping with a designated EWS category and income-eligible caste
    members); ``mobility`` (at most two memberships, and a double membership
    always includes EWS); ``universal_ews`` (``rho_star`` where every caste
    member is income-eligible and everyone else is an EWS member).
    """
    if shape not in SHAPES:
        raise ValueError(f"unknown shape {shape!r}")
    rng = random.Random(f"{shape}:{int(hr)}:{seed}")
    ews_shape = shape in ("rho_star", "mobility", "universal_ews")
    max_vr = budget.max_categories - 1
    n_vr = rng.randint(2 if ews_shape else 1, max(max_vr, 2 if ews_shape else 1))
    vr = tuple(f"c{k + 1}" for k in range(n_vr - 1 if ews_shape else n_vr))
    ews = "e" if ews_shape else None
    if ews:
        vr = vr + ("e",)
    n_traits = rng.randint(1, min(2, budget.max_traits)) if hr else 0
    traits = tuple(f"t{k + 1}" for k in range(n_traits))
    cats = CategorySpace(vr, ews, traits)

    caps = {c: rng.randint(0, 2) for c in vr}
    open_cap = rng.randint(0, 2)
    hr_q = {}
    if hr:
        for v in cats.all:
            cap = open_cap if v == cats.open else caps[v]
            ts = {}
            for t in traits:
                room = cap - sum(ts.values())
                if room > 0 and rng.random() < 0.6:
                    ts[t] = rng.randint(1, room)
            if ts:
                hr_q[v] = ts
    quotas = ReservationVector(open_cap + sum(caps.values()), caps, hr_q)

    n = rng.randint(min(min_individuals, budget.max_individuals), budget.max_individuals)
    scores = rng.sample(range(1, 1000), n)
    caste = cats.caste
    people = []
    for k in range(n):
        ews_flag = False
        if shape == "non_overlapping":
            m = {rng.choice(vr)} if rng.random() < 0.7 else set()
        elif shape == "overlapping":
            m = {c for c in vr if rng.random() < 0.45}
        elif shape == "rho_star":
            m = {rng.choice(vr)} if rng.random() < 0.8 else set()
            ews_flag = bool(m & set(caste)) and rng.random() < 0.6
        elif shape == "mobility":
            roll = rng.random()
            if roll < 0.15:
                m = set()
            elif roll < 0.6:
                m = {rng.choice(vr)}
            else:
                m = {rng.choice(caste), ews}
        else:
            m = {rng.choice(vr)}
            ews_flag = ews not in m
        t = {x for x in traits if rng.random() < 0.4}
        people.append(Individual(f"i{k + 1}", Decimal(scores[k]), m, t, ews_flag))
    return Instance(cats, quotas, tuple(people))


# -- seeded sweeps -----------------------------------------------------------

# the instance shape each check is meant for, and whether HR quotas are drawn
NATURAL_SETTINGS = {
    "oa_uniqueness": (("non_overlapping", False),),
    "smh2_uniqueness": (("non_overlapping", False), ("non_overlapping", True)),
    "moa_gale_maximality": (("overlapping", False),),
    "moa_axioms": (("overlapping", False),),
    "ews_last_suffering": (("rho_star", False), ("rho_star", True)),
    "ews_last_unaffected": (("rho_star", False), ("rho_star", True)),
    "ews_last_equality_code": (("rho_star", False), ("rho_star", True)),
    "ews_first_uniqueness": (("mobility", False), ("mobility", True)),
    "open_set_invariance": (("overlapping", False), ("overlapping", True)),
    "sequential_axioms": (("overlapping", False), ("overlapping", True)),
    "matroid": (("overlapping", False), ("overlapping", True)),
    "greedy_dominance": (("overlapping", False), ("overlapping", True)),
    "mh_iri": (("overlapping", True),),
    "universal_ews_transfer": (("universal_ews", False),),
}


def sweep(theorem: str, seeds: Iterable, settings: Iterable = None,
          budget: OracleBudget = DEFAULT_BUDGET, min_individuals: int = 1,
          stop_at_first: bool = True) -> dict:
    """Check ``theorem`` on seeded random instances.

    Instances whose shape does not meet the theorem's hypotheses are counted
    as skipped. The report is a plain dict and depends only on the arguments.
    """
    settings = tuple(settings) if settings is not None else NATURAL_SETTINGS[theorem]
    seeds = list(seeds)
    checked = skipped = 0
    counterexamples = []
    for shape, hr in settings:
        for s in seeds:
            inst = random_instance(s, budget, shape, hr, min_individuals)
            try:
                verdict = verify_theorem(theorem, inst, budget=budget)
            except HypothesisUnmet:
                skipped += 1
                continue
            checked += 1
            if not verdict.passed:
                counterexamples.append({"seed": s, "shape": shape, "hr": hr,
                                        **verdict.to_dict()})
                if stop_at_first:
                    break
        if counterexamples and stop_at_first:
            break
    return {"theorem": theorem, "settings": [[s, h] for s, h in settings],
            "seeds": len(seeds), "checked": checked, "skipped": skipped,
            "passed": not counterexamples, "counterexamples": counterexamples}
