"""Bipartite matching of individuals to (category, trait) slots.

Slots are ``(v, t)`` pairs where ``t`` is a trait id or ``NIL`` for positions
without HR protection. Capacities come from a ``ReservationVector``. The
matcher below is Kuhn's augmenting-path algorithm with slot capacities, run
incrementally: each ``add`` makes a single augmenting-path attempt, which is
exactly the independence oracle the transversal-matroid greedy needs.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Iterable, Mapping, Optional

from .model import Instance, MembershipProfile, ReservationVector

NIL = None


class SlotMatcher:
    def __init__(self, capacity: Mapping, adjacency: Callable):
        self.capacity = capacity
        self.adjacency = adjacency
        self.slot_of: dict = {}
        self.occupants: dict = {s: [] for s in capacity}

    def __len__(self):
        return len(self.slot_of)

    def _augment(self, i, visited: set) -> bool:
        for s in self.adjacency(i):
            if s in visited or self.capacity.get(s, 0) <= 0:
                continue
            visited.add(s)
            if len(self.occupants[s]) < self.capacity[s]:
                self._place(i, s)
                return True
            for k in list(self.occupants[s]):
                if self._augment(k, visited):
                    self._place(i, s)
                    return True
        return False

    def _place(self, i, s):
        old = self.slot_of.get(i)
        if old is not None:
            self.occupants[old].remove(i)
        self.slot_of[i] = s
        self.occupants[s].append(i)

    def add(self, i) -> bool:
        """Try to match ``i`` without unmatching anyone; True on success."""
        if i in self.slot_of:
            raise ValueError(f"{i!r} is already matched")
        return self._augment(i, set())


@dataclass(frozen=True)
class Matching:
    """Assignment of individuals to slots; unmatched individuals are absent."""

    assignment: Mapping
    quotas: ReservationVector = field(compare=False, repr=False, default=None)

    def __post_init__(self):
        object.__setattr__(self, "assignment", MappingProxyType(dict(self.assignment)))

    def matched(self) -> frozenset:
        return frozenset(self.assignment)

    def matched_to(self, v) -> frozenset:
        return frozenset(i for i, (w, _) in self.assignment.items() if w == v)

    def __getitem__(self, i):
        return self.assignment.get(i)


def slot_capacities(q: ReservationVector, categories: Iterable, traits: Iterable) -> dict:
    """Every slot of the given categories with its capacity, in canonical order:
    categories as given, then declared traits, then the nil-trait slot."""
    caps = {}
    for v in categories:
        for t in traits:
            caps[(v, t)] = q.hr_quota(v, t)
        caps[(v, NIL)] = q.nil_quota(v)
    return caps


def _adjacency(instance: Instance, rho: MembershipProfile, slots: Iterable):
    slots = list(slots)
    open_id = instance.categories.open

    def adj(i):
        memberships = rho[i]
        traits = instance.traits(i)
        return [(v, t) for (v, t) in slots
                if (v == open_id or v in memberships) and (t is NIL or t in traits)]

    cache = {}

    def cached(i):
        if i not in cache:
            cache[i] = adj(i)
        return cache[i]

    return cached


def _run(instance, rho, capacity, members) -> SlotMatcher:
    m = SlotMatcher(capacity, _adjacency(instance, rho, capacity))
    for i in instance.ranked(members):
        m.add(i)
    return m


def hr_compliance(v, subset: Iterable, instance: Instance,
                  rho: Optional[MembershipProfile] = None,
                  q: Optional[ReservationVector] = None) -> int:
    """Most category-``v`` HR-protected positions the set can honour."""
    q = q if q is not None else instance.quotas
    rho = rho if rho is not None else instance.base_profile
    if v not in instance.categories.all:
        raise KeyError(f"unknown category {v!r}")
    capacity = {(v, t): q.hr_quota(v, t) for t in instance.categories.traits
                if q.hr_quota(v, t) > 0}
    if not capacity:
        return 0
    holders = [i for i in instance.eligible_set(v, subset, rho) if instance.traits(i)]
    return len(_run(instance, rho, capacity, holders))


def vr_maximality(subset: Iterable, instance: Instance,
                  rho: Optional[MembershipProfile] = None,
                  q: Optional[ReservationVector] = None) -> int:
    """Most VR-protected positions the set can fill, traits ignored."""
    q = q if q is not None else instance.quotas
    rho = rho if rho is not None else instance.base_profile
    capacity = {(c, NIL): q.capacity(c) for c in instance.categories.vr if q.capacity(c) > 0}
    if not capacity:
        return 0
    members = [i for i in subset if rho[i]]
    return len(_run(instance, rho, capacity, members))


def increases_vr_utilization(subset: Iterable, candidate, instance: Instance,
                             rho: Optional[MembershipProfile] = None) -> bool:
    subset = frozenset(subset)
    if candidate in subset:
        raise ValueError(f"{candidate!r} is already in the set")
    return vr_maximality(subset | {candidate}, instance, rho) == vr_maximality(subset, instance, rho) + 1


def increases_hr_utilization(v, subset: Iterable, candidate, instance: Instance,
                             rho: Optional[MembershipProfile] = None) -> bool:
    rho = rho if rho is not None else instance.base_profile
    subset = frozenset(subset)
    if candidate in subset:
        raise ValueError(f"{candidate!r} is already in the set")
    if not instance.eligible(candidate, v, rho) or any(not instance.eligible(i, v, rho) for i in subset):
        raise ValueError(f"set and candidate must all be eligible for {v!r}")
    return hr_compliance(v, subset | {candidate}, instance, rho) == hr_compliance(v, subset, instance, rho) + 1


def _all_slots(instance, q, precedence=None):
    cats = tuple(precedence) if precedence is not None else instance.categories.all
    return {s: n for s, n in slot_capacities(q, cats, instance.categories.traits).items() if n > 0}


def is_assignable(subset: Iterable, q: ReservationVector, ground: Iterable, instance: Instance,
                  rho: Optional[MembershipProfile] = None) -> bool:
    """Whether some matching of ``ground`` under ``q`` covers all of ``subset``."""
    rho = rho if rho is not None else instance.base_profile
    subset = frozenset(subset)
    if not subset <= frozenset(ground):
        raise ValueError("subset is not contained in the ground set")
    return len(_run(instance, rho, _all_slots(instance, q), subset)) == len(subset)


def greedy_assignable(q: ReservationVector, ground: Iterable, instance: Instance,
                      rho: Optional[MembershipProfile] = None, precedence=None):
    """Greedy basis of the transversal matroid on ``ground``, by descending score.

    Returns the chosen set and a witness matching covering exactly that set.
    The witness is canonical: slots are tried in category order (``precedence``
    or the declared order), then trait order, nil last.
    """
    rho = rho if rho is not None else instance.base_profile
    m = _run(instance, rho, _all_slots(instance, q, precedence), ground)
    return frozenset(m.slot_of), Matching(m.slot_of, q)


def gale_dominates(a: Iterable, b: Iterable, instance: Instance) -> bool:
    a = instance.ranked(a)
    b = instance.ranked(b)
    if len(a) < len(b):
        return False
    return all(instance.score(x) >= instance.score(y) for x, y in zip(a, b))
