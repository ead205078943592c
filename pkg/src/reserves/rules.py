"""Allocation rules.

Everything is built on one engine, ``smh``: categories are processed in a
precedence order and each one picks with the meritorious horizontal rule
from whoever is still unassigned. With no HR quotas the single-category rule
collapses to serial dictatorship, so the plain sequential rules, over-and-above,
its HR extension, and the EWS-first / EWS-last policies are all thin wrappers.
The one rule that is not sequential is meritorious over-and-above, which fills
the VR categories jointly with a matroid greedy.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Optional

from .matching import SlotMatcher, greedy_assignable
from .model import (Instance, MembershipProfile, PrecedenceOrder, ReservationVector,
                    build_rho_star, orders_between)

# all permutations up to 4! = 24; beyond that a seeded sample of this size
INVARIANCE_SAMPLE = 24


class OverlapError(ValueError):
    """Over-and-above is only defined for non-overlapping memberships."""


class HRUnsupported(ValueError):
    """Meritorious over-and-above is only defined without HR quotas."""


class InvarianceError(AssertionError):
    """Two precedence orders that should agree produced different outcomes."""


@dataclass(frozen=True)
class ChoiceOutcome:
    chosen: Mapping
    rule: str = field(default="", compare=False)
    precedence: Optional[tuple] = field(default=None, compare=False)
    profile: str = field(default="", compare=False)

    def __post_init__(self):
        chosen = {v: frozenset(s) for v, s in self.chosen.items()}
        object.__setattr__(self, "chosen", MappingProxyType(chosen))

    def __getitem__(self, v) -> frozenset:
        return self.chosen.get(v, frozenset())

    @property
    def aggregate(self) -> frozenset:
        out = frozenset()
        for s in self.chosen.values():
            out |= s
        return out

    def category_of(self, i):
        for v, s in self.chosen.items():
            if i in s:
                return v
        return None

    def problems(self, instance: Instance, rho: MembershipProfile, pool: Iterable = None) -> list:
        """Violations of the two structural requirements on an outcome."""
        out = []
        pool = frozenset(pool) if pool is not None else instance.ids
        seen = {}
        for v, s in self.chosen.items():
            if v not in instance.categories.all:
                out.append(f"unknown category {v!r}")
                continue
            if len(s) > instance.quotas.capacity(v):
                out.append(f"{v!r} over capacity: {len(s)} > {instance.quotas.capacity(v)}")
            for i in s:
                if i not in pool:
                    out.append(f"{i!r} chosen by {v!r} but not in the pool")
                elif not instance.eligible(i, v, rho):
                    out.append(f"{i!r} chosen by {v!r} but not eligible")
                if i in seen:
                    out.append(f"{i!r} chosen by both {seen[i]!r} and {v!r}")
                seen[i] = v
        return out


def _pool(instance, pool):
    return frozenset(pool) if pool is not None else instance.ids


def _rho(instance, rho):
    return rho if rho is not None else instance.base_profile


def serial_dictatorship(v, pool: Iterable, instance: Instance,
                        rho: Optional[MembershipProfile] = None,
                        q: Optional[ReservationVector] = None) -> frozenset:
    q = q if q is not None else instance.quotas
    eligible = instance.ranked(instance.eligible_set(v, pool, _rho(instance, rho)))
    return frozenset(eligible[:max(q.capacity(v), 0)])


def meritorious_horizontal(v, pool: Iterable, instance: Instance,
                           rho: Optional[MembershipProfile] = None,
                           q: Optional[ReservationVector] = None) -> frozenset:
    """Category-``v`` choice: first everyone who raises HR utilization, best first,
    then the remaining capacity by merit."""
    q = q if q is not None else instance.quotas
    rho = _rho(instance, rho)
    capacity = max(q.capacity(v), 0)
    eligible = instance.ranked(instance.eligible_set(v, pool, rho))
    trait_caps = {(v, t): q.hr_quota(v, t) for t in instance.categories.traits
                  if q.hr_quota(v, t) > 0}
    chosen = []
    if trait_caps and capacity:
        hr_room = min(sum(trait_caps.values()), capacity)

        def adj(i, _traits=instance.categories.traits):
            held = instance.traits(i)
            return [(v, t) for t in _traits if t in held]

        # HR utilization is a transversal-matroid rank, so one pass in merit
        # order is the same as repeatedly taking the best utilization-raiser
        matcher = SlotMatcher(trait_caps, adj)
        for i in eligible:
            if len(chosen) == hr_room:
                break
            if matcher.add(i):
                chosen.append(i)
    taken = set(chosen)
    rest = [i for i in eligible if i not in taken]
    chosen.extend(rest[:capacity - len(chosen)])
    return frozenset(chosen)


def smh(precedence, rho: Optional[MembershipProfile], pool: Iterable, instance: Instance,
        q: Optional[ReservationVector] = None, rule: str = "smh") -> ChoiceOutcome:
    """Sequential meritorious horizontal rule for the given precedence order."""
    precedence = precedence if isinstance(precedence, PrecedenceOrder) else \
        PrecedenceOrder(precedence, instance.categories.open)
    if not precedence.is_permutation_of(instance.categories.all):
        raise ValueError(f"precedence {precedence.order} is not a permutation of "
                         f"{instance.categories.all}")
    rho = _rho(instance, rho)
    remaining = set(_pool(instance, pool))
    chosen = {}
    for v in precedence:
        pick = meritorious_horizontal(v, remaining, instance, rho, q)
        chosen[v] = pick
        remaining -= pick
    ordered = {v: chosen[v] for v in instance.categories.all}
    return ChoiceOutcome(ordered, rule, precedence.order, rho.label)


def sequential(precedence, rho, pool, instance, q=None) -> ChoiceOutcome:
    """Plain sequential rule: serial dictatorship per category, HR quotas ignored."""
    q = (q if q is not None else instance.quotas).without_hr()
    return smh(precedence, rho, pool, instance, q=q, rule="sequential")


def _invariant(orders, run, label):
    first = None
    for order in orders:
        out = run(order)
        if first is None:
            first = out
        elif out != first:
            raise InvarianceError(f"{label}: {first.precedence} and {order.order} disagree")
    return first


def over_and_above(rho: Optional[MembershipProfile], pool: Iterable, instance: Instance,
                   q: Optional[ReservationVector] = None, verify: bool = False) -> ChoiceOutcome:
    """Open category first, then the (non-overlapping) VR categories.

    With HR quotas present this is the two-step meritorious horizontal rule.
    ``verify`` re-runs every open-first order and checks they agree.
    """
    rho = _rho(instance, rho)
    if rho.overlapping:
        raise OverlapError("over-and-above needs non-overlapping memberships")
    cats = instance.categories
    q_ = q if q is not None else instance.quotas
    name = "2smh" if q_.has_hr else "over_and_above"
    out = smh((cats.open,) + cats.vr, rho, pool, instance, q=q, rule=name)
    if verify:
        orders = orders_between((cats.open,), cats.vr, limit=INVARIANCE_SAMPLE)
        _invariant(orders, lambda o: smh(o, rho, pool, instance, q=q, rule=name), name)
    return out


def meritorious_over_and_above(rho: Optional[MembershipProfile], pool: Iterable,
                               instance: Instance,
                               q: Optional[ReservationVector] = None) -> ChoiceOutcome:
    """Open positions by merit, then every VR category at once by matroid greedy.

    The aggregate is unique; the split across VR categories is read off the
    canonical greedy witness matching.
    """
    q = q if q is not None else instance.quotas
    if q.has_hr:
        raise HRUnsupported("meritorious over-and-above is defined without HR quotas")
    rho = _rho(instance, rho)
    cats = instance.categories
    pool = _pool(instance, pool)
    open_pick = serial_dictatorship(cats.open, pool, instance, rho, q)
    q_vr = q.with_capacity(cats.open, 0)
    _, witness = greedy_assignable(q_vr, pool - open_pick, instance, rho, precedence=cats.vr)
    chosen = {cats.open: open_pick}
    for c in cats.vr:
        chosen[c] = witness.matched_to(c)
    return ChoiceOutcome(chosen, "meritorious_over_and_above", None, rho.label)


def _ews_parts(instance, j_set, base):
    cats = instance.categories
    if cats.ews is None:
        raise ValueError("no EWS category designated")
    j_set = instance.j_set if j_set is None else frozenset(j_set)
    rho_star = build_rho_star(_rho(instance, base), j_set, instance)
    return cats, rho_star


def ews_last(instance: Instance, j_set: Iterable = None, pool: Iterable = None,
             q: Optional[ReservationVector] = None, verify: bool = False,
             base: Optional[MembershipProfile] = None) -> ChoiceOutcome:
    """Extended EWS scope, open category first and EWS last."""
    cats, rho_star = _ews_parts(instance, j_set, base)
    head, tail = (cats.open,), (cats.ews,)
    run = lambda o: smh(o, rho_star, pool, instance, q=q, rule="ews_last")  # noqa: E731
    if verify:
        return _invariant(orders_between(head, cats.caste, tail, limit=INVARIANCE_SAMPLE),
                          run, "ews_last")
    return run(PrecedenceOrder(head + cats.caste + tail, cats.open))


def ews_first(instance: Instance, j_set: Iterable = None, pool: Iterable = None,
              q: Optional[ReservationVector] = None, verify: bool = False,
              base: Optional[MembershipProfile] = None) -> ChoiceOutcome:
    """Extended EWS scope, open category first and EWS second."""
    cats, rho_star = _ews_parts(instance, j_set, base)
    head = (cats.open, cats.ews)
    run = lambda o: smh(o, rho_star, pool, instance, q=q, rule="ews_first")  # noqa: E731
    if verify:
        return _invariant(orders_between(head, cats.caste, limit=INVARIANCE_SAMPLE),
                          run, "ews_first")
    return run(PrecedenceOrder(head + cats.caste, cats.open))
