"""Problem data: individuals, categories, reservation vectors, membership profiles.

Everything here is immutable after construction. Merit scores are kept as
``Decimal`` so that equality between scores is exact; priority comparisons
never touch floats.
"""
from __future__ import annotations

import itertools
import random
import warnings
from dataclasses import dataclass, field
from decimal import Decimal
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Optional

OPEN = "o"

TIE_REJECT = "reject"
TIE_LEXICOGRAPHIC = "lex"


class ProfileError(ValueError):
    """A membership-profile construction was asked for something it cannot do."""


class TieWarning(UserWarning):
    pass


def as_score(value) -> Decimal:
    if isinstance(value, float):
        # repr() round-trips the shortest decimal form of the float
        value = repr(value)
    return Decimal(value)


@dataclass(frozen=True)
class Individual:
    id: str
    score: Decimal
    memberships: frozenset = frozenset()
    traits: frozenset = frozenset()
    ews_eligible: bool = False

    def __post_init__(self):
        object.__setattr__(self, "score", as_score(self.score))
        object.__setattr__(self, "memberships", frozenset(self.memberships))
        object.__setattr__(self, "traits", frozenset(self.traits))


@dataclass(frozen=True)
class CategorySpace:
    vr: tuple
    ews: Optional[str] = None
    traits: tuple = ()
    open: str = OPEN

    def __post_init__(self):
        object.__setattr__(self, "vr", tuple(self.vr))
        object.__setattr__(self, "traits", tuple(self.traits))

    @property
    def all(self) -> tuple:
        """Every vertical category, open first, then VR categories in declared order."""
        return (self.open,) + self.vr

    @property
    def caste(self) -> tuple:
        return tuple(c for c in self.vr if c != self.ews)

    def problems(self) -> list:
        out = []
        if len(set(self.vr)) != len(self.vr):
            out.append("duplicate VR category id")
        if self.open in self.vr:
            out.append(f"open category id {self.open!r} also declared as a VR category")
        if self.ews is not None and self.ews not in self.vr:
            out.append(f"EWS category {self.ews!r} is not a declared VR category")
        if len(set(self.traits)) != len(self.traits):
            out.append("duplicate trait id")
        return out


@dataclass(frozen=True)
class ReservationVector:
    """Capacities per vertical category plus HR quotas per (category, trait).

    Only the total and the VR capacities are stored; the open capacity is
    whatever the VR categories leave over. It may come out negative for a
    malformed vector, which ``validate_instance`` reports.
    """

    total: int
    vr: Mapping = field(default_factory=dict)
    hr: Mapping = field(default_factory=dict)
    open: str = OPEN

    def __post_init__(self):
        object.__setattr__(self, "vr", MappingProxyType(dict(self.vr)))
        hr = {v: MappingProxyType(dict(ts)) for v, ts in self.hr.items()}
        object.__setattr__(self, "hr", MappingProxyType(hr))

    def capacity(self, v) -> int:
        if v == self.open:
            return self.total - sum(self.vr.values())
        return self.vr.get(v, 0)

    def hr_quota(self, v, t) -> int:
        return self.hr.get(v, {}).get(t, 0)

    def hr_total(self, v) -> int:
        return sum(self.hr.get(v, {}).values())

    def nil_quota(self, v) -> int:
        return self.capacity(v) - self.hr_total(v)

    @property
    def has_hr(self) -> bool:
        return any(n > 0 for ts in self.hr.values() for n in ts.values())

    def with_capacity(self, v, n: int) -> "ReservationVector":
        """Copy with category ``v`` resized to ``n``; the open capacity is held fixed
        when a VR category changes and vice versa."""
        if v == self.open:
            return ReservationVector(sum(self.vr.values()) + n, self.vr, self.hr, self.open)
        vr = dict(self.vr)
        delta = n - vr.get(v, 0)
        vr[v] = n
        return ReservationVector(self.total + delta, vr, self.hr, self.open)

    def transfer_to_open(self, c) -> "ReservationVector":
        vr = dict(self.vr)
        vr[c] = 0
        return ReservationVector(self.total, vr, self.hr, self.open)

    def without_hr(self) -> "ReservationVector":
        return ReservationVector(self.total, self.vr, {}, self.open)

    def to_dict(self) -> dict:
        hr = {v: dict(ts) for v, ts in self.hr.items() if ts}
        return {"total": self.total, "per_category": dict(self.vr), "hr": hr}


@dataclass(frozen=True, eq=False)
class MembershipProfile:
    """Map from individual id to the set of VR categories it belongs to."""

    memberships: Mapping
    label: str = "base"

    def __post_init__(self):
        m = {i: frozenset(cs) for i, cs in self.memberships.items()}
        object.__setattr__(self, "memberships", MappingProxyType(m))

    def __getitem__(self, i) -> frozenset:
        return self.memberships[i]

    def __iter__(self) -> Iterator:
        return iter(self.memberships)

    def __len__(self):
        return len(self.memberships)

    def __eq__(self, other):
        if not isinstance(other, MembershipProfile):
            return NotImplemented
        return dict(self.memberships) == dict(other.memberships)

    def __hash__(self):
        return hash(frozenset(self.memberships.items()))

    @property
    def overlapping(self) -> bool:
        return any(len(cs) > 1 for cs in self.memberships.values())

    def members(self, c) -> frozenset:
        return frozenset(i for i, cs in self.memberships.items() if c in cs)

    def general(self) -> frozenset:
        return frozenset(i for i, cs in self.memberships.items() if not cs)

    def eligible(self, i, v, open_id=OPEN) -> bool:
        return v == open_id or v in self.memberships[i]

    def relabel(self, label: str) -> "MembershipProfile":
        return MembershipProfile(self.memberships, label)


@dataclass(frozen=True)
class PrecedenceOrder:
    """A processing sequence over every vertical category."""

    order: tuple
    open: str = OPEN

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        if len(set(self.order)) != len(self.order):
            raise ValueError(f"precedence order repeats a category: {self.order}")

    def __iter__(self):
        return iter(self.order)

    def __len__(self):
        return len(self.order)

    def is_permutation_of(self, categories: Iterable) -> bool:
        return sorted(self.order) == sorted(categories)

    @property
    def open_first(self) -> bool:
        return bool(self.order) and self.order[0] == self.open

    def open_first_last(self, c) -> bool:
        return self.open_first and self.order[-1] == c

    def open_first_second(self, c) -> bool:
        return self.open_first and len(self.order) > 1 and self.order[1] == c


def orders_between(head: tuple, middle: Iterable, tail: tuple = (),
                   limit: Optional[int] = None, seed: int = 0) -> Iterator[PrecedenceOrder]:
    """Orders of the form head + permutation(middle) + tail.

    With ``limit`` set and more permutations than that, a seeded sample of
    ``limit`` permutations is produced instead (the identity permutation is
    always included).
    """
    middle = tuple(middle)
    open_id = head[0] if head else OPEN
    n_perm = 1
    for k in range(2, len(middle) + 1):
        n_perm *= k
    if limit is None or n_perm <= limit:
        for perm in itertools.permutations(middle):
            yield PrecedenceOrder(head + perm + tail, open_id)
        return
    rng = random.Random(seed)
    seen = {middle}
    yield PrecedenceOrder(head + middle + tail, open_id)
    while len(seen) < limit:
        perm = list(middle)
        rng.shuffle(perm)
        perm = tuple(perm)
        if perm not in seen:
            seen.add(perm)
            yield PrecedenceOrder(head + perm + tail, open_id)


@dataclass(frozen=True)
class Instance:
    categories: CategorySpace
    quotas: ReservationVector
    individuals: tuple
    tie_policy: str = TIE_REJECT

    def __post_init__(self):
        object.__setattr__(self, "individuals", tuple(self.individuals))

    @cached_property
    def by_id(self) -> Mapping:
        return MappingProxyType({ind.id: ind for ind in self.individuals})

    @property
    def ids(self) -> frozenset:
        return frozenset(self.by_id)

    @cached_property
    def _rank(self) -> Mapping:
        order = sorted(self.individuals, key=lambda ind: (-ind.score, ind.id))
        if self.tie_policy == TIE_LEXICOGRAPHIC:
            scores = [ind.score for ind in order]
            if len(set(scores)) != len(scores):
                warnings.warn("duplicate merit scores broken by id; distinct scores are "
                              "assumed by every characterization result", TieWarning)
        return MappingProxyType({ind.id: r for r, ind in enumerate(order)})

    def score(self, i) -> Decimal:
        return self.by_id[i].score

    def rank(self, i) -> int:
        """0 for the highest-priority individual."""
        return self._rank[i]

    def beats(self, a, b) -> bool:
        """Strict priority: higher score, ties broken by smaller id."""
        return self._rank[a] < self._rank[b]

    def ranked(self, ids: Iterable) -> list:
        return sorted(ids, key=self._rank.__getitem__)

    @cached_property
    def base_profile(self) -> MembershipProfile:
        return MembershipProfile({ind.id: ind.memberships for ind in self.individuals}, "base")

    @cached_property
    def j_set(self) -> frozenset:
        """Caste-category members flagged as income-eligible for EWS."""
        caste = set(self.categories.caste)
        return frozenset(ind.id for ind in self.individuals
                         if ind.ews_eligible and ind.memberships & caste)

    def traits(self, i) -> frozenset:
        return self.by_id[i].traits

    def eligible(self, i, v, rho: Optional[MembershipProfile] = None) -> bool:
        rho = rho if rho is not None else self.base_profile
        return rho.eligible(i, v, self.categories.open)

    def eligible_set(self, v, pool: Iterable, rho: Optional[MembershipProfile] = None) -> frozenset:
        rho = rho if rho is not None else self.base_profile
        if v == self.categories.open:
            return frozenset(pool)
        return frozenset(i for i in pool if v in rho[i])

    def replace(self, **changes) -> "Instance":
        fields = dict(categories=self.categories, quotas=self.quotas,
                      individuals=self.individuals, tie_policy=self.tie_policy)
        fields.update(changes)
        return Instance(**fields)


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def validate_instance(instance: Instance) -> ValidationReport:
    report = ValidationReport()
    cats = instance.categories
    q = instance.quotas
    report.violations.extend(cats.problems())

    vr_sum = sum(q.vr.values())
    if vr_sum > q.total:
        report.violations.append(f"VR quotas exceed total: {vr_sum} > {q.total}")
    if q.total < 0:
        report.violations.append(f"negative total quota {q.total}")
    for c, n in q.vr.items():
        if c not in cats.vr:
            report.violations.append(f"quota given for unknown category {c!r}")
        if not isinstance(n, int) or n < 0:
            report.violations.append(f"negative or non-integer quota for {c!r}: {n}")
    for v, ts in q.hr.items():
        if v not in cats.all:
            report.violations.append(f"HR quota given for unknown category {v!r}")
            continue
        for t, n in ts.items():
            if t not in cats.traits:
                report.violations.append(f"HR quota for unknown trait {t!r} in {v!r}")
            if not isinstance(n, int) or n < 0:
                report.violations.append(f"negative or non-integer HR quota {v!r}/{t!r}: {n}")
        if q.nil_quota(v) < 0:
            report.violations.append(
                f"HR quotas exceed capacity in {v!r}: {q.hr_total(v)} > {q.capacity(v)}")

    seen_ids = set()
    scores = {}
    known_vr, known_traits = set(cats.vr), set(cats.traits)
    for ind in instance.individuals:
        if ind.id in seen_ids:
            report.violations.append(f"duplicate individual id {ind.id!r}")
        seen_ids.add(ind.id)
        if ind.score < 0:
            report.violations.append(f"negative merit score for {ind.id!r}")
        for c in sorted(ind.memberships - known_vr):
            report.violations.append(f"{ind.id!r} references unknown category {c!r}")
        for t in sorted(ind.traits - known_traits):
            report.violations.append(f"{ind.id!r} references unknown trait {t!r}")
        if ind.score in scores:
            msg = f"duplicate merit score {ind.score} ({scores[ind.score]!r}, {ind.id!r})"
            if instance.tie_policy == TIE_LEXICOGRAPHIC:
                report.warnings.append(msg + "; broken by id")
            else:
                report.violations.append(msg)
        else:
            scores[ind.score] = ind.id
    if instance.tie_policy not in (TIE_REJECT, TIE_LEXICOGRAPHIC):
        report.violations.append(f"unknown tie policy {instance.tie_policy!r}")
    return report


def build_rho_star(base: MembershipProfile, j_set: Iterable, instance: Instance) -> MembershipProfile:
    """Give every member of ``j_set`` an extra EWS membership on top of its caste one."""
    e = instance.categories.ews
    if e is None:
        raise ProfileError("no EWS category designated")
    if base.overlapping:
        raise ProfileError("base profile is already overlapping")
    caste = set(instance.categories.caste)
    j_set = frozenset(j_set)
    for j in j_set:
        if j not in base.memberships:
            raise ProfileError(f"unknown individual {j!r}")
        if not base[j] & caste:
            raise ProfileError(f"{j!r} is not a member of a caste category")
    m = {i: (cs | {e} if i in j_set else cs) for i, cs in base.memberships.items()}
    return MembershipProfile(m, "rho_star" if j_set else base.label)


def substitute_memberships(base: MembershipProfile, j_set: Iterable, instance: Instance) -> MembershipProfile:
    """Replace the memberships of every member of ``j_set`` with exactly {EWS}."""
    e = instance.categories.ews
    if e is None:
        raise ProfileError("no EWS category designated")
    j_set = frozenset(j_set)
    unknown = j_set - set(base.memberships)
    if unknown:
        raise ProfileError(f"unknown individuals {sorted(unknown)}")
    m = {i: (frozenset({e}) if i in j_set else cs) for i, cs in base.memberships.items()}
    return MembershipProfile(m, "substituted" if j_set else base.label)
