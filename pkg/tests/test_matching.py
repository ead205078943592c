import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from reserves import fixtures as F
from reserves import oracle
from reserves.matching import (NIL, SlotMatcher, gale_dominates, greedy_assignable,
                               hr_compliance, increases_hr_utilization,
                               increases_vr_utilization, is_assignable, slot_capacities,
                               vr_maximality)
from reserves.model import CategorySpace, Individual, Instance, ReservationVector

from strategies import instance_and_pool, instances


def two_trait_instance():
    cats = CategorySpace((), traits=("t1", "t2"))
    q = ReservationVector(2, {}, {"o": {"t1": 1, "t2": 1}})
    return Instance(cats, q, (Individual("a", 2, (), {"t1", "t2"}),
                              Individual("b", 1, (), {"t1", "t2"})))


def e4_with_second_holder():
    inst = F.e4()
    return inst.replace(individuals=inst.individuals + (Individual("j4", 60, (), {"t"}),))


def test_eta_on_e4():
    inst = F.e4()
    assert hr_compliance("o", set(), inst) == 0
    assert hr_compliance("o", {"j1", "j3"}, inst) == 1
    assert hr_compliance("o", {"j1", "j2", "j3"}, inst) == 1


def test_eta_with_two_traits_each():
    inst = two_trait_instance()
    assert hr_compliance("o", {"a", "b"}, inst) == 2
    assert oracle.oracle_eta("o", {"a", "b"}, inst) == 2


def test_eta_unknown_category():
    with pytest.raises(KeyError):
        hr_compliance("zz", set(), F.e4())


def test_beta_on_fixtures():
    assert vr_maximality(set(), F.e3()) == 0
    assert vr_maximality({"i1", "i2"}, F.e3()) == 2
    assert vr_maximality({"i1", "i2", "i3"}, F.e3()) == 2
    assert vr_maximality({"i2", "i3", "i4"}, F.e1()) == 2


def test_vr_utilization_increase_on_e3():
    inst = F.e3()
    assert increases_vr_utilization(set(), "i1", inst, inst.base_profile)
    assert not increases_vr_utilization({"i1", "i2"}, "i3", inst, inst.base_profile)


def test_no_membership_never_increases_vr_utilization():
    inst = F.e1()
    assert not increases_vr_utilization(set(), "i1", inst, inst.base_profile)


def test_hr_utilization_increase_on_e4():
    inst = F.e4()
    assert increases_hr_utilization("o", set(), "j3", inst, inst.base_profile)
    assert not increases_hr_utilization("o", set(), "j1", inst, inst.base_profile)
    inst = e4_with_second_holder()
    assert not increases_hr_utilization("o", {"j3"}, "j4", inst, inst.base_profile)


def test_utilization_preconditions():
    inst = F.e3()
    with pytest.raises(ValueError):
        increases_vr_utilization({"i1"}, "i1", inst, inst.base_profile)


def test_assignable_on_e3():
    inst = F.e3()
    q = inst.quotas.with_capacity("o", 0)
    assert is_assignable(set(), q, inst.ids, inst, inst.base_profile)
    assert is_assignable({"i1", "i2"}, q, inst.ids, inst, inst.base_profile)
    assert not is_assignable({"i1", "i2", "i3"}, q, inst.ids, inst, inst.base_profile)


def test_greedy_on_e3():
    inst = F.e3()
    q = inst.quotas.with_capacity("o", 0)
    chosen, witness = greedy_assignable(q, inst.ids, inst)
    assert chosen == {"i1", "i2"}
    assert witness["i1"][0] == "e" and witness["i2"][0] == "c1"
    family = oracle.assignable_family(q, inst.ids, inst)
    assert chosen in family
    assert all(gale_dominates(chosen, J, inst) for J in family)


def test_greedy_with_zero_quotas():
    inst = F.e3()
    q = ReservationVector(0, {"c1": 0, "e": 0})
    assert greedy_assignable(q, inst.ids, inst)[0] == frozenset()


def test_greedy_single_eligible():
    inst = F.e3()
    assert greedy_assignable(inst.quotas, {"i3"}, inst)[0] == {"i3"}


def test_gale_domination_examples():
    cats = CategorySpace(())
    inst = Instance(cats, ReservationVector(0), [Individual(x, s) for x, s in
                                                 [("a", 90), ("b", 80), ("c", 50), ("d", 90.5)]])
    assert gale_dominates({"a", "b"}, {"a", "b"}, inst)
    assert gale_dominates({"a", "b"}, {"a", "c"}, inst)
    assert not gale_dominates({"a"}, {"a", "c"}, inst)
    assert not gale_dominates({"a", "c"}, {"a", "b"}, inst)


def test_slot_capacities_skip_nothing_and_keep_order():
    caps = slot_capacities(F.e4().quotas, ("o",), ("t",))
    assert list(caps) == [("o", "t"), ("o", NIL)]
    assert caps[("o", "t")] == 1 and caps[("o", NIL)] == 1


def test_matcher_failed_attempt_leaves_matching_alone():
    m = SlotMatcher({"s": 1}, lambda i: ["s"])
    assert m.add("a")
    assert not m.add("b")
    assert m.slot_of == {"a": "s"} and m.occupants == {"s": ["a"]}


def test_enumerate_matchings_e4_singleton():
    inst = F.e4()
    got = list(oracle.enumerate_matchings(inst.quotas, {"j3"}, inst))
    assert len(got) == 3
    assert {m["j3"] for m in got} == {None, ("o", "t"), ("o", NIL)}


def test_enumerate_matchings_empty_ground():
    inst = F.e4()
    got = list(oracle.enumerate_matchings(inst.quotas, set(), inst))
    assert len(got) == 1 and not got[0].matched()


# properties, checked against the exhaustive oracle

@given(instance_and_pool(shape="overlapping", hr=True))
def test_eta_matches_enumeration(data):
    inst, subset = data
    for v in inst.categories.all:
        assert hr_compliance(v, subset, inst) == oracle.oracle_eta(v, subset, inst)


@given(instance_and_pool(shape="overlapping", hr=True))
def test_beta_matches_enumeration(data):
    inst, subset = data
    assert vr_maximality(subset, inst) == oracle.oracle_beta(subset, inst)


@given(instance_and_pool(shape="non_overlapping"))
def test_beta_closed_form_for_non_overlapping(data):
    inst, subset = data
    q = inst.quotas
    expected = sum(min(q.capacity(c), len(inst.eligible_set(c, subset))) for c in inst.categories.vr)
    assert vr_maximality(subset, inst) == expected


@given(instances(shape="overlapping", hr=True), st.data())
def test_eta_closed_form_for_single_traits(inst, data):
    # keep at most one trait per individual
    people = tuple(Individual(p.id, p.score, p.memberships, set(sorted(p.traits)[:1]))
                   for p in inst.individuals)
    inst = inst.replace(individuals=people)
    subset = data.draw(st.sets(st.sampled_from(sorted(inst.ids)))) if inst.ids else set()
    for v in inst.categories.all:
        elig = inst.eligible_set(v, subset)
        expected = sum(min(inst.quotas.hr_quota(v, t), sum(1 for i in elig if t in inst.traits(i)))
                       for t in inst.categories.traits)
        assert hr_compliance(v, subset, inst) == expected


@given(instances(shape="overlapping", hr=True, max_individuals=5))
def test_assignable_family_is_a_matroid(inst):
    family = oracle.assignable_family(inst.quotas, inst.ids, inst)
    assert frozenset() in family
    for F_ in family:
        assert all(F_ - {x} in family for x in F_)
        assert is_assignable(F_, inst.quotas, inst.ids, inst, inst.base_profile)
    for A, B in itertools.product(family, repeat=2):
        if len(B) < len(A):
            assert any(B | {x} in family for x in A - B)


@given(instances(shape="overlapping", hr=True))
def test_greedy_dominates_every_assignable_set(inst):
    chosen, witness = greedy_assignable(inst.quotas, inst.ids, inst)
    family = oracle.assignable_family(inst.quotas, inst.ids, inst)
    assert chosen in family and witness.matched() == chosen
    assert chosen == oracle.oracle_greedy(inst.quotas, inst.ids, inst)
    for J in family:
        assert len(chosen) >= len(J) and gale_dominates(chosen, J, inst)


@given(instances(shape="overlapping"), st.data())
def test_gale_domination_is_a_partial_order(inst, data):
    ids = sorted(inst.ids)
    pick = st.sets(st.sampled_from(ids)) if ids else st.just(set())
    a, b, c = data.draw(pick), data.draw(pick), data.draw(pick)
    assert gale_dominates(a, a, inst)
    if gale_dominates(a, b, inst) and gale_dominates(b, a, inst):
        assert sorted(inst.score(x) for x in a) == sorted(inst.score(x) for x in b)
    if gale_dominates(a, b, inst) and gale_dominates(b, c, inst):
        assert gale_dominates(a, c, inst)
