import pytest
from hypothesis import given
from hypothesis import strategies as st

from reserves import axioms as ax
from reserves import fixtures as F
from reserves.model import Individual, build_rho_star
from reserves.rules import (HRUnsupported, OverlapError, ews_first, ews_last,
                            meritorious_horizontal, meritorious_over_and_above, over_and_above,
                            sequential, serial_dictatorship, smh)

from strategies import instance_and_pool, instances


def chosen(outcome):
    return {v: set(s) for v, s in outcome.chosen.items()}


def rho_star(inst):
    return build_rho_star(inst.base_profile, inst.j_set, inst)


def test_serial_dictatorship_open_on_e1():
    inst = F.e1()
    assert serial_dictatorship("o", inst.ids, inst) == {"i1"}


def test_serial_dictatorship_degenerate():
    inst = F.e1()
    q = inst.quotas.with_capacity("c1", 0)
    assert serial_dictatorship("c1", inst.ids, inst, q=q) == frozenset()
    assert serial_dictatorship("c1", {"i1", "i5"}, inst) == frozenset()


def test_meritorious_horizontal_on_e4():
    inst = F.e4()
    assert meritorious_horizontal("o", inst.ids, inst) == {"j1", "j3"}
    assert meritorious_horizontal("o", set(), inst) == frozenset()


def test_meritorious_horizontal_without_hr_is_serial_dictatorship():
    inst = F.e1()
    for v in inst.categories.all:
        assert meritorious_horizontal(v, inst.ids, inst) == serial_dictatorship(v, inst.ids, inst)


def test_smh_traces():
    e1, e2 = F.e1(), F.e2()
    assert chosen(smh(("o", "c1", "e"), None, None, e1)) == {"o": {"i1"}, "c1": {"i2"}, "e": {"i4"}}
    assert chosen(smh(("o", "e", "c1"), rho_star(e2), None, e2)) == \
        {"o": {"i1"}, "e": {"i2"}, "c1": {"i3"}}
    assert chosen(smh(("o", "c1", "e"), rho_star(e2), None, e2)) == \
        {"o": {"i1"}, "c1": {"i2"}, "e": {"i4"}}


def test_smh_rejects_bad_precedence():
    inst = F.e1()
    with pytest.raises(ValueError):
        smh(("o", "c1"), None, None, inst)


def test_over_and_above_on_fixtures():
    assert chosen(over_and_above(None, None, F.e1(), verify=True)) == \
        {"o": {"i1"}, "c1": {"i2"}, "e": {"i4"}}
    out = over_and_above(None, None, F.e4())
    assert chosen(out) == {"o": {"j1", "j3"}} and out.rule == "2smh"


def test_over_and_above_refuses_overlap():
    inst = F.e1()
    with pytest.raises(OverlapError):
        over_and_above(rho_star(inst), None, inst)


def test_moa_on_e3():
    out = meritorious_over_and_above(None, None, F.e3())
    assert out.aggregate == {"i1", "i2"}
    assert chosen(out) == {"o": set(), "c1": {"i2"}, "e": {"i1"}}


def test_moa_equals_over_and_above_on_e1():
    inst = F.e1()
    assert meritorious_over_and_above(None, None, inst) == over_and_above(None, None, inst)


def test_moa_empty_pool():
    out = meritorious_over_and_above(None, set(), F.e3())
    assert out.aggregate == frozenset()


def test_moa_refuses_hr():
    with pytest.raises(HRUnsupported):
        meritorious_over_and_above(None, None, F.e4())


def test_ews_last_on_fixtures():
    assert chosen(ews_last(F.e1(), verify=True)) == {"o": {"i1"}, "c1": {"i2"}, "e": {"i3"}}
    assert chosen(ews_last(F.e2(), verify=True)) == {"o": {"i1"}, "c1": {"i2"}, "e": {"i4"}}


def test_ews_first_on_fixtures():
    assert chosen(ews_first(F.e2(), verify=True)) == {"o": {"i1"}, "e": {"i2"}, "c1": {"i3"}}
    assert chosen(ews_first(F.e1(), verify=True)) == {"o": {"i1"}, "e": {"i3"}, "c1": {"i2"}}


def test_ews_rules_with_empty_j_set_reduce_to_baseline():
    inst = F.e1()
    base = over_and_above(None, None, inst)
    assert ews_last(inst, j_set=()) == base
    assert ews_first(inst, j_set=()).aggregate == base.aggregate


def test_universal_eligibility_equals_transfer_on_example():
    inst = F.e1()
    people = []
    for p in inst.individuals:
        if p.memberships:
            people.append(Individual(p.id, p.score, p.memberships, (), "c1" in p.memberships))
        else:
            people.append(Individual(p.id, p.score, {"e"}))
    inst = inst.replace(individuals=people, quotas=inst.quotas.with_capacity("c1", 0))
    moved = over_and_above(None, None, inst, q=inst.quotas.transfer_to_open("e"))
    assert ews_first(inst).aggregate == moved.aggregate


def test_outcome_problems_catch_bad_outcomes():
    inst = F.e1()
    out = over_and_above(None, None, inst)
    assert out.problems(inst, inst.base_profile) == []
    bad = type(out)({"o": {"i1", "i2"}, "e": {"i5"}, "c1": {"i2"}})
    msgs = bad.problems(inst, inst.base_profile)
    assert any("over capacity" in m for m in msgs)
    assert any("not eligible" in m for m in msgs)
    assert any("chosen by both" in m for m in msgs)


# properties

@given(instance_and_pool(shape="overlapping", hr=True), st.data())
def test_smh_outcomes_are_feasible_and_pass_axioms(data, draw):
    inst, pool = data
    order = draw.draw(st.permutations(inst.categories.all))
    out = smh(order, None, pool, inst)
    assert out.problems(inst, inst.base_profile, pool) == []
    for a in ("non_wastefulness", "max_hr_accommodation", "no_justified_envy"):
        assert ax.AXIOMS[a](out, None, pool, inst).passed, a
    if order[0] == "o":
        assert ax.check_compliance_vr(out, None, pool, inst).passed


@given(instance_and_pool(shape="overlapping"), st.data())
def test_smh_without_hr_is_the_sequential_rule(data, draw):
    inst, pool = data
    order = draw.draw(st.permutations(inst.categories.all))
    out = sequential(order, None, pool, inst)
    remaining = set(pool)
    for v in order:
        pick = serial_dictatorship(v, remaining, inst)
        assert out[v] == pick
        remaining -= pick
    assert out == smh(order, None, pool, inst)


@given(instance_and_pool(shape="non_overlapping", hr=True))
def test_over_and_above_invariant_to_vr_order(data):
    inst, pool = data
    over_and_above(None, pool, inst, verify=True)


@given(instance_and_pool(shape="rho_star", hr=True))
def test_ews_rules_invariant_to_caste_order(data):
    inst, pool = data
    ews_last(inst, pool=pool, verify=True)
    ews_first(inst, pool=pool, verify=True)


@given(instance_and_pool(shape="overlapping"))
def test_moa_passes_vr_axioms(data):
    inst, pool = data
    out = meritorious_over_and_above(None, pool, inst)
    assert out.problems(inst, inst.base_profile, pool) == []
    assert all(ax.audit(out, None, pool, inst, ax.VR_AXIOMS))


@given(instance_and_pool(shape="overlapping", hr=True))
def test_meritorious_horizontal_irrelevance_of_rejected(data):
    inst, pool = data
    for v in inst.categories.all:
        full = meritorious_horizontal(v, pool, inst)
        for i in pool - full:
            assert meritorious_horizontal(v, pool - {i}, inst) == full


@given(instances(shape="rho_star"))
def test_policies_agree_without_income_eligible_members(inst):
    inst = inst.replace(individuals=[Individual(p.id, p.score, p.memberships, p.traits)
                                     for p in inst.individuals])
    base = over_and_above(None, None, inst).aggregate
    assert ews_first(inst).aggregate == base
    assert ews_last(inst).aggregate == base
    assert meritorious_over_and_above(None, None, inst).aggregate == base
