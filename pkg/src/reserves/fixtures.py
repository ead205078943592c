"""Four small reference instances used throughout the tests and docs."""
from __future__ import annotations

from .model import CategorySpace, Individual, Instance, ReservationVector


def _ind(i, score, memberships=(), traits=(), ews=False):
    return Individual(i, score, frozenset(memberships), frozenset(traits), ews)


def e1() -> Instance:
    """One caste category and EWS, one seat each; i3 is an income-eligible c1 member."""
    cats = CategorySpace(("c1", "e"), ews="e")
    q = ReservationVector(3, {"c1": 1, "e": 1})
    return Instance(cats, q, (
        _ind("i1", "90"),
        _ind("i2", "80", {"c1"}),
        _ind("i3", "70", {"c1"}, ews=True),
        _ind("i4", "60", {"e"}),
        _ind("i5", "50"),
    ))


def e2() -> Instance:
    """Like E1 but the EWS member i4 sits between the two income-eligible c1 members."""
    cats = CategorySpace(("c1", "e"), ews="e")
    q = ReservationVector(3, {"c1": 1, "e": 1})
    return Instance(cats, q, (
        _ind("i1", "90"),
        _ind("i2", "80", {"c1"}, ews=True),
        _ind("i4", "75", {"e"}),
        _ind("i3", "70", {"c1"}, ews=True),
    ))


def e3() -> Instance:
    """Overlapping memberships, no open seats: i1 belongs to both c1 and e."""
    cats = CategorySpace(("c1", "e"), ews="e")
    q = ReservationVector(2, {"c1": 1, "e": 1})
    return Instance(cats, q, (
        _ind("i1", "100", {"c1", "e"}),
        _ind("i2", "90", {"c1"}),
        _ind("i3", "50", {"e"}),
    ))


def e4() -> Instance:
    """Open category only, two seats, one of them HR-protected for trait t."""
    cats = CategorySpace((), traits=("t",))
    q = ReservationVector(2, {}, {"o": {"t": 1}})
    return Instance(cats, q, (
        _ind("j1", "90"),
        _ind("j2", "80"),
        _ind("j3", "70", traits={"t"}),
    ))


FIXTURES = {"E1": e1, "E2": e2, "E3": e3, "E4": e4}
