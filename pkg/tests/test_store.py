import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from descriptorkb.entities import (
    NOTHING,
    THING,
    SUPPORTED_DATATYPES,
    Axiom,
    DataPair,
    EntityKind,
    Expression,
    Literal,
    ObjectPair,
    data_property,
    individual,
    object_property,
    owl_class,
)
from descriptorkb.reasoner import synchronise_reasoner
from descriptorkb.store import (
    BUILTINS,
    ChangeStatus,
    Characteristic,
    Identity,
    IdentityPair,
    StoreError,
    create_store,
    literal,
)
from randomkb import random_store

E = Expression
K = EntityKind
ROOM, LOCATION = owl_class("ROOM"), owl_class("LOCATION")
ROOM1, ROOM2, CORRIDOR1 = individual("Room1"), individual("Room2"), individual("Corridor1")
IS_LINKED = object_property("isLinkedTo")
HAS_TEMP = data_property("hasTemperature")


def test_create_store():
    s = create_store("robotAtHomeOnto")
    assert s.declarations == BUILTINS == {THING, NOTHING} | SUPPORTED_DATATYPES
    assert s.stale and s.snapshot is None and len(s) == 0
    with pytest.raises(StoreError):
        create_store("")
    with pytest.raises(StoreError):
        create_store("x", [(":", "http://a#"), (":", "http://b#")])


def test_assert_twice_reports_already_present():
    s = create_store("t")
    ax = Axiom(E.SUPER, ROOM, LOCATION)
    assert s.assert_axiom(ax) is ChangeStatus.ADDED
    before = s.axioms
    assert s.assert_axiom(ax) is ChangeStatus.ALREADY_PRESENT
    assert str(ChangeStatus.ALREADY_PRESENT) == "already present"
    assert s.axioms == before


def test_auto_declaration_of_data_property():
    s = create_store("t")
    assert s.assert_axiom(Axiom(E.DATA_LINK, ROOM1, DataPair(HAS_TEMP, literal(24)))) is ChangeStatus.ADDED
    assert HAS_TEMP in s.declarations and ROOM1 in s.declarations


def test_invalid_axiom_rejected():
    s = create_store("t")
    with pytest.raises(StoreError, match="Type requires NamedIndividual ground"):
        s.assert_axiom(Axiom(E.TYPE, ROOM, ROOM1))
    assert len(s) == 0 and s.declarations == BUILTINS


def test_retract():
    s = create_store("t")
    ax = Axiom(E.OBJECT_LINK, CORRIDOR1, ObjectPair(IS_LINKED, ROOM1))
    assert s.retract_axiom(ax) is ChangeStatus.ABSENT
    s.assert_axiom(ax)
    assert s.retract_axiom(ax) is ChangeStatus.REMOVED
    assert ax not in s
    # declarations stay
    assert IS_LINKED in s.declarations


def test_mirrored_views():
    s = create_store("t")
    s.assert_axiom(Axiom(E.SUPER, ROOM, LOCATION))
    assert Axiom(E.SUB, LOCATION, ROOM) in s
    s.assert_axiom(Axiom(E.INSTANCE, ROOM, ROOM1))
    assert s.enumerate(ROOM1, E.TYPE) == {ROOM}
    s.retract_axiom(Axiom(E.TYPE, ROOM1, ROOM))
    assert s.enumerate(ROOM, E.INSTANCE) == frozenset()


def test_enumerate():
    s = create_store("t")
    assert s.enumerate(ROOM, E.SUPER) == frozenset()
    s.assert_axiom(Axiom(E.OBJECT_LINK, CORRIDOR1, ObjectPair(IS_LINKED, ROOM1)))
    s.assert_axiom(Axiom(E.OBJECT_LINK, CORRIDOR1, ObjectPair(IS_LINKED, ROOM2)))
    assert s.enumerate(CORRIDOR1, E.OBJECT_LINK) == {ObjectPair(IS_LINKED, ROOM1), ObjectPair(IS_LINKED, ROOM2)}
    with pytest.raises(StoreError):
        s.enumerate(ROOM, E.TYPE)


def test_characteristics():
    s = create_store("t")
    assert s.set_characteristic(IS_LINKED, Characteristic.SYMMETRIC) is ChangeStatus.ADDED
    assert s.set_characteristic(IS_LINKED, Characteristic.SYMMETRIC) is ChangeStatus.ALREADY_PRESENT
    assert s.has_characteristic(IS_LINKED, Characteristic.SYMMETRIC)
    assert s.set_characteristic(IS_LINKED, Characteristic.SYMMETRIC, False) is ChangeStatus.REMOVED
    assert not s.characteristics
    with pytest.raises(StoreError):
        s.set_characteristic(HAS_TEMP, Characteristic.TRANSITIVE)


def test_identity_pairs():
    s = create_store("t")
    robot1 = individual("Robot1")
    assert s.assert_identity(IdentityPair(robot1, ROOM1, Identity.DIFFERENT)) is ChangeStatus.ADDED
    assert s.identity_pairs == {IdentityPair(ROOM1, robot1, Identity.DIFFERENT)}
    assert s.assert_identity(IdentityPair(ROOM1, ROOM1, Identity.SAME)) is ChangeStatus.ALREADY_PRESENT
    with pytest.raises(StoreError):
        s.assert_identity(IdentityPair(ROOM1, ROOM1, Identity.DIFFERENT))
    with pytest.raises(StoreError):
        IdentityPair(ROOM, ROOM1, Identity.SAME)


def test_stale_flag_lifecycle():
    s = create_store("t")
    assert s.stale
    synchronise_reasoner(s)
    assert not s.stale
    s.retract_axiom(Axiom(E.SUPER, ROOM, LOCATION))  # absent: no mutation
    assert not s.stale
    s.assert_axiom(Axiom(E.SUPER, ROOM, LOCATION))
    assert s.stale
    synchronise_reasoner(s)
    s.assert_axiom(Axiom(E.SUPER, ROOM, LOCATION))  # already present
    assert not s.stale
    s.set_characteristic(IS_LINKED, Characteristic.TRANSITIVE)
    assert s.stale


def _scan(store, subject, expr):
    return {ax.obj for ax in store.axioms if ax.subject == subject and ax.expression is expr}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_enumerate_matches_full_scan(seed):
    s, _ = random_store(seed)
    for ax in s.axioms:
        assert s.enumerate(ax.subject, ax.expression) == _scan(s, ax.subject, ax.expression)
    # every referenced entity is declared
    for ax in s.axioms:
        assert ax.subject in s.declarations


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(0, 10_000))
def test_assert_then_retract_restores(seed, pick):
    s, _ = random_store(seed)
    other, _ = random_store(pick)
    candidates = sorted(other.axioms - s.axioms, key=Axiom.key)
    if not candidates:
        return
    ax = candidates[pick % len(candidates)]
    before = s.axioms
    s.assert_axiom(ax)
    s.retract_axiom(ax)
    assert s.axioms == before


def test_copy_is_independent():
    s = create_store("t")
    s.assert_axiom(Axiom(E.SUPER, ROOM, LOCATION))
    c = s.copy()
    c.retract_axiom(Axiom(E.SUPER, ROOM, LOCATION))
    assert Axiom(E.SUPER, ROOM, LOCATION) in s
    assert c.state() != s.state()


def test_literal_helper():
    assert literal(24) == Literal.of(24)
