import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from descriptorkb.entities import (
    NOTHING,
    ONLY,
    SOME,
    THING,
    TOP_OBJECT_PROPERTY,
    WILDCARD,
    XSD_BOOLEAN,
    XSD_DECIMAL,
    XSD_INTEGER,
    XSD_STRING,
    Axiom,
    BareClass,
    Cardinality,
    CardinalityKind,
    ClassCardinality,
    DataPair,
    DataRestriction,
    EntityKind,
    EntityRef,
    Expression,
    Literal,
    ObjectPair,
    ObjectRestriction,
    check_element,
    data_property,
    exact,
    expressions_for,
    individual,
    is_legal,
    max_,
    min_,
    mirror,
    object_property,
    owl_class,
    validate_axiom,
)

K = EntityKind
E = Expression

# The legal (ground kind, expression) table, written out independently of the implementation's copy.
TABLE_2 = {
    K.CLASS: ["Equivalent", "Disjoint", "Super", "Sub", "Instance", "EquivalentRestriction"],
    K.INDIVIDUAL: ["Type", "Equivalent", "Disjoint", "ObjectLink", "DataLink"],
    K.OBJECT_PROPERTY: ["Equivalent", "Disjoint", "Sub", "Super", "Inverse", "Domain", "Range"],
    K.DATA_PROPERTY: ["Equivalent", "Disjoint", "Sub", "Super", "Domain", "Range"],
}

ROOM, LOCATION, DOOR = owl_class("ROOM"), owl_class("LOCATION"), owl_class("DOOR")
ROOM1 = individual("Room1")
HAS_DOOR, IS_LINKED = object_property("hasDoor"), object_property("isLinkedTo")
HAS_TEMP = data_property("hasTemperature")

SAMPLES = {
    K.CLASS: owl_class("A"),
    K.INDIVIDUAL: individual("a"),
    K.OBJECT_PROPERTY: object_property("p"),
    K.DATA_PROPERTY: data_property("d"),
}


def sample_element(kind, expr_name):
    """A well-shaped element for a legal row, built from the table's element column."""
    shape = {
        ("Instance",): SAMPLES[K.INDIVIDUAL],
        ("ObjectLink",): ObjectPair(SAMPLES[K.OBJECT_PROPERTY], individual("b")),
        ("DataLink",): DataPair(SAMPLES[K.DATA_PROPERTY], Literal.of(3)),
        ("Type",): owl_class("B"),
        ("EquivalentRestriction",): BareClass(owl_class("B")),
        ("Domain",): BareClass(owl_class("B")),
        ("Range",): BareClass(owl_class("B")),
    }.get((expr_name,))
    if shape is not None:
        return shape
    # same-kind element for Equivalent/Disjoint/Sub/Super/Inverse
    other = {K.CLASS: owl_class("B"), K.INDIVIDUAL: individual("b"),
             K.OBJECT_PROPERTY: object_property("q"), K.DATA_PROPERTY: data_property("e")}
    return other[kind]


def test_table_has_24_rows():
    assert sum(len(v) for v in TABLE_2.values()) == 24
    for kind, names in TABLE_2.items():
        assert [e.value for e in expressions_for(kind)] == names


@pytest.mark.parametrize("kind,expr", list(itertools.product(TABLE_2, list(Expression))))
def test_every_row_exhaustively(kind, expr):
    legal = expr.value in TABLE_2[kind]
    assert is_legal(kind, expr) is legal
    if legal:
        assert validate_axiom(Axiom(expr, SAMPLES[kind], sample_element(kind, expr.value)))
    else:
        # any element at all is rejected for an illegal row
        for element in [owl_class("B"), individual("b"), BareClass(owl_class("B"))]:
            assert not validate_axiom(Axiom(expr, SAMPLES[kind], element))


def test_every_expression_has_a_ground_kind():
    for expr in Expression:
        assert any(is_legal(k, expr) for k in TABLE_2)


def test_datatype_is_never_a_ground():
    assert not validate_axiom(Axiom(E.SUPER, EntityRef(K.DATATYPE, "xsd:integer"), XSD_STRING))


def test_instance_subject_first():
    assert validate_axiom(Axiom(E.INSTANCE, ROOM, ROOM1))


def test_type_on_class_ground_message():
    result = validate_axiom(Axiom(E.TYPE, ROOM, ROOM1))
    assert not result
    assert result.reason == "Type requires NamedIndividual ground"


def test_wildcard_not_storable():
    ax = Axiom(E.OBJECT_LINK, ROOM1, ObjectPair(IS_LINKED, WILDCARD))
    result = validate_axiom(ax)
    assert not result and result.reason == "wildcard not storable"
    assert check_element(K.INDIVIDUAL, E.OBJECT_LINK, ax.obj, allow_wildcard=True)
    assert not validate_axiom(Axiom(E.DATA_LINK, ROOM1, DataPair(HAS_TEMP, WILDCARD)))


def test_element_kind_mismatches():
    assert not validate_axiom(Axiom(E.SUPER, ROOM, ROOM1))
    assert not validate_axiom(Axiom(E.OBJECT_LINK, ROOM1, ObjectPair(HAS_TEMP, ROOM1)))
    assert not validate_axiom(Axiom(E.OBJECT_LINK, ROOM1, ObjectPair(IS_LINKED, ROOM)))
    assert not validate_axiom(Axiom(E.DATA_LINK, ROOM1, DataPair(HAS_TEMP, ROOM1)))
    assert not validate_axiom(Axiom(E.OBJECT_LINK, ROOM1, ObjectPair(TOP_OBJECT_PROPERTY, ROOM1)))
    assert not validate_axiom("not an axiom")


def test_restriction_shapes():
    ok = [
        BareClass(LOCATION),
        ObjectRestriction(min_(2), HAS_DOOR, DOOR),
        DataRestriction(SOME, HAS_TEMP, XSD_INTEGER),
        ClassCardinality(exact(1), DOOR),
    ]
    for r in ok:
        assert validate_axiom(Axiom(E.EQUIVALENT_RESTRICTION, owl_class("CORRIDOR"), r)), r
    bad = [
        BareClass(ROOM1),
        ObjectRestriction(SOME, HAS_TEMP, DOOR),
        ObjectRestriction(SOME, HAS_DOOR, ROOM1),
        ObjectRestriction(SOME, TOP_OBJECT_PROPERTY, DOOR),
        DataRestriction(SOME, HAS_DOOR, XSD_INTEGER),
        DataRestriction(SOME, HAS_TEMP, EntityRef(K.DATATYPE, "xsd:dateTime")),
        ClassCardinality(SOME, ROOM1),
    ]
    for r in bad:
        assert not validate_axiom(Axiom(E.EQUIVALENT_RESTRICTION, owl_class("CORRIDOR"), r)), r


def test_individual_not_different_from_itself():
    assert not validate_axiom(Axiom(E.DISJOINT, ROOM1, ROOM1))
    assert validate_axiom(Axiom(E.EQUIVALENT, ROOM1, ROOM1))


def test_cardinality_invariants():
    assert str(min_(2)) == "min 2"
    with pytest.raises(ValueError):
        min_(0)
    with pytest.raises(ValueError):
        Cardinality(CardinalityKind.SOME, 1)
    with pytest.raises(ValueError):
        Cardinality(CardinalityKind.MAX)
    assert ONLY.n is None


def test_restriction_rendering():
    assert str(ObjectRestriction(min_(2), HAS_DOOR, DOOR)) == "ObjectMinCardinality(2 :hasDoor :DOOR)"
    assert str(ClassCardinality(max_(1), DOOR)) == "ObjectMaxCardinality(1 owl:topObjectProperty :DOOR)"
    assert str(BareClass(DOOR)) == ":DOOR"


def test_literals():
    assert Literal.of(24) == Literal("24", XSD_INTEGER)
    assert Literal("+024", XSD_INTEGER).lexical == "24"
    assert Literal.of(True) == Literal("1", XSD_BOOLEAN)
    assert Literal.of("1.5").datatype == XSD_DECIMAL
    assert Literal.of("hello").datatype == XSD_STRING
    assert str(Literal.of(24)) == '"24"^^xsd:integer'
    assert str(Literal('say "hi"')) == '"say \\"hi\\""^^xsd:string'
    for lex, dt in [("2.5", XSD_INTEGER), ("maybe", XSD_BOOLEAN), ("1e3", XSD_DECIMAL)]:
        with pytest.raises(ValueError):
            Literal(lex, dt)


@given(st.integers())
def test_integer_literals_canonical(n):
    assert Literal(str(n), XSD_INTEGER) == Literal.of(n)


def test_entity_names():
    assert ROOM.iri == ":ROOM" and ROOM.name == "ROOM"
    assert THING.name == "Thing" and NOTHING.prefix == "owl:"
    assert EntityRef(K.CLASS, "<http://x.org/o#A>").name == "A"
    with pytest.raises(ValueError):
        EntityRef(K.CLASS, "")
    # mixed kinds sort without error
    assert sorted([ROOM1, ROOM, HAS_DOOR])


def test_mirror_pairs():
    assert mirror(Axiom(E.SUPER, ROOM, LOCATION)) == Axiom(E.SUB, LOCATION, ROOM)
    assert mirror(Axiom(E.INSTANCE, ROOM, ROOM1)) == Axiom(E.TYPE, ROOM1, ROOM)
    assert mirror(Axiom(E.INVERSE, HAS_DOOR, IS_LINKED)) == Axiom(E.INVERSE, IS_LINKED, HAS_DOOR)
    assert mirror(Axiom(E.DOMAIN, HAS_DOOR, BareClass(LOCATION))) is None


def test_expression_parse():
    assert Expression.parse("super") is E.SUPER
    assert Expression.parse("EQUIVALENT_RESTRICTION") is E.EQUIVALENT_RESTRICTION
    with pytest.raises(ValueError):
        Expression.parse("Nope")
