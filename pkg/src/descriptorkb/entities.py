"""Entities, restrictions, entity-set elements and axioms.

Everything here is an immutable value.  Axioms are stored ground-first:
the ``subject`` is the entity a descriptor would be grounded on and the
``obj`` is one element of that descriptor's entity set for the axiom's
expression.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from typing import Optional, Union

DEFAULT_PREFIX = ":"


class EntityKind(str, enum.Enum):
    CLASS = "Class"
    INDIVIDUAL = "NamedIndividual"
    OBJECT_PROPERTY = "ObjectProperty"
    DATA_PROPERTY = "DataProperty"
    DATATYPE = "Datatype"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, order=True)
class EntityRef:
    """A named entity, identified by ``prefix:local`` (or ``<full-iri>``)."""

    kind: EntityKind
    iri: str

    def __post_init__(self):
        if not isinstance(self.kind, EntityKind):
            raise TypeError(f"kind must be an EntityKind, got {self.kind!r}")
        if not self.iri or not isinstance(self.iri, str):
            raise ValueError("entity IRI must be a non-empty string")

    @property
    def name(self) -> str:
        """Local part of the identifier (``:ROOM`` -> ``ROOM``)."""
        if self.iri.startswith("<"):
            body = self.iri[1:-1]
            return re.split(r"[#/]", body)[-1] or body
        return self.iri.split(":", 1)[1] if ":" in self.iri else self.iri

    @property
    def prefix(self) -> str:
        if self.iri.startswith("<") or ":" not in self.iri:
            return ""
        return self.iri.split(":", 1)[0] + ":"

    def __str__(self) -> str:
        return self.iri


def qualify(name: str, prefix: str = DEFAULT_PREFIX) -> str:
    """Attach ``prefix`` to a bare local name; prefixed names pass through."""
    if not name:
        raise ValueError("empty entity name")
    if name.startswith("<") or ":" in name:
        return name
    return prefix + name


def owl_class(name: str) -> EntityRef:
    return EntityRef(EntityKind.CLASS, qualify(name))


def individual(name: str) -> EntityRef:
    return EntityRef(EntityKind.INDIVIDUAL, qualify(name))


def object_property(name: str) -> EntityRef:
    return EntityRef(EntityKind.OBJECT_PROPERTY, qualify(name))


def data_property(name: str) -> EntityRef:
    return EntityRef(EntityKind.DATA_PROPERTY, qualify(name))


def datatype(name: str) -> EntityRef:
    return EntityRef(EntityKind.DATATYPE, qualify(name, "xsd:"))


def entity(kind: EntityKind, name: Union[str, EntityRef]) -> EntityRef:
    """Coerce ``name`` to a ref of ``kind``; refs of another kind are rejected."""
    if isinstance(name, EntityRef):
        if name.kind is not kind:
            raise ValueError(f"{name} is a {name.kind}, expected {kind}")
        return name
    prefix = "xsd:" if kind is EntityKind.DATATYPE else DEFAULT_PREFIX
    return EntityRef(kind, qualify(name, prefix))


THING = EntityRef(EntityKind.CLASS, "owl:Thing")
NOTHING = EntityRef(EntityKind.CLASS, "owl:Nothing")
# Reserved property slot used to encode cardinality-over-class restrictions.
TOP_OBJECT_PROPERTY = EntityRef(EntityKind.OBJECT_PROPERTY, "owl:topObjectProperty")

XSD_INTEGER = EntityRef(EntityKind.DATATYPE, "xsd:integer")
XSD_DECIMAL = EntityRef(EntityKind.DATATYPE, "xsd:decimal")
XSD_BOOLEAN = EntityRef(EntityKind.DATATYPE, "xsd:boolean")
XSD_STRING = EntityRef(EntityKind.DATATYPE, "xsd:string")
SUPPORTED_DATATYPES = frozenset({XSD_INTEGER, XSD_DECIMAL, XSD_BOOLEAN, XSD_STRING})

_INTEGER_RE = re.compile(r"[+-]?[0-9]+\Z")
_DECIMAL_RE = re.compile(r"[+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+)\Z")


@dataclass(frozen=True, order=True)
class Literal:
    """A typed literal.  Integer and boolean lexicals are kept canonical."""

    lexical: str
    datatype: EntityRef = XSD_STRING

    def __post_init__(self):
        dt = self.datatype
        if dt not in SUPPORTED_DATATYPES:
            raise ValueError(f"unsupported datatype {dt}")
        lex = self.lexical
        if not isinstance(lex, str):
            raise TypeError("literal lexical form must be a string")
        if dt == XSD_INTEGER:
            if not _INTEGER_RE.match(lex):
                raise ValueError(f"{lex!r} is not a valid xsd:integer")
            object.__setattr__(self, "lexical", str(int(lex)))
        elif dt == XSD_DECIMAL:
            if not _DECIMAL_RE.match(lex):
                raise ValueError(f"{lex!r} is not a valid xsd:decimal")
        elif dt == XSD_BOOLEAN:
            if lex not in ("true", "false", "1", "0"):
                raise ValueError(f"{lex!r} is not a valid xsd:boolean")
            object.__setattr__(self, "lexical", "true" if lex in ("true", "1") else "false")

    @classmethod
    def of(cls, value) -> "Literal":
        """Build a literal, inferring the datatype from the value's shape."""
        if isinstance(value, Literal):
            return value
        if isinstance(value, bool):
            return cls("true" if value else "false", XSD_BOOLEAN)
        if isinstance(value, int):
            return cls(str(value), XSD_INTEGER)
        if isinstance(value, (float, Decimal)):
            try:
                text = format(Decimal(str(value)), "f")
            except InvalidOperation as exc:
                raise ValueError(f"cannot represent {value!r} as xsd:decimal") from exc
            return cls(text, XSD_DECIMAL)
        text = str(value)
        if _INTEGER_RE.match(text):
            return cls(text, XSD_INTEGER)
        if _DECIMAL_RE.match(text):
            return cls(text, XSD_DECIMAL)
        if text in ("true", "false"):
            return cls(text, XSD_BOOLEAN)
        return cls(text, XSD_STRING)

    def __str__(self) -> str:
        escaped = self.lexical.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"^^{self.datatype.iri}'


class Expression(enum.Enum):
    EQUIVALENT = "Equivalent"
    DISJOINT = "Disjoint"
    SUPER = "Super"
    SUB = "Sub"
    INSTANCE = "Instance"
    EQUIVALENT_RESTRICTION = "EquivalentRestriction"
    TYPE = "Type"
    OBJECT_LINK = "ObjectLink"
    DATA_LINK = "DataLink"
    INVERSE = "Inverse"
    DOMAIN = "Domain"
    RANGE = "Range"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, text: str) -> "Expression":
        for member in cls:
            if text.lower() in (member.value.lower(), member.name.lower()):
                return member
        raise ValueError(f"unknown expression kind {text!r}")


class CardinalityKind(enum.Enum):
    SOME = "some"
    ONLY = "only"
    MIN = "min"
    MAX = "max"
    EXACT = "exact"


@dataclass(frozen=True, order=True)
class Cardinality:
    kind: CardinalityKind
    n: Optional[int] = None

    def __post_init__(self):
        if self.kind in (CardinalityKind.SOME, CardinalityKind.ONLY):
            if self.n is not None:
                raise ValueError(f"'{self.kind.value}' takes no number")
        else:
            if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
                raise ValueError(f"'{self.kind.value}' needs a positive integer, got {self.n!r}")

    def __str__(self) -> str:
        return self.kind.value if self.n is None else f"{self.kind.value} {self.n}"


SOME = Cardinality(CardinalityKind.SOME)
ONLY = Cardinality(CardinalityKind.ONLY)


def min_(n: int) -> Cardinality:
    return Cardinality(CardinalityKind.MIN, n)


def max_(n: int) -> Cardinality:
    return Cardinality(CardinalityKind.MAX, n)


def exact(n: int) -> Cardinality:
    return Cardinality(CardinalityKind.EXACT, n)


_OBJECT_FORMS = {
    CardinalityKind.SOME: "ObjectSomeValuesFrom",
    CardinalityKind.ONLY: "ObjectAllValuesFrom",
    CardinalityKind.MIN: "ObjectMinCardinality",
    CardinalityKind.MAX: "ObjectMaxCardinality",
    CardinalityKind.EXACT: "ObjectExactCardinality",
}
_DATA_FORMS = {
    CardinalityKind.SOME: "DataSomeValuesFrom",
    CardinalityKind.ONLY: "DataAllValuesFrom",
    CardinalityKind.MIN: "DataMinCardinality",
    CardinalityKind.MAX: "DataMaxCardinality",
    CardinalityKind.EXACT: "DataExactCardinality",
}
OBJECT_FORM_KINDS = {v: k for k, v in _OBJECT_FORMS.items()}
DATA_FORM_KINDS = {v: k for k, v in _DATA_FORMS.items()}


def _restriction_text(forms, card: Cardinality, prop: EntityRef, filler: EntityRef) -> str:
    head = forms[card.kind]
    if card.n is None:
        return f"{head}({prop} {filler})"
    return f"{head}({card.n} {prop} {filler})"


@dataclass(frozen=True, order=True)
class BareClass:
    cls: EntityRef

    def __str__(self) -> str:
        return str(self.cls)


@dataclass(frozen=True, order=True)
class ClassCardinality:
    cardinality: Cardinality
    cls: EntityRef

    def __str__(self) -> str:
        return _restriction_text(_OBJECT_FORMS, self.cardinality, TOP_OBJECT_PROPERTY, self.cls)


@dataclass(frozen=True, order=True)
class ObjectRestriction:
    cardinality: Cardinality
    prop: EntityRef
    filler: EntityRef

    def __str__(self) -> str:
        return _restriction_text(_OBJECT_FORMS, self.cardinality, self.prop, self.filler)


@dataclass(frozen=True, order=True)
class DataRestriction:
    cardinality: Cardinality
    prop: EntityRef
    filler: EntityRef

    def __str__(self) -> str:
        return _restriction_text(_DATA_FORMS, self.cardinality, self.prop, self.filler)


Restriction = Union[BareClass, ClassCardinality, ObjectRestriction, DataRestriction]
RESTRICTION_TYPES = (BareClass, ClassCardinality, ObjectRestriction, DataRestriction)


class _Wildcard:
    """Placeholder filler: 'this property, whatever its values are'."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "WILDCARD"

    def __str__(self) -> str:
        return "*"

    def __reduce__(self):
        return (_Wildcard, ())


WILDCARD = _Wildcard()


@dataclass(frozen=True)
class ObjectPair:
    prop: EntityRef
    value: Union[EntityRef, _Wildcard]

    @property
    def is_wildcard(self) -> bool:
        return self.value is WILDCARD

    def __str__(self) -> str:
        return f"{self.prop} {self.value}"


@dataclass(frozen=True)
class DataPair:
    prop: EntityRef
    value: Union[Literal, _Wildcard]

    @property
    def is_wildcard(self) -> bool:
        return self.value is WILDCARD

    def __str__(self) -> str:
        return f"{self.prop} {self.value}"


Element = Union[EntityRef, ObjectPair, DataPair, Restriction]


def is_wildcard(element) -> bool:
    return isinstance(element, (ObjectPair, DataPair)) and element.value is WILDCARD


def element_key(element) -> tuple:
    """Canonical ordering key for entity-set elements."""
    return (str(element), type(element).__name__)


def sort_elements(elements) -> list:
    return sorted(elements, key=element_key)


@dataclass(frozen=True)
class Axiom:
    expression: Expression
    subject: EntityRef
    obj: Element

    def __str__(self) -> str:
        return f"{self.expression}({self.subject} | {self.obj})"

    def key(self) -> tuple:
        return (self.expression.value, self.subject.iri, str(self.obj), type(self.obj).__name__)


# ---------------------------------------------------------------------------
# Table of legal (ground kind, expression) rows and their element shapes.

_C, _I, _OP, _DP = (
    EntityKind.CLASS,
    EntityKind.INDIVIDUAL,
    EntityKind.OBJECT_PROPERTY,
    EntityKind.DATA_PROPERTY,
)
E = Expression

# Element shape tags.
ENTITY_CLASS = "Class"
ENTITY_INDIVIDUAL = "NamedIndividual"
ENTITY_OBJECT_PROPERTY = "ObjectProperty"
ENTITY_DATA_PROPERTY = "DataProperty"
OBJECT_PAIR = "ObjectPair"
DATA_PAIR = "DataPair"
RESTRICTION = "Restriction"

TABLE: dict[tuple[EntityKind, Expression], str] = {
    (_C, E.EQUIVALENT): ENTITY_CLASS,
    (_C, E.DISJOINT): ENTITY_CLASS,
    (_C, E.SUPER): ENTITY_CLASS,
    (_C, E.SUB): ENTITY_CLASS,
    (_C, E.INSTANCE): ENTITY_INDIVIDUAL,
    (_C, E.EQUIVALENT_RESTRICTION): RESTRICTION,
    (_I, E.TYPE): ENTITY_CLASS,
    (_I, E.EQUIVALENT): ENTITY_INDIVIDUAL,
    (_I, E.DISJOINT): ENTITY_INDIVIDUAL,
    (_I, E.OBJECT_LINK): OBJECT_PAIR,
    (_I, E.DATA_LINK): DATA_PAIR,
    (_OP, E.EQUIVALENT): ENTITY_OBJECT_PROPERTY,
    (_OP, E.DISJOINT): ENTITY_OBJECT_PROPERTY,
    (_OP, E.SUB): ENTITY_OBJECT_PROPERTY,
    (_OP, E.SUPER): ENTITY_OBJECT_PROPERTY,
    (_OP, E.INVERSE): ENTITY_OBJECT_PROPERTY,
    (_OP, E.DOMAIN): RESTRICTION,
    (_OP, E.RANGE): RESTRICTION,
    (_DP, E.EQUIVALENT): ENTITY_DATA_PROPERTY,
    (_DP, E.DISJOINT): ENTITY_DATA_PROPERTY,
    (_DP, E.SUB): ENTITY_DATA_PROPERTY,
    (_DP, E.SUPER): ENTITY_DATA_PROPERTY,
    (_DP, E.DOMAIN): RESTRICTION,
    (_DP, E.RANGE): RESTRICTION,
}

GROUND_KINDS = (_C, _I, _OP, _DP)

_ENTITY_SHAPES = {
    ENTITY_CLASS: _C,
    ENTITY_INDIVIDUAL: _I,
    ENTITY_OBJECT_PROPERTY: _OP,
    ENTITY_DATA_PROPERTY: _DP,
}


def expressions_for(kind: EntityKind) -> tuple[Expression, ...]:
    return tuple(e for (k, e) in TABLE if k is kind)


def is_legal(kind: EntityKind, expression: Expression) -> bool:
    return (kind, expression) in TABLE


def entity_kind_of_element(kind: EntityKind, expression: Expression) -> Optional[EntityKind]:
    """Entity kind of the elements for a row whose elements are plain entities."""
    return _ENTITY_SHAPES.get(TABLE.get((kind, expression)))


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


OK = ValidationResult(True)


def _fail(reason: str) -> ValidationResult:
    return ValidationResult(False, reason)


def _check_restriction(r) -> Optional[str]:
    if isinstance(r, BareClass):
        if r.cls.kind is not _C:
            return f"BareClass needs a Class, got {r.cls.kind}"
    elif isinstance(r, ClassCardinality):
        if r.cls.kind is not _C:
            return f"class cardinality needs a Class, got {r.cls.kind}"
    elif isinstance(r, ObjectRestriction):
        if r.prop.kind is not _OP:
            return f"object restriction needs an ObjectProperty, got {r.prop.kind}"
        if r.prop == TOP_OBJECT_PROPERTY:
            return f"{TOP_OBJECT_PROPERTY} is reserved for class cardinalities"
        if r.filler.kind is not _C:
            return f"object restriction filler must be a Class, got {r.filler.kind}"
    elif isinstance(r, DataRestriction):
        if r.prop.kind is not _DP:
            return f"data restriction needs a DataProperty, got {r.prop.kind}"
        if r.filler not in SUPPORTED_DATATYPES:
            return f"data restriction filler must be a supported Datatype, got {r.filler}"
    else:
        return f"not a restriction: {r!r}"
    if not isinstance(getattr(r, "cardinality", SOME), Cardinality):
        return "restriction cardinality must be a Cardinality"
    return None


def check_element(kind: EntityKind, expression: Expression, element, *, allow_wildcard: bool = False) -> ValidationResult:
    """Check that ``element`` fits the entity-set shape of the (kind, expression) row."""
    shape = TABLE.get((kind, expression))
    if shape is None:
        grounds = [k.value for k in GROUND_KINDS if (k, expression) in TABLE]
        return _fail(f"{expression} requires {' or '.join(grounds)} ground")
    if shape in _ENTITY_SHAPES:
        want = _ENTITY_SHAPES[shape]
        if not isinstance(element, EntityRef) or element.kind is not want:
            return _fail(f"{expression} on a {kind} ground needs a {want} element, got {element!r}")
        return OK
    if shape == OBJECT_PAIR:
        if not isinstance(element, ObjectPair):
            return _fail(f"ObjectLink needs an object pair, got {element!r}")
        if not isinstance(element.prop, EntityRef) or element.prop.kind is not _OP:
            return _fail("ObjectLink pair needs an ObjectProperty")
        if element.prop == TOP_OBJECT_PROPERTY:
            return _fail(f"{TOP_OBJECT_PROPERTY} is reserved")
        if element.value is WILDCARD:
            return OK if allow_wildcard else _fail("wildcard not storable")
        if not isinstance(element.value, EntityRef) or element.value.kind is not _I:
            return _fail("ObjectLink pair value must be a NamedIndividual")
        return OK
    if shape == DATA_PAIR:
        if not isinstance(element, DataPair):
            return _fail(f"DataLink needs a data pair, got {element!r}")
        if not isinstance(element.prop, EntityRef) or element.prop.kind is not _DP:
            return _fail("DataLink pair needs a DataProperty")
        if element.value is WILDCARD:
            return OK if allow_wildcard else _fail("wildcard not storable")
        if not isinstance(element.value, Literal):
            return _fail("DataLink pair value must be a Literal")
        return OK
    # RESTRICTION
    problem = _check_restriction(element)
    return _fail(problem) if problem else OK


def validate_axiom(axiom: Axiom) -> ValidationResult:
    """Total, side-effect free validity check of one axiom."""
    if not isinstance(axiom, Axiom):
        return _fail(f"not an axiom: {axiom!r}")
    subject = axiom.subject
    if not isinstance(subject, EntityRef):
        return _fail("axiom subject must be an entity")
    if subject.kind not in GROUND_KINDS:
        return _fail(f"{subject.kind} cannot be a ground")
    result = check_element(subject.kind, axiom.expression, axiom.obj)
    if not result:
        return result
    if subject.kind is _I and axiom.expression is E.DISJOINT and axiom.obj == subject:
        return _fail("an individual cannot be different from itself")
    return OK


# Expressions that describe the same OWL axiom from the other end.
_MIRRORS = {
    (_C, E.SUPER): E.SUB,
    (_C, E.SUB): E.SUPER,
    (_OP, E.SUPER): E.SUB,
    (_OP, E.SUB): E.SUPER,
    (_DP, E.SUPER): E.SUB,
    (_DP, E.SUB): E.SUPER,
    (_C, E.EQUIVALENT): E.EQUIVALENT,
    (_C, E.DISJOINT): E.DISJOINT,
    (_I, E.EQUIVALENT): E.EQUIVALENT,
    (_I, E.DISJOINT): E.DISJOINT,
    (_OP, E.EQUIVALENT): E.EQUIVALENT,
    (_OP, E.DISJOINT): E.DISJOINT,
    (_OP, E.INVERSE): E.INVERSE,
    (_DP, E.EQUIVALENT): E.EQUIVALENT,
    (_DP, E.DISJOINT): E.DISJOINT,
    (_C, E.INSTANCE): E.TYPE,
    (_I, E.TYPE): E.INSTANCE,
}


def mirror(axiom: Axiom) -> Optional[Axiom]:
    """The same statement seen from the element's side, if it has one."""
    flipped = _MIRRORS.get((axiom.subject.kind, axiom.expression))
    if flipped is None:
        return None
    return Axiom(flipped, axiom.obj, axiom.subject)
