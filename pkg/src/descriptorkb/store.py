"""In-memory axiom store.

The asserted axiom set is kept closed under :func:`entities.mirror`: asserting
``Super(ROOM, LOCATION)`` also records ``Sub(LOCATION, ROOM)``, because both are
views of the single OWL statement ``SubClassOf(ROOM LOCATION)``.  Retraction
removes both views.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Union

from .entities import (
    NOTHING,
    THING,
    SUPPORTED_DATATYPES,
    Axiom,
    DataPair,
    DataRestriction,
    EntityKind,
    EntityRef,
    Expression,
    Literal,
    ObjectPair,
    ObjectRestriction,
    BareClass,
    ClassCardinality,
    entity,
    is_legal,
    mirror,
    validate_axiom,
)

DEFAULT_BASE = "http://example.org/onto#"


class StoreError(ValueError):
    """Raised for invalid store operations (bad axioms, bad arguments)."""


class ChangeStatus(enum.Enum):
    ADDED = "added"
    ALREADY_PRESENT = "already present"
    REMOVED = "removed"
    ABSENT = "absent"

    @property
    def changed(self) -> bool:
        return self in (ChangeStatus.ADDED, ChangeStatus.REMOVED)

    def __str__(self) -> str:
        return self.value


class Characteristic(enum.Enum):
    TRANSITIVE = "transitive"
    SYMMETRIC = "symmetric"


class Identity(enum.Enum):
    SAME = "Same"
    DIFFERENT = "Different"


@dataclass(frozen=True)
class IdentityPair:
    a: EntityRef
    b: EntityRef
    relation: Identity

    def __post_init__(self):
        for x in (self.a, self.b):
            if not isinstance(x, EntityRef) or x.kind is not EntityKind.INDIVIDUAL:
                raise StoreError(f"identity pairs relate individuals, got {x!r}")
        # unordered: normalise the order
        if self.b < self.a:
            a, b = self.b, self.a
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)


def _entities_in(axiom: Axiom) -> Iterable[EntityRef]:
    yield axiom.subject
    obj = axiom.obj
    if isinstance(obj, EntityRef):
        yield obj
    elif isinstance(obj, ObjectPair):
        yield obj.prop
        yield obj.value
    elif isinstance(obj, DataPair):
        yield obj.prop
        yield obj.value.datatype
    elif isinstance(obj, BareClass):
        yield obj.cls
    elif isinstance(obj, ClassCardinality):
        yield obj.cls
    elif isinstance(obj, (ObjectRestriction, DataRestriction)):
        yield obj.prop
        yield obj.filler


# Always declared; never written out.
BUILTINS = frozenset({THING, NOTHING} | SUPPORTED_DATATYPES)


class OntologyStore:
    """Asserted TBox/RBox/ABox content plus reasoner bookkeeping.

    Readers may share a store; writers must be serialised by the caller.
    """

    def __init__(self, name: str, prefixes=None, iri: Optional[str] = None, unique_names: bool = True):
        if not name:
            raise StoreError("store name must be non-empty")
        self.name = name
        self.iri = iri or f"http://example.org/{name}"
        self.prefixes = _prefix_map(prefixes)
        self.unique_names = unique_names
        self.declarations: set[EntityRef] = set(BUILTINS)
        self._axioms: set[Axiom] = set()
        self._index: dict[tuple[EntityRef, Expression], set] = defaultdict(set)
        self.characteristics: dict[EntityRef, set[Characteristic]] = {}
        self.stale = True
        self.snapshot = None
        self.revision = 0
        self.sync_count = 0

    def __repr__(self) -> str:
        return f"OntologyStore({self.name!r}, {len(self._axioms)} axioms)"

    # -- entity lookup -------------------------------------------------
    def declare(self, ref: EntityRef) -> bool:
        if ref in self.declarations:
            return False
        self.declarations.add(ref)
        self.revision += 1
        self.stale = True
        return True

    def resolve(self, kind: EntityKind, name: Union[str, EntityRef], *, declare: bool = True) -> EntityRef:
        """Turn a local name or prefixed IRI into a ref, auto-declaring it."""
        ref = entity(kind, name)
        if declare:
            self.declare(ref)
        return ref

    def entities(self, kind: EntityKind) -> list[EntityRef]:
        return sorted(e for e in self.declarations if e.kind is kind)

    def lookup(self, iri: str) -> list[EntityRef]:
        """All declared refs carrying ``iri`` (one per kind at most)."""
        return sorted(e for e in self.declarations if e.iri == iri)

    # -- axioms ----------------------------------------------------------
    @property
    def axioms(self) -> frozenset[Axiom]:
        return frozenset(self._axioms)

    def __len__(self) -> int:
        return len(self._axioms)

    def __contains__(self, axiom: Axiom) -> bool:
        return axiom in self._axioms

    contains = __contains__

    def _insert(self, axiom: Axiom) -> None:
        self._axioms.add(axiom)
        self._index[(axiom.subject, axiom.expression)].add(axiom.obj)
        for ref in _entities_in(axiom):
            self.declarations.add(ref)

    def _remove(self, axiom: Axiom) -> None:
        self._axioms.discard(axiom)
        bucket = self._index.get((axiom.subject, axiom.expression))
        if bucket is not None:
            bucket.discard(axiom.obj)
            if not bucket:
                del self._index[(axiom.subject, axiom.expression)]

    def assert_axiom(self, axiom: Axiom) -> ChangeStatus:
        result = validate_axiom(axiom)
        if not result:
            raise StoreError(result.reason)
        if axiom in self._axioms:
            return ChangeStatus.ALREADY_PRESENT
        self._insert(axiom)
        twin = mirror(axiom)
        if twin is not None:
            self._insert(twin)
        self.revision += 1
        self.stale = True
        return ChangeStatus.ADDED

    def retract_axiom(self, axiom: Axiom) -> ChangeStatus:
        if axiom not in self._axioms:
            return ChangeStatus.ABSENT
        self._remove(axiom)
        twin = mirror(axiom)
        if twin is not None:
            self._remove(twin)
        self.revision += 1
        self.stale = True
        return ChangeStatus.REMOVED

    def enumerate(self, subject: EntityRef, expression: Expression) -> frozenset:
        """Asserted entity set of ``subject`` for ``expression``; no inference."""
        if not is_legal(subject.kind, expression):
            raise StoreError(f"{expression} is not defined for a {subject.kind} ground")
        return frozenset(self._index.get((subject, expression), ()))

    # -- characteristics and identity -------------------------------------
    def set_characteristic(self, prop: EntityRef, flag: Characteristic, value: bool = True) -> ChangeStatus:
        if not isinstance(prop, EntityRef) or prop.kind is not EntityKind.OBJECT_PROPERTY:
            raise StoreError(f"characteristics apply to object properties, got {prop!r}")
        flag = Characteristic(flag)
        flags = self.characteristics.get(prop, set())
        if value == (flag in flags):
            return ChangeStatus.ALREADY_PRESENT if value else ChangeStatus.ABSENT
        self.declarations.add(prop)
        if value:
            self.characteristics.setdefault(prop, set()).add(flag)
        else:
            flags.discard(flag)
            if not flags:
                del self.characteristics[prop]
        self.revision += 1
        self.stale = True
        return ChangeStatus.ADDED if value else ChangeStatus.REMOVED

    def has_characteristic(self, prop: EntityRef, flag: Characteristic) -> bool:
        return flag in self.characteristics.get(prop, ())

    def assert_identity(self, pair: IdentityPair) -> ChangeStatus:
        if pair.a == pair.b:
            if pair.relation is Identity.DIFFERENT:
                raise StoreError(f"{pair.a} cannot be different from itself")
            self.declare(pair.a)
            return ChangeStatus.ALREADY_PRESENT
        expr = Expression.EQUIVALENT if pair.relation is Identity.SAME else Expression.DISJOINT
        return self.assert_axiom(Axiom(expr, pair.a, pair.b))

    @property
    def identity_pairs(self) -> frozenset[IdentityPair]:
        pairs = set()
        for ax in self._axioms:
            if ax.subject.kind is EntityKind.INDIVIDUAL and ax.expression in (Expression.EQUIVALENT, Expression.DISJOINT):
                if ax.subject == ax.obj:
                    continue
                rel = Identity.SAME if ax.expression is Expression.EQUIVALENT else Identity.DIFFERENT
                pairs.add(IdentityPair(ax.subject, ax.obj, rel))
        return frozenset(pairs)

    # -- reasoner bookkeeping ----------------------------------------------
    def publish(self, snapshot) -> None:
        self.snapshot = snapshot
        self.stale = False

    def state(self) -> tuple:
        """Hashable summary of the asserted content (for equality checks)."""
        chars = frozenset((p, c) for p, cs in self.characteristics.items() for c in cs)
        return (frozenset(self.declarations), frozenset(self._axioms), chars)

    def copy(self, name: Optional[str] = None) -> "OntologyStore":
        other = OntologyStore(name or self.name, dict(self.prefixes), self.iri, self.unique_names)
        other.declarations = set(self.declarations)
        for ax in self._axioms:
            other._insert(ax)
        other.characteristics = {p: set(cs) for p, cs in self.characteristics.items()}
        return other


def _prefix_map(prefixes) -> dict[str, str]:
    if prefixes is None:
        prefixes = {":": DEFAULT_BASE}
    items = prefixes.items() if isinstance(prefixes, Mapping) else prefixes
    out: dict[str, str] = {}
    for key, base in items:
        if key in out:
            raise StoreError(f"duplicate prefix {key!r}")
        out[key] = base
    return out


def create_store(name: str, prefixes=None, iri: Optional[str] = None, unique_names: bool = True) -> OntologyStore:
    """New empty store holding only the THING/NOTHING declarations.

    ``prefixes`` is a mapping or an iterable of ``(prefix, base)`` pairs;
    repeated prefixes are an error.
    """
    return OntologyStore(name, prefixes, iri, unique_names)


def literal(value) -> Literal:
    return Literal.of(value)
