"""Descriptors: a ground entity plus local entity sets, synchronised by hand.

A descriptor never talks to the reasoner.  ``query`` reads the last
published snapshot (or the asserted axioms when there is none),
``read_axioms`` copies that view into the local sets and ``write_axioms``
pushes the local sets into the store's asserted axioms.  Both return
:class:`MappingIntent` lists that :func:`undo_intents` can invert.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Union

from .entities import (
    DATA_PAIR,
    OBJECT_PAIR,
    RESTRICTION,
    TABLE,
    WILDCARD,
    Axiom,
    BareClass,
    DataPair,
    EntityKind,
    EntityRef,
    Expression,
    Literal,
    ObjectPair,
    check_element,
    element_key,
    entity_kind_of_element,
    is_legal,
    is_wildcard,
    sort_elements,
    validate_axiom,
)
from .store import OntologyStore, StoreError

E = Expression
K = EntityKind


class DescriptorError(ValueError):
    pass


class SequenceConflict(DescriptorError):
    """The locus changed after the intents were produced."""


class Change(enum.Enum):
    ADDED = "Added"
    REMOVED = "Removed"
    SKIPPED = "Skipped"  # wildcard pin left out of a write; no effect

    def __str__(self) -> str:
        return self.value


class Locus(enum.Enum):
    DESCRIPTOR = "DescriptorState"
    ONTOLOGY = "OntologyState"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class MappingIntent:
    ground: EntityRef
    expression: Expression
    element: object
    change: Change
    locus: Locus
    sequence: int

    def inverse(self) -> "MappingIntent":
        flipped = {Change.ADDED: Change.REMOVED, Change.REMOVED: Change.ADDED}.get(self.change, self.change)
        return MappingIntent(self.ground, self.expression, self.element, flipped, self.locus, self.sequence)

    @property
    def axiom(self) -> Axiom:
        return Axiom(self.expression, self.ground, self.element)

    def __str__(self) -> str:
        return f"[{self.sequence}] {self.locus} {self.change} {self.expression}({self.ground} | {self.element})"


# -- profiles ---------------------------------------------------------------

FILLER = "filler"
PROPERTY = "property"


@dataclass(frozen=True)
class BuildTarget:
    profile: str
    via: str = FILLER


def built_kind(ground_kind: EntityKind, expression: Expression, via: str) -> Optional[EntityKind]:
    """Kind of the entities a build over (ground_kind, expression) grounds on."""
    shape = TABLE.get((ground_kind, expression))
    if shape == OBJECT_PAIR:
        return {FILLER: K.INDIVIDUAL, PROPERTY: K.OBJECT_PROPERTY}.get(via)
    if shape == DATA_PAIR:
        return K.DATA_PROPERTY if via == PROPERTY else None
    if shape == RESTRICTION:
        return None
    return entity_kind_of_element(ground_kind, expression) if via == FILLER else None


@dataclass(frozen=True)
class DescriptorProfile:
    """Which expressions a descriptor carries and what each one builds."""

    name: str
    ground_kind: EntityKind
    expressions: tuple[Expression, ...]
    build_targets: Mapping[Expression, BuildTarget] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "expressions", tuple(self.expressions))
        object.__setattr__(self, "build_targets", dict(self.build_targets))
        if not self.name:
            raise DescriptorError("profile name must be non-empty")
        if not self.expressions:
            raise DescriptorError(f"profile {self.name} has no expressions")
        if len(set(self.expressions)) != len(self.expressions):
            raise DescriptorError(f"profile {self.name} repeats an expression")
        for expr in self.expressions:
            if not is_legal(self.ground_kind, expr):
                raise DescriptorError(f"{expr} is not defined for a {self.ground_kind} ground")
        for expr, target in self.build_targets.items():
            if expr not in self.expressions:
                raise DescriptorError(f"build target for {expr}, which {self.name} does not carry")
            if built_kind(self.ground_kind, expr, target.via) is None:
                raise DescriptorError(f"{expr} cannot build via {target.via}")

    def __hash__(self):
        return hash((self.name, self.ground_kind, self.expressions))


PROFILES: dict[str, DescriptorProfile] = {}


def register_profile(profile: DescriptorProfile, *, replace: bool = False) -> DescriptorProfile:
    if profile.name in PROFILES and not replace:
        raise DescriptorError(f"profile {profile.name} already registered")
    PROFILES[profile.name] = profile
    return profile


def get_profile(profile: Union[str, DescriptorProfile]) -> DescriptorProfile:
    if isinstance(profile, DescriptorProfile):
        return profile
    try:
        return PROFILES[profile]
    except KeyError:
        raise DescriptorError(f"unknown profile {profile!r}") from None


def check_profiles(profiles: Optional[Iterable[DescriptorProfile]] = None) -> list[str]:
    """Problems with build targets (unknown profile or wrong ground kind)."""
    problems = []
    for p in profiles if profiles is not None else PROFILES.values():
        for expr, target in p.build_targets.items():
            other = PROFILES.get(target.profile)
            if other is None:
                problems.append(f"{p.name}.{expr}: unknown profile {target.profile}")
            elif other.ground_kind is not built_kind(p.ground_kind, expr, target.via):
                problems.append(f"{p.name}.{expr}: {target.profile} is grounded on {other.ground_kind}")
    return problems


def _t(name, via=FILLER):
    return BuildTarget(name, via)


# Maximal profiles: every legal expression for the ground kind.
for _p in (
    DescriptorProfile(
        "FullClass",
        K.CLASS,
        (E.EQUIVALENT, E.DISJOINT, E.SUPER, E.SUB, E.INSTANCE, E.EQUIVALENT_RESTRICTION),
        {E.EQUIVALENT: _t("FullClass"), E.DISJOINT: _t("FullClass"), E.SUPER: _t("FullClass"),
         E.SUB: _t("FullClass"), E.INSTANCE: _t("FullIndividual")},
    ),
    DescriptorProfile(
        "FullIndividual",
        K.INDIVIDUAL,
        (E.TYPE, E.EQUIVALENT, E.DISJOINT, E.OBJECT_LINK, E.DATA_LINK),
        {E.TYPE: _t("FullClass"), E.EQUIVALENT: _t("FullIndividual"), E.DISJOINT: _t("FullIndividual"),
         E.OBJECT_LINK: _t("FullIndividual"), E.DATA_LINK: _t("FullDataProperty", PROPERTY)},
    ),
    DescriptorProfile(
        "FullObjectProperty",
        K.OBJECT_PROPERTY,
        (E.EQUIVALENT, E.DISJOINT, E.SUB, E.SUPER, E.INVERSE, E.DOMAIN, E.RANGE),
        {E.EQUIVALENT: _t("FullObjectProperty"), E.DISJOINT: _t("FullObjectProperty"),
         E.SUB: _t("FullObjectProperty"), E.SUPER: _t("FullObjectProperty"), E.INVERSE: _t("FullObjectProperty")},
    ),
    DescriptorProfile(
        "FullDataProperty",
        K.DATA_PROPERTY,
        (E.EQUIVALENT, E.DISJOINT, E.SUB, E.SUPER, E.DOMAIN, E.RANGE),
        {E.EQUIVALENT: _t("FullDataProperty"), E.DISJOINT: _t("FullDataProperty"),
         E.SUB: _t("FullDataProperty"), E.SUPER: _t("FullDataProperty")},
    ),
    # Profiles used by the worked examples.
    DescriptorProfile(
        "LinkIndividual",
        K.INDIVIDUAL,
        (E.OBJECT_LINK, E.DATA_LINK),
        {E.OBJECT_LINK: _t("LinkIndividual"), E.DATA_LINK: _t("FullDataProperty", PROPERTY)},
    ),
    DescriptorProfile("TypeIndividual", K.INDIVIDUAL, (E.TYPE,), {E.TYPE: _t("SubClass")}),
    DescriptorProfile("SubClass", K.CLASS, (E.SUB, E.SUPER), {E.SUB: _t("SubClass"), E.SUPER: _t("SubClass")}),
    DescriptorProfile("DisjointClass", K.CLASS, (E.DISJOINT,), {E.DISJOINT: _t("DisjointClass")}),
    DescriptorProfile("DomainRangeObjectProperty", K.OBJECT_PROPERTY, (E.DOMAIN, E.RANGE)),
    DescriptorProfile(
        "SubInstanceClass",
        K.CLASS,
        (E.SUB, E.INSTANCE),
        {E.SUB: _t("SubInstanceClass"), E.INSTANCE: _t("TypeIndividual")},
    ),
):
    register_profile(_p)


# -- descriptors --------------------------------------------------------------


class QueryResult(frozenset):
    """Entity set returned by :meth:`Descriptor.query`.

    ``inferred`` is False when no snapshot was available (or reasoning is
    off) and the result is the asserted enumeration.
    """

    inferred: bool

    def __new__(cls, elements=(), inferred: bool = True):
        obj = super().__new__(cls, elements)
        obj.inferred = inferred
        return obj


_LINKS = (E.OBJECT_LINK, E.DATA_LINK)


class Descriptor:
    def __init__(
        self,
        profile: Union[str, DescriptorProfile],
        ground: Union[str, EntityRef],
        store: OntologyStore,
        *,
        reasoning: bool = True,
    ):
        self.profile = get_profile(profile)
        kind = self.profile.ground_kind
        if isinstance(ground, EntityRef):
            if ground.kind is not kind:
                raise DescriptorError(f"{self.profile.name} needs a {kind} ground, got {ground.kind} {ground}")
            store.declare(ground)
        else:
            ground = store.resolve(kind, ground)
        self._ground = ground
        self.store = store
        self.reasoning = reasoning
        self._sets: dict[Expression, set] = {e: set() for e in self.profile.expressions}
        # Properties pinned per link expression: reads/writes only touch these.
        self._scope: dict[Expression, set] = {e: set() for e in _LINKS if e in self._sets}
        self.revision = 0

    def __repr__(self) -> str:
        sets = ", ".join(f"{e}={len(s)}" for e, s in self._sets.items())
        return f"<{self.profile.name} {self._ground} {sets}>"

    # -- ground and local sets ----------------------------------------------
    @property
    def ground(self) -> EntityRef:
        return self._ground

    def get_ground(self) -> EntityRef:
        return self._ground

    @property
    def expressions(self) -> tuple[Expression, ...]:
        return self.profile.expressions

    def _check_expr(self, expression) -> Expression:
        expression = Expression.parse(expression) if isinstance(expression, str) else expression
        if expression not in self._sets:
            raise DescriptorError(f"{self.profile.name} does not carry {expression}")
        return expression

    def entities(self, expression) -> frozenset:
        """Read-only view of the local entity set."""
        return frozenset(self._sets[self._check_expr(expression)])

    def entity_sets(self) -> dict[Expression, frozenset]:
        return {e: frozenset(s) for e, s in self._sets.items()}

    def pins(self, expression) -> frozenset:
        return frozenset(self._scope.get(self._check_expr(expression), ()))

    def _coerce(self, expression: Expression, element):
        shape = TABLE[(self.profile.ground_kind, expression)]
        want = entity_kind_of_element(self.profile.ground_kind, expression)
        if want is not None and isinstance(element, str):
            return self.store.resolve(want, element, declare=False)
        if shape == RESTRICTION and isinstance(element, (str, EntityRef)):
            return BareClass(self.store.resolve(K.CLASS, element, declare=False))
        if shape == OBJECT_PAIR and isinstance(element, tuple):
            prop, value = element
            return self._object_pair(prop, value)
        if shape == DATA_PAIR and isinstance(element, tuple):
            prop, value = element
            return self._data_pair(prop, value)
        return element

    def _object_pair(self, prop, value) -> ObjectPair:
        prop = self.store.resolve(K.OBJECT_PROPERTY, prop, declare=False)
        if value is not WILDCARD:
            value = self.store.resolve(K.INDIVIDUAL, value, declare=False)
        return ObjectPair(prop, value)

    def _data_pair(self, prop, value) -> DataPair:
        prop = self.store.resolve(K.DATA_PROPERTY, prop, declare=False)
        if value is not WILDCARD and not isinstance(value, Literal):
            value = Literal.of(value)
        return DataPair(prop, value)

    def add(self, expression, element) -> bool:
        """Add to the local set only.  Wildcard pairs pin their property."""
        expression = self._check_expr(expression)
        element = self._coerce(expression, element)
        result = check_element(self.profile.ground_kind, expression, element, allow_wildcard=True)
        if not result:
            raise DescriptorError(result.reason)
        if is_wildcard(element):
            self._scope[expression].add(element.prop)
        local = self._sets[expression]
        if element in local:
            return False
        local.add(element)
        self.revision += 1
        return True

    def remove(self, expression, element) -> bool:
        """Remove from the local set; False when the element was absent."""
        expression = self._check_expr(expression)
        element = self._coerce(expression, element)
        if is_wildcard(element):
            self._scope[expression].discard(element.prop)
        local = self._sets[expression]
        if element not in local:
            return False
        local.discard(element)
        self.revision += 1
        return True

    def clear(self, expression=None) -> None:
        for expr in [self._check_expr(expression)] if expression is not None else list(self._sets):
            if self._sets[expr]:
                self._sets[expr].clear()
                self.revision += 1

    # Shortcuts named after the link expressions.
    def add_object(self, prop, value) -> bool:
        return self.add(E.OBJECT_LINK, self._object_pair(prop, value))

    def pin_object(self, prop) -> bool:
        """Read (and write) only this property's links from now on."""
        return self.add(E.OBJECT_LINK, self._object_pair(prop, WILDCARD))

    def unpin_object(self, prop) -> None:
        prop = self.store.resolve(K.OBJECT_PROPERTY, prop, declare=False)
        self._scope[self._check_expr(E.OBJECT_LINK)].discard(prop)
        self._sets[E.OBJECT_LINK].discard(ObjectPair(prop, WILDCARD))

    def remove_object(self, prop, value=None) -> int:
        """Remove one link, or every link through ``prop`` when value is None."""
        self._check_expr(E.OBJECT_LINK)
        if value is not None:
            return int(self.remove(E.OBJECT_LINK, self._object_pair(prop, value)))
        prop = self.store.resolve(K.OBJECT_PROPERTY, prop, declare=False)
        doomed = [x for x in self._sets[E.OBJECT_LINK] if x.prop == prop and not x.is_wildcard]
        for x in doomed:
            self.remove(E.OBJECT_LINK, x)
        return len(doomed)

    def objects(self, prop) -> list[EntityRef]:
        prop = self.store.resolve(K.OBJECT_PROPERTY, prop, declare=False)
        return sorted(x.value for x in self.entities(E.OBJECT_LINK) if x.prop == prop and not x.is_wildcard)

    def individual_from_object_prop(self, prop) -> Optional[EntityRef]:
        """First filler of ``prop`` in canonical order, or None."""
        found = self.objects(prop)
        return found[0] if found else None

    def add_data(self, prop, value) -> bool:
        return self.add(E.DATA_LINK, self._data_pair(prop, value))

    def pin_data(self, prop) -> bool:
        return self.add(E.DATA_LINK, self._data_pair(prop, WILDCARD))

    def unpin_data(self, prop) -> None:
        prop = self.store.resolve(K.DATA_PROPERTY, prop, declare=False)
        self._scope[self._check_expr(E.DATA_LINK)].discard(prop)
        self._sets[E.DATA_LINK].discard(DataPair(prop, WILDCARD))

    def remove_data(self, prop, value=None) -> int:
        self._check_expr(E.DATA_LINK)
        if value is not None:
            return int(self.remove(E.DATA_LINK, self._data_pair(prop, value)))
        prop = self.store.resolve(K.DATA_PROPERTY, prop, declare=False)
        doomed = [x for x in self._sets[E.DATA_LINK] if x.prop == prop and not x.is_wildcard]
        for x in doomed:
            self.remove(E.DATA_LINK, x)
        return len(doomed)

    def literals(self, prop) -> list[Literal]:
        prop = self.store.resolve(K.DATA_PROPERTY, prop, declare=False)
        return sorted(
            (x.value for x in self.entities(E.DATA_LINK) if x.prop == prop and not x.is_wildcard),
            key=str,
        )

    def literal_from_data_prop(self, prop) -> Optional[Literal]:
        found = self.literals(prop)
        return found[0] if found else None

    # -- synchronisation ------------------------------------------------------
    def query(self, expression) -> QueryResult:
        """What the store currently says; the local sets are not touched."""
        expression = self._check_expr(expression)
        snap = self.store.snapshot
        if self.reasoning and snap is not None:
            return QueryResult(snap.entity_set(self._ground, expression), inferred=True)
        return QueryResult(self.store.enumerate(self._ground, expression), inferred=False)

    def _in_scope(self, expression: Expression, element) -> bool:
        scope = self._scope.get(expression)
        return not scope or element.prop in scope

    def read_axioms(self) -> list[MappingIntent]:
        """Make each local set equal to :meth:`query` (pinned properties only, if any)."""
        intents = []
        for expr in self.profile.expressions:
            local = self._sets[expr]
            target = self.query(expr)
            current = {x for x in local if self._in_scope(expr, x)}
            wanted = {x for x in target if self._in_scope(expr, x)}
            for change, elements in ((Change.REMOVED, current - wanted), (Change.ADDED, wanted - current)):
                for x in sort_elements(elements):
                    if change is Change.ADDED:
                        local.add(x)
                    else:
                        local.discard(x)
                    self.revision += 1
                    intents.append(MappingIntent(self._ground, expr, x, change, Locus.DESCRIPTOR, self.revision))
        return intents

    def write_axioms(self) -> list[MappingIntent]:
        """Make the asserted axioms equal to the local sets.

        Axioms that are only entailed are never retracted.  Pinned
        properties that still hold a wildcard are left alone and reported
        as SKIPPED.  Invalid elements abort the write before any change.
        """
        plan = []  # (expr, change, element) or SKIPPED markers
        for expr in self.profile.expressions:
            local = self._sets[expr]
            skipped = {x.prop for x in local if is_wildcard(x)}
            for x in sort_elements(x for x in local if is_wildcard(x)):
                plan.append((expr, Change.SKIPPED, x))

            def writable(x):
                return self._in_scope(expr, x) and not (hasattr(x, "prop") and x.prop in skipped)

            desired = {x for x in local if not is_wildcard(x) and writable(x)}
            asserted = {x for x in self.store.enumerate(self._ground, expr) if writable(x)}
            for x in sort_elements(asserted - desired):
                plan.append((expr, Change.REMOVED, x))
            for x in sort_elements(desired - asserted):
                result = validate_axiom(Axiom(expr, self._ground, x))
                if not result:
                    raise DescriptorError(f"cannot write {expr}({self._ground} | {x}): {result.reason}")
                plan.append((expr, Change.ADDED, x))

        intents: list[MappingIntent] = []
        try:
            for expr, change, x in plan:
                if change is Change.SKIPPED:
                    intents.append(MappingIntent(self._ground, expr, x, change, Locus.ONTOLOGY, self.store.revision))
                    continue
                axiom = Axiom(expr, self._ground, x)
                if change is Change.ADDED:
                    status = self.store.assert_axiom(axiom)
                else:
                    status = self.store.retract_axiom(axiom)
                if status.changed:
                    intents.append(MappingIntent(self._ground, expr, x, change, Locus.ONTOLOGY, self.store.revision))
        except StoreError as exc:
            _apply(list(reversed([i.inverse() for i in intents])), self)
            raise DescriptorError(str(exc)) from exc
        return intents

    def build(self, expression) -> list["Descriptor"]:
        """One freshly read descriptor per element of the local set."""
        expression = self._check_expr(expression)
        target = self.profile.build_targets.get(expression)
        if target is None:
            raise DescriptorError(f"{self.profile.name} has no build target for {expression}")
        local = self._sets[expression]
        if any(is_wildcard(x) for x in local):
            raise DescriptorError(f"cannot build {expression} while a wildcard pin is unresolved")
        profile = get_profile(target.profile)
        grounds = sorted({_build_ground(x, target.via) for x in local})
        built = []
        for g in grounds:
            nd = Descriptor(profile, g, self.store, reasoning=self.reasoning)
            nd.read_axioms()
            built.append(nd)
        return built


def _build_ground(element, via: str) -> EntityRef:
    if isinstance(element, (ObjectPair, DataPair)):
        return element.prop if via == PROPERTY else element.value
    return element


def new_descriptor(profile, ground, store: OntologyStore, **kwargs) -> Descriptor:
    return Descriptor(profile, ground, store, **kwargs)


# -- intents --------------------------------------------------------------------


def _apply(intents: Iterable[MappingIntent], d: Descriptor) -> None:
    for it in intents:
        if it.change is Change.SKIPPED:
            continue
        if it.locus is Locus.DESCRIPTOR:
            local = d._sets[it.expression]
            if it.change is Change.ADDED:
                local.add(it.element)
            else:
                local.discard(it.element)
            d.revision += 1
        else:
            if it.change is Change.ADDED:
                d.store.assert_axiom(it.axiom)
            else:
                d.store.retract_axiom(it.axiom)


def _check_sequence(intents: list[MappingIntent], d: Descriptor) -> None:
    for locus, current in ((Locus.DESCRIPTOR, d.revision), (Locus.ONTOLOGY, d.store.revision)):
        seqs = [i.sequence for i in intents if i.locus is locus and i.change is not Change.SKIPPED]
        if seqs and max(seqs) != current:
            raise SequenceConflict(f"{locus} is at revision {current}, intents end at {max(seqs)}")


def undo_intents(intents: Iterable[MappingIntent], d: Descriptor) -> None:
    """Invert ``intents`` (newest first) on whichever locus they touched."""
    intents = list(intents)
    if not intents:
        return
    _check_sequence(intents, d)
    _apply([i.inverse() for i in reversed(intents)], d)


def apply_intents(intents: Iterable[MappingIntent], d: Descriptor) -> None:
    """Replay ``intents`` forward, e.g. onto a copy of the pre-state."""
    _apply(list(intents), d)


def describe(d: Descriptor) -> list[str]:
    """Human-readable dump of the local sets, one line per element."""
    lines = []
    for expr in d.expressions:
        for x in sorted(d._sets[expr], key=element_key):
            lines.append(f"{d.ground} {expr} {x}")
    return lines
