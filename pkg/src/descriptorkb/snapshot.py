"""Result values published by a reasoner run."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .entities import Axiom, EntityRef, Expression


@dataclass(frozen=True, order=True)
class Violation:
    rule: str
    entities: tuple[EntityRef, ...]
    detail: str

    def __str__(self) -> str:
        names = " ".join(str(e) for e in self.entities)
        return f"{self.rule} {names}: {self.detail}"


@dataclass(frozen=True)
class ConsistencyReport:
    violations: tuple[Violation, ...] = ()
    unsatisfiable: frozenset[EntityRef] = frozenset()

    @property
    def consistent(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class InferenceSnapshot:
    entailed: frozenset[Axiom]
    class_groups: frozenset[frozenset[EntityRef]]
    object_property_groups: frozenset[frozenset[EntityRef]]
    data_property_groups: frozenset[frozenset[EntityRef]]
    individual_groups: frozenset[frozenset[EntityRef]]
    consistency: ConsistencyReport
    sequence: int = 0
    _index: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        index = defaultdict(set)
        for ax in self.entailed:
            index[(ax.subject, ax.expression)].add(ax.obj)
        object.__setattr__(self, "_index", {k: frozenset(v) for k, v in index.items()})

    @property
    def consistent(self) -> bool:
        return self.consistency.consistent

    def entity_set(self, subject: EntityRef, expression: Expression) -> frozenset:
        return self._index.get((subject, expression), frozenset())

    def __contains__(self, axiom: Axiom) -> bool:
        return axiom in self.entailed

    def content(self) -> tuple:
        """Everything except the sequence number."""
        return (
            self.entailed,
            self.class_groups,
            self.object_property_groups,
            self.data_property_groups,
            self.individual_groups,
            self.consistency,
        )
