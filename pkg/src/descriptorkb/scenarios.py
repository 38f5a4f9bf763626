"""Replays of the two worked descriptor examples against a loaded store."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .descriptors import Descriptor, Locus, MappingIntent
from .entities import EntityKind, Expression, entity
from .reasoner import synchronise_reasoner
from .store import OntologyStore

K = EntityKind
E = Expression


class ScenarioError(ValueError):
    pass


@dataclass
class ScenarioRun:
    store: OntologyStore
    lines: list[str] = field(default_factory=list)
    intents: list[MappingIntent] = field(default_factory=list)

    def log(self, title: str, intents: list[MappingIntent]) -> None:
        self.lines.append(f"# {title}: {len(intents)} intent(s)")
        self.lines.extend(f"  {i}" for i in intents)
        self.intents.extend(intents)

    @property
    def ontology_intents(self) -> list[MappingIntent]:
        return [i for i in self.intents if i.locus is Locus.ONTOLOGY]


def _require(store: OntologyStore, needed: list[tuple[EntityKind, str]]) -> None:
    missing = [f"{kind} {name}" for kind, name in needed if entity(kind, name) not in store.declarations]
    if missing:
        raise ScenarioError("missing entities: " + ", ".join(missing))


def listing2(store: OntologyStore, after_sync: Optional[Callable[[OntologyStore], None]] = None) -> ScenarioRun:
    """Assert links, disjointness, domain and range; sync; read back; drop the links.

    Each descriptor writes itself (the printed listing writes the corridor
    three times, which would leave the class and property changes local).
    """
    _require(store, [
        (K.INDIVIDUAL, "Corridor1"), (K.INDIVIDUAL, "Room1"), (K.INDIVIDUAL, "Room2"),
        (K.CLASS, "ROBOT"), (K.CLASS, "LOCATION"), (K.CLASS, "DOOR"),
        (K.OBJECT_PROPERTY, "isLinkedTo"), (K.OBJECT_PROPERTY, "hasDoor"),
    ])
    run = ScenarioRun(store)
    corridor1 = Descriptor("LinkIndividual", "Corridor1", store)
    corridor1.add_object("isLinkedTo", "Room1")
    corridor1.add_object("isLinkedTo", "Room2")
    run.log("corridor1.write_axioms()", corridor1.write_axioms())

    robot_class = Descriptor("DisjointClass", "ROBOT", store)
    robot_class.add(E.DISJOINT, "LOCATION")
    robot_class.add(E.DISJOINT, "DOOR")
    run.log("robot_class.write_axioms()", robot_class.write_axioms())

    has_door = Descriptor("DomainRangeObjectProperty", "hasDoor", store)
    has_door.add(E.DOMAIN, "LOCATION")
    has_door.add(E.RANGE, "DOOR")
    run.log("has_door.write_axioms()", has_door.write_axioms())

    snap = synchronise_reasoner(store)
    run.lines.append(f"# synchronise_reasoner(): {'consistent' if snap.consistent else 'INCONSISTENT'}")
    if after_sync is not None:
        after_sync(store)
    run.log("corridor1.read_axioms()", corridor1.read_axioms())
    run.log("has_door.read_axioms()", has_door.read_axioms())
    run.log("robot_class.read_axioms()", robot_class.read_axioms())

    corridor1.remove_object("isLinkedTo")
    run.log("corridor1.write_axioms()", corridor1.write_axioms())
    return run


def listing3(store: OntologyStore) -> ScenarioRun:
    """Find the leaf classes of the place the robot is in."""
    _require(store, [(K.INDIVIDUAL, "Robot1"), (K.OBJECT_PROPERTY, "isIn")])
    run = ScenarioRun(store)
    synchronise_reasoner(store)
    robot1 = Descriptor("LinkIndividual", "Robot1", store)
    robot1.pin_object("isIn")
    run.intents.extend(robot1.read_axioms())
    robot_loc = robot1.individual_from_object_prop("isIn")
    if robot_loc is None:
        raise ScenarioError(f"{robot1.ground} has no isIn link")
    loc_indiv = Descriptor("TypeIndividual", robot_loc, store)
    run.intents.extend(loc_indiv.read_axioms())
    for loc_class in loc_indiv.build(E.TYPE):
        if len(loc_class.entities(E.SUB)) == 1:
            run.lines.append(f"{robot1.ground.name} is in {robot_loc.name}, which is a {loc_class.ground.name}")
    return run


SCENARIOS = {"listing2": listing2, "listing3": listing3}
