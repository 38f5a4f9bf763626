"""Descriptor-based object mapping over a small OWL-style knowledge base.

A store holds asserted axioms, an explicit reasoner call publishes an
inferred snapshot, and descriptors (ground entity + local entity sets)
read from and write to the store in a controlled way.
"""

from .descriptors import (
    PROFILES,
    BuildTarget,
    Change,
    Descriptor,
    DescriptorError,
    DescriptorProfile,
    Locus,
    MappingIntent,
    QueryResult,
    SequenceConflict,
    apply_intents,
    get_profile,
    new_descriptor,
    register_profile,
    undo_intents,
)
from .entities import (
    NOTHING,
    ONLY,
    SOME,
    THING,
    WILDCARD,
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
    individual,
    max_,
    min_,
    object_property,
    owl_class,
    validate_axiom,
)
from .oracle import naive_fixpoint_oracle
from .reasoner import ReasonerError, compute_closure, entailed_entity_set, is_entailed, synchronise_reasoner
from .snapshot import ConsistencyReport, InferenceSnapshot, Violation
from .store import (
    ChangeStatus,
    Characteristic,
    Identity,
    IdentityPair,
    OntologyStore,
    StoreError,
    create_store,
    literal,
)
from .syntax import ParseError, load, parse, parse_document, serialize_store

__version__ = "0.1.0"

__all__ = [
    "Axiom",
    "BareClass",
    "BuildTarget",
    "Cardinality",
    "CardinalityKind",
    "Change",
    "ChangeStatus",
    "Characteristic",
    "ClassCardinality",
    "ConsistencyReport",
    "DataPair",
    "DataRestriction",
    "Descriptor",
    "DescriptorError",
    "DescriptorProfile",
    "EntityKind",
    "EntityRef",
    "Expression",
    "Identity",
    "IdentityPair",
    "InferenceSnapshot",
    "Literal",
    "Locus",
    "MappingIntent",
    "NOTHING",
    "ONLY",
    "ObjectPair",
    "ObjectRestriction",
    "OntologyStore",
    "PROFILES",
    "ParseError",
    "QueryResult",
    "ReasonerError",
    "SOME",
    "SequenceConflict",
    "StoreError",
    "THING",
    "Violation",
    "WILDCARD",
    "__version__",
    "apply_intents",
    "check_element",
    "compute_closure",
    "create_store",
    "data_property",
    "entailed_entity_set",
    "exact",
    "fixture_path",
    "get_profile",
    "individual",
    "is_entailed",
    "literal",
    "load",
    "max_",
    "min_",
    "naive_fixpoint_oracle",
    "new_descriptor",
    "object_property",
    "owl_class",
    "parse",
    "parse_document",
    "register_profile",
    "serialize_store",
    "synchronise_reasoner",
    "undo_intents",
    "validate_axiom",
]


def fixture_path() -> str:
    """Path of the bundled robot-at-home ontology."""
    from importlib.resources import files

    return str(files(__package__) / "data" / "robot_at_home.ofn")
