"""Ologs, wiring diagrams over sensor labels, edit distances between diagrams, and trace matching."""

from .category import SkeletonWdGraph, WdMorphism, enumerate_covers, is_irreducible, morphism_exists
from .edits import (
    AddArrow,
    AddLabel,
    AddVertex,
    ChangeLabel,
    CostFunction,
    DeleteArrow,
    DeleteLabel,
    DeleteVertex,
    EditPath,
    Generalize,
    OlogLabelCost,
    Specialize,
    UNIT_COSTS,
    apply_op,
    inverse_op,
    invert_path,
    replay_path,
    wd_distance_upper,
)
from .errors import (
    BudgetExceededError,
    CospanMismatchError,
    CycleError,
    DuplicateIdError,
    EntityNotInSetError,
    InvalidOpError,
    NonNumericCodomainError,
    NonpositiveCostError,
    NotPartialOrderError,
    NotSkeletonError,
    OlogWdError,
    PathEndpointMismatchError,
    SchemaError,
    UnknownAspectError,
    UnknownRelationError,
    UnknownSensorError,
    UnknownTypeError,
    VertexSetMismatchError,
)
from .graph import (
    DirectedGraph,
    RelationSet,
    covering_pairs,
    find_cycle,
    is_skeleton,
    is_wd_graph,
    transitive_closure,
    transitive_reduction,
    validate_wd_graph,
)
from .iso import wd_canonical_key, wd_isomorphic
from .olog import EdgeCost, Olog, add_indicator_fibers, add_relation_types, fiber_product, olog_distance, olog_shortest_path
from .search import LabelUniverse, SearchResult, wd_distance_exact, wd_distance_search
from .trace import UNDEFINED, Assignment, Trace, eval_sensor, match_wd, state_vector_holds
from .wiring import Interval, Label, SensingFunctionDecl, WiringDiagram, derive_sensor, relation_sensor, validate_wd

__version__ = "0.1.0"


__all__ = [
    "AddArrow",
    "AddLabel",
    "AddVertex",
    "Assignment",
    "BudgetExceededError",
    "ChangeLabel",
    "CospanMismatchError",
    "CostFunction",
    "CycleError",
    "DeleteArrow",
    "DeleteLabel",
    "DeleteVertex",
    "DirectedGraph",
    "DuplicateIdError",
    "EdgeCost",
    "EditPath",
    "EntityNotInSetError",
    "Generalize",
    "Interval",
    "InvalidOpError",
    "Label",
    "LabelUniverse",
    "NonNumericCodomainError",
    "NonpositiveCostError",
    "NotPartialOrderError",
    "NotSkeletonError",
    "Olog",
    "OlogLabelCost",
    "OlogWdError",
    "PathEndpointMismatchError",
    "RelationSet",
    "SchemaError",
    "SearchResult",
    "SensingFunctionDecl",
    "SkeletonWdGraph",
    "Specialize",
    "Trace",
    "UNDEFINED",
    "UNIT_COSTS",
    "UnknownAspectError",
    "UnknownRelationError",
    "UnknownSensorError",
    "UnknownTypeError",
    "VertexSetMismatchError",
    "WdMorphism",
    "WiringDiagram",
    "add_indicator_fibers",
    "add_relation_types",
    "apply_op",
    "covering_pairs",
    "derive_sensor",
    "enumerate_covers",
    "eval_sensor",
    "fiber_product",
    "find_cycle",
    "inverse_op",
    "invert_path",
    "is_irreducible",
    "is_skeleton",
    "is_wd_graph",
    "match_wd",
    "morphism_exists",
    "olog_distance",
    "olog_shortest_path",
    "relation_sensor",
    "replay_path",
    "state_vector_holds",
    "transitive_closure",
    "transitive_reduction",
    "validate_wd",
    "validate_wd_graph",
    "wd_canonical_key",
    "wd_distance_exact",
    "wd_distance_search",
    "wd_distance_upper",
    "wd_isomorphic",
]
