"""Preferred repairs of inconsistent databases under priority relations."""

from .categoricity import (
    CategoricityResult,
    StrataTrace,
    blocks_categoricity,
    c_categoricity,
    categoricity,
    g_categoricity,
    p_categoricity,
)
from .errors import BoundExceeded, InstanceFormatError
from .model import (
    FD,
    ConflictHypergraph,
    Fact,
    PrioritizedInstance,
    PriorityRelation,
    Schema,
    Signature,
    ValidationReport,
    conflict_graph_from_fds,
    validate,
)
from .order import enumerate_completions, is_transitive, max_facts, transitive_closure
from .repairs import (
    RepairKind,
    RepairReport,
    TieBreaker,
    check_repair,
    enumerate_repairs,
    find_crep,
    repair_report,
)
from .schema_analysis import (
    attribute_closure,
    classify,
    fd_sets_equivalent,
    implies,
    single_fd_equivalent,
    two_keys_equivalent,
)

__all__ = [
    "BoundExceeded",
    "CategoricityResult",
    "ConflictHypergraph",
    "FD",
    "Fact",
    "InstanceFormatError",
    "PrioritizedInstance",
    "PriorityRelation",
    "RepairKind",
    "RepairReport",
    "Schema",
    "Signature",
    "StrataTrace",
    "TieBreaker",
    "ValidationReport",
    "attribute_closure",
    "blocks_categoricity",
    "c_categoricity",
    "categoricity",
    "check_repair",
    "classify",
    "conflict_graph_from_fds",
    "enumerate_completions",
    "enumerate_repairs",
    "fd_sets_equivalent",
    "find_crep",
    "g_categoricity",
    "implies",
    "is_transitive",
    "max_facts",
    "p_categoricity",
    "repair_report",
    "single_fd_equivalent",
    "transitive_closure",
    "two_keys_equivalent",
    "validate",
]
