"""Partition of a simple polygon into star-shaped pieces."""
from .dissection import (
    DiagonalReport,
    Dissection,
    DissectionKind,
    GoodnessCertificate,
    find_good_diagonal,
    goodness,
    make_dissection,
    split_polygon,
)
from .cases import (
    ConvexAngleWitness,
    PreconditionError,
    RepartitionRequest,
    dissect_case_study,
    dissect_long_leaf,
    dissect_point_kernel,
    dissect_short_leaf,
    fan_split,
)
from .algorithm import (
    GuardAnchor,
    MultiCertificate,
    PartitionError,
    PartitionResult,
    PlacementKind,
    Side,
    TraceEntry,
    bisect_reflex_base_case,
    partition,
)

__all__ = [
    "ConvexAngleWitness", "DiagonalReport", "Dissection", "DissectionKind",
    "GoodnessCertificate", "GuardAnchor", "MultiCertificate", "PartitionError",
    "PartitionResult", "PlacementKind", "PreconditionError", "RepartitionRequest",
    "Side", "TraceEntry", "bisect_reflex_base_case", "dissect_case_study",
    "dissect_long_leaf", "dissect_point_kernel", "dissect_short_leaf", "fan_split",
    "find_good_diagonal", "goodness", "make_dissection", "partition", "split_polygon",
]
