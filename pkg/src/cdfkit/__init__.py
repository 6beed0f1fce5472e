"""cdfkit: parse, validate, canonicalize and emit football match data in
the Common Data Format (match sheet, match meta, video meta, event,
center-of-mass tracking and skeletal tracking components)."""

from .bundle import (
    MatchBundle,
    check_frame_budget,
    check_sync_references,
    load_bundle,
    load_serialized,
    reconcile_result,
    summarize_bundle,
    validate_bundle,
)
from .codec import (
    DOC_KINDS,
    MISSING_POLICIES,
    STREAM_KINDS,
    encode_record,
    read_document,
    read_line_stream,
    round3,
    write_document,
    write_line_stream,
)
from .model import (
    CdfDomainError,
    CdfEncodingError,
    CdfError,
    CdfSerializationError,
    CdfStructureError,
    ValidationFinding,
    ValidationReport,
)
from .representation import (
    SideAssignment,
    canonicalize_precision,
    coordinate_domain,
    flip_xy,
    to_actual_sides,
)
from .skeleton import SkeletonHierarchy, cross_check_limbs, t_pose_positions, validate_hierarchy

__version__ = "0.1.0"

__all__ = [
    "CdfDomainError",
    "CdfEncodingError",
    "CdfError",
    "CdfSerializationError",
    "CdfStructureError",
    "DOC_KINDS",
    "MISSING_POLICIES",
    "MatchBundle",
    "STREAM_KINDS",
    "SideAssignment",
    "SkeletonHierarchy",
    "ValidationFinding",
    "ValidationReport",
    "canonicalize_precision",
    "check_frame_budget",
    "check_sync_references",
    "coordinate_domain",
    "cross_check_limbs",
    "encode_record",
    "flip_xy",
    "load_bundle",
    "load_serialized",
    "read_document",
    "read_line_stream",
    "reconcile_result",
    "round3",
    "summarize_bundle",
    "t_pose_positions",
    "to_actual_sides",
    "validate_bundle",
    "validate_hierarchy",
    "write_document",
    "write_line_stream",
]
