"""3-groups of coclass trees, their Artin patterns, and 3-class tower lengths of quadratic fields."""

from .pc import PcPresentation
from .pquotient import p_quotient, p_cover, rank_report
from .artin import artin_pattern, tkt, tkt_canonical
from .families import GroupDescriptor, build, resolve_identifier
from .sigma import find_sigma, schur_status
from .classify import classify_simple, classify_complex, screen_ipad
from .ingest import parse_records, report, emit_tree_dot

__all__ = [
    "PcPresentation", "p_quotient", "p_cover", "rank_report", "artin_pattern", "tkt",
    "tkt_canonical", "GroupDescriptor", "build", "resolve_identifier", "find_sigma",
    "schur_status", "classify_simple", "classify_complex", "screen_ipad",
    "parse_records", "report", "emit_tree_dot",
]
