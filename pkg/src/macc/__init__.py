"""Multiaccess coded caching toolkit.

Placement delivery arrays, the cyclic multiaccess lift, delivery
simulation with optional MDS-coded compression, and load/memory
trade-off analysis.
"""

__version__ = "0.1.0"

from .errors import (
    BadSubset,
    C3ViolationInQ,
    C4Violation,
    ConditionViolation,
    DemandOutOfRange,
    DimensionMismatch,
    EmptyInput,
    FieldTooSmall,
    MaccError,
    NonUniformStars,
    NotApplicable,
    OutOfRange,
    ParseError,
    RowCountMismatch,
    SingularSystem,
    UndecodablePacket,
)
from .pda import (
    STAR,
    Pda,
    StarProfile,
    ValidationReport,
    check_c4,
    check_c5,
    parse_pda,
    parse_pda_with_map,
    serialize_pda,
    star_profile,
    validate_pda,
)
from .constructions import (
    MnParams,
    PartitionParams,
    lex_rank,
    lex_unrank,
    mn_pda,
    partition_pda,
)
from .transform import (
    MultiaccessParams,
    NodePlacementArray,
    Scheme,
    UserDeliveryArray,
    UserRetrieveArray,
    build_scheme,
    delivery_fill_maps,
    node_placement,
    scheme_from_json,
    scheme_to_json,
    shift_round,
    user_delivery,
    user_retrieve,
)
from .sim import (
    PacketLibrary,
    TransmissionLog,
    decode,
    decode_from_messages,
    deliver,
    demand_suite,
    library_for_scheme,
    populate_caches,
    user_view,
    user_view_via_nodes,
    worst_case_load,
)
from .compress import (
    CodedBatch,
    LambdaProfile,
    compressed_decode,
    compressed_deliver,
    compressed_load,
    coverable_messages,
    full_view_rounds,
    lambda_profile,
    reconstructable_messages,
)
from .gf2 import GF, cauchy_matrix, field
from .rates import (
    LoadCurve,
    LoadPoint,
    comparison_table,
    converse_bound,
    converse_instance,
    count_sq,
    envelope,
    envelope_eval,
    gap_checks,
    r_cor1,
    r_cor2,
    r_hkd,
    r_mn,
    r_rk,
    r_sr,
    r_t1,
    f_t1,
    r_t3,
    scheme_curve,
    scheme_points,
)

__all__ = [
    "__version__",
    "STAR",
    "Pda",
    "StarProfile",
    "ValidationReport",
    "check_c4",
    "check_c5",
    "parse_pda",
    "parse_pda_with_map",
    "serialize_pda",
    "star_profile",
    "validate_pda",
    "MnParams",
    "PartitionParams",
    "lex_rank",
    "lex_unrank",
    "mn_pda",
    "partition_pda",
    "MultiaccessParams",
    "NodePlacementArray",
    "Scheme",
    "UserDeliveryArray",
    "UserRetrieveArray",
    "build_scheme",
    "delivery_fill_maps",
    "node_placement",
    "scheme_from_json",
    "scheme_to_json",
    "shift_round",
    "user_delivery",
    "user_retrieve",
    "PacketLibrary",
    "TransmissionLog",
    "decode",
    "decode_from_messages",
    "deliver",
    "demand_suite",
    "library_for_scheme",
    "populate_caches",
    "user_view",
    "user_view_via_nodes",
    "worst_case_load",
    "CodedBatch",
    "LambdaProfile",
    "compressed_decode",
    "compressed_deliver",
    "compressed_load",
    "coverable_messages",
    "full_view_rounds",
    "lambda_profile",
    "reconstructable_messages",
    "GF",
    "cauchy_matrix",
    "field",
    "LoadCurve",
    "LoadPoint",
    "comparison_table",
    "converse_bound",
    "converse_instance",
    "count_sq",
    "envelope",
    "envelope_eval",
    "gap_checks",
    "r_cor1",
    "r_cor2",
    "r_hkd",
    "r_mn",
    "r_rk",
    "r_sr",
    "r_t1",
    "f_t1",
    "r_t3",
    "scheme_curve",
    "scheme_points",
    "MaccError",
    "ParseError",
    "BadSubset",
    "NonUniformStars",
    "DimensionMismatch",
    "C4Violation",
    "ConditionViolation",
    "RowCountMismatch",
    "C3ViolationInQ",
    "DemandOutOfRange",
    "UndecodablePacket",
    "FieldTooSmall",
    "NotApplicable",
    "SingularSystem",
    "OutOfRange",
    "EmptyInput",
]
