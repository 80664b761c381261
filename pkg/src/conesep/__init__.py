"""Certificates of strict separation for polyhedral cone regions.

The engine decides whether two (possibly nonconvex) cone regions can be
strictly separated by a Bishop-Phelps cone, and when they can, constructs
the separating functional together with the admissible threshold interval.
Companion pieces: well-basedness and convex-base certificates, nested-cone
interpolation, a sampling oracle for independent cross-checks, JSON
instance files, and a 2-D SVG renderer.
"""
from .basis import (
    BaseCertificate,
    BaseKind,
    InterpolationCheck,
    has_convex_base,
    interpolate,
    interpolate_sym,
    is_well_based,
    make_base,
    verify_interpolation,
)
from .distance import (
    DistanceResult,
    PointBody,
    PolytopeBody,
    body_distance,
    origin_body,
)
from .errors import (
    ConesepError,
    DegenerateCone,
    DimensionMismatch,
    DimensionNot2D,
    DimensionTooHigh,
    EmptyCone,
    Inconclusive,
    InstanceError,
    NonPositiveRay,
    NotConvex,
    NotNested,
    NotSolid,
    TrivialRegion,
    ZeroDirection,
    ZeroGenerator,
)
from .geometry import (
    BoundaryDecomposition,
    Norm,
    PointednessResult,
    PolyCone,
    cone_membership,
    dual_norm,
    facets,
    is_whole_space,
    make_polycone,
    norm_value,
    pointedness,
    solidity,
)
from .instances import (
    Instance,
    InstanceOptions,
    certificate_to_doc,
    doc_to_certificate,
    load_certificate,
    load_instance,
    parse_instance,
    serialize_instance,
)
from .oracle import (
    OracleSeparation,
    OracleSupport,
    cone_about,
    covering_bound,
    oracle_separation,
    oracle_support,
    random_pointed_cone,
    random_region,
    random_unpointed_cone,
    sample_norm_base,
    sector_cone_2d,
    union_of_rays,
)
from .regions import (
    ConeRegion,
    ConvexBody,
    LmoResult,
    body,
    lmo_norm_base,
    support_norm_base,
)
from .separation import (
    BidirectionalResult,
    BishopPhelpsCone,
    BoundaryEquivalenceReport,
    Membership,
    NormLinearFunctional,
    Orientation,
    SeparationCertificate,
    VerificationReport,
    augmented_dual_membership,
    bishop_phelps,
    boundary_equivalence_report,
    bp_boundary_rays_2d,
    bp_membership,
    cones_meet_only_at_origin,
    eval_norm_linear,
    separate_convex_bidirectional,
    separate_nonsym,
    separate_sym,
    verify_certificate,
)
from .svg import render_svg

__version__ = "0.1.0"

__all__ = [
    "BaseCertificate",
    "BaseKind",
    "BidirectionalResult",
    "BishopPhelpsCone",
    "BoundaryDecomposition",
    "BoundaryEquivalenceReport",
    "ConeRegion",
    "ConesepError",
    "ConvexBody",
    "DegenerateCone",
    "DimensionMismatch",
    "DimensionNot2D",
    "DimensionTooHigh",
    "DistanceResult",
    "EmptyCone",
    "Inconclusive",
    "Instance",
    "InstanceError",
    "InstanceOptions",
    "InterpolationCheck",
    "LmoResult",
    "Membership",
    "NonPositiveRay",
    "Norm",
    "NormLinearFunctional",
    "NotConvex",
    "NotNested",
    "NotSolid",
    "OracleSeparation",
    "OracleSupport",
    "Orientation",
    "PointBody",
    "PolyCone",
    "PolytopeBody",
    "SeparationCertificate",
    "TrivialRegion",
    "VerificationReport",
    "ZeroDirection",
    "ZeroGenerator",
    "augmented_dual_membership",
    "bishop_phelps",
    "body",
    "body_distance",
    "boundary_equivalence_report",
    "bp_boundary_rays_2d",
    "bp_membership",
    "certificate_to_doc",
    "cone_about",
    "cone_membership",
    "cones_meet_only_at_origin",
    "covering_bound",
    "doc_to_certificate",
    "dual_norm",
    "eval_norm_linear",
    "facets",
    "has_convex_base",
    "interpolate",
    "interpolate_sym",
    "is_well_based",
    "is_whole_space",
    "lmo_norm_base",
    "load_certificate",
    "load_instance",
    "make_base",
    "make_polycone",
    "norm_value",
    "oracle_separation",
    "oracle_support",
    "origin_body",
    "parse_instance",
    "pointedness",
    "PointednessResult",
    "random_pointed_cone",
    "random_region",
    "random_unpointed_cone",
    "render_svg",
    "sample_norm_base",
    "sector_cone_2d",
    "separate_convex_bidirectional",
    "separate_nonsym",
    "separate_sym",
    "serialize_instance",
    "solidity",
    "support_norm_base",
    "union_of_rays",
    "verify_certificate",
    "verify_interpolation",
]
