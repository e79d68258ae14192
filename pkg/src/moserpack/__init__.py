"""Square packing toolkit.

Classical shelf packers for the moon-moser and meir-moser area criteria,
greedy whitespace packing of small-square tails, certified derivation of
the square-count reduction constants, and an end-to-end driver that packs
any total-area-1 instance into a rectangle of area F.
"""

from .constants import (
    NOVOTNY,
    ConstantsReport,
    KSample,
    build_report,
    compute_c,
    delta_of_V,
    delta_refined,
    delta_simple,
    derive_N,
    factor_float,
    find_small_index,
    harmonic_bounds,
    harmonic_range_sum,
    k_sample_grid,
    n0_integral,
    n0_simple,
    report_to_dict,
    resolve_factor,
    two_square_worst_case,
)
from .errors import (
    EmptyRegionError,
    FloorUncertified,
    MoserpackError,
    PackFailure,
    PreconditionViolated,
    QuadratureDisagreement,
)
from .geometry import (
    EPS_GEOM,
    Instance,
    Packing,
    Placement,
    Rectangle,
    RectilinearRegion,
    VerificationReport,
    Violation,
    feasible_midpoint_region,
    instance_from_dict,
    instance_to_dict,
    packing_from_dict,
    packing_to_dict,
    region_area,
    region_lexicomin,
    region_subtract,
    region_union,
    verify_packing,
)
from .reduction import (
    PackParams,
    ReduceResult,
    default_prefix_packer,
    glue_pack,
    params_to_dict,
    reduce_and_pack,
    result_to_dict,
)
from .render import SvgDocument, SvgRect, render_svg
from .shelf import (
    PackPrecondition,
    circumference_admits,
    meir_moser_pack,
    moon_moser_pack,
    small_s1_pack,
)
from .whitespace import WhitespaceJob, midpoint_area_bound, whitespace_pack

__version__ = "0.1.0"

__all__ = [
    "NOVOTNY",
    "ConstantsReport",
    "EmptyRegionError",
    "EPS_GEOM",
    "FloorUncertified",
    "Instance",
    "KSample",
    "MoserpackError",
    "PackFailure",
    "PackParams",
    "Packing",
    "PackPrecondition",
    "Placement",
    "PreconditionViolated",
    "QuadratureDisagreement",
    "Rectangle",
    "RectilinearRegion",
    "ReduceResult",
    "SvgDocument",
    "SvgRect",
    "VerificationReport",
    "Violation",
    "WhitespaceJob",
    "build_report",
    "circumference_admits",
    "compute_c",
    "default_prefix_packer",
    "delta_of_V",
    "delta_refined",
    "delta_simple",
    "derive_N",
    "factor_float",
    "feasible_midpoint_region",
    "find_small_index",
    "glue_pack",
    "harmonic_bounds",
    "harmonic_range_sum",
    "k_sample_grid",
    "instance_from_dict",
    "instance_to_dict",
    "meir_moser_pack",
    "midpoint_area_bound",
    "moon_moser_pack",
    "n0_integral",
    "n0_simple",
    "packing_from_dict",
    "packing_to_dict",
    "reduce_and_pack",
    "params_to_dict",
    "region_area",
    "region_lexicomin",
    "region_subtract",
    "region_union",
    "render_svg",
    "report_to_dict",
    "resolve_factor",
    "result_to_dict",
    "small_s1_pack",
    "two_square_worst_case",
    "verify_packing",
    "whitespace_pack",
]
