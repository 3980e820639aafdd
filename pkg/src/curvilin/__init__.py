"""Curvilinear set summation calculus.

Numerical operator layer for coefficient-weighted power means, curvilinear
and quasi-curvilinear set sums on grids, supremal convolution of functions,
weighted surface-area quotients, and a verification harness that stress
tests the volume and integral inequalities these operations satisfy.
"""

from .curvsum import (
    SumSpec,
    combine,
    combine_quasi,
    convex_quasi_sum_grid,
    convex_quasi_sum_volume_exact,
    curvilinear_sum_1d,
    curvilinear_sum_boxes,
    curvilinear_sum_grid,
    derive_out_grid,
    envelope_segments,
    envelope_volume,
    lp_minkowski_sum_base,
    quasi_sum_grid,
    scalar_dilate,
    staircase_sum_regions,
    staircase_sum_volume_exact,
    sum_oracle,
)
from .errors import (
    BudgetError,
    CoverageError,
    CurvilinError,
    DegenerateInputError,
    DomainError,
    GridAlignmentError,
    RangeError,
    RegimeError,
    ResolutionError,
)
from .funcs import (
    GridFunction,
    bbl_min_witness,
    function_from_json,
    hypograph,
    load_function,
    marginal,
    sup_convolve,
)
from .means import (
    MeanParams,
    PowerVector,
    conjugate,
    gamma_pair,
    holder_product_bound,
    lambda_grid_sup,
    lp_coefficients,
    mean_alpha,
    mean_p_alpha,
    optimal_lambda,
    sup_lambda_min_form,
    sup_mean_over_lambda,
)
from .measures import (
    EPS_SCHEDULE,
    DensityMeasure,
    FSpec,
    SurfaceEstimate,
    f_concavity_check,
    gaussian_density,
    indicator_density,
    lebesgue,
    measure_of,
    minkowski_first_check,
    mixed_volume_check,
    mixed_volume_quantities,
    mu_section_quantities,
    surface_area_funcs,
    surface_area_sets,
    tent_density,
)
from .reports import (
    InequalityReport,
    verdict_for,
)
from .verify import (
    CHECK_IDS,
    InstanceGen,
    SuiteResult,
    default_suite,
    run_check,
    run_check_refined,
    run_suite,
    shrink,
    write_reports_jsonl,
    write_summary_csv,
)
from .cli import RunConfig
from .sets import (
    BoxUnion,
    Grid,
    GridPointSet,
    IntervalUnion,
    SectionProfile,
    StaircaseSet,
    box_union_volume,
    compress,
    is_compressed,
    load_set,
    normalize,
    normalized_compression,
    section_profile,
    set_from_json,
    superlevel,
    volume,
)

__version__ = "0.1.0"

__all__ = [
    "BoxUnion",
    "BudgetError",
    "CHECK_IDS",
    "CoverageError",
    "CurvilinError",
    "DegenerateInputError",
    "DensityMeasure",
    "DomainError",
    "EPS_SCHEDULE",
    "FSpec",
    "Grid",
    "GridAlignmentError",
    "GridFunction",
    "GridPointSet",
    "InequalityReport",
    "InstanceGen",
    "IntervalUnion",
    "MeanParams",
    "PowerVector",
    "RangeError",
    "RegimeError",
    "ResolutionError",
    "RunConfig",
    "SectionProfile",
    "StaircaseSet",
    "SuiteResult",
    "SumSpec",
    "SurfaceEstimate",
    "bbl_min_witness",
    "box_union_volume",
    "combine",
    "combine_quasi",
    "convex_quasi_sum_grid",
    "convex_quasi_sum_volume_exact",
    "compress",
    "conjugate",
    "curvilinear_sum_1d",
    "curvilinear_sum_boxes",
    "curvilinear_sum_grid",
    "default_suite",
    "derive_out_grid",
    "envelope_segments",
    "envelope_volume",
    "f_concavity_check",
    "function_from_json",
    "gamma_pair",
    "gaussian_density",
    "holder_product_bound",
    "hypograph",
    "indicator_density",
    "is_compressed",
    "lambda_grid_sup",
    "lebesgue",
    "load_function",
    "load_set",
    "lp_coefficients",
    "lp_minkowski_sum_base",
    "marginal",
    "mean_alpha",
    "mean_p_alpha",
    "measure_of",
    "minkowski_first_check",
    "mixed_volume_check",
    "mixed_volume_quantities",
    "mu_section_quantities",
    "normalize",
    "normalized_compression",
    "optimal_lambda",
    "quasi_sum_grid",
    "run_check",
    "run_check_refined",
    "run_suite",
    "scalar_dilate",
    "section_profile",
    "set_from_json",
    "shrink",
    "staircase_sum_regions",
    "staircase_sum_volume_exact",
    "sum_oracle",
    "sup_convolve",
    "sup_lambda_min_form",
    "sup_mean_over_lambda",
    "superlevel",
    "surface_area_funcs",
    "surface_area_sets",
    "tent_density",
    "verdict_for",
    "volume",
    "write_reports_jsonl",
    "write_summary_csv",
]
