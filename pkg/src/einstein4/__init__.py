"""Curvature algebra for Einstein four-manifolds.

Pointwise curvature tensors and operators, the self-dual/anti-self-dual and
Berger normal-form decompositions, every standard positivity condition as a
signed margin, the quadratic stationarity inequalities, and a deterministic
grid optimizer that reproduces the known sectional-curvature bounds.
"""

__version__ = "0.1.0"

from .tensor import (
    CurvatureError,
    CurvatureOperator6,
    DualityBlocks,
    NonEinsteinError,
    RiemannTensor4,
    StandardDecomposition,
    SymmetricForm2,
    duality_blocks,
    hodge_star_matrix,
    is_einstein,
    kulkarni_nomizu,
    operator_to_tensor,
    random_curvature_tensor,
    ricci_contract,
    scalar_curvature,
    sectional_scan,
    standard_decompose,
    to_operator,
)
from .berger import (
    BergerConstraintError,
    BergerForm,
    HalfSpectra,
    berger_to_operator,
    berger_to_tensor,
    extract_berger,
    extract_from_tensor,
    from_half_spectra,
    fubini_study,
    half_spectra,
    round_sphere,
    sample_admissible,
    sample_admissible_arrays,
    sphere_product,
    sphere_product_tensor,
)
from .predicates import (
    ConditionMargin,
    ImplicationReport,
    bullet_equivalences_check,
    condition_margin,
    half_conditions,
    k_positive_margin,
    pic_margin_closed,
    pic_margin_frames,
    sectional_range,
    table1_report,
)
from .hamilton import (
    QuadraticTerms,
    b_combination,
    eigenform_values,
    quadratic_form_matrix,
    quadratic_terms,
    stationarity_margin_min_sectional,
    stationarity_margin_three_sum,
)
from .bounds import OptimizationProblem, OptimizationResult, minimize
from .problems import (
    FOUR_POS_BOUND,
    LOWER_K_BOUND,
    THREE_POS_BOUND,
    UPPER_K_BOUND,
    four_positive_bound,
    three_positive_bound,
    upper_bound_step1,
    upper_bound_step2,
    weyl_min_analytic,
    weyl_min_bound,
)
