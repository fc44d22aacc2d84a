"""Max Lin-2 above average: reductions, marking algorithm, exact oracle and the r-SAT bridge."""

from .errors import (
    BudgetExceededError,
    ContractError,
    DimensionError,
    InternalConsistencyError,
    MaxLinError,
    ParseError,
    WeightOverflowError,
)
from .fpt_solver import (
    MarkTrace,
    PivotRule,
    Strategy,
    Verdict,
    brute_force,
    decide,
    extend_through_marks,
    half_weight_greedy,
    lemma4_threshold,
    reconstruct,
    run_algorithm_a,
    theorem2_threshold,
)
from .gf2_core import (
    LinearSystem,
    WeightedEquation,
    apply_rule1,
    apply_rule2,
    evaluate,
    is_fully_reduced,
    max_occurrence,
    occurrence_counts,
    reduce_fully,
)
from .sat_bridge import (
    CnfFormula,
    MultilinearPolynomial,
    decide_max_r_sat_aa,
    evaluate_polynomial,
    formula_polynomial,
    poly_to_system,
    sat_count,
)

__version__ = "0.1.0"
