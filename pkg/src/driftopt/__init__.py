"""Drift-optimal mutation strengths for OneMax.

Exact and approximate expected-drift computation for r-bit flip mutation,
the optimal-strength cut-off structure, numeric brackets for the runtime
constant of the resulting drift-maximizing algorithm, generic discrete
drift theorems, and a Monte Carlo simulator for unary unbiased algorithms.
"""

from .bounds import (
    DriftSpec,
    PartitionScheme,
    RuntimeConstantBracket,
    brute_force_hitting_time,
    constant_bracket,
    default_partition,
    dense_partition,
    drift_lower_bound,
    drift_upper_bound,
    harmonic_runtime_term,
    lower_bound_constant,
    partition_from_cutoff_indices,
    runtime_estimate,
    tail_integral,
    upper_bound_constant,
)
from .drift import (
    approx_drift,
    approx_drift_closed,
    approx_drift_general,
    approx_drift_via_integral,
    drift_constant_ck,
    drift_second_derivative,
    exact_drift,
    exact_drift_profile,
    exact_drift_rational,
)
from .quadrature import QuadratureError, adaptive_simpson
from .simulate import (
    BudgetPoint,
    RunRecord,
    SimConfig,
    SummaryStats,
    UnaryOperatorDistribution,
    approx_strength_table,
    condensed_step,
    exact_strength_table,
    fixed_budget_estimate,
    flip_r,
    rls_fixed_budget_closed_form,
    rls_strength_table,
    run_algorithm,
    sample_unary_operator,
    summarize_runtimes,
)
from .strengths import (
    BracketError,
    CutoffPoint,
    Epsilon,
    StrengthInterval,
    consecutive_cutoffs,
    cutoff_point,
    max_approx_drift,
    r_opt_approx,
    r_opt_exact,
    search_bound,
    strength_intervals,
)

__version__ = "0.1.0"

__all__ = [
    "BracketError",
    "BudgetPoint",
    "CutoffPoint",
    "DriftSpec",
    "Epsilon",
    "PartitionScheme",
    "QuadratureError",
    "RunRecord",
    "RuntimeConstantBracket",
    "SimConfig",
    "StrengthInterval",
    "SummaryStats",
    "UnaryOperatorDistribution",
    "adaptive_simpson",
    "approx_drift",
    "approx_strength_table",
    "approx_drift_closed",
    "approx_drift_general",
    "approx_drift_via_integral",
    "brute_force_hitting_time",
    "condensed_step",
    "consecutive_cutoffs",
    "constant_bracket",
    "cutoff_point",
    "default_partition",
    "dense_partition",
    "drift_constant_ck",
    "drift_lower_bound",
    "drift_second_derivative",
    "drift_upper_bound",
    "exact_drift",
    "exact_drift_profile",
    "exact_drift_rational",
    "exact_strength_table",
    "fixed_budget_estimate",
    "flip_r",
    "harmonic_runtime_term",
    "lower_bound_constant",
    "max_approx_drift",
    "partition_from_cutoff_indices",
    "r_opt_approx",
    "r_opt_exact",
    "rls_fixed_budget_closed_form",
    "rls_strength_table",
    "run_algorithm",
    "runtime_estimate",
    "sample_unary_operator",
    "search_bound",
    "strength_intervals",
    "summarize_runtimes",
    "tail_integral",
    "upper_bound_constant",
]
