"""Analysis toolkit for threshold selection policies in the k-secretary
problem: exact finite-n formulas, brute-force enumeration oracle, seeded
Monte Carlo, large-n asymptotics, and (r, c) parameter optimization."""

from ._kernels import backend_name
from .asymptotic import (
    AsymptoticCoeffs,
    KernelSpec,
    TailSumBounds,
    antiderivative_F,
    cr_optimistic_k2_asym,
    cr_single_ref_asym,
    kernel_f,
    kleinberg_bound,
    optimistic_sum_bounds,
    p_dom_asym,
    slot_probs_asym,
)
from .core import (
    AcceptanceRecord,
    ArrivalOrder,
    PolicyParams,
    ProbTable,
    RangeError,
    SizeError,
    enumerate_arrival_orders,
    random_arrival_order,
    validate_params,
)
from .exact import (
    DominatingProbSpec,
    OptimisticK2Report,
    classical_secretary_prob,
    cr_optimistic_k2_exact,
    cr_single_ref_exact,
    delta_optimistic_k2,
    falling_factorial,
    hypergeo_all_blue,
    p2_optimistic_k2,
    p_dom_exact,
    p_item_exact,
    slot_weights,
)
from .montecarlo import McEstimate, mc_estimate
from .optimizer import OptimumRow, build_table, optimize_optimistic_k2, optimize_single_ref
from .oracle import (
    OracleTable,
    VerificationReport,
    count_P1_minus_P1prime,
    oracle_table,
    verify_identities,
)
from .policies import Policy, PolicyKind, payoff_topk, run_optimistic, run_single_ref

__version__ = "0.1.0"

__all__ = [
    "AcceptanceRecord",
    "ArrivalOrder",
    "AsymptoticCoeffs",
    "DominatingProbSpec",
    "KernelSpec",
    "McEstimate",
    "OptimisticK2Report",
    "OptimumRow",
    "OracleTable",
    "Policy",
    "PolicyKind",
    "PolicyParams",
    "ProbTable",
    "RangeError",
    "SizeError",
    "TailSumBounds",
    "VerificationReport",
    "antiderivative_F",
    "backend_name",
    "build_table",
    "classical_secretary_prob",
    "count_P1_minus_P1prime",
    "cr_optimistic_k2_asym",
    "cr_optimistic_k2_exact",
    "cr_single_ref_asym",
    "cr_single_ref_exact",
    "delta_optimistic_k2",
    "enumerate_arrival_orders",
    "falling_factorial",
    "hypergeo_all_blue",
    "kernel_f",
    "kleinberg_bound",
    "mc_estimate",
    "optimistic_sum_bounds",
    "optimize_optimistic_k2",
    "optimize_single_ref",
    "oracle_table",
    "p2_optimistic_k2",
    "p_dom_asym",
    "p_dom_exact",
    "p_item_exact",
    "payoff_topk",
    "random_arrival_order",
    "run_optimistic",
    "run_single_ref",
    "slot_probs_asym",
    "slot_weights",
    "validate_params",
    "verify_identities",
]
