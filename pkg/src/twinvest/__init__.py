"""twinvest: contracts, investment regimes and dynamics for trainable AI twins.

A worker can train an AI system on their own work.  Training raises the
quality of outcomes (with and without the worker in the loop) and lowers
the worker's cost of effort, but it also erodes the wage the worker can
command and can make the standalone system good enough to replace them.
This package solves the resulting two-outcome limited-liability
contracting game end to end: optimal contracts, investment regimes,
displacement thresholds, two-period myopic dynamics, degradation/rehire
cycles, and a continuous-effort variant, each certified against
brute-force oracles.
"""

from .contracts import (
    Contract,
    SurplusBreakdown,
    agent_surplus,
    displacement_deterrent_check,
    displacement_deterrent_margin,
    effort_inducement_check,
    optimal_contract,
    outcome_separability,
    principal_surplus,
    should_offer_twin,
    social_total_surplus,
    surpluses,
)
from .continuous import (
    ContinuousEffortModel,
    EffortSolution,
    contract_for_effort,
    foc_residual,
    principal_optimal_effort,
    validate_continuous,
)
from .dynamics import (
    AgentKind,
    EffortLevel,
    PeriodRecord,
    TimelineTrace,
    degradation_deterrent_check,
    myopic_investment,
    principal_period1_contract,
    rehire_cycle_length,
    sample_outcomes,
    shirk_check,
    simulate_cycles,
    simulate_two_period,
)
from .families import ParametricFamily
from .investment import (
    InvestmentSolution,
    RegimeLabel,
    WageSlopeDiagnostics,
    classify_regime,
    deterrent_sign_change_roots,
    displacement_threshold,
    optimal_investment,
    wage_slope_diagnostics,
)
from .model import (
    EvaluatedPoint,
    ModelPrimitives,
    ValidationReport,
    evaluate,
    validate,
)
from .oracle import (
    OracleReport,
    brute_force_contract,
    brute_force_investment,
    brute_force_two_period,
    run_certification,
)
from .sweep import RegimeMap, SweepAxis, regime_sweep

__version__ = "0.1.0"

__all__ = [
    "AgentKind",
    "Contract",
    "ContinuousEffortModel",
    "EffortLevel",
    "EffortSolution",
    "EvaluatedPoint",
    "InvestmentSolution",
    "ModelPrimitives",
    "OracleReport",
    "ParametricFamily",
    "PeriodRecord",
    "RegimeLabel",
    "RegimeMap",
    "SurplusBreakdown",
    "SweepAxis",
    "TimelineTrace",
    "ValidationReport",
    "WageSlopeDiagnostics",
    "agent_surplus",
    "brute_force_contract",
    "brute_force_investment",
    "brute_force_two_period",
    "classify_regime",
    "contract_for_effort",
    "degradation_deterrent_check",
    "deterrent_sign_change_roots",
    "displacement_deterrent_check",
    "displacement_deterrent_margin",
    "displacement_threshold",
    "effort_inducement_check",
    "evaluate",
    "foc_residual",
    "myopic_investment",
    "optimal_contract",
    "optimal_investment",
    "outcome_separability",
    "principal_optimal_effort",
    "principal_period1_contract",
    "principal_surplus",
    "regime_sweep",
    "rehire_cycle_length",
    "sample_outcomes",
    "run_certification",
    "shirk_check",
    "should_offer_twin",
    "simulate_cycles",
    "simulate_two_period",
    "social_total_surplus",
    "surpluses",
    "validate",
    "validate_continuous",
    "wage_slope_diagnostics",
]
