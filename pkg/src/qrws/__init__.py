"""Simulation and phase-robustness analysis of quantum random-walk search on the hypercube."""

from .coins import (
    TAU,
    CoinMatrix,
    CoinParams,
    PhaseRelation,
    Relation,
    alt_traversing_coin,
    eval_phase_relation,
    householder_reflection,
    identity_coin,
    marking_coin,
    reduce_angle,
    traversing_coin,
)
from .landscape import (
    LandscapeSample,
    ProbabilityCurve,
    RobustnessReport,
    ThresholdMode,
    check_phase_equivalence,
    landscape_grid,
    optimize_alpha,
    probability_curve,
    robustness_width,
    sample_landscape,
)
from .walk import (
    Circuit,
    ConsistencyError,
    RunResult,
    WalkConfig,
    WalkState,
    apply_conditional_coins,
    apply_shift,
    build_full_step_unitary,
    dense_success_probability,
    iteration_count,
    qrws_run,
    success_probabilities,
    uniform_initial_state,
)

__version__ = "0.1.0"
