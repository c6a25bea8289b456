"""Angle-of-arrival estimation toolkit for uniform linear arrays.

Simulates array snapshots, evaluates the least-squares angle objective,
and estimates source angles with a TPE-based Bayesian search (optionally
early-stopped on a flat numerical gradient), EM/SAGE baselines, and an
exhaustive grid search.  A Hedge expert pool adapts the early-stopping
threshold online, and a benchmark harness sweeps seeded experiments into
CSV/JSON tables.
"""

from .bayes import (
    BayesRunConfig,
    BayesRunReport,
    bayes_aoa,
    bayes_aoa_es,
    es_threshold_sweep,
    grad,
)
from .grid import AngleGrid, brute_force_estimate, enumerate_combinations
from .hedge import (
    DEFAULT_THRESHOLDS,
    ExpertPool,
    HedgeTrajectory,
    RoundOutcome,
    apply_losses,
    hedge_round,
    make_pool,
    reset_on_change,
    run_hedge,
    trajectory_to_csv,
)
from .mle import (
    MleParams,
    MleReport,
    em_estimate,
    good_init,
    random_init,
    sage_estimate,
    score_accuracy,
)
from .objective import (
    Objective,
    ObjectiveEval,
    SingularGram,
    projection_matrix,
    recover_amplitudes,
)
from .signal_model import (
    DuplicateAngles,
    Scenario,
    Snapshot,
    from_config,
    generate_snapshot,
    steering_matrix,
    steering_vector,
    to_config,
)
from .tpe import (
    Observation,
    ParzenMixture,
    ResampleExhausted,
    TpeState,
    density,
    expected_improvement_scores,
    propose_candidate,
    split_history,
)

__version__ = "0.1.0"

__all__ = [
    "AngleGrid",
    "BayesRunConfig",
    "BayesRunReport",
    "DEFAULT_THRESHOLDS",
    "DuplicateAngles",
    "ExpertPool",
    "HedgeTrajectory",
    "MleParams",
    "MleReport",
    "Objective",
    "ObjectiveEval",
    "Observation",
    "ParzenMixture",
    "ResampleExhausted",
    "RoundOutcome",
    "Scenario",
    "SingularGram",
    "Snapshot",
    "TpeState",
    "apply_losses",
    "bayes_aoa",
    "bayes_aoa_es",
    "brute_force_estimate",
    "density",
    "em_estimate",
    "enumerate_combinations",
    "es_threshold_sweep",
    "expected_improvement_scores",
    "from_config",
    "generate_snapshot",
    "good_init",
    "grad",
    "hedge_round",
    "make_pool",
    "projection_matrix",
    "propose_candidate",
    "random_init",
    "recover_amplitudes",
    "reset_on_change",
    "run_hedge",
    "sage_estimate",
    "score_accuracy",
    "split_history",
    "steering_matrix",
    "steering_vector",
    "to_config",
    "trajectory_to_csv",
]
