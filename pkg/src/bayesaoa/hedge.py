"""Online selection of the early-stopping threshold by multiplicative weights.

Each candidate gradient threshold is an expert.  Every round, all experts
estimate the angles of the same snapshot with independent RNG streams;
an expert's loss blends its mistake indicator with how long it ran, and
its weight decays as ``w <- w * beta**loss``.  The weights concentrate on
the threshold with the best accuracy/cost trade-off for the current
antenna count and noise level, and can be reset when those change.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .bayes import BayesRunConfig, bayes_aoa_es
from .grid import AngleGrid
from .objective import SingularGram
from .signal_model import Scenario, generate_snapshot
from .tpe import ResampleExhausted

DEFAULT_THRESHOLDS = (1.0, 0.5, 0.1, 0.05, 0.01)


@dataclass(frozen=True)
class ExpertPool:
    """Candidate thresholds with their multiplicative weights."""

    thresholds: tuple
    weights: tuple
    beta: float = 0.5
    zeta: float = 0.1
    t: int = 0

    def __post_init__(self):
        if len(self.thresholds) != len(self.weights):
            raise ValueError("thresholds and weights must have equal length")
        if any(eps <= 0 for eps in self.thresholds):
            raise ValueError("thresholds must be positive")
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must stay positive")
        if not 0.0 < self.beta < 1.0:
            raise ValueError("beta must lie strictly between 0 and 1")
        if not 0.0 <= self.zeta <= 1.0:
            raise ValueError("zeta must lie in [0, 1]")

    @property
    def probabilities(self) -> np.ndarray:
        w = np.asarray(self.weights, dtype=float)
        return w / w.sum()

    @property
    def best_expert(self) -> int:
        """Index of the highest-weight expert (first on ties)."""
        return int(np.argmax(self.weights))


def make_pool(
    thresholds=DEFAULT_THRESHOLDS, beta: float = 0.5, zeta: float = 0.1
) -> ExpertPool:
    """Fresh pool with unit weights."""
    thresholds = tuple(float(e) for e in thresholds)
    return ExpertPool(
        thresholds=thresholds,
        weights=(1.0,) * len(thresholds),
        beta=beta,
        zeta=zeta,
    )


def apply_losses(pool: ExpertPool, losses) -> ExpertPool:
    """Multiplicative update ``w <- w * beta**loss``, advancing the round."""
    losses = np.asarray(losses, dtype=float)
    if losses.shape != (len(pool.weights),):
        raise ValueError("one loss per expert required")
    if np.any(losses < 0):
        raise ValueError("losses must be non-negative")
    new_weights = tuple(
        w * pool.beta**loss for w, loss in zip(pool.weights, losses)
    )
    return replace(pool, weights=new_weights, t=pool.t + 1)


def reset_on_change(pool: ExpertPool) -> ExpertPool:
    """Uniform weights again (round counter kept) after N or noise change."""
    return replace(pool, weights=(1.0,) * len(pool.thresholds))


@dataclass(eq=False)
class RoundOutcome:
    """Per-expert results of one Hedge round."""

    thresholds: tuple
    theta_hats: list
    stop_iterations: np.ndarray
    errs: np.ndarray
    losses: np.ndarray
    probabilities: np.ndarray   # normalized weights after the update


def _expert_seed(base_seed: int, round_index: int, expert_index: int) -> int:
    ss = np.random.SeedSequence((base_seed, round_index, expert_index))
    return int(ss.generate_state(1, np.uint64)[0])


def hedge_round(
    pool: ExpertPool,
    z,
    truth_thetas,
    grid: AngleGrid,
    config: BayesRunConfig,
    scenario: Scenario = None,
):
    """Run every expert on one snapshot and update the weights.

    All experts see the same ``z`` but use independent RNG streams, so
    loss differences reflect the thresholds rather than signal luck.  An
    expert is wrong (``err = 1``) unless its sorted estimate matches the
    sorted truth exactly; an expert whose run fails outright gets loss 1.

    Returns the updated pool and the round outcome.
    """
    truth = np.sort(np.atleast_1d(np.asarray(truth_thetas, dtype=float)))
    if not grid.contains(truth):
        raise ValueError("truth angles must lie on the grid to score errors")
    k_cap = config.max_iterations

    theta_hats = []
    stop_iterations = np.zeros(len(pool.thresholds), dtype=int)
    errs = np.zeros(len(pool.thresholds), dtype=int)
    losses = np.zeros(len(pool.thresholds))
    for b, eps in enumerate(pool.thresholds):
        cfg = replace(
            config,
            early_stopping=True,
            grad_threshold=eps,
            seed=_expert_seed(config.seed, pool.t, b),
        )
        try:
            report = bayes_aoa_es(z, grid, cfg, scenario)
        except (SingularGram, ResampleExhausted):
            theta_hats.append(None)
            stop_iterations[b] = k_cap
            errs[b] = 1
            losses[b] = 1.0
            continue
        theta_hats.append(report.theta)
        stop_iterations[b] = report.stop_iteration
        errs[b] = 0 if np.array_equal(np.sort(report.theta), truth) else 1
        losses[b] = (
            (1.0 - pool.zeta) * errs[b]
            + pool.zeta * stop_iterations[b] / k_cap
        )

    updated = apply_losses(pool, losses)
    outcome = RoundOutcome(
        thresholds=pool.thresholds,
        theta_hats=theta_hats,
        stop_iterations=stop_iterations,
        errs=errs,
        losses=losses,
        probabilities=updated.probabilities,
    )
    return updated, outcome


@dataclass(eq=False)
class HedgeTrajectory:
    """Round-by-round record of a Hedge run."""

    pool: ExpertPool            # state after the last round
    outcomes: list
    weights: np.ndarray         # (rounds+1, experts), row 0 is the start

    @property
    def probabilities(self) -> np.ndarray:
        return self.weights / self.weights.sum(axis=1, keepdims=True)

    @property
    def best_threshold(self) -> float:
        return self.pool.thresholds[self.pool.best_expert]


def run_hedge(
    pool: ExpertPool,
    scenarios,
    grid: AngleGrid,
    config: BayesRunConfig,
    seed: int = 0,
) -> HedgeTrajectory:
    """Iterate Hedge rounds over fresh snapshots, one scenario per round.

    ``scenarios`` is a sequence of ground-truth scenarios (repeat one to
    keep conditions fixed).  Snapshot seeds derive from ``seed``; expert
    streams derive from ``config.seed`` and the round counter.
    """
    scenarios = list(scenarios)
    if not scenarios:
        raise ValueError("need at least one scenario")
    snap_seeds = np.random.SeedSequence(seed).generate_state(
        len(scenarios), np.uint64
    )
    weights = [np.asarray(pool.weights, dtype=float)]
    outcomes = []
    for scenario, snap_seed in zip(scenarios, snap_seeds):
        snapshot = generate_snapshot(scenario, int(snap_seed))
        pool, outcome = hedge_round(
            pool, snapshot.z, scenario.angles, grid, config, scenario
        )
        outcomes.append(outcome)
        weights.append(np.asarray(pool.weights, dtype=float))
    return HedgeTrajectory(
        pool=pool, outcomes=outcomes, weights=np.array(weights)
    )


def trajectory_to_csv(trajectory: HedgeTrajectory, fileobj) -> None:
    """Write (round, expert, weight, loss, stop_iteration, err) rows."""
    fileobj.write("round,expert_threshold,weight,loss,stop_iteration,err\n")
    for t, outcome in enumerate(trajectory.outcomes, start=1):
        for b, eps in enumerate(outcome.thresholds):
            fileobj.write(
                f"{t},{eps!r},{trajectory.weights[t, b]!r},"
                f"{outcome.losses[b]!r},{outcome.stop_iterations[b]},"
                f"{outcome.errs[b]}\n"
            )
