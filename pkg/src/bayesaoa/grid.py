"""Discrete angle search grid and the exhaustive brute-force estimator."""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass

import numpy as np

from .objective import Objective, SingularGram
from .signal_model import Scenario


@dataclass(frozen=True)
class AngleGrid:
    """Evenly spaced candidate angles ``lower + j*resolution``.

    The default grid covers (-pi/2, pi/2) at 0.1 rad resolution with 32
    points, so three-source searches enumerate C(32, 3) = 4960 candidate
    tuples.
    """

    lower: float = -1.57
    resolution: float = 0.1
    count: int = 32

    def __post_init__(self):
        if self.resolution <= 0:
            raise ValueError("resolution must be positive")
        if self.count < 1:
            raise ValueError("count must be at least 1")

    @property
    def points(self) -> np.ndarray:
        return self.lower + self.resolution * np.arange(self.count)

    @property
    def upper(self) -> float:
        """Largest grid point."""
        return self.lower + self.resolution * (self.count - 1)

    @property
    def width(self) -> float:
        """Span of the grid, upper minus lower."""
        return self.resolution * (self.count - 1)

    def nearest(self, values) -> np.ndarray:
        """Snap values to the closest grid points (exact grid floats)."""
        values = np.asarray(values, dtype=float)
        idx = np.rint((values - self.lower) / self.resolution).astype(int)
        idx = np.clip(idx, 0, self.count - 1)
        return self.points[idx]

    def contains(self, values, tol: float = 1e-9) -> bool:
        """True when every value coincides with a grid point."""
        values = np.atleast_1d(np.asarray(values, dtype=float))
        return bool(np.all(np.abs(values - self.nearest(values)) <= tol))


def enumerate_combinations(grid: AngleGrid, num_sources: int):
    """Yield every strictly increasing tuple of ``num_sources`` grid points.

    Tuples come out in lexicographic order, each exactly once; there are
    C(count, num_sources) of them.
    """
    if num_sources > grid.count:
        raise ValueError(
            f"cannot pick {num_sources} distinct angles from a "
            f"{grid.count}-point grid"
        )
    points = grid.points
    for combo in itertools.combinations(range(grid.count), num_sources):
        yield points[list(combo)]


def brute_force_estimate(
    z,
    grid: AngleGrid,
    num_sources: int,
    scenario: Scenario = None,
):
    """Exhaustive argmin of the LS residual over all grid combinations.

    Returns ``(theta_hat, evals)`` where ``evals`` is always the full
    combination count.  Ties keep the first (lexicographically smallest)
    tuple.  Combinations with a singular Gram matrix are skipped and
    counted; a single warning summarizes them.
    """
    objective = Objective(z, scenario)
    best_theta = None
    best_score = np.inf
    evals = 0
    skipped = 0
    for theta in enumerate_combinations(grid, num_sources):
        evals += 1
        try:
            score = objective(theta)
        except SingularGram:
            skipped += 1
            continue
        if score < best_score:
            best_score = score
            best_theta = theta
    if skipped:
        warnings.warn(
            f"brute force skipped {skipped} combinations with singular "
            "Gram matrices",
            RuntimeWarning,
        )
    if best_theta is None:
        raise SingularGram("every grid combination had a singular Gram matrix")
    return best_theta, evals
