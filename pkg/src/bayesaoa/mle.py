"""EM and SAGE iterative maximum-likelihood baselines.

Both estimators alternate a per-source expectation step, which credits
each source with its own steering contribution plus the shared residual,
and a maximization step, which re-picks the source angle on the grid and
refits its amplitude.  EM refreshes the shared residual once per sweep;
SAGE refreshes it after every source, which converges in fewer sweeps.
Both are deterministic given the snapshot and the initialization, and
both inherit the classic weakness probed here: sensitivity to where the
iteration starts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import AngleGrid
from .signal_model import Scenario, array_geometry


@dataclass(eq=False)
class MleParams:
    """Per-source angle and amplitude estimates at some iteration."""

    theta: np.ndarray
    r: np.ndarray
    iteration: int = 0

    def __post_init__(self):
        self.theta = np.atleast_1d(np.asarray(self.theta, dtype=float))
        self.r = np.atleast_1d(np.asarray(self.r, dtype=complex))
        if self.theta.shape != self.r.shape:
            raise ValueError("theta and r must have the same length")


@dataclass(eq=False)
class MleReport:
    """Final parameters plus convergence and (optional) accuracy flags."""

    params: MleParams
    iterations_to_converge: int
    converged: bool
    acc_theta: np.ndarray = None   # per-source booleans, set by scoring
    acc_r: np.ndarray = None
    residual_norms: list = None    # ||z - D r|| after each sweep


def good_init(truth_thetas, grid: AngleGrid) -> MleParams:
    """Ideal initialization: the true angles with unit amplitudes.

    Starting anywhere else on the grid, even one step off, leaves the
    grid-restricted maximization stuck near the start, so "good" here
    means the best case an informed system could supply.  The amplitude
    polishing that remains is what the iteration counts measure.
    """
    truth_thetas = np.atleast_1d(np.asarray(truth_thetas, dtype=float))
    return MleParams(
        theta=truth_thetas.copy(),
        r=np.ones(truth_thetas.size, dtype=complex),
    )


def random_init(grid: AngleGrid, num_sources: int, rng) -> MleParams:
    """Uniformly random distinct grid angles, unit amplitudes."""
    theta = rng.choice(grid.points, size=num_sources, replace=False)
    return MleParams(theta=theta, r=np.ones(num_sources, dtype=complex))


def _mle_loop(z, init, grid, epsilon, max_iterations, scenario, sage):
    z = np.asarray(z, dtype=complex)
    if len(np.unique(init.theta)) != init.theta.size:
        raise ValueError("initial angles must be pairwise distinct")
    positions, wavelength = array_geometry(z, scenario)
    n = len(z)
    wavenumber = 2.0 * np.pi / wavelength
    # Steering vectors for every grid point, one column per candidate.
    A = np.exp(1j * wavenumber * np.outer(positions, np.sin(grid.points)))

    theta = init.theta.copy()
    r = init.r.copy()
    num_sources = theta.size
    D = np.exp(1j * wavenumber * np.outer(positions, np.sin(theta)))

    converged = False
    iterations = max_iterations
    residual_norms = []
    for k in range(1, max_iterations + 1):
        theta_prev = theta.copy()
        r_prev = r.copy()
        if sage:
            # The updating source absorbs the full refreshed residual.
            for m in range(num_sources):
                residual = z - D @ r
                z_m = D[:, m] * r[m] + residual
                best = int(np.argmax(np.abs(A.conj().T @ z_m)))
                theta[m] = grid.points[best]
                D[:, m] = A[:, best]
                r[m] = D[:, m].conj() @ z_m / n
        else:
            # Plain EM: expectation steps share the previous parameters.
            # The residual must be split across sources; crediting it in
            # full to each one makes the sweep an expansion (spectral
            # radius up to 2) instead of a contraction.
            residual = (z - D @ r) / num_sources
            z_all = D * r[None, :] + residual[:, None]
            for m in range(num_sources):
                best = int(np.argmax(np.abs(A.conj().T @ z_all[:, m])))
                theta[m] = grid.points[best]
                D[:, m] = A[:, best]
                r[m] = D[:, m].conj() @ z_all[:, m] / n
        residual_norms.append(float(np.linalg.norm(z - D @ r)))
        change = max(
            float(np.max(np.abs(theta - theta_prev))),
            float(np.max(np.abs(r - r_prev))),
        )
        if change <= epsilon:
            converged = True
            iterations = k
            break

    params = MleParams(theta=theta, r=r, iteration=iterations)
    return MleReport(
        params=params,
        iterations_to_converge=iterations,
        converged=converged,
        residual_norms=residual_norms,
    )


def em_estimate(
    z,
    init: MleParams,
    grid: AngleGrid,
    epsilon: float = 1e-6,
    max_iterations: int = 1000,
    scenario: Scenario = None,
) -> MleReport:
    """EM iteration: one shared residual per sweep over all sources.

    Stops when the largest parameter change (angles in radians,
    amplitudes by complex modulus) drops to ``epsilon``, or at the sweep
    cap with ``converged=False``.
    """
    return _mle_loop(z, init, grid, epsilon, max_iterations, scenario, sage=False)


def sage_estimate(
    z,
    init: MleParams,
    grid: AngleGrid,
    epsilon: float = 1e-6,
    max_iterations: int = 1000,
    scenario: Scenario = None,
) -> MleReport:
    """SAGE iteration: residual refreshed after each source update."""
    return _mle_loop(z, init, grid, epsilon, max_iterations, scenario, sage=True)


def score_accuracy(
    params: MleParams,
    truth_thetas,
    truth_r,
    r_tolerance: float = 0.05,
):
    """Per-source exact-angle and amplitude-within-tolerance booleans.

    Sources are aligned by sorting both angle sets; amplitudes follow
    their angles.  Returns ``(acc_theta, acc_r)`` boolean arrays.
    """
    truth_thetas = np.atleast_1d(np.asarray(truth_thetas, dtype=float))
    truth_r = np.atleast_1d(np.asarray(truth_r, dtype=complex))
    est_order = np.argsort(params.theta)
    true_order = np.argsort(truth_thetas)
    acc_theta = params.theta[est_order] == truth_thetas[true_order]
    acc_r = (
        np.abs(params.r[est_order] - truth_r[true_order]) <= r_tolerance
    )
    return acc_theta, acc_r
