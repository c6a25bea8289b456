"""Least-squares angle objective and complex projection algebra.

For candidate angles ``theta`` the steering matrix ``D(theta)`` spans the
signal subspace.  Projecting the snapshot ``z`` onto it splits the energy
into an explained part ``f = z^H P z`` and a residual ``J = z^H (I-P) z``
with ``f + J = ||z||^2``.  Every estimator in this package minimizes
``J``; ``f`` is exposed for reporting.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .signal_model import Scenario, array_geometry, steering_matrix

# Gram matrices with a larger condition estimate are treated as singular.
COND_LIMIT = 1e12


class SingularGram(np.linalg.LinAlgError):
    """The M-by-M Gram matrix D^H D is numerically singular."""


@dataclass(eq=False)
class ObjectiveEval:
    """One objective evaluation: explained energy and LS residual."""

    theta: np.ndarray
    value: float      # f = z^H P z
    ls_error: float   # J = z^H (I - P) z


def _gram_and_correlation(thetas, z, positions, wavelength):
    D = np.exp(
        1j * (2.0 * np.pi / wavelength) * np.outer(positions, np.sin(thetas))
    )
    G = D.conj().T @ D
    c = D.conj().T @ z
    return D, G, c


def _check_conditioning(G) -> None:
    w = np.linalg.eigvalsh(G)
    if w[0] <= 0 or w[-1] > COND_LIMIT * w[0]:
        raise SingularGram(
            f"Gram matrix condition estimate exceeds {COND_LIMIT:g}"
        )


def projection_matrix(thetas, scenario: Scenario) -> np.ndarray:
    """Orthogonal projector onto the column space of D(theta).

    Returns the dense N-by-N matrix ``D (D^H D)^{-1} D^H``.

    Raises
    ------
    SingularGram
        If the Gram matrix has condition estimate above ``COND_LIMIT``.
    """
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    D = steering_matrix(thetas, scenario)
    G = D.conj().T @ D
    _check_conditioning(G)
    return D @ np.linalg.solve(G, D.conj().T)


def recover_amplitudes(thetas, z, scenario: Scenario = None) -> np.ndarray:
    """Least-squares amplitudes ``(D^H D)^{-1} D^H z`` at fixed angles.

    The residual ``z - D r_hat`` is orthogonal to every column of D.
    """
    z = np.asarray(z, dtype=complex)
    positions, wavelength = array_geometry(z, scenario)
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    _, G, c = _gram_and_correlation(thetas, z, positions, wavelength)
    _check_conditioning(G)
    return np.linalg.solve(G, c)


class Objective:
    """Counting evaluator of the LS objective for one snapshot.

    Each instance owns its evaluation counter, so concurrent runs keep
    independent counts; all estimators report cost as the number of
    evaluations recorded here.  Calling the instance returns the residual
    ``J(theta)`` (the minimized quantity); :meth:`evaluate` returns the
    full record.
    """

    def __init__(self, z, scenario: Scenario = None):
        self.z = np.asarray(z, dtype=complex)
        self._positions, self._wavelength = array_geometry(self.z, scenario)
        self.norm_sq = float(np.real(np.vdot(self.z, self.z)))
        self.evals = 0

    def evaluate(self, thetas) -> ObjectiveEval:
        thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
        _, G, c = _gram_and_correlation(
            thetas, self.z, self._positions, self._wavelength
        )
        _check_conditioning(G)
        a = np.linalg.solve(G, c)
        f = float(np.real(np.vdot(c, a)))
        self.evals += 1
        return ObjectiveEval(theta=thetas, value=f, ls_error=self.norm_sq - f)

    def __call__(self, thetas) -> float:
        return self.evaluate(thetas).ls_error
