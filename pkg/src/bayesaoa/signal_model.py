"""Uniform linear array signal model: scenarios, steering vectors, snapshots.

A far-field source at angle ``theta`` (radians, measured from broadside)
hits an array of antennas at positions ``d_1 < ... < d_N`` with a
per-antenna phase shift of ``(2*pi/wavelength) * d_n * sin(theta)``.  The
received snapshot is ``z = D(theta) @ r + noise`` where ``D`` stacks one
steering vector per source and ``r`` holds the complex source amplitudes.
"""

from __future__ import annotations

import hashlib
import io
from dataclasses import dataclass

import numpy as np


class DuplicateAngles(ValueError):
    """Two source angles coincide, so the steering matrix loses rank."""


@dataclass(eq=False)
class Scenario:
    """Ground-truth problem instance for snapshot generation.

    Parameters
    ----------
    num_antennas : int
        Number of receiving antennas N.
    angles : array_like
        Source angles in radians, each inside (-pi/2, pi/2), pairwise
        distinct.  Length M with M <= N.
    amplitudes : array_like, optional
        Complex amplitude per source; defaults to 1+0j for every source.
    noise_variance : float
        Total per-component variance of the circularly-symmetric complex
        noise (split evenly between real and imaginary parts).
    wavelength : float
        Carrier wavelength; antenna positions use the same length unit.
    antenna_positions : array_like, optional
        Strictly increasing positions; defaults to a half-wavelength ULA
        ``d_n = (n-1) * wavelength / 2``.
    """

    num_antennas: int
    angles: np.ndarray
    amplitudes: np.ndarray = None
    noise_variance: float = 0.0
    wavelength: float = 2.0
    antenna_positions: np.ndarray = None

    def __post_init__(self):
        self.angles = np.atleast_1d(np.asarray(self.angles, dtype=float))
        if self.amplitudes is None:
            self.amplitudes = np.ones(self.num_sources, dtype=complex)
        self.amplitudes = np.atleast_1d(np.asarray(self.amplitudes, dtype=complex))
        if self.antenna_positions is None:
            self.antenna_positions = (
                np.arange(self.num_antennas) * self.wavelength / 2.0
            )
        self.antenna_positions = np.asarray(self.antenna_positions, dtype=float)
        self._validate()

    def _validate(self):
        if self.num_antennas < 1:
            raise ValueError("num_antennas must be positive")
        if self.num_sources > self.num_antennas:
            raise ValueError(
                f"need num_sources <= num_antennas, got M={self.num_sources} "
                f"> N={self.num_antennas}"
            )
        if self.amplitudes.shape != self.angles.shape:
            raise ValueError("amplitudes and angles must have the same length")
        if self.antenna_positions.shape != (self.num_antennas,):
            raise ValueError("antenna_positions must have length num_antennas")
        if np.any(np.abs(self.angles) >= np.pi / 2):
            raise ValueError("all angles must lie inside (-pi/2, pi/2)")
        if len(np.unique(self.angles)) != len(self.angles):
            raise DuplicateAngles("source angles must be pairwise distinct")
        if np.any(np.diff(self.antenna_positions) <= 0):
            raise ValueError("antenna_positions must be strictly increasing")
        if self.noise_variance < 0:
            raise ValueError("noise_variance must be non-negative")
        if self.wavelength <= 0:
            raise ValueError("wavelength must be positive")

    @property
    def num_sources(self) -> int:
        return len(self.angles)

    @property
    def scenario_id(self) -> str:
        """Stable short identifier derived from the scenario contents."""
        digest = hashlib.md5(to_config(self).encode("utf-8")).hexdigest()
        return digest[:12]


@dataclass(eq=False)
class Snapshot:
    """One received signal vector together with its RNG provenance."""

    z: np.ndarray
    seed: int
    scenario_id: str = ""

    def __post_init__(self):
        self.z = np.asarray(self.z, dtype=complex)


def array_geometry(z, scenario: Scenario = None):
    """Antenna positions and wavelength for a snapshot vector.

    Without a scenario the default half-wavelength ULA is assumed:
    positions ``0, 1, ..., N-1`` with wavelength 2.
    """
    if scenario is None:
        return np.arange(len(z), dtype=float), 2.0
    if len(z) != scenario.num_antennas:
        raise ValueError("snapshot length does not match num_antennas")
    return scenario.antenna_positions, scenario.wavelength


def steering_vector(theta: float, scenario: Scenario) -> np.ndarray:
    """Unit-modulus phase response of the array to a source at ``theta``.

    Entry n is ``exp(1j * (2*pi/wavelength) * d_n * sin(theta))``.
    """
    k = 2.0 * np.pi / scenario.wavelength
    return np.exp(1j * k * scenario.antenna_positions * np.sin(theta))


def steering_matrix(thetas, scenario: Scenario) -> np.ndarray:
    """Stack steering vectors for several sources into an N-by-M matrix.

    Raises
    ------
    DuplicateAngles
        If any two angles coincide (the matrix would be rank deficient).
    """
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    if len(np.unique(thetas)) != len(thetas):
        raise DuplicateAngles(f"duplicate angles in {thetas!r}")
    k = 2.0 * np.pi / scenario.wavelength
    phase = k * np.outer(scenario.antenna_positions, np.sin(thetas))
    return np.exp(1j * phase)


def generate_snapshot(scenario: Scenario, seed: int) -> Snapshot:
    """Draw ``z = D(theta) @ r + noise`` deterministically from ``seed``.

    The noise is circularly-symmetric complex Gaussian with total variance
    ``noise_variance`` per component, so each quadrature gets half of it.
    With ``noise_variance == 0`` the snapshot is exactly ``D @ r``.
    """
    clean = steering_matrix(scenario.angles, scenario) @ scenario.amplitudes
    rng = np.random.default_rng(seed)
    scale = np.sqrt(scenario.noise_variance / 2.0)
    noise = scale * (
        rng.standard_normal(scenario.num_antennas)
        + 1j * rng.standard_normal(scenario.num_antennas)
    )
    return Snapshot(z=clean + noise, seed=seed, scenario_id=scenario.scenario_id)


def _format_floats(values) -> str:
    return ", ".join(repr(float(v)) for v in values)


def to_config(scenario: Scenario) -> str:
    """Serialize a scenario to a plain-text ``key = value`` config."""
    lines = [
        f"num_antennas = {scenario.num_antennas}",
        f"angles = {_format_floats(scenario.angles)}",
        "amplitudes = " + ", ".join(repr(complex(a)) for a in scenario.amplitudes),
        f"noise_variance = {scenario.noise_variance!r}",
        f"wavelength = {scenario.wavelength!r}",
        f"antenna_positions = {_format_floats(scenario.antenna_positions)}",
    ]
    return "\n".join(lines) + "\n"


def from_config(text: str) -> Scenario:
    """Parse a scenario from the plain-text format of :func:`to_config`."""
    fields = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition("=")
        fields[key.strip()] = value.strip()
    try:
        return Scenario(
            num_antennas=int(fields["num_antennas"]),
            angles=[float(v) for v in fields["angles"].split(",")],
            amplitudes=[complex(v) for v in fields["amplitudes"].split(",")],
            noise_variance=float(fields["noise_variance"]),
            wavelength=float(fields["wavelength"]),
            antenna_positions=[
                float(v) for v in fields["antenna_positions"].split(",")
            ],
        )
    except KeyError as missing:
        raise ValueError(f"scenario config is missing field {missing}") from None


def snapshots_to_csv(snapshots, fileobj) -> None:
    """Write snapshots as CSV rows of (re, im) pairs per antenna.

    ``fileobj`` is any text file-like object.  All snapshots must share
    the same antenna count.
    """
    snapshots = list(snapshots)
    if not snapshots:
        return
    n = len(snapshots[0].z)
    header = ["seed", "scenario_id"]
    for i in range(n):
        header += [f"re_{i}", f"im_{i}"]
    fileobj.write(",".join(header) + "\n")
    for snap in snapshots:
        row = [str(snap.seed), snap.scenario_id]
        for v in snap.z:
            row += [repr(float(v.real)), repr(float(v.imag))]
        fileobj.write(",".join(row) + "\n")


def snapshots_to_csv_string(snapshots) -> str:
    buf = io.StringIO()
    snapshots_to_csv(snapshots, buf)
    return buf.getvalue()
