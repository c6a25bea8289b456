"""The least-squares angle objective and its geometry.

Shows the projection split f + J = ||z||^2, amplitude recovery at the true
angles, and a text rendering of the single-source objective landscape with
its peak at the true angle.

Run: python demos/02_objective_landscape.py
"""

import numpy as np

from bayesaoa import (
    AngleGrid,
    Objective,
    Scenario,
    generate_snapshot,
    projection_matrix,
    recover_amplitudes,
)


def section(title):
    print("\n" + "=" * 64)
    print(title)
    print("=" * 64)


def main():
    grid = AngleGrid()

    section("1. Projection split: explained energy + residual = total")
    scenario = Scenario(
        num_antennas=8, angles=[-0.77, 0.23, 1.03], noise_variance=1e-4
    )
    z = generate_snapshot(scenario, seed=1).z
    objective = Objective(z, scenario)
    at_truth = objective.evaluate(scenario.angles)
    print(f"||z||^2          = {objective.norm_sq:.6f}")
    print(f"f at truth       = {at_truth.value:.6f}")
    print(f"J at truth       = {at_truth.ls_error:.6f}")
    print(f"f + J            = {at_truth.value + at_truth.ls_error:.6f}")
    wrong = objective.evaluate([-0.47, 0.53, 0.93])
    print(f"J at wrong tuple = {wrong.ls_error:.6f}  (much larger)")

    section("2. Projector sanity at the true angles")
    P = projection_matrix(scenario.angles, scenario)
    print(f"P idempotent: {np.allclose(P @ P, P, atol=1e-10)}")
    print(f"P Hermitian:  {np.allclose(P, P.conj().T, atol=1e-10)}")
    print(f"trace(P) = {np.trace(P).real:.6f} (= number of sources)")

    section("3. Amplitude recovery by least squares")
    r_hat = recover_amplitudes(scenario.angles, z, scenario)
    print(f"true r: {scenario.amplitudes}")
    print(f"r_hat:  {r_hat.round(4)}")

    section("4. Single-source landscape across the grid")
    single = Scenario(num_antennas=8, angles=[0.23], noise_variance=1e-4)
    z1 = generate_snapshot(single, seed=2).z
    objective1 = Objective(z1, single)
    values = np.array([objective1.evaluate([p]).value for p in grid.points])
    peak = values.max()
    print("theta    f(theta)  profile")
    for point, value in zip(grid.points, values):
        bar = "#" * int(40 * value / peak)
        marker = " <- true angle" if abs(point - 0.23) < 1e-9 else ""
        print(f"{point:+.2f}  {value:8.4f}  {bar}{marker}")
    print(f"\nevaluations recorded by the objective: {objective1.evals}")


if __name__ == "__main__":
    main()
