"""EM and SAGE: fast near a good start, lost from a random one.

Both estimators alternate per-source expectation and grid-restricted
maximization steps.  Started at the true angles they only need to polish
amplitudes (SAGE in a handful of sweeps, EM in a few dozen); started at
random grid angles they usually converge to the wrong tuple.

Run: python demos/04_em_sage_initialization.py
"""

import numpy as np

from bayesaoa import (
    AngleGrid,
    Scenario,
    em_estimate,
    generate_snapshot,
    good_init,
    random_init,
    sage_estimate,
    score_accuracy,
)
from bayesaoa.bench import draw_truth


def run_batch(estimate, init_for, label, runs=20):
    grid = AngleGrid()
    rng = np.random.default_rng(7)
    exact = 0
    iterations = []
    for _ in range(runs):
        truth = draw_truth(grid, 3, rng, decidable=True)
        scenario = Scenario(num_antennas=8, angles=truth, noise_variance=1e-3)
        z = generate_snapshot(scenario, seed=int(rng.integers(2**63))).z
        init = init_for(truth, grid, rng)
        report = estimate(z, init, grid, scenario=scenario)
        acc_theta, _ = score_accuracy(report.params, truth, scenario.amplitudes)
        exact += bool(np.all(acc_theta))
        iterations.append(report.iterations_to_converge)
    print(
        f"{label:<14} exact {exact:2d}/{runs}   "
        f"mean sweeps {np.mean(iterations):6.1f}"
    )


def main():
    print("N=8 antennas, 3 sources, noise variance 1e-3, 20 seeded runs\n")

    def ideal(truth, grid, rng):
        return good_init(truth, grid)

    def random_start(truth, grid, rng):
        return random_init(grid, 3, rng)

    print("-- started at the true angles (amplitude polishing only) --")
    run_batch(em_estimate, ideal, "EM / good")
    run_batch(sage_estimate, ideal, "SAGE / good")

    print("\n-- started at random grid angles --")
    run_batch(em_estimate, random_start, "EM / random")
    run_batch(sage_estimate, random_start, "SAGE / random")

    print("\nSAGE refreshes the shared residual after each source, which")
    print("is why it settles in far fewer sweeps than EM; neither survives")
    print("a random start reliably, which is what motivates a search that")
    print("needs no initialization at all.")


if __name__ == "__main__":
    main()
