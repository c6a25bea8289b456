"""Sequential Bayesian angle search with a TPE surrogate.

Seeds a history with random angle tuples, then repeatedly splits it at
the score quantile, models good and bad tuples with per-dimension Parzen
mixtures, and proposes the candidate with the best good/bad density
ratio.  One snapshot, full trace, then a small accuracy batch against
the exhaustive reference.

Run: python demos/05_bayes_search.py
"""

import numpy as np

from bayesaoa import (
    AngleGrid,
    BayesRunConfig,
    Objective,
    Scenario,
    TpeState,
    bayes_aoa,
    brute_force_estimate,
    generate_snapshot,
    propose_candidate,
)
from bayesaoa.bench import draw_truth


def traced_search(z, grid, scenario, iterations=200, seed=0):
    """Reimplements the search loop with printing, for the walkthrough."""
    rng = np.random.default_rng(seed)
    objective = Objective(z, scenario)
    state = TpeState(gamma=0.25, rng=rng)
    best_theta, best_score = None, np.inf
    for _ in range(20):
        theta = rng.choice(grid.points, size=3, replace=False)
        score = objective(theta)
        state.add(theta, score)
        if score < best_score:
            best_theta, best_score = theta, score
    print(f"after 20 random draws: best J = {best_score:.4f} "
          f"at {np.sort(best_theta).round(2)}")
    for k in range(21, iterations + 1):
        theta = propose_candidate(state, grid, n_candidates=24)
        score = objective(theta)
        state.add(theta, score)
        if score < best_score:
            best_theta, best_score = theta, score
            print(f"  k={k:4d}: improved to J = {best_score:.6f} "
                  f"at {np.sort(best_theta).round(2)} "
                  f"(split threshold f* = {state.f_star:.4f})")
    return np.sort(best_theta), best_score, objective.evals


def main():
    grid = AngleGrid()
    truth = grid.points[[8, 18, 27]]
    scenario = Scenario(num_antennas=8, angles=truth, noise_variance=1e-6)
    z = generate_snapshot(scenario, seed=11).z

    print(f"truth: {np.round(truth, 2)}\n")
    print("-- one traced run, 200 evaluations --")
    theta_hat, best, evals = traced_search(z, grid, scenario)
    print(f"\nresult after {evals} evaluations: {theta_hat.round(2)}")

    theta_bf, evals_bf = brute_force_estimate(z, grid, 3, scenario)
    print(f"exhaustive reference ({evals_bf} evaluations): "
          f"{np.sort(theta_bf).round(2)}")

    print("\n-- accuracy over 10 seeded runs, 1000-evaluation budget --")
    rng = np.random.default_rng(1)
    hits = 0
    for j in range(10):
        truth = draw_truth(grid, 3, rng)
        scenario = Scenario(num_antennas=8, angles=truth, noise_variance=1e-6)
        z = generate_snapshot(scenario, seed=int(rng.integers(2**63))).z
        config = BayesRunConfig(num_sources=3, seed=int(rng.integers(2**63)))
        report = bayes_aoa(z, grid, config, scenario)
        hits += np.array_equal(np.sort(report.theta), truth)
    print(f"exact recoveries: {hits}/10 at 1000 of 4960 evaluations each")


if __name__ == "__main__":
    main()
