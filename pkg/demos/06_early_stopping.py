"""Early stopping on a flat numerical gradient.

Every 100 iterations the search probes the residual's central-difference
gradient (2 evaluations per source) and halts once its largest component
drops below a threshold.  Looser thresholds stop earlier and cheaper;
tighter ones buy accuracy with more evaluations.  One shared trajectory
per run serves every threshold, so the comparison is seed-for-seed fair.

Run: python demos/06_early_stopping.py
"""

import numpy as np

from bayesaoa import (
    AngleGrid,
    BayesRunConfig,
    Scenario,
    es_threshold_sweep,
    generate_snapshot,
    grad,
    Objective,
)
from bayesaoa.bench import draw_truth


def main():
    grid = AngleGrid()

    print("-- gradient scale around the optimum --")
    scenario = Scenario(
        num_antennas=8, angles=grid.points[[8, 18, 27]], noise_variance=1e-6
    )
    z = generate_snapshot(scenario, seed=4).z
    objective = Objective(z, scenario)
    g_truth = grad(objective, scenario.angles)
    g_off = grad(objective, grid.points[[7, 18, 27]])
    print(f"max |dJ/dtheta| at the true tuple:      {np.max(np.abs(g_truth)):.2e}")
    print(f"max |dJ/dtheta| one grid step off:      {np.max(np.abs(g_off)):.2e}")
    print("a flat probe is strong evidence the search has settled.\n")

    print("-- threshold sweep on matched seeds (10 runs, K=1000) --")
    thresholds = [1.0, 0.5, 0.1, 0.05, 0.01]
    rng = np.random.default_rng(2)
    stats = {eps: {"hits": 0, "iters": [], "grad_evals": []} for eps in thresholds}
    runs = 10
    for _ in range(runs):
        truth = draw_truth(grid, 3, rng)
        scenario = Scenario(num_antennas=8, angles=truth, noise_variance=1e-6)
        z = generate_snapshot(scenario, seed=int(rng.integers(2**63))).z
        config = BayesRunConfig(num_sources=3, seed=int(rng.integers(2**63)))
        reports = es_threshold_sweep(z, grid, config, thresholds, scenario)
        for eps, report in reports.items():
            stats[eps]["hits"] += np.array_equal(np.sort(report.theta), truth)
            stats[eps]["iters"].append(report.stop_iteration)
            stats[eps]["grad_evals"].append(report.gradient_evals)

    print("threshold  exact   mean stop   mean total evals")
    for eps in thresholds:
        s = stats[eps]
        total = np.mean(s["iters"]) + np.mean(s["grad_evals"])
        print(
            f"{eps:9.2f}  {s['hits']:2d}/{runs}   {np.mean(s['iters']):9.0f}"
            f"   {total:10.0f}"
        )
    print("\nsmaller thresholds never stop earlier on the same seed, and")
    print("the gradient probes add 6 evaluations per check to the bill.")


if __name__ == "__main__":
    main()
