"""Picking the stopping threshold online with multiplicative weights.

Five candidate thresholds compete as experts.  Each round, all of them
estimate the same fresh snapshot; a loss blending wrongness with run
length shrinks their weights multiplicatively, concentrating probability
on the best accuracy/cost trade-off.  When the operating conditions
change, a weight reset lets the pool re-adapt.

Run: python demos/07_online_threshold_adaptation.py  (takes ~1 minute)
"""

import numpy as np

from bayesaoa import (
    AngleGrid,
    BayesRunConfig,
    Scenario,
    make_pool,
    reset_on_change,
    run_hedge,
)
from bayesaoa.bench import draw_truth


def round_scenarios(grid, n_rounds, noise, seed):
    rng = np.random.default_rng(seed)
    return [
        Scenario(
            num_antennas=6,
            angles=draw_truth(grid, 2, rng),
            noise_variance=noise,
        )
        for _ in range(n_rounds)
    ]


def show(trajectory, title):
    print(f"\n{title}")
    thresholds = trajectory.pool.thresholds
    print("round  " + "  ".join(f"p({eps:g})" for eps in thresholds))
    probs = trajectory.probabilities
    for t in range(0, len(probs), max(1, len(probs) // 6)):
        row = "  ".join(f"{p:6.3f}" for p in probs[t])
        print(f"{t:5d}  {row}")
    print(f"final argmax expert: threshold {trajectory.best_threshold:g}")


def main():
    grid = AngleGrid(lower=-1.27, resolution=0.1, count=26)
    config = BayesRunConfig(num_sources=2, max_iterations=300, es_interval=50, seed=0)
    pool = make_pool((2.0, 0.5, 0.1, 0.02, 0.004), beta=0.5, zeta=0.25)

    quiet = round_scenarios(grid, 12, noise=1e-6, seed=1)
    trajectory = run_hedge(pool, quiet, grid, config, seed=10)
    show(trajectory, "-- 12 rounds at noise variance 1e-6 --")

    print("\nconditions change: noise rises to 1e-2, weights reset")
    noisy = round_scenarios(grid, 12, noise=1e-2, seed=2)
    resumed = run_hedge(
        reset_on_change(trajectory.pool), noisy, grid, config, seed=11
    )
    show(resumed, "-- 12 rounds at noise variance 1e-2 after reset --")

    print("\nhigher zeta favors cheap experts; higher accuracy pressure")
    print("(low zeta) favors tight thresholds that run longer.")


if __name__ == "__main__":
    main()
