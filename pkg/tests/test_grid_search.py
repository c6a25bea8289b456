"""Angle grid, combination enumeration, brute-force reference search."""

import math

import numpy as np
import pytest

from bayesaoa import (
    AngleGrid,
    Objective,
    Scenario,
    brute_force_estimate,
    enumerate_combinations,
    generate_snapshot,
)
from bayesaoa.bench import draw_truth, identifiable_truth


class TestAngleGrid:
    def test_default_grid_layout(self):
        grid = AngleGrid()
        assert grid.count == 32
        assert grid.points[0] == pytest.approx(-1.57)
        assert grid.points[-1] == pytest.approx(1.53)
        np.testing.assert_allclose(np.diff(grid.points), 0.1, atol=1e-12)

    def test_nearest_returns_exact_grid_floats(self):
        grid = AngleGrid()
        snapped = grid.nearest([-1.0, 0.2, 1.1])
        assert all(s in grid.points for s in snapped)
        np.testing.assert_allclose(snapped, [-0.97, 0.23, 1.13], atol=1e-12)

    def test_nearest_clips_to_bounds(self):
        grid = AngleGrid()
        np.testing.assert_allclose(
            grid.nearest([-9.0, 9.0]), [-1.57, 1.53], atol=1e-12
        )

    def test_contains(self):
        grid = AngleGrid()
        assert grid.contains(grid.points[[3, 17]])
        assert not grid.contains([0.0])

    def test_invalid_parameters(self):
        with pytest.raises(ValueError):
            AngleGrid(resolution=0.0)
        with pytest.raises(ValueError):
            AngleGrid(count=0)


class TestEnumeration:
    def test_default_grid_three_sources_counts_4960(self):
        assert sum(1 for _ in enumerate_combinations(AngleGrid(), 3)) == 4960

    def test_whole_grid_single_combination(self):
        grid = AngleGrid(count=3)
        combos = list(enumerate_combinations(grid, 3))
        assert len(combos) == 1
        np.testing.assert_array_equal(combos[0], grid.points)

    def test_matches_independent_enumerator(self):
        # Nested-loop oracle for C(5, 2).
        grid = AngleGrid(count=5)
        combos = [tuple(c) for c in enumerate_combinations(grid, 2)]
        expected = []
        for i in range(5):
            for j in range(i + 1, 5):
                expected.append((grid.points[i], grid.points[j]))
        assert combos == expected
        assert len(combos) == math.comb(5, 2) == 10

    def test_tuples_strictly_increasing_and_unique(self):
        combos = [tuple(c) for c in enumerate_combinations(AngleGrid(count=7), 3)]
        assert len(set(combos)) == len(combos) == math.comb(7, 3)
        for combo in combos:
            assert all(b > a for a, b in zip(combo, combo[1:]))

    def test_too_many_sources_rejected(self):
        with pytest.raises(ValueError):
            list(enumerate_combinations(AngleGrid(count=2), 3))


class TestBruteForce:
    def test_zero_noise_on_grid_truth_exact(self):
        grid = AngleGrid()
        truth = grid.points[[4, 17, 28]]
        sc = Scenario(num_antennas=8, angles=truth, noise_variance=0.0)
        z = generate_snapshot(sc, seed=0).z
        theta_hat, evals = brute_force_estimate(z, grid, 3, sc)
        np.testing.assert_array_equal(np.sort(theta_hat), np.sort(truth))
        assert evals == 4960

    def test_low_noise_seeded_runs_all_exact(self):
        grid = AngleGrid()
        rng = np.random.default_rng(7)
        for _ in range(10):
            truth = draw_truth(grid, 3, rng)
            sc = Scenario(num_antennas=8, angles=truth, noise_variance=1e-6)
            z = generate_snapshot(sc, seed=int(rng.integers(2**63))).z
            theta_hat, evals = brute_force_estimate(z, grid, 3, sc)
            np.testing.assert_array_equal(np.sort(theta_hat), truth)
            assert evals == 4960

    def test_endpoint_truths_are_wrap_ambiguous(self):
        # The two grid ends nearly coincide in sin, so tuples touching
        # them are excluded from benchmark truths: the residual gap
        # between a -1.57 member and its +-wrap image is below the noise
        # scale even at variance 1e-6.
        grid = AngleGrid()
        sc = Scenario(
            num_antennas=8, angles=[-1.57, -0.17, 1.43], noise_variance=0.0
        )
        z = generate_snapshot(sc, seed=0).z
        objective = Objective(z, sc)
        swapped = objective([-0.17, 1.43, 1.53])
        assert swapped < 1e-3  # nearly explains the snapshot
        assert not identifiable_truth(sc.angles)
        assert identifiable_truth([-1.37, 0.03, 1.33])

    def test_invariant_under_truth_permutation(self):
        grid = AngleGrid()
        base = [-0.77, 0.23, 1.03]
        z1 = generate_snapshot(
            Scenario(num_antennas=6, angles=base, noise_variance=0.0), seed=1
        ).z
        z2 = generate_snapshot(
            Scenario(num_antennas=6, angles=base[::-1], noise_variance=0.0),
            seed=1,
        ).z
        t1, _ = brute_force_estimate(z1, grid, 3)
        t2, _ = brute_force_estimate(z2, grid, 3)
        np.testing.assert_array_equal(np.sort(t1), np.sort(t2))

    def test_returns_global_minimum(self):
        # No other combination scores lower than the reported tuple.
        grid = AngleGrid(count=9)
        sc = Scenario(
            num_antennas=5, angles=grid.points[[2, 6]], noise_variance=1e-3
        )
        z = generate_snapshot(sc, seed=5).z
        theta_hat, _ = brute_force_estimate(z, grid, 2, sc)
        objective = Objective(z, sc)
        best = objective(theta_hat)
        for combo in enumerate_combinations(grid, 2):
            assert best <= objective(combo) + 1e-12
