"""Multiplicative-weights expert pool: updates, invariants, adaptation."""

import io

import numpy as np
import pytest

from bayesaoa import (
    AngleGrid,
    BayesRunConfig,
    Scenario,
    apply_losses,
    generate_snapshot,
    hedge_round,
    make_pool,
    reset_on_change,
    run_hedge,
    trajectory_to_csv,
)


class TestWeightUpdate:
    def test_unit_loss_halves_weight_at_beta_half(self):
        pool = make_pool([0.1], beta=0.5)
        updated = apply_losses(pool, [1.0])
        assert updated.weights == (0.5,)
        assert updated.t == 1

    def test_loss_formula_example(self):
        # err=1, stop at 900 of 1000, zeta=0.1: loss = 0.9 + 0.09 = 0.99.
        zeta = 0.1
        loss = (1 - zeta) * 1 + zeta * 900 / 1000
        assert loss == pytest.approx(0.99)

    def test_zeta_zero_keeps_equal_err_experts_equal(self):
        pool = make_pool([1.0, 0.1], beta=0.5, zeta=0.0)
        for err in (1.0, 0.0, 1.0):
            pool = apply_losses(pool, [err, err])
        assert pool.weights[0] == pool.weights[1]

    def test_perfect_expert_closed_form(self):
        # One expert at loss 0, the rest at loss 1: its probability after
        # t rounds is 1 / (1 + (B-1) * beta^t).
        beta = 0.5
        n_experts = 5
        pool = make_pool([1.0, 0.5, 0.1, 0.05, 0.01], beta=beta)
        for t in range(1, 8):
            pool = apply_losses(pool, [1.0, 1.0, 0.0, 1.0, 1.0])
            expected = 1.0 / (1.0 + (n_experts - 1) * beta**t)
            assert pool.probabilities[2] == pytest.approx(expected, abs=1e-12)

    def test_weight_order_follows_cumulative_loss(self):
        # Strict monotonicity of beta^L over 200 synthetic rounds.
        rng = np.random.default_rng(81)
        pool = make_pool([1.0, 0.5, 0.1, 0.05, 0.01], beta=0.5)
        cumulative = np.zeros(5)
        for _ in range(200):
            losses = rng.uniform(0, 1, size=5)
            cumulative += losses
            pool = apply_losses(pool, losses)
            assert abs(sum(pool.probabilities) - 1.0) < 1e-12
            assert np.all(np.asarray(pool.weights) > 0)
            order_by_loss = np.argsort(cumulative, kind="stable")
            order_by_weight = np.argsort(-np.asarray(pool.weights), kind="stable")
            np.testing.assert_array_equal(order_by_loss, order_by_weight)

    def test_negative_loss_rejected(self):
        with pytest.raises(ValueError):
            apply_losses(make_pool([0.1]), [-0.5])

    def test_pool_validation(self):
        with pytest.raises(ValueError):
            make_pool([0.1], beta=1.0)
        with pytest.raises(ValueError):
            make_pool([0.1], zeta=1.5)
        with pytest.raises(ValueError):
            make_pool([-0.1])


class TestReset:
    def test_reset_restores_uniform_but_keeps_round(self):
        pool = make_pool([1.0, 0.1, 0.01])
        pool = apply_losses(pool, [1.0, 0.2, 0.7])
        pool = apply_losses(pool, [0.0, 0.9, 0.3])
        reset = reset_on_change(pool)
        assert reset.weights == (1.0, 1.0, 1.0)
        assert reset.t == pool.t
        np.testing.assert_allclose(reset.probabilities, 1 / 3, atol=1e-15)

    def test_reset_round_depends_only_on_new_losses(self):
        pool = make_pool([1.0, 0.1])
        pool = apply_losses(pool, [1.0, 0.0])
        fresh = apply_losses(reset_on_change(pool), [0.25, 0.75])
        expected = np.array([0.5**0.25, 0.5**0.75])
        np.testing.assert_allclose(
            fresh.probabilities, expected / expected.sum(), atol=1e-12
        )


def small_run_config(seed=0):
    return BayesRunConfig(
        num_sources=2, max_iterations=60, es_interval=20, seed=seed
    )


def small_grid_scenario(noise=1e-6):
    grid = AngleGrid(lower=-1.2, resolution=0.3, count=9)
    sc = Scenario(
        num_antennas=4, angles=grid.points[[2, 6]], noise_variance=noise
    )
    return grid, sc


class TestHedgeRound:
    def test_round_outcome_structure(self):
        grid, sc = small_grid_scenario()
        z = generate_snapshot(sc, seed=3).z
        pool = make_pool([1e9, 1e-12], beta=0.5, zeta=0.1)
        updated, outcome = hedge_round(
            pool, z, sc.angles, grid, small_run_config(), sc
        )
        assert updated.t == 1
        # Huge threshold stops at the first probe (the first multiple of
        # es_interval past the 20 initial samples); tiny one hits the cap.
        assert outcome.stop_iterations[0] == 40
        assert outcome.stop_iterations[1] == 60
        assert set(outcome.errs.tolist()) <= {0, 1}
        for b in range(2):
            k_term = 0.1 * outcome.stop_iterations[b] / 60
            expected = 0.9 * outcome.errs[b] + k_term
            assert outcome.losses[b] == pytest.approx(expected)
        assert abs(outcome.probabilities.sum() - 1.0) < 1e-12

    def test_losses_bounded(self):
        grid, sc = small_grid_scenario(noise=1e-2)
        z = generate_snapshot(sc, seed=4).z
        pool = make_pool([1.0, 0.1, 0.01])
        _, outcome = hedge_round(pool, z, sc.angles, grid, small_run_config(), sc)
        assert np.all(outcome.losses >= 0)
        assert np.all(outcome.losses <= 1)

    def test_off_grid_truth_rejected(self):
        grid, sc = small_grid_scenario()
        z = generate_snapshot(sc, seed=3).z
        pool = make_pool([0.1])
        with pytest.raises(ValueError):
            hedge_round(pool, z, [0.123, 0.456], grid, small_run_config(), sc)

    def test_deterministic(self):
        grid, sc = small_grid_scenario()
        z = generate_snapshot(sc, seed=5).z
        pool = make_pool([1.0, 0.01])
        _, a = hedge_round(pool, z, sc.angles, grid, small_run_config(), sc)
        _, b = hedge_round(pool, z, sc.angles, grid, small_run_config(), sc)
        np.testing.assert_array_equal(a.losses, b.losses)
        np.testing.assert_array_equal(a.stop_iterations, b.stop_iterations)


class TestRunHedge:
    def test_trajectory_shapes_and_csv(self):
        grid, sc = small_grid_scenario()
        pool = make_pool([1.0, 0.1, 0.01])
        trajectory = run_hedge(
            pool, [sc] * 4, grid, small_run_config(), seed=17
        )
        assert trajectory.weights.shape == (5, 3)
        assert len(trajectory.outcomes) == 4
        assert trajectory.pool.t == 4
        np.testing.assert_allclose(
            trajectory.probabilities.sum(axis=1), 1.0, atol=1e-12
        )
        buf = io.StringIO()
        trajectory_to_csv(trajectory, buf)
        lines = buf.getvalue().strip().split("\n")
        assert lines[0] == "round,expert_threshold,weight,loss,stop_iteration,err"
        assert len(lines) == 1 + 4 * 3

    def test_weights_nonincreasing_over_rounds(self):
        grid, sc = small_grid_scenario()
        pool = make_pool([1.0, 0.1, 0.01])
        trajectory = run_hedge(pool, [sc] * 5, grid, small_run_config(), seed=2)
        diffs = np.diff(trajectory.weights, axis=0)
        assert np.all(diffs <= 1e-15)

    def test_reset_matches_fresh_pool_on_same_rounds(self):
        # After a mid-stream reset, the continuation equals a fresh pool
        # fed the same snapshots and round indices.
        grid, sc = small_grid_scenario()
        config = small_run_config()
        pool = make_pool([1.0, 0.01])
        z1 = generate_snapshot(sc, seed=31).z
        z2 = generate_snapshot(sc, seed=32).z
        pool, _ = hedge_round(pool, z1, sc.angles, grid, config, sc)
        resumed, out_resumed = hedge_round(
            reset_on_change(pool), z2, sc.angles, grid, config, sc
        )
        fresh = make_pool([1.0, 0.01])
        fresh = apply_losses(fresh, [0.0, 0.0])  # advance round counter to 1
        fresh = reset_on_change(fresh)
        _, out_fresh = hedge_round(fresh, z2, sc.angles, grid, config, sc)
        np.testing.assert_array_equal(out_resumed.losses, out_fresh.losses)
        np.testing.assert_array_equal(
            out_resumed.probabilities, out_fresh.probabilities
        )

    def test_noise_switch_with_reset_matches_fresh_run(self):
        # Switch the noise regime mid-stream, reset, and compare the
        # post-switch rounds against a run that saw only the new regime
        # with matched snapshots and round indices.
        grid, _ = small_grid_scenario()
        config = small_run_config()
        truth_idx = [2, 6]
        noisy = Scenario(
            num_antennas=4,
            angles=grid.points[truth_idx],
            noise_variance=1e-2,
        )
        quiet = Scenario(
            num_antennas=4,
            angles=grid.points[truth_idx],
            noise_variance=1e-6,
        )
        snap_seeds = np.random.SeedSequence(99).generate_state(6, np.uint64)

        pool = make_pool([1.0, 0.1, 0.01])
        for t in range(3):
            z = generate_snapshot(noisy, int(snap_seeds[t])).z
            pool, _ = hedge_round(pool, z, noisy.angles, grid, config, noisy)
        pool = reset_on_change(pool)
        switched_p = []
        for t in range(3, 6):
            z = generate_snapshot(quiet, int(snap_seeds[t])).z
            pool, outcome = hedge_round(pool, z, quiet.angles, grid, config, quiet)
            switched_p.append(outcome.probabilities)

        fresh = make_pool([1.0, 0.1, 0.01])
        for _ in range(3):
            fresh = apply_losses(fresh, np.zeros(3))
        fresh = reset_on_change(fresh)
        fresh_p = []
        for t in range(3, 6):
            z = generate_snapshot(quiet, int(snap_seeds[t])).z
            fresh, outcome = hedge_round(fresh, z, quiet.angles, grid, config, quiet)
            fresh_p.append(outcome.probabilities)

        np.testing.assert_allclose(switched_p, fresh_p, atol=1e-12)

    def test_regret_grows_sublinearly(self):
        # Cumulative expected loss under the weight distribution minus the
        # best expert's cumulative loss: the second hundred rounds must
        # add far less regret than the first hundred.
        grid, sc = small_grid_scenario(noise=1e-4)
        config = BayesRunConfig(
            num_sources=2, max_iterations=40, es_interval=10, seed=0
        )
        pool = make_pool([5.0, 0.5, 0.05], beta=0.5, zeta=0.1)
        trajectory = run_hedge(pool, [sc] * 200, grid, config, seed=5)
        losses = np.stack([o.losses for o in trajectory.outcomes])
        probs = trajectory.probabilities[:-1]  # distribution before update
        expected_loss = np.sum(probs * losses, axis=1)
        cum_expected = np.cumsum(expected_loss)
        cum_best = np.min(np.cumsum(losses, axis=0), axis=1)
        regret = cum_expected - cum_best
        first_half = regret[99]
        second_half_gain = regret[199] - regret[99]
        assert second_half_gain < 0.5 * first_half + 1.0
