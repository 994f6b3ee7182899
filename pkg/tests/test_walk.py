import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qrws.coins import TAU, CoinParams, PhaseRelation, Relation, identity_coin, marking_coin, traversing_coin
from qrws.walk import (
    Circuit,
    ConsistencyError,
    WalkConfig,
    WalkState,
    apply_conditional_coins,
    apply_shift,
    build_full_step_unitary,
    dense_success_probability,
    iteration_count,
    max_norm_drift,
    qrws_run,
    success_probabilities,
    uniform_initial_state,
)

PI = math.pi

# Frozen from dense_success_probability (explicit matrix power) at φ = ζ = π, ω = 0.
GROVER_P = {4: 0.390625, 7: 0.40220375560525373}


def config(m, phi, zeta, omega=0.0, **kw):
    return WalkConfig(m, CoinParams(phi, zeta, omega, m), **kw)


def random_state(rng, m):
    v = rng.normal(size=m << m) + 1j * rng.normal(size=m << m)
    return WalkState(m, v / np.linalg.norm(v))


class TestIterationCount:
    @pytest.mark.parametrize("m, k", [(1, 2), (4, 5), (7, 13)])
    def test_values(self, m, k):
        assert iteration_count(m) == k

    def test_by_direct_evaluation(self):
        # ⌈(π/2)·√(2^(m-1))⌉ evaluated as ⌈(π/2)·2^((m-1)/2)⌉
        for m in range(1, 16):
            assert iteration_count(m) == math.ceil(math.pi / 2 * 2 ** ((m - 1) / 2))

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            iteration_count(0)


class TestInitialState:
    def test_m2(self):
        s = uniform_initial_state(2)
        assert s.amplitudes.shape == (8,)
        np.testing.assert_allclose(s.amplitudes, 1 / math.sqrt(8))

    def test_m4(self):
        np.testing.assert_array_equal(uniform_initial_state(4).amplitudes, 0.125)

    @pytest.mark.parametrize("m", [2, 3, 5, 8])
    def test_normalized(self, m):
        assert abs(uniform_initial_state(m).norm - 1) < 1e-14

    def test_m1_rejected(self):
        with pytest.raises(ValueError):
            uniform_initial_state(1)


class TestShift:
    def test_direction_zero(self):
        out = apply_shift(WalkState.basis(2, 0, 0))
        np.testing.assert_array_equal(out.amplitudes, WalkState.basis(2, 0, 1).amplitudes)

    def test_direction_one(self):
        out = apply_shift(WalkState.basis(2, 1, 3))
        np.testing.assert_array_equal(out.amplitudes, WalkState.basis(2, 1, 1).amplitudes)

    @pytest.mark.parametrize("m", [2, 3, 4, 7])
    def test_involution_bit_exact(self, rng, m):
        s = random_state(rng, m)
        np.testing.assert_array_equal(apply_shift(apply_shift(s)).amplitudes, s.amplitudes)

    def test_every_basis_state(self):
        m = 3
        for d in range(m):
            for x in range(1 << m):
                out = apply_shift(WalkState.basis(m, d, x)).amplitudes
                assert out[d * 8 + (x ^ (1 << d))] == 1
                assert np.count_nonzero(out) == 1


class TestConditionalCoins:
    def test_identity_coins(self, rng):
        s = random_state(rng, 3)
        out = apply_conditional_coins(s, identity_coin(3), identity_coin(3), 5)
        np.testing.assert_array_equal(out.amplitudes, s.amplitudes)

    def test_marked_fiber_negated(self):
        s = uniform_initial_state(2)
        out = apply_conditional_coins(s, identity_coin(2), marking_coin(0.0, 2), 0).grid()
        np.testing.assert_allclose(out[:, 0], -s.grid()[:, 0])
        np.testing.assert_allclose(out[:, 1:], s.grid()[:, 1:])

    def test_matches_block_matrix(self):
        m = 4
        s = uniform_initial_state(m)
        walk, mark = traversing_coin(PI, PI, m), marking_coin(0.0, m)
        full = np.zeros((m << m, m << m), dtype=complex)
        for x in range(1 << m):
            idx = np.arange(m) * (1 << m) + x
            full[np.ix_(idx, idx)] = (mark if x == 0 else walk).dense()
        out = apply_conditional_coins(s, walk, mark, 0)
        assert np.abs(out.amplitudes - full @ s.amplitudes).max() <= 1e-13

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            apply_conditional_coins(uniform_initial_state(3), identity_coin(4), identity_coin(3), 0)


class TestDenseStep:
    def test_identity_coins_give_shift_permutation(self):
        cfg = config(2, 0.0, 0.0, circuit=Circuit.ALTERNATIVE)
        step = build_full_step_unitary(cfg)
        perm = np.column_stack(
            [apply_shift(WalkState(2, e)).amplitudes for e in np.eye(8, dtype=complex)]
        )
        np.testing.assert_array_equal(step, perm)

    @settings(max_examples=20, deadline=None)
    @given(st.tuples(*[st.floats(0, TAU)] * 3), st.sampled_from(list(Circuit)))
    def test_unitary(self, phases, circuit):
        u = build_full_step_unitary(config(2, *phases, circuit=circuit))
        assert np.abs(u.conj().T @ u - np.eye(8)).max() <= 1e-12

    def test_size_guard(self):
        with pytest.raises(ValueError):
            build_full_step_unitary(config(10, PI, PI))

    @pytest.mark.parametrize("m", [4, 7])
    def test_grover_regression(self, m):
        assert dense_success_probability(config(m, PI, PI)) == pytest.approx(GROVER_P[m], abs=1e-12)


class TestRun:
    @pytest.mark.parametrize("m", [4, 7])
    def test_grover_point(self, m):
        res = qrws_run(config(m, PI, PI))
        assert res.iterations_used == iteration_count(m)
        assert abs(res.success_probability - GROVER_P[m]) <= 1e-12
        assert res.success_probability == res.node_distribution[0]
        assert abs(res.node_distribution.sum() - 1) <= 1e-10

    def test_no_walk_stays_near_uniform(self):
        p = qrws_run(config(4, 0.0, 0.0)).success_probability
        assert p <= 2 / 16

    def test_zero_iterations(self):
        assert qrws_run(config(2, 1.0, 2.0, iterations=0)).success_probability == pytest.approx(0.25)

    def test_oracle_equivalence(self, rng):
        for m in (2, 3, 4):
            for phases in rng.uniform(0, TAU, size=(20, 3)):
                cfg = config(m, *phases)
                fast = qrws_run(cfg).success_probability
                assert abs(fast - dense_success_probability(cfg)) <= 1e-12

    def test_batched_matches_single(self, rng):
        phases = rng.uniform(0, TAU, size=(3, 25))
        batch = success_probabilities(4, *phases)
        single = [qrws_run(config(4, *p)).success_probability for p in phases.T]
        assert np.abs(batch - single).max() <= 1e-13

    def test_batch_is_order_independent(self, rng):
        phases = rng.uniform(0, TAU, size=(3, 40))
        perm = rng.permutation(40)
        a = success_probabilities(3, *phases)
        b = success_probabilities(3, *phases[:, perm])
        np.testing.assert_array_equal(a[perm], b)

    def test_norm_preserved(self, rng):
        for m in (2, 4, 7):
            phases = rng.uniform(0, TAU, size=(3, 100))
            assert max_norm_drift(m, *phases, iterations=2 * iteration_count(m)) <= 1e-10

    def test_norm_each_step(self, rng):
        m = 4
        cfg = config(m, *rng.uniform(0, TAU, size=3))
        walk, mark = cfg.coins()
        s = uniform_initial_state(m)
        for _ in range(2 * cfg.k):
            s = apply_shift(apply_conditional_coins(s, walk, mark, 0))
            assert abs(s.norm - 1) <= 1e-10

    def test_marked_node_symmetry(self, rng):
        m = 3
        phi, zeta, omega = rng.uniform(0, TAU, size=3)
        ps = [qrws_run(config(m, phi, zeta, omega, marked=x)).success_probability for x in range(8)]
        assert max(ps) - min(ps) <= 1e-12

    def test_global_phase_invariance(self, rng):
        # multiplying both coins by e^{iγ}: ζ -> ζ+γ, ω -> ω+γ
        phi, zeta, omega, gamma = rng.uniform(0, TAU, size=(4, 30))
        a = success_probabilities(4, phi, zeta, omega)
        b = success_probabilities(4, phi, zeta + gamma, omega + gamma)
        assert np.abs(a - b).max() <= 1e-12

    @pytest.mark.parametrize("m", [4, 7])
    def test_reduced_circuit_matches_standard(self, m):
        phi = TAU * np.arange(64) / 64
        for alpha in (0.0, -1 / (2 * PI), 0.3):
            z6 = PhaseRelation(Relation.EQ6, alpha)(phi)
            z14 = PhaseRelation(Relation.EQ14, alpha)(phi)
            std = success_probabilities(m, phi, z6, 0.0, Circuit.STANDARD)
            alt = success_probabilities(m, phi, z14, 0.0, Circuit.ALTERNATIVE)
            assert np.abs(std - alt).max() <= 1e-12

    def test_reduced_circuit_ignores_omega(self, rng):
        phi, zeta, omega = rng.uniform(0, TAU, size=(3, 10))
        a = success_probabilities(4, phi, zeta, omega, Circuit.ALTERNATIVE)
        b = success_probabilities(4, phi, zeta, 0.0, Circuit.ALTERNATIVE)
        np.testing.assert_array_equal(a, b)

    def test_alt_config_uses_identity_marking(self):
        walk, mark = config(4, PI, PI, circuit="alt").coins()
        assert (mark.diag, mark.offdiag) == (1, 0)


class TestValidation:
    def test_m1(self):
        with pytest.raises(ValueError):
            config(1, 0, 0)

    def test_marked_out_of_range(self):
        with pytest.raises(ValueError):
            config(3, 0, 0, marked=8)

    def test_coin_dimension_mismatch(self):
        with pytest.raises(ValueError):
            WalkConfig(4, CoinParams(0, 0, 0, 3))

    def test_state_shape(self):
        with pytest.raises(ValueError):
            WalkState(3, np.ones(10))

    def test_norm_drift_detected(self, monkeypatch):
        import qrws.walk as walk

        shift = walk._shift
        monkeypatch.setattr(walk, "_shift", lambda amps, m: 1.01 * shift(amps, m))
        with pytest.raises(ConsistencyError):
            success_probabilities(3, 1.0, 1.0)
