"""
Tests for the network simulation core
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.errors import ClampError, DimensionMismatchError
from src.core.network import (HEBB_TABLE, ClampSet, LearningRule, NetworkBatch, NetworkSpec,
                              NetworkState, WeightCell, WeightKind, apply_rule, hebb_rule,
                              initial_draw, random_state, sign_threshold, step, step_arrays)
from tests.conftest import random_spec


class TestPrimitives:
    """Threshold, learning rules and weight cells."""

    def test_sign_threshold(self):
        assert sign_threshold(0) == -1
        assert sign_threshold(3) == 1
        assert sign_threshold(-2) == -1

    def test_hebb_rule_is_product(self):
        rule = hebb_rule()
        for a in (-1, 1):
            for b in (-1, 1):
                assert apply_rule(rule, a, b) == a * b

    def test_rule_from_bits_1001_is_hebb(self):
        rule = LearningRule.from_bits('1001')
        assert rule.table == HEBB_TABLE
        assert rule.is_hebb
        assert rule.to_bits() == '1001'

    def test_constant_rule(self):
        rule = LearningRule((1, 1, 1, 1))
        assert apply_rule(rule, -1, 1) == 1

    def test_rule_rejects_zero(self):
        with pytest.raises(ValueError):
            LearningRule((1, 0, -1, 1))

    def test_learnable_cell_normalised(self):
        assert WeightCell(-1, WeightKind.LEARNABLE) == WeightCell.learnable()

    def test_invalid_cells(self):
        with pytest.raises(ValueError):
            WeightCell(0, WeightKind.FIXED)
        with pytest.raises(ValueError):
            WeightCell(1, WeightKind.ABSENT)


class TestNetworkSpec:
    """Roles, masks and the JSON document."""

    def test_roles(self):
        spec = NetworkSpec.empty(5)
        assert list(spec.input_nodes) == [0]
        assert spec.output_node == 1
        assert list(spec.hidden_nodes) == [2, 3, 4]

    def test_needs_output_node(self):
        with pytest.raises(ValueError):
            NetworkSpec.empty(1)

    def test_learnable_cells_row_major(self):
        learnable = np.zeros((3, 3), dtype=bool)
        learnable[2, 0] = learnable[0, 2] = True
        spec = NetworkSpec.from_arrays(np.zeros((3, 3)), learnable, hebb_rule())
        assert spec.learnable_cells == ((0, 2), (2, 0))
        assert spec.learnable_count == 2

    def test_dict_round_trip(self):
        spec = random_spec(np.random.default_rng(3))
        assert NetworkSpec.from_dict(spec.to_dict()) == spec

    def test_from_dict_wrong_size(self):
        data = NetworkSpec.empty(3).to_dict()
        data['weights'] = data['weights'][:-1]
        with pytest.raises(DimensionMismatchError):
            NetworkSpec.from_dict(data)


class TestStep:
    """One synchronous update."""

    def test_relay_copies_input(self, relay_spec):
        state = NetworkState((-1, -1))
        new = step(relay_spec, state, ClampSet.of((1,), None))
        assert new.activations == (1, 1)

    def test_uses_time_t_values(self, learnable_relay_spec):
        # Output reads w01 = +1 at time t; w01 learns from the time-t output (-1).
        state = NetworkState((1, -1), (1,))
        new = step(learnable_relay_spec, state, ClampSet.of((1,), None))
        assert new.activations == (1, 1)
        assert new.learnable_values == (-1,)

    def test_clamps_overwrite_before_update(self, learnable_relay_spec):
        state = NetworkState((-1, 1), (1,))
        new = step(learnable_relay_spec, state, ClampSet.of((1,), -1))
        assert new.activations == (1, -1)
        assert new.learnable_values == (-1,)

    def test_zero_net_input_gives_minus_one(self, empty_two_node):
        new = step(empty_two_node, NetworkState((1, 1)), ClampSet.of((1,), None))
        assert new.activations == (1, -1)

    def test_hidden_clamp_rejected(self):
        spec = NetworkSpec.empty(4)
        with pytest.raises(ClampError):
            step(spec, NetworkState((-1,) * 4), ClampSet(((3, 1),)))

    def test_dimension_mismatch(self, learnable_relay_spec):
        with pytest.raises(DimensionMismatchError):
            step(learnable_relay_spec, NetworkState((1, 1)), ClampSet())
        with pytest.raises(DimensionMismatchError):
            step(learnable_relay_spec, NetworkState((1, 1, 1), (1,)), ClampSet())

    @settings(max_examples=50, deadline=None)
    @given(seed=st.integers(0, 2 ** 32 - 1))
    def test_clamped_nodes_keep_values(self, seed):
        rng = np.random.default_rng(seed)
        spec = random_spec(rng, n=4, learnable_cells=3)
        state = random_state(spec, seed)
        clamps = ClampSet.of((1,), -1)
        for _ in range(5):
            state = step(spec, state, clamps)
            assert state.activations[0] == 1
            assert state.activations[1] == -1
            assert set(state.activations) <= {-1, 1}
            assert set(state.learnable_values) <= {-1, 1}

    @pytest.mark.parametrize('clamps', [ClampSet.of((1,), None), ClampSet.of((-1,), 1)])
    def test_hidden_node_order_does_not_matter(self, clamps):
        rng = np.random.default_rng(17)
        n = 5
        for _ in range(10):
            spec = random_spec(rng, n=n, learnable_cells=6)
            state = random_state(spec, int(rng.integers(0, 1000)))
            perm = np.concatenate([[0, 1], 2 + rng.permutation(n - 2)])

            shuffled = NetworkSpec.from_arrays(spec.value_matrix[perm][:, perm],
                                               spec.learnable_mask[perm][:, perm], spec.rule)
            weights = spec.weights_for(state)[perm][:, perm]
            shuffled_state = NetworkState(tuple(np.asarray(state.activations)[perm]),
                                          tuple(weights[shuffled.learnable_mask]))

            new = step(spec, state, clamps)
            shuffled_new = step(shuffled, shuffled_state, clamps)
            assert shuffled_new.activations == tuple(np.asarray(new.activations)[perm])
            assert np.array_equal(shuffled.weights_for(shuffled_new),
                                  spec.weights_for(new)[perm][:, perm])

    def test_batched_matches_single(self):
        rng = np.random.default_rng(11)
        specs = [random_spec(rng, n=4, learnable_cells=4) for _ in range(6)]
        states = [random_state(spec, (7, k)) for k, spec in enumerate(specs)]
        batch = NetworkBatch.from_specs(specs)
        clamps = ClampSet.of((-1,), None)
        mask, values = clamps.arrays(4)

        acts = np.array([s.activations for s in states], dtype=np.int8)
        weights = np.stack([spec.weights_for(s) for spec, s in zip(specs, states)])
        new_acts, new_weights = step_arrays(acts, weights, batch.learnable, batch.rules,
                                            mask, values)
        for k, (spec, state) in enumerate(zip(specs, states)):
            expected = step(spec, state, clamps)
            assert tuple(new_acts[k]) == expected.activations
            assert tuple(new_weights[k][spec.learnable_mask]) == expected.learnable_values


class TestRandomState:
    """Seeded initial states."""

    def test_inputs_and_output_rest(self):
        spec = random_spec(np.random.default_rng(0), n=5, learnable_cells=4)
        state = random_state(spec, 12)
        assert state.activations[:2] == (-1, -1)
        assert len(state.learnable_values) == 4

    def test_same_seed_same_state(self):
        spec = random_spec(np.random.default_rng(1))
        assert random_state(spec, (3, 2)) == random_state(spec, (3, 2))

    def test_draw_shared_across_networks(self):
        node_spins, _ = initial_draw(5, 5)
        a = random_state(NetworkSpec.empty(5), 5)
        assert a.activations[2:] == tuple(int(s) for s in node_spins[2:])
