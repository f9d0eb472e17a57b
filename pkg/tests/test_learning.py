# /tests/test_learning.py
# Tests for penalties, counting CPTs and the per-node greedy structure search

import math

import numpy as np
import pytest

from depnet import EmptyDatasetError
from depnet.core import VarSpace, JointTable, Dataset, empirical_distribution, conditional_entropy
from depnet.infogeo import kl_to_manifold
from depnet.learning import (
    PenaltyKind,
    penalty,
    degrees_of_freedom,
    learn_parameters,
    scost,
    learn_structure_node,
    learn,
)
from depnet.models import Cpt
from depnet.synth import random_joint, random_cpt, sample_joint


def _repeat(rows, times):
    return [tuple(r) for r in rows for _ in range(times)]


def _copy_pair(N=1000):
    """X_1 = X_0, half zeros and half ones."""
    return Dataset(VarSpace.binary(2), _repeat([(0, 0), (1, 1)], N // 2))


def _product_of_marginals(times=125):
    """Every state of three binaries equally often: empirical MI is exactly zero."""
    space = VarSpace.binary(3)
    return Dataset(space, _repeat(space.grid(), times))


def _xor_triple(times=250):
    """X_2 = X_0 xor X_1; every pair is independent, every triple determined."""
    return Dataset(VarSpace.binary(3), _repeat([(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)], times))


# ========== Penalty Tests ==========

class TestPenalty:
    def test_mdl(self):
        """(k/2N)·ln N with k=1, N=8."""
        assert penalty(PenaltyKind.MDL, 2, 1, 8) == pytest.approx(0.129965, abs=1e-6)

    def test_aic(self):
        assert degrees_of_freedom(2, 2) == 2
        assert penalty(PenaltyKind.AIC, 2, 2, 1000) == pytest.approx(0.002)

    def test_none(self):
        assert penalty(PenaltyKind.NONE, 5, 64, 3) == 0.0

    def test_accepts_string_kind(self):
        assert penalty("mdl", 2, 1, 8) == penalty(PenaltyKind.MDL, 2, 1, 8)

    def test_requires_data(self):
        with pytest.raises(ValueError):
            penalty(PenaltyKind.MDL, 2, 1, 0)


# ========== Parameter Learning ==========

class TestLearnParameters:
    def _dataset(self):
        # x_1 = 0: counts of x_0 are (0, 7); x_1 = 1: (5, 3)
        rows = _repeat([(1, 0)], 7) + _repeat([(0, 1)], 5) + _repeat([(1, 1)], 3)
        return Dataset(VarSpace.binary(2), rows)

    def test_positivity_raises_zero_counts(self):
        cpt = learn_parameters(self._dataset(), 0, [1], positivity=True)
        assert np.allclose(cpt.table[0], [1 / 8, 7 / 8])
        assert np.allclose(cpt.table[1], [0.625, 0.375])

    def test_plain_counting(self):
        cpt = learn_parameters(self._dataset(), 0, [1], positivity=False)
        assert np.allclose(cpt.table[0], [0.0, 1.0])
        assert np.allclose(cpt.table[1], [0.625, 0.375])

    def test_unseen_input_row(self):
        """An input value never observed gives a uniform row, or NaN without positivity."""
        d = Dataset(VarSpace((2, 3)), [(0, 0), (1, 1), (1, 0)])
        assert np.allclose(learn_parameters(d, 0, [1], positivity=True).table[2], [0.5, 0.5])
        plain = learn_parameters(d, 0, [1], positivity=False)
        assert list(plain.defined) == [True, True, False]

    def test_positivity_lower_bound(self):
        """Every entry is at least 1/(N + |X_i|·|Y_i|)."""
        space = VarSpace((2, 3, 2))
        d = sample_joint(random_joint(space, 3, alpha=0.3), 200, seed=1)
        for i, inputs in [(0, (1, 2)), (1, (0,)), (2, ())]:
            cpt = learn_parameters(d, i, inputs)
            bound = 1.0 / (d.N + space.cards[i] * space.states_of(inputs))
            assert cpt.is_positive()
            assert cpt.table.min() >= bound - 1e-15

    def test_rejects_self_input(self):
        with pytest.raises(ValueError):
            learn_parameters(_copy_pair(), 0, [0])

    def test_empty_dataset(self):
        with pytest.raises(EmptyDatasetError):
            learn_parameters(Dataset(VarSpace.binary(2), np.empty((0, 2))), 0, [])

    def test_minimizes_kl_to_manifold(self):
        """For fixed inputs the counting CPT is the closest point of its family."""
        rng = np.random.default_rng(21)
        space = VarSpace((2, 3, 2))
        for trial in range(5):
            d = sample_joint(random_joint(space, rng), 300, seed=trial)
            empirical = empirical_distribution(d)
            learned = learn_parameters(d, 2, [0], positivity=False)
            best = kl_to_manifold(empirical, learned)
            for _ in range(100):
                assert best <= kl_to_manifold(empirical, random_cpt(space, 2, [0], rng)) + 1e-12


# ========== Structure Cost ==========

class TestScost:
    def test_entropy_plus_penalty(self):
        """Counts (5, 3), N=8, MDL: 0.661563 + 0.129965."""
        d = Dataset(VarSpace.binary(1), _repeat([(0,)], 5) + _repeat([(1,)], 3))
        assert scost(d, 0, (), PenaltyKind.MDL) == pytest.approx(0.791528, abs=1e-6)

    def test_deterministic_copy_costs_nothing(self):
        assert scost(_copy_pair(), 1, (0,), PenaltyKind.NONE) == pytest.approx(0.0, abs=1e-15)

    def test_empty_inputs_is_marginal_entropy(self):
        d = sample_joint(random_joint(VarSpace((3, 2)), 4), 500, seed=2)
        expected = conditional_entropy(empirical_distribution(d), [0])
        assert scost(d, 0, (), PenaltyKind.NONE) == pytest.approx(expected, abs=1e-12)

    def test_entropy_identity(self):
        """KL(p̃‖E(θ̂_i)) = H(X_i|Y_i) − H(X_i|X_{-i}) under the empirical distribution."""
        space = VarSpace((2, 3, 2))
        d = sample_joint(random_joint(space, 6), 400, seed=3)
        empirical = empirical_distribution(d)
        for i, inputs in [(0, ()), (0, (2,)), (1, (0, 2)), (2, (1,))]:
            cpt = learn_parameters(d, i, inputs, positivity=False)
            rest = [j for j in space.ids if j != i]
            expected = scost(d, i, inputs, PenaltyKind.NONE) - conditional_entropy(empirical, [i], rest)
            assert kl_to_manifold(empirical, cpt) == pytest.approx(expected, abs=1e-10)


# ========== Structure Search ==========

class TestStructureSearch:
    def test_independent_node_keeps_no_inputs(self):
        search = learn_structure_node(_product_of_marginals(), 0, PenaltyKind.MDL)
        assert search.inputs == ()
        assert search.evaluations == 2

    def test_copy_is_found(self):
        d = _copy_pair()
        search = learn_structure_node(d, 0, PenaltyKind.MDL)
        assert search.inputs == (1,)
        assert search.trace[0] == pytest.approx(math.log(2) + math.log(1000) / 2000)
        assert search.cost == pytest.approx(2 * math.log(1000) / 2000)
        # one accepted add, then one rejected remove
        assert search.evaluations == 2

    def test_single_node(self):
        d = Dataset(VarSpace.binary(1), [(0,), (1,)])
        search = learn_structure_node(d, 0)
        assert search.inputs == ()
        assert search.evaluations == 0

    def test_trace_strictly_decreasing(self):
        space = VarSpace.binary(4)
        d = sample_joint(random_joint(space, 8, alpha=0.3), 2000, seed=4)
        for i in space.ids:
            trace = learn_structure_node(d, i).trace
            assert all(b < a for a, b in zip(trace, trace[1:]))

    def test_guard_replaces_greedy_dead_end(self):
        """Greedy search cannot see an xor; the guard switches to every other variable."""
        d = _xor_triple()
        assert learn_structure_node(d, 2, guard=False).inputs == ()
        guarded = learn_structure_node(d, 2, guard=True)
        assert guarded.inputs == (0, 1)
        assert guarded.guard_applied

    def test_guard_bounds_manifold_distance(self):
        """With the guard, KL(p̃‖E(θ̂_i)) never exceeds R_i(X_{-i}, N)."""
        space = VarSpace.binary(3)
        truth = random_joint(space, 10, alpha=2.0)
        full = sample_joint(truth, 10_000, seed=5)
        for N in (100, 1000, 10_000):
            d = full.head(N)
            empirical = empirical_distribution(d)
            for i in space.ids:
                inputs = learn_structure_node(d, i, PenaltyKind.MDL, guard=True).inputs
                cpt = learn_parameters(d, i, inputs, positivity=False)
                bound = penalty(PenaltyKind.MDL, 2, space.states_of([j for j in space.ids if j != i]), N)
                assert kl_to_manifold(empirical, cpt) <= bound + 1e-12


# ========== Whole-network Learning ==========

class TestLearn:
    def test_independent_pair(self):
        d = sample_joint(JointTable.uniform(VarSpace.binary(2)), 10_000, seed=6)
        result = learn(d, PenaltyKind.MDL)
        assert [cpt.inputs for cpt in result.network.cpts] == [(), ()]
        for cpt in result.network.cpts:
            assert np.allclose(cpt.table, 0.5, atol=0.02)

    def test_copy_pair_leaks_one_count(self):
        result = learn(_copy_pair())
        assert result.network.inputs(0) == (1,)
        assert result.network.inputs(1) == (0,)
        assert np.allclose(result.network.cpts[0].table, [[500 / 501, 1 / 501], [1 / 501, 500 / 501]])

    def test_single_row_dataset(self):
        """N=1: entropy is already zero and the MDL penalty vanishes, so nothing is added."""
        d = Dataset(VarSpace.binary(3), [(0, 1, 0)])
        result = learn(d)
        assert all(cpt.inputs == () for cpt in result.network.cpts)
        assert np.allclose(result.network.cpts[1].table, [[0.5, 0.5]])
        plain = learn(d, positivity=False)
        assert np.allclose(plain.network.cpts[1].table, [[0.0, 1.0]])

    def test_evaluation_totals(self):
        d = sample_joint(random_joint(VarSpace.binary(4), 12), 1000, seed=7)
        result = learn(d)
        assert len(result.evaluations) == 4
        assert result.total_evaluations == sum(s.evaluations for s in result.searches)

    def test_deterministic(self):
        d = sample_joint(random_joint(VarSpace((2, 3, 2)), 13, alpha=0.5), 800, seed=8)
        first, second = learn(d), learn(d)
        for a, b in zip(first.network.cpts, second.network.cpts):
            assert a.inputs == b.inputs
            assert np.array_equal(a.table, b.table)
        assert first.evaluations == second.evaluations

    def test_weights_are_attached(self):
        result = learn(_copy_pair(), weights=[0.25, 0.75])
        assert np.allclose(result.network.weights.c, [0.25, 0.75])

    def test_guard_flag_reaches_every_node(self):
        result = learn(_xor_triple(), guard=True)
        assert result.network.inputs(2) == (0, 1)
        assert all(s.guard_applied for s in result.searches)

    def test_empty_dataset(self):
        with pytest.raises(EmptyDatasetError):
            learn(Dataset(VarSpace.binary(2), np.empty((0, 2))))
