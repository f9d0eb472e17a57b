# /tests/test_bayesnet.py
# Tests for the Bayesian-network baseline: model, hill climbing and ancestral sampling

import math

import numpy as np
import pytest

from depnet import CycleError, UndefinedRowError
from depnet.core import VarSpace, Dataset, empirical_distribution, total_variation
from depnet.learning import MoveKind, PenaltyKind, bn_scost, learn_bn, scost
from depnet.models import BayesianNetwork, Cpt
from depnet.sampling import ancestral_sample
from depnet.synth import RandomBnSpec, random_bn, bn_joint

NOISY_COPY = [[0.9, 0.1], [0.1, 0.9]]
EXACT_COPY = [[1.0, 0.0], [0.0, 1.0]]


def _repeat(rows, times):
    return [tuple(r) for r in rows for _ in range(times)]


def _chain(table, n=3):
    """X_0 → X_1 → … with a fair root and the same CPT on every edge."""
    space = VarSpace.binary(n)
    cpts = [Cpt.from_space(space, 0, (), [[0.5, 0.5]])]
    cpts += [Cpt.from_space(space, i, (i - 1,), table) for i in range(1, n)]
    return BayesianNetwork(space=space, cpts=tuple(cpts))


def _skeleton(bn):
    return {frozenset(e) for e in bn.edges()}


# ========== Model Tests ==========

class TestBayesianNetwork:
    def test_cycle_rejected(self):
        space = VarSpace.binary(2)
        cpts = (
            Cpt.from_space(space, 0, (1,), EXACT_COPY),
            Cpt.from_space(space, 1, (0,), EXACT_COPY),
        )
        with pytest.raises(CycleError):
            BayesianNetwork(space=space, cpts=cpts)

    def test_lowest_id_topological_order(self):
        space = VarSpace.binary(3)
        cpts = (
            Cpt.from_space(space, 0, (2,), EXACT_COPY),
            Cpt.uniform(space, 1),
            Cpt.uniform(space, 2),
        )
        bn = BayesianNetwork(space=space, cpts=cpts)
        assert bn.order() == [1, 2, 0]
        assert bn.edges() == [(2, 0)]

    def test_dict_roundtrip_keeps_structure(self):
        bn = _chain(NOISY_COPY)
        restored = BayesianNetwork.from_dict(bn.to_dict())
        assert restored.parents == bn.parents
        assert np.array_equal(restored.cpts[2].table, bn.cpts[2].table)


# ========== Structure Cost ==========

class TestBnScost:
    def test_empty_graph_on_independent_pair(self):
        """2·H(X_i) + 2·(ln 1000)/2000 with uniform marginals."""
        d = Dataset(VarSpace.binary(2), _repeat(VarSpace.binary(2).grid(), 250))
        expected = 2 * math.log(2) + 2 * math.log(1000) / 2000
        assert bn_scost(d, [(), ()]) == pytest.approx(expected, abs=1e-12)

    def test_copy_edge_lowers_cost(self):
        d = Dataset(VarSpace.binary(2), _repeat([(0, 0), (1, 1)], 500))
        assert bn_scost(d, [(), (0,)]) < bn_scost(d, [(), ()])

    def test_decomposes_over_families(self):
        d = ancestral_sample(_chain(NOISY_COPY), 500, seed=1)
        before = bn_scost(d, [(), (0,), (1,)])
        after = bn_scost(d, [(), (0,), ()])
        assert after - before == pytest.approx(scost(d, 2, ()) - scost(d, 2, (1,)), abs=1e-12)

    def test_cycle_raises(self):
        d = Dataset(VarSpace.binary(2), [(0, 0), (1, 1)])
        with pytest.raises(CycleError):
            bn_scost(d, [(1,), (0,)])

    def test_wrong_number_of_parent_sets(self):
        d = Dataset(VarSpace.binary(2), [(0, 0)])
        with pytest.raises(ValueError):
            bn_scost(d, [()])


# ========== Hill Climbing ==========

class TestLearnBn:
    def test_independent_data_gives_empty_graph(self):
        space = VarSpace.binary(3)
        d = Dataset(space, _repeat(space.grid(), 125))
        result = learn_bn(d, PenaltyKind.MDL)
        assert result.network.edges() == []
        assert result.moves == ()
        # six adds scored once, none accepted
        assert result.evaluations == 6

    def test_copy_pair_takes_lexicographic_orientation(self):
        d = Dataset(VarSpace.binary(2), _repeat([(0, 0), (1, 1)], 500))
        result = learn_bn(d)
        assert result.network.edges() == [(0, 1)]
        assert result.moves[0].kind is MoveKind.ADD
        # two adds, then a remove and a reverse that do not improve
        assert result.evaluations == 4

    def test_chain_skeleton_recovered(self):
        d = ancestral_sample(_chain(NOISY_COPY), 10_000, seed=2)
        result = learn_bn(d)
        assert _skeleton(result.network) == {frozenset((0, 1)), frozenset((1, 2))}

    def test_trace_strictly_decreasing(self):
        bn = random_bn(RandomBnSpec(n=5, m=5, seed=3, alpha=0.5))
        d = ancestral_sample(bn, 3000, seed=3)
        result = learn_bn(d)
        assert all(b < a for a, b in zip(result.trace, result.trace[1:]))
        assert len(result.trace) == len(result.moves) + 1
        assert result.trace[-1] == pytest.approx(bn_scost(d, result.network.parents), abs=1e-10)

    def test_positivity_smoothing(self):
        d = Dataset(VarSpace.binary(2), _repeat([(0, 0), (1, 1)], 500))
        table = learn_bn(d).network.cpts[1].table
        assert np.allclose(table, [[500 / 501, 1 / 501], [1 / 501, 500 / 501]])


# ========== Ancestral Sampling ==========

class TestAncestralSample:
    def test_copy_chain(self):
        d = ancestral_sample(_chain(EXACT_COPY), 2000, seed=4)
        assert np.all(d.rows[:, 0] == d.rows[:, 1])
        assert np.all(d.rows[:, 1] == d.rows[:, 2])

    def test_single_node_frequency(self):
        space = VarSpace.binary(1)
        bn = BayesianNetwork(space=space, cpts=(Cpt.from_space(space, 0, (), [[0.7, 0.3]]),))
        d = ancestral_sample(bn, 1_000_000, seed=5)
        assert d.rows[:, 0].mean() == pytest.approx(0.3, abs=0.002)

    def test_matches_product_form_joint(self):
        bn = random_bn(RandomBnSpec(n=4, m=3, seed=6))
        d = ancestral_sample(bn, 1_000_000, seed=6)
        assert total_variation(empirical_distribution(d), bn_joint(bn)) < 0.01

    def test_seeded(self):
        bn = _chain(NOISY_COPY)
        assert np.array_equal(ancestral_sample(bn, 100, seed=7).rows, ancestral_sample(bn, 100, seed=7).rows)
        assert not np.array_equal(ancestral_sample(bn, 100, seed=7).rows, ancestral_sample(bn, 100, seed=8).rows)

    def test_undefined_row_reached(self):
        space = VarSpace.binary(2)
        cpts = (
            Cpt.from_space(space, 0, (), [[0.5, 0.5]]),
            Cpt.from_space(space, 1, (0,), [[0.5, 0.5], [np.nan, np.nan]]),
        )
        with pytest.raises(UndefinedRowError):
            ancestral_sample(BayesianNetwork(space=space, cpts=cpts), 100, seed=9)

    def test_negative_count(self):
        with pytest.raises(ValueError):
            ancestral_sample(_chain(NOISY_COPY), -1)
