# /tests/test_core.py
# Tests for variable spaces, joint tables, datasets and the information quantities

import math

import numpy as np
import pytest

from depnet import SpaceError, EmptyDatasetError
from depnet.core import (
    VarSpace,
    JointTable,
    Dataset,
    marginal,
    conditional,
    full_conditional,
    entropy,
    conditional_entropy,
    kl_divergence,
    total_variation,
    empirical_distribution,
    joint_counts,
    reconstruct_counts,
)
from depnet.synth import random_joint

SKEWED = (0.4, 0.1, 0.2, 0.3)


def _pair(probs):
    return JointTable(VarSpace.binary(2), np.array(probs))


# ========== VarSpace Tests ==========

class TestVarSpace:
    def test_mixed_radix_index(self):
        """Variable 0 is the most significant digit."""
        space = VarSpace((2, 3, 2))
        assert space.total_states == 12
        assert space.strides == (6, 2, 1)
        assert space.index((1, 2, 0)) == 10
        assert space.assignment(10) == (1, 2, 0)

    def test_grid_matches_index(self):
        """grid() lists the assignments in index order."""
        space = VarSpace((3, 2))
        for k, row in enumerate(space.grid()):
            assert space.index(row) == k

    def test_rejects_bad_spaces(self):
        with pytest.raises(SpaceError):
            VarSpace(())
        with pytest.raises(SpaceError):
            VarSpace((2, 1))

    def test_dense_guard(self):
        """2^26 states are allowed, 2^27 refused."""
        VarSpace.binary(26).require_dense()
        with pytest.raises(SpaceError):
            VarSpace.binary(27).require_dense()

    def test_subset_and_partial(self):
        space = VarSpace.binary(3)
        assert space.subset([2, 0, 2]) == (0, 2)
        with pytest.raises(SpaceError):
            space.subset([])
        with pytest.raises(SpaceError):
            space.subset([3])
        assert space.validate_partial({2: 1, 0: 0}) == {0: 0, 2: 1}
        with pytest.raises(SpaceError):
            space.validate_partial({1: 2})

    def test_sub_space(self):
        space = VarSpace((2, 3, 4))
        assert space.sub_space([2, 0]).cards == (2, 4)
        assert space.states_of([1, 2]) == 12
        assert space.states_of([]) == 1


# ========== JointTable Tests ==========

class TestJointTable:
    def test_must_be_normalized(self):
        with pytest.raises(ValueError):
            _pair((0.5, 0.5, 0.5, 0.5))
        with pytest.raises(ValueError):
            _pair((1.5, -0.5, 0.0, 0.0))

    def test_read_only(self):
        p = _pair(SKEWED)
        with pytest.raises(ValueError):
            p.probs[0] = 0.0

    def test_prob_and_tensor(self):
        p = _pair(SKEWED)
        assert p.prob((1, 0)) == pytest.approx(0.2)
        assert p.tensor[0, 1] == pytest.approx(0.1)


# ========== Marginals and Conditionals ==========

class TestMarginalConditional:
    def test_marginals(self):
        assert np.allclose(marginal(JointTable.uniform(VarSpace.binary(2)), [0]).probs, [0.5, 0.5])
        assert np.allclose(marginal(_pair((0.5, 0, 0, 0.5)), [1]).probs, [0.5, 0.5])
        assert np.allclose(marginal(_pair(SKEWED), [0]).probs, [0.5, 0.5])

    def test_marginal_rejects_empty_subset(self):
        with pytest.raises(SpaceError):
            marginal(_pair(SKEWED), [])

    def test_conditional_rows(self):
        """p(X_0|X_1=0) = (2/3, 1/3) for the skewed pair."""
        table = conditional(_pair(SKEWED), [0], [1])
        assert np.allclose(table.row([0]), [2 / 3, 1 / 3])

    def test_deterministic_copy(self):
        table = conditional(_pair((0.5, 0, 0, 0.5)), [1], [0])
        assert np.allclose(table.row([0]), [1, 0])
        assert np.allclose(table.row([1]), [0, 1])

    def test_zero_mass_rows_flagged(self):
        """Conditioning on a value of zero probability gives an undefined row."""
        p = JointTable(VarSpace.binary(2), np.array([0.5, 0.5, 0.0, 0.0]))
        table = conditional(p, [1], [0])
        assert list(table.defined) == [True, False]
        with pytest.raises(ValueError):
            table.row([1])

    def test_overlap_rejected(self):
        with pytest.raises(SpaceError):
            conditional(_pair(SKEWED), [0], [0, 1])

    def test_full_conditional(self):
        cond = full_conditional(_pair(SKEWED), 0)
        assert cond[0, 0] == pytest.approx(2 / 3)
        assert cond[1, 1] == pytest.approx(0.75)


# ========== Information Quantities ==========

class TestInformation:
    def test_entropy_values(self):
        assert entropy(JointTable.uniform(VarSpace.binary(1))) == pytest.approx(math.log(2))
        assert entropy(_pair((0, 0, 1, 0)), [0]) == 0.0
        bern = JointTable(VarSpace.binary(1), np.array([0.625, 0.375]))
        assert entropy(bern) == pytest.approx(0.661563, abs=1e-6)

    def test_conditional_entropy_values(self):
        assert conditional_entropy(JointTable.uniform(VarSpace.binary(2)), [0], [1]) == pytest.approx(math.log(2))
        assert conditional_entropy(_pair((0.5, 0, 0, 0.5)), [0], [1]) == pytest.approx(0.0, abs=1e-15)
        assert conditional_entropy(_pair(SKEWED), [0], [1]) == pytest.approx(0.606843, abs=1e-6)

    def test_conditional_entropy_without_given_is_entropy(self):
        p = _pair(SKEWED)
        assert conditional_entropy(p, [1]) == entropy(p, [1])

    def test_kl_values(self):
        p = _pair(SKEWED)
        assert kl_divergence(p, p) == 0.0
        a = JointTable(VarSpace.binary(1), np.array([0.25, 0.75]))
        b = JointTable.uniform(VarSpace.binary(1))
        assert kl_divergence(a, b) == pytest.approx(0.130812, abs=1e-6)

    def test_kl_support_mismatch_is_infinite(self):
        a = JointTable(VarSpace.binary(1), np.array([1.0, 0.0]))
        b = JointTable(VarSpace.binary(1), np.array([0.0, 1.0]))
        assert kl_divergence(a, b) == math.inf
        assert kl_divergence(b, JointTable.uniform(VarSpace.binary(1))) == pytest.approx(math.log(2))

    def test_kl_space_mismatch(self):
        with pytest.raises(SpaceError):
            kl_divergence(JointTable.uniform(VarSpace.binary(2)), JointTable.uniform(VarSpace((4,))))

    def test_total_variation(self):
        assert total_variation(_pair(SKEWED), JointTable.uniform(VarSpace.binary(2))) == pytest.approx(0.2)

    def test_chain_rule_and_non_negativity(self):
        """H(T∪G) = H(G) + H(T|G) on random tables of up to four variables."""
        rng = np.random.default_rng(7)
        for _ in range(100):
            space = VarSpace(tuple(int(c) for c in rng.integers(2, 4, size=int(rng.integers(2, 5)))))
            p = random_joint(space, rng, alpha=0.5)
            ids = list(space.ids)
            rng.shuffle(ids)
            cut = int(rng.integers(1, space.n))
            target, given = ids[:cut], ids[cut:]
            assert entropy(p, target + given) == pytest.approx(
                entropy(p, given) + conditional_entropy(p, target, given), abs=1e-10
            )
            assert conditional_entropy(p, target, given) >= -1e-12
            q = random_joint(space, rng)
            assert kl_divergence(p, q) >= -1e-12


# ========== Dataset Tests ==========

class TestDataset:
    def test_empirical_distribution(self):
        d = Dataset(VarSpace.binary(2), [(0, 0), (0, 0), (1, 1), (1, 1)])
        assert np.allclose(empirical_distribution(d).probs, [0.5, 0, 0, 0.5])
        single = Dataset(VarSpace.binary(1), [(0,)])
        assert np.allclose(empirical_distribution(single).probs, [1, 0])
        ternary = Dataset(VarSpace((3,)), [(0,), (1,), (1,), (2,)])
        assert np.allclose(empirical_distribution(ternary).probs, [0.25, 0.5, 0.25])

    def test_empty_dataset(self):
        d = Dataset(VarSpace.binary(2), np.empty((0, 2)))
        assert d.N == 0
        with pytest.raises(EmptyDatasetError, match="empty dataset"):
            empirical_distribution(d)

    def test_rows_validated(self):
        with pytest.raises(SpaceError):
            Dataset(VarSpace.binary(2), [(0, 2)])
        with pytest.raises(SpaceError):
            Dataset(VarSpace.binary(2), [(0, 1, 0)])

    def test_counts_in_given_order(self):
        d = Dataset(VarSpace((2, 3)), [(0, 2), (1, 2), (1, 0)])
        assert list(d.counts([0])) == [1, 2]
        assert list(d.counts([1, 0])) == [0, 1, 0, 0, 1, 1]
        assert list(joint_counts(d, [1, 0])) == list(d.counts([0, 1]))

    def test_head_is_prefix(self):
        d = Dataset(VarSpace.binary(2), [(0, 0), (0, 1), (1, 1)])
        assert d.head(2).rows.tolist() == [[0, 0], [0, 1]]

    def test_counts_reconstructed_exactly(self):
        """empirical_distribution then reconstruct_counts returns the original counts."""
        rng = np.random.default_rng(3)
        space = VarSpace((2, 3, 2))
        rows = np.stack([rng.integers(0, c, size=997) for c in space.cards], axis=1)
        d = Dataset(space, rows)
        counts = np.bincount(d.state_indices(), minlength=space.total_states)
        assert np.array_equal(reconstruct_counts(empirical_distribution(d), d.N), counts)
