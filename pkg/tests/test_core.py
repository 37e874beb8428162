import numpy as np
import pytest

from conftest import random_cover_oracle, random_domination_oracle, random_medoid_oracle
from submax import (
    CardinalityConstraint,
    CoverageOracle,
    GroundSet,
    SetFamily,
    Solution,
    is_feasible,
    marginal_gain,
)


def pair_family():
    # subsets {1,2} and {2,3} over item indices 0..3
    return CoverageOracle(SetFamily(4, [[1, 2], [2, 3]]))


class TestGroundSet:
    def test_basic(self):
        g = GroundSet(3)
        assert g.to_original(2) == 2

    def test_labels(self):
        g = GroundSet(3, labels=(10, 20, 30))
        assert g.to_original(1) == 20

    def test_label_length_mismatch(self):
        with pytest.raises(ValueError):
            GroundSet(2, labels=(1, 2, 3))

    def test_negative_size(self):
        with pytest.raises(ValueError):
            GroundSet(-1)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            GroundSet(3).to_original(3)


class TestConstraint:
    def test_k_zero_rejected(self):
        with pytest.raises(ValueError):
            CardinalityConstraint(0)

    def test_k_one_ok(self):
        assert CardinalityConstraint(1).k == 1


class TestSolution:
    def test_duplicates_rejected(self):
        with pytest.raises(ValueError):
            Solution((1, 1), 0.0)

    def test_frozen(self):
        s = Solution((1, 2), 3.0, (1, 0))
        with pytest.raises(AttributeError):
            s.value = 4.0


class TestMarginalGain:
    def test_empty_base(self):
        assert marginal_gain(pair_family(), [], 0) == 2

    def test_overlapping_subset(self):
        assert marginal_gain(pair_family(), [0], 1) == 1

    def test_zero_gain_identity(self):
        # subset fully covered already
        o = CoverageOracle(SetFamily(4, [[1, 2], [1]]))
        assert marginal_gain(o, [0], 1) == 0

    def test_element_in_base_rejected(self):
        with pytest.raises(ValueError):
            marginal_gain(pair_family(), [0], 0)

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            marginal_gain(pair_family(), [], 5)


class TestIsFeasible:
    def test_room_left(self):
        assert is_feasible(CardinalityConstraint(2), [3], 5) is True

    def test_budget_exhausted(self):
        assert is_feasible(CardinalityConstraint(2), [3, 5], 7) is False

    def test_already_selected(self):
        assert is_feasible(CardinalityConstraint(2), [3], 3) is False


def _random_subsets(rng, n):
    size_y = int(rng.integers(0, max(1, n - 1)))
    y = list(rng.choice(n, size=size_y, replace=False))
    x = [e for e in y if rng.random() < 0.5]
    rest = [e for e in range(n) if e not in y]
    if not rest:
        return None
    e = int(rest[int(rng.integers(0, len(rest)))])
    return x, y, e


@pytest.mark.parametrize(
    "maker,tol",
    [
        (lambda rng: random_cover_oracle(rng, n_max=50, universe_max=60), 0.0),
        (lambda rng: random_domination_oracle(rng, n_max=50), 0.0),
        (lambda rng: random_medoid_oracle(rng, n_max=50, dim=4), 1e-10),
    ],
    ids=["kcover", "kdom", "kmedoid"],
)
def test_oracle_contract_property_sweep(maker, tol):
    """Submodularity and monotonicity, >= 1000 random (X <= Y, e) triples per
    shipped oracle at n <= 50, all gains evaluated from scratch."""
    rng = np.random.default_rng(1234)
    triples = 0
    while triples < 1000:
        oracle = maker(rng)
        n = oracle.ground().n
        assert oracle.value([]) == 0
        for _ in range(25):
            drawn = _random_subsets(rng, n)
            if drawn is None:
                continue
            x, y, e = drawn
            g_small = marginal_gain(oracle, x, e)
            g_large = marginal_gain(oracle, y, e)
            assert g_large >= -tol  # monotone
            assert g_small >= g_large - tol  # diminishing gains
            triples += 1
    assert triples >= 1000
