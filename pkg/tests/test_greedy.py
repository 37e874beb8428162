import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_cover_oracle, random_domination_oracle, random_medoid_oracle
from submax import (
    CardinalityConstraint,
    CoverageOracle,
    DominationOracle,
    Graph,
    SetFamily,
    exact_opt,
    greedy,
    lazy_greedy,
    marginal_gain,
)

TRIPLE = CoverageOracle(SetFamily(5, [[1, 2], [2, 3], [3, 4]]))


class TestExamples:
    def test_cover_pair_optimum(self):
        for solver in (greedy, lazy_greedy):
            sol, stats = solver(TRIPLE, CardinalityConstraint(2))
            assert sol.members == (0, 2)
            assert sol.value == 4
            assert sol.origin == "sequential"

    def test_tie_breaks_to_lowest_index(self):
        # first pick: subsets 0 and 2 both gain 2; index 0 must win
        sol, _ = lazy_greedy(TRIPLE, CardinalityConstraint(1))
        assert sol.members == (0,)

    def test_lazy_not_more_calls(self):
        _, eager_stats = greedy(TRIPLE, CardinalityConstraint(2))
        _, lazy_stats = lazy_greedy(TRIPLE, CardinalityConstraint(2))
        assert lazy_stats.function_calls <= eager_stats.function_calls

    def test_single_candidate(self):
        for solver in (greedy, lazy_greedy):
            sol, stats = solver(TRIPLE, CardinalityConstraint(1), candidates=[1])
            assert sol.members == (1,)
            assert stats.function_calls == 1

    def test_path_domination(self):
        oracle = DominationOracle(Graph.from_edges(3, [(0, 1), (1, 2)]))
        sol, _ = greedy(oracle, CardinalityConstraint(1))
        assert sol.members == (1,)
        assert sol.value == 2

    def test_empty_candidates(self):
        sol, stats = lazy_greedy(TRIPLE, CardinalityConstraint(2), candidates=[])
        assert sol.members == ()
        assert sol.value == 0
        assert stats.function_calls == 0

    def test_zero_gain_stop(self):
        # second subset adds nothing once the first is taken
        oracle = CoverageOracle(SetFamily(3, [[0, 1], [1]]))
        sol, _ = greedy(oracle, CardinalityConstraint(2))
        assert sol.members == (0,)

    def test_all_zero_gain(self):
        oracle = CoverageOracle(SetFamily(3, [[], []]))
        sol, _ = lazy_greedy(oracle, CardinalityConstraint(2))
        assert sol.members == ()
        assert sol.value == 0

    def test_duplicate_candidates_collapse(self):
        sol, stats = greedy(TRIPLE, CardinalityConstraint(2), candidates=[2, 0, 2, 0])
        assert sol.members == (0, 2)

    def test_out_of_range_candidate(self):
        with pytest.raises(ValueError):
            greedy(TRIPLE, CardinalityConstraint(1), candidates=[7])


def _equivalence_battery(make_oracle, count, seed, k_max=6):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        oracle = make_oracle(rng)
        k = int(rng.integers(1, k_max + 1))
        c = CardinalityConstraint(k)
        eager_sol, eager_stats = greedy(oracle, c)
        lazy_sol, lazy_stats = lazy_greedy(oracle, c)
        assert lazy_sol.members == eager_sol.members
        assert lazy_sol.value == eager_sol.value
        assert lazy_stats.function_calls <= eager_stats.function_calls
        assert lazy_stats.function_calls >= lazy_stats.selections
        n = oracle.ground().n
        assert eager_stats.function_calls <= n * k + n
    return count


def test_lazy_equals_eager_cover_battery():
    # 200 random coverage instances, n <= 30, k <= 6
    assert _equivalence_battery(
        lambda rng: random_cover_oracle(rng, n_max=30, universe_max=40), 200, 77
    ) == 200


def test_lazy_equals_eager_other_objectives():
    _equivalence_battery(lambda rng: random_domination_oracle(rng, n_max=20), 40, 78)
    _equivalence_battery(lambda rng: random_medoid_oracle(rng, n_max=18), 40, 79)


def test_selection_order_gains_non_increasing():
    rng = np.random.default_rng(80)
    for maker, tol in (
        (random_cover_oracle, 0.0),
        (random_domination_oracle, 0.0),
        (random_medoid_oracle, 1e-9),
    ):
        for _ in range(15):
            oracle = maker(rng)
            sol, _ = lazy_greedy(oracle, CardinalityConstraint(5))
            gains = []
            prefix = []
            for e in sol.members:
                gains.append(marginal_gain(oracle, prefix, e))
                prefix.append(e)
            for a, b in zip(gains, gains[1:]):
                assert b <= a + tol


def test_solution_value_matches_fresh_evaluation():
    rng = np.random.default_rng(81)
    for _ in range(20):
        oracle = random_cover_oracle(rng)
        sol, _ = lazy_greedy(oracle, CardinalityConstraint(4))
        assert oracle.value(sol.members) == sol.value
    for _ in range(20):
        oracle = random_medoid_oracle(rng)
        sol, _ = lazy_greedy(oracle, CardinalityConstraint(4))
        assert oracle.value(sol.members) == pytest.approx(sol.value, rel=1e-9, abs=1e-12)


def test_greedy_guarantee_smoke():
    # the full 200-instance audit lives in the acceptance suite
    rng = np.random.default_rng(82)
    alpha = 1.0 - 1.0 / np.e
    for _ in range(25):
        oracle = random_cover_oracle(rng, n_max=10, universe_max=14)
        k = int(rng.integers(1, 4))
        sol, _ = lazy_greedy(oracle, CardinalityConstraint(k))
        opt = exact_opt(oracle, CardinalityConstraint(k))
        assert sol.value >= alpha * opt.value - 1e-9


@st.composite
def small_families(draw):
    n = draw(st.integers(min_value=1, max_value=8))
    universe = draw(st.integers(min_value=1, max_value=10))
    subsets = draw(
        st.lists(
            st.lists(st.integers(min_value=0, max_value=universe - 1), max_size=5),
            min_size=n, max_size=n,
        )
    )
    return SetFamily(universe, subsets)


@given(family=small_families(), k=st.integers(min_value=1, max_value=5))
@settings(max_examples=150, deadline=None)
def test_lazy_equals_eager_property(family, k):
    oracle = CoverageOracle(family)
    c = CardinalityConstraint(k)
    eager_sol, eager_stats = greedy(oracle, c)
    lazy_sol, lazy_stats = lazy_greedy(oracle, c)
    assert lazy_sol.members == eager_sol.members
    assert lazy_stats.function_calls <= eager_stats.function_calls
