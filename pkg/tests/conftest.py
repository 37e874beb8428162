"""Shared instance generators and cross-cutting assertion helpers."""

import numpy as np

from submax import (
    AccumulationTree,
    CoverageOracle,
    DominationOracle,
    Graph,
    MedoidOracle,
    PointSet,
    SetFamily,
)


def random_set_family(rng, n_max=14, universe_max=18, max_subset=6):
    n = int(rng.integers(1, n_max + 1))
    universe = int(rng.integers(2, universe_max + 1))
    subsets = []
    for _ in range(n):
        size = int(rng.integers(0, min(universe, max_subset) + 1))
        subsets.append(rng.choice(universe, size=size, replace=False))
    return SetFamily(universe, subsets)


def random_cover_oracle(rng, n_max=14, universe_max=18, max_subset=6):
    return CoverageOracle(random_set_family(rng, n_max, universe_max, max_subset))


def random_graph(rng, n_max=14):
    n = int(rng.integers(2, n_max + 1))
    p = float(rng.uniform(0.15, 0.55))
    mask = rng.random((n, n)) < p
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if mask[i, j]]
    return Graph.from_edges(n, edges)


def random_domination_oracle(rng, n_max=14, closed=False):
    return DominationOracle(random_graph(rng, n_max), closed_neighborhoods=closed)


def random_medoid_oracle(rng, n_max=12, dim=3):
    n = int(rng.integers(2, n_max + 1))
    return MedoidOracle(PointSet(rng.normal(size=(n, dim))))


def random_oracle(rng, kinds=("kcover", "kdom", "kmedoid")):
    """(objective id, oracle) pair of a random kind."""
    kind = kinds[int(rng.integers(0, len(kinds)))]
    if kind == "kcover":
        return kind, random_cover_oracle(rng)
    if kind == "kdom":
        return kind, random_domination_oracle(rng)
    return kind, random_medoid_oracle(rng)


def assert_accounting(report):
    """Accounting bounds asserted on every engine run in the suite:
    leaf calls <= (|part|+1)*k, interior received <= arity*k and
    calls <= (arity*k+1)*k, critical path = sum over id-0 nodes,
    per-node feasibility."""
    cfg = report.config
    tree = AccumulationTree(cfg.m, cfg.b)
    k = cfg.k
    assert report.total_function_calls == sum(t.function_calls for t in report.traces)
    assert report.critical_path_calls == sum(
        t.function_calls for t in report.traces if t.node == 0
    )
    assert report.critical_path_calls <= report.total_function_calls
    assert report.total_communication_elements == sum(
        t.elements_received for t in report.traces
    )
    assert report.total_communication_payload_units == sum(
        t.payload_units_received for t in report.traces
    )
    for t in report.traces:
        assert t.solution_size <= k
        if t.level == 0:
            assert t.elements_received == 0
            assert t.payload_units_received == 0
            assert t.function_calls <= (t.input_elements + 1) * k
        else:
            arity = len(tree.children_of(t.node, t.level))
            assert t.elements_received <= arity * k
            assert t.elements_received <= cfg.b * k
            assert t.input_elements <= arity * k
            assert t.function_calls <= (arity * k + 1) * k
    assert len(report.solution.members) <= k
    assert len(report.per_level_seconds) == cfg.levels + 1


def verify_tree_structure(m, b):
    """Structural audit of one (m, b) tree; used by the tree unit tests and
    the exhaustive acceptance sweep."""
    tree = AccumulationTree(m, b)
    L = tree.levels
    assert (m == 1) == (L == 0)
    assert b ** L >= m
    if L > 0:
        assert b ** (L - 1) < m
    assert tree.active_nodes(L) == [0]
    assert tree.active_nodes(0) == list(range(m))
    for level in range(1, L + 1):
        short = 0
        for node in tree.active_nodes(level):
            kids = tree.children_of(node, level)
            assert kids, f"interior node ({level},{node}) has no children"
            assert kids[0] == node
            assert kids == sorted(kids)
            if len(kids) < b:
                short += 1
            for c in kids:
                assert tree.node_exists(level - 1, c)
                assert tree.parent_of(c, level) == node
            # leaf blocks of the children tile the node's block exactly
            got = []
            for c in kids:
                got.extend(tree.accessible_leaves(level - 1, c))
            assert got == list(tree.accessible_leaves(level, node))
        assert short <= 1, f"level {level} has {short} nodes of arity < {b}"
        if b ** L == m:
            for node in tree.active_nodes(level):
                assert len(tree.children_of(node, level)) == b
    for node in range(m):
        lvl = tree.level_of(node)
        assert tree.node_exists(lvl, node)
        if node != 0:
            assert not tree.node_exists(lvl + 1, node)
    return tree
