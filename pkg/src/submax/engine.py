"""Distributed-greedy execution engine with full metric accounting.

Runs the partition / local-greedy / accumulate pipeline over an accumulation
tree: every element is hashed to a leaf machine by the random tape, each leaf
runs lazy greedy over its shard, and each interior node re-runs lazy greedy
over the union of its children's solutions, keeping the better of that fresh
solution and its own previous-level solution.  With a single level and
branching factor equal to the machine count this specializes to the
single-aggregation scheme (:func:`run_randgreedi`); with more levels it is
the multilevel scheme (:func:`run_greedyml`).

Two execution modes produce identical results and traces: ``simulate`` runs
every node inline in ascending label order, ``concurrent`` fans each level
out to a thread pool and joins results back in ascending label order (a
barrier between levels, exactly the BSP schedule the tree implies).  Only
wall-clock timings may differ.

Accounting: a node's ``function_calls`` counts oracle evaluations performed
at that node; ``elements_received`` / ``payload_units_received`` count only
solution members shipped from *other* machines (a node's own previous
solution never crosses the wire).  The critical path sums calls over the
label-0 spine, which is the chain every other machine finishes before.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Iterable

from .core import CardinalityConstraint, Solution, SubmodularOracle
from .errors import ConfigError, IntegrityError
from .greedy import lazy_greedy
from .partition import RandomTape
from .tree import AccumulationTree, levels_for

MODES = ("simulate", "concurrent")
OBJECTIVES = ("kcover", "kdom", "kmedoid")


@dataclass(frozen=True)
class RunConfig:
    """Declarative description of one distributed run.

    Exactly one of ``b`` (branching factor) and ``levels`` may be supplied;
    :meth:`resolve` fills in the other.  ``m == 1`` is the fully sequential
    degenerate tree and accepts neither flag.
    """

    objective: str
    k: int
    m: int
    b: int | None = None
    levels: int | None = None
    seed: int = 0
    mode: str = "simulate"
    kmedoid_extra: int = 0

    def resolve(self) -> "RunConfig":
        """Validate and return a copy with both ``b`` and ``levels`` set.

        ``levels`` requests are upper bounds: the derived b is the smallest
        branching factor whose tree height fits within the request, and the
        echoed ``levels`` is that tree's actual height (which can be lower
        than asked, e.g. m=4 levels=3 resolves to b=2, levels=2).
        """
        if not self.objective:
            raise ConfigError("objective must be a non-empty string")
        if self.k < 1:
            raise ConfigError(f"k must be >= 1, got {self.k}")
        if self.m < 1:
            raise ConfigError(f"machine count must be >= 1, got {self.m}")
        if self.seed < 0:
            raise ConfigError(f"seed must be >= 0, got {self.seed}")
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.kmedoid_extra < 0:
            raise ConfigError(
                f"extra sample count must be >= 0, got {self.kmedoid_extra}"
            )
        if self.b is not None and self.levels is not None:
            # Already-resolved configs carry both; re-resolving them is a no-op.
            if self.b >= 2 and self.levels == levels_for(self.m, self.b):
                return self
            raise ConfigError("give either a branching factor or a level count, not both")
        if self.b is not None:
            if self.b < 2:
                raise ConfigError(f"branching factor must be >= 2, got {self.b}")
            b = self.b
        elif self.levels is not None:
            if self.levels < 0:
                raise ConfigError(f"level count must be >= 0, got {self.levels}")
            if self.levels == 0 and self.m > 1:
                raise ConfigError("a zero-level tree needs a single machine")
            b = 2
            while b ** self.levels < self.m:
                b += 1
        else:
            if self.m > 1:
                raise ConfigError(
                    "give a branching factor or a level count for multi-machine runs"
                )
            b = 2
        return replace(self, b=b, levels=levels_for(self.m, b))


@dataclass(frozen=True)
class NodeTrace:
    """Per-node accounting record.  ``(level, node)`` is the tree label."""

    level: int
    node: int
    input_elements: int
    function_calls: int
    elements_received: int
    payload_units_received: int
    solution_size: int


@dataclass(frozen=True)
class RunReport:
    """Everything one run produced: winner, per-node traces, timings."""

    config: RunConfig
    solution: Solution
    global_value: float | None
    traces: tuple[NodeTrace, ...]
    per_level_seconds: tuple[float, ...]
    solve_seconds: float

    @property
    def total_function_calls(self) -> int:
        return sum(t.function_calls for t in self.traces)

    @property
    def critical_path_calls(self) -> int:
        return sum(t.function_calls for t in self.traces if t.node == 0)

    @property
    def total_communication_elements(self) -> int:
        return sum(t.elements_received for t in self.traces)

    @property
    def total_communication_payload_units(self) -> int:
        return sum(t.payload_units_received for t in self.traces)


def aggregate_node(child_solutions: list[Solution], prev: Solution,
                   oracle: SubmodularOracle, constraint: CardinalityConstraint,
                   *, label: tuple[int, int],
                   prev_value: float | None = None) -> tuple[Solution, NodeTrace]:
    """One accumulation step: fresh greedy over the pooled child members,
    then keep the better of that and the node's previous solution.

    ``child_solutions[0]`` is by convention the node's own previous solution
    (it lives on this machine already), so received-volume accounting covers
    ``child_solutions[1:]`` only.  ``prev_value`` is the previous solution's
    value under *this node's* oracle; pass None to have it re-evaluated here,
    which costs one function call and is required whenever the oracle
    averages over a node-local ground.  Ties go to the fresh solution.
    """
    n = oracle.ground().n
    for sol in child_solutions:
        if len(sol.members) > constraint.k:
            raise IntegrityError(
                f"child solution of size {len(sol.members)} exceeds budget {constraint.k}"
            )
        if any(not 0 <= e < n for e in sol.members):
            raise IntegrityError("child solution contains out-of-range elements")
    pool = sorted({e for sol in child_solutions for e in sol.members})
    fresh, stats = lazy_greedy(oracle, constraint, pool)
    calls = stats.function_calls
    if prev_value is None:
        if prev.members:
            prev_value = oracle.value(prev.members)
            calls += 1
        else:
            prev_value = 0.0
    if fresh.value >= prev_value:
        winner = Solution(fresh.members, fresh.value, label)
    else:
        winner = Solution(prev.members, prev_value, prev.origin)
    received = child_solutions[1:]
    trace = NodeTrace(
        level=label[0],
        node=label[1],
        input_elements=len(pool),
        function_calls=calls,
        elements_received=sum(len(s.members) for s in received),
        payload_units_received=sum(
            oracle.element_payload_size(e) for s in received for e in s.members
        ),
        solution_size=len(winner.members),
    )
    return winner, trace


def _map_level(executor, task, ids):
    """Run one task per node label, returning results in ascending label
    order regardless of completion order (the level barrier)."""
    if executor is None:
        return [task(i) for i in ids]
    futures = [executor.submit(task, i) for i in ids]
    return [f.result() for f in futures]


def _run_tree(oracle: SubmodularOracle, rc: RunConfig, elements):
    ground = oracle.ground()
    if elements is None:
        els = range(ground.n)
    else:
        els = sorted(set(int(e) for e in elements))
        if els and not (0 <= els[0] and els[-1] < ground.n):
            raise ConfigError(f"element outside ground set [0, {ground.n})")
    tape = RandomTape(rc.seed, rc.m)
    parts = tape.partition(els)
    tree = AccumulationTree(rc.m, rc.b)
    constraint = CardinalityConstraint(rc.k)
    localized = bool(oracle.local_evaluation)

    current: dict[int, Solution] = {}
    leaf_solutions: list[Solution] = []
    traces: list[NodeTrace] = []
    per_level: list[float] = []

    def leaf_task(node):
        shard = parts[node]
        node_oracle = oracle.localized(shard) if localized else oracle
        sol, stats = lazy_greedy(node_oracle, constraint, shard)
        sol = Solution(sol.members, sol.value, (0, node))
        trace = NodeTrace(
            level=0,
            node=node,
            input_elements=len(shard),
            function_calls=stats.function_calls,
            elements_received=0,
            payload_units_received=0,
            solution_size=len(sol.members),
        )
        return sol, trace

    def interior_task(level, node):
        kids = tree.children_of(node, level)
        child_sols = [current[c] for c in kids]
        prev = current[node]
        if localized:
            pool = sorted({e for s in child_sols for e in s.members})
            extras = oracle.sample_extras(rc.kmedoid_extra, rc.seed, level, node)
            node_oracle = oracle.localized(pool, extras)
            pv = None
        else:
            node_oracle = oracle
            pv = prev.value
        return aggregate_node(
            child_sols, prev, node_oracle, constraint,
            label=(level, node), prev_value=pv,
        )

    executor = (
        ThreadPoolExecutor(max_workers=rc.m) if rc.mode == "concurrent" else None
    )
    try:
        for level in range(tree.levels + 1):
            ids = tree.active_nodes(level)
            started = time.perf_counter()
            if level == 0:
                results = _map_level(executor, leaf_task, ids)
            else:
                results = _map_level(
                    executor, lambda node, lv=level: interior_task(lv, node), ids
                )
            per_level.append(time.perf_counter() - started)
            for node, (sol, trace) in zip(ids, results):
                current[node] = sol
                traces.append(trace)
            if level == 0:
                leaf_solutions = [current[i] for i in ids]
    finally:
        if executor is not None:
            executor.shutdown()
    return current[0], leaf_solutions, traces, per_level


def _finish(oracle, rc, winner, traces, per_level, started) -> RunReport:
    global_value = (
        float(oracle.value(winner.members)) if oracle.local_evaluation else None
    )
    return RunReport(
        config=rc,
        solution=winner,
        global_value=global_value,
        traces=tuple(traces),
        per_level_seconds=tuple(per_level),
        solve_seconds=time.perf_counter() - started,
    )


def run_greedyml(oracle: SubmodularOracle, config: RunConfig,
                 elements: Iterable[int] | None = None) -> RunReport:
    """Multilevel distributed greedy over the configured accumulation tree.

    ``elements`` restricts the run to a subset of the ground set; tape
    assignments depend only on global indices, so restricting the input
    never reshuffles the surviving elements.
    """
    rc = config.resolve()
    started = time.perf_counter()
    root, _, traces, per_level = _run_tree(oracle, rc, elements)
    return _finish(oracle, rc, root, traces, per_level, started)


def run_randgreedi(oracle: SubmodularOracle, config: RunConfig,
                   elements: Iterable[int] | None = None) -> RunReport:
    """Single-accumulation distributed greedy: one flat aggregation over all
    machine solutions, final answer the best of the aggregate and every
    machine solution (by their already-computed values; no extra calls)."""
    forced_b = config.m if config.m > 1 else 2
    forced_levels = 1 if config.m > 1 else 0
    if config.b is not None and config.b != forced_b:
        raise ConfigError(
            f"single-accumulation runs on {config.m} machines require "
            f"branching factor {forced_b}, got {config.b}"
        )
    if config.levels is not None and config.levels != forced_levels:
        raise ConfigError(
            f"single-accumulation runs on {config.m} machines require "
            f"{forced_levels} level(s), got {config.levels}"
        )
    rc = replace(config, b=forced_b, levels=None).resolve()
    started = time.perf_counter()
    root, leaves, traces, per_level = _run_tree(oracle, rc, elements)
    winner = root
    for sol in leaves[1:]:
        if sol.value > winner.value:
            winner = sol
    return _finish(oracle, rc, winner, traces, per_level, started)
