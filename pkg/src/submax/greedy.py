"""Sequential greedy solvers for monotone submodular maximization.

:func:`greedy` is the textbook algorithm: k rounds, each re-evaluating the
marginal gain of every remaining candidate and taking the best (ties to the
lowest element index).  It enjoys the classic (1 - 1/e) guarantee.

:func:`lazy_greedy` is the priority-queue variant: stored gains are upper
bounds (submodularity makes gains stale-high, never stale-low), so a popped
candidate whose gain is fresh at the current solution size is necessarily the
round's argmax and can be accepted without touching the others.  Both
solvers break ties by lowest element index and stop early once the best gain
is no longer positive, so they return identical solutions; the lazy one just
evaluates the function fewer times.

Ties: the heap key is ``(-gain, element)``, so among equal stale-or-fresh
gains the smallest element surfaces first; because a stale refresh can only
lower a key, the first *fresh* pop is exactly the eager argmax with the same
lowest-index preference.
"""

from __future__ import annotations

import heapq
from typing import Iterable, Sequence

from .core import CardinalityConstraint, GreedyStats, Solution, SubmodularOracle

#: A real-valued gain at or below this counts as zero (stop condition).
#: Integer-valued oracles compare against an exact zero instead.
REAL_GAIN_EPS = 1e-12


def _stop_threshold(oracle: SubmodularOracle) -> float:
    return 0 if oracle.integer_valued else REAL_GAIN_EPS


def _prepare_candidates(oracle: SubmodularOracle, candidates: Iterable[int] | None) -> list[int]:
    n = oracle.ground().n
    if candidates is None:
        return list(range(n))
    out = sorted(set(int(e) for e in candidates))
    if out and not (0 <= out[0] and out[-1] < n):
        raise ValueError(f"candidate outside ground set [0, {n})")
    return out


def greedy(oracle: SubmodularOracle, constraint: CardinalityConstraint,
           candidates: Iterable[int] | None = None) -> tuple[Solution, GreedyStats]:
    """Plain eager greedy over ``candidates`` (default: the whole ground set)."""
    remaining = _prepare_candidates(oracle, candidates)
    stop = _stop_threshold(oracle)
    state = oracle.new_state()
    chosen: list[int] = []
    calls = 0
    while remaining and len(chosen) < constraint.k:
        best_pos = -1
        best_gain = None
        for pos, e in enumerate(remaining):
            g = oracle.gain(state, e)
            calls += 1
            if best_gain is None or g > best_gain:
                best_gain = g
                best_pos = pos
        if best_gain <= stop:
            break
        e = remaining.pop(best_pos)
        oracle.add(state, e)
        chosen.append(e)
    return (
        Solution(tuple(chosen), oracle.state_value(state), "sequential"),
        GreedyStats(calls, len(chosen)),
    )


def lazy_greedy(oracle: SubmodularOracle, constraint: CardinalityConstraint,
                candidates: Iterable[int] | None = None) -> tuple[Solution, GreedyStats]:
    """Priority-queue greedy; same output as :func:`greedy`, fewer calls.

    ``fresh_at[e]`` remembers the solution size at which ``e``'s queued gain
    was computed; a popped entry is trusted only if that size is current,
    otherwise the gain is recomputed and the entry re-queued.
    """
    cands = _prepare_candidates(oracle, candidates)
    stop = _stop_threshold(oracle)
    state = oracle.new_state()
    chosen: list[int] = []
    calls = 0
    heap: list[tuple[float, int]] = []
    fresh_at: dict[int, int] = {}
    for e in cands:
        g = oracle.gain(state, e)
        calls += 1
        heap.append((-g, e))
        fresh_at[e] = 0
    heapq.heapify(heap)
    while heap and len(chosen) < constraint.k:
        neg_gain, e = heapq.heappop(heap)
        if fresh_at[e] == len(chosen):
            if -neg_gain <= stop:
                break
            oracle.add(state, e)
            chosen.append(e)
        else:
            g = oracle.gain(state, e)
            calls += 1
            fresh_at[e] = len(chosen)
            heapq.heappush(heap, (-g, e))
    return (
        Solution(tuple(chosen), oracle.state_value(state), "sequential"),
        GreedyStats(calls, len(chosen)),
    )
