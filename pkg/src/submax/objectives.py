"""The three benchmark objectives: k-cover, k-dominating set, k-medoid.

Each objective pairs a plain data container (:class:`SetFamily`,
:class:`Graph`, :class:`PointSet`) with a :class:`~submax.core.SubmodularOracle`
implementation carrying an incremental evaluation state, plus a deliberately
naive module-level value function (``kcover_value`` etc.) that recomputes from
first principles.  The naive route exists so tests can cross-check the
incremental machinery against an independently written implementation; solvers
never touch it.

k-cover and k-dominating set share one mechanism: both count the union of
per-element "covered" index sets over a finite universe (subsets of items,
respectively open neighborhoods of vertices), tracked by a boolean bitmap.
k-medoid is the real-valued clustering objective
``f(S) = L({ref}) - L(S + ref)`` where ``L`` averages, over the points the
oracle can see, the Euclidean distance to the nearest selected point (the
reference vector acts as a phantom medoid that normalizes f(empty) to 0).
The k-medoid oracle supports machine-local averaging grounds, which is what
makes it interesting in the distributed setting.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .core import GroundSet, SubmodularOracle
from .partition import derive_seed, sample_without_replacement

#: Norm below which a mean-subtracted row counts as constant (exact zero is
#: unattainable in floating point).
ZERO_ROW_TOL = 1e-12


# ---------------------------------------------------------------------------
# data containers


class SetFamily:
    """A family of subsets of ``range(base_universe_size)``.

    Element ``i`` of the ground set is the i-th subset; items are dense
    integer indices into the base universe.
    """

    def __init__(self, base_universe_size: int, subsets: Sequence):
        if base_universe_size < 0:
            raise ValueError("universe size must be >= 0")
        canon = []
        for i, s in enumerate(subsets):
            arr = np.unique(np.asarray(list(s), dtype=np.int64))
            if arr.size and (arr[0] < 0 or arr[-1] >= base_universe_size):
                raise ValueError(
                    f"subset {i} has items outside [0, {base_universe_size})"
                )
            canon.append(arr)
        self.base_universe_size = base_universe_size
        self.subsets = canon

    def __len__(self):
        return len(self.subsets)


class Graph:
    """Undirected simple graph with sorted, duplicate-free adjacency arrays."""

    def __init__(self, n: int, neighbors: Sequence[np.ndarray]):
        if n < 0:
            raise ValueError("vertex count must be >= 0")
        if len(neighbors) != n:
            raise ValueError(f"expected {n} adjacency arrays, got {len(neighbors)}")
        self.n = n
        self.neighbors = list(neighbors)

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        """Build from an iterable of (u, v) pairs.

        Self-loops are dropped, duplicates (in either direction) collapse to
        one undirected edge, and both directions are stored.
        """
        e = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if e.size and (e.min() < 0 or e.max() >= n):
            raise ValueError(f"edge endpoint outside [0, {n})")
        e = e[e[:, 0] != e[:, 1]]
        if e.size == 0:
            return cls(n, [np.empty(0, dtype=np.int64) for _ in range(n)])
        both = np.concatenate([e, e[:, ::-1]])
        keys = np.unique(both[:, 0] * np.int64(n) + both[:, 1])
        src, dst = keys // n, keys % n
        bounds = np.searchsorted(src, np.arange(n + 1))
        return cls(n, [dst[bounds[i]:bounds[i + 1]] for i in range(n)])

    def degree(self, u: int) -> int:
        return len(self.neighbors[u])

    def edge_count(self) -> int:
        return sum(len(a) for a in self.neighbors) // 2


class PointSet:
    """Dense real-valued points, one row per element, plus a reference vector.

    The reference defaults to the origin, which is the natural choice after
    :func:`preprocess_points` centers every row.
    """

    def __init__(self, data: np.ndarray, reference: np.ndarray | None = None):
        data = np.ascontiguousarray(np.asarray(data, dtype=np.float64))
        if data.ndim != 2:
            raise ValueError(f"points must be a 2-d array, got shape {data.shape}")
        if reference is None:
            reference = np.zeros(data.shape[1])
        reference = np.asarray(reference, dtype=np.float64)
        if reference.shape != (data.shape[1],):
            raise ValueError("reference vector must match point dimensionality")
        self.data = data
        self.reference = reference

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def dim(self) -> int:
        return self.data.shape[1]

    def take(self, indices) -> "PointSet":
        """A new PointSet over the given rows (same reference)."""
        idx = np.asarray(list(indices), dtype=np.int64)
        return PointSet(self.data[idx], self.reference)


def preprocess_points(matrix: np.ndarray) -> tuple[np.ndarray, int]:
    """Per-row mean subtraction followed by L2 normalization.

    Rows that are constant (zero vector after mean subtraction, detected via
    ``ZERO_ROW_TOL``) stay zero and are counted in the returned flag count
    rather than blowing up the division.
    """
    out = np.asarray(matrix, dtype=np.float64).copy()
    if out.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    out -= out.mean(axis=1, keepdims=True)
    norms = np.linalg.norm(out, axis=1)
    degenerate = norms <= ZERO_ROW_TOL
    flagged = int(degenerate.sum())
    out[degenerate] = 0.0
    safe = np.where(degenerate, 1.0, norms)
    out /= safe[:, None]
    return out, flagged


# ---------------------------------------------------------------------------
# naive reference routes (independent of the oracle machinery, tests only)


def kcover_value(family: SetFamily, members: Iterable[int]) -> int:
    """|union of chosen subsets| via plain python sets."""
    covered: set = set()
    for e in members:
        covered.update(family.subsets[e].tolist())
    return len(covered)


def kdom_value(graph: Graph, members: Iterable[int], closed_neighborhoods: bool = False) -> int:
    """|union of neighborhoods of chosen vertices| via plain python sets."""
    covered: set = set()
    for u in members:
        covered.update(graph.neighbors[u].tolist())
        if closed_neighborhoods:
            covered.add(int(u))
    return len(covered)


def kmedoid_loss(points: PointSet, members: Iterable[int]) -> float:
    """Mean distance from every point to its nearest medoid, the reference
    vector always counting as one."""
    if points.n == 0:
        return 0.0
    dmin = np.linalg.norm(points.data - points.reference, axis=1)
    for v in members:
        dmin = np.minimum(dmin, np.linalg.norm(points.data - points.data[int(v)], axis=1))
    return float(dmin.mean())


def kmedoid_value(points: PointSet, members: Iterable[int]) -> float:
    """Loss reduction relative to the reference-only solution."""
    return kmedoid_loss(points, ()) - kmedoid_loss(points, members)


# ---------------------------------------------------------------------------
# oracles


class _UnionState:
    __slots__ = ("covered", "count")

    def __init__(self, universe_size: int):
        self.covered = np.zeros(universe_size, dtype=bool)
        self.count = 0


class _UnionCoverOracle(SubmodularOracle):
    """Shared engine for f(S) = |union over S of per-element index sets|."""

    integer_valued = True

    def __init__(self, covered_sets: list[np.ndarray], universe_size: int,
                 ground: GroundSet):
        self._covered = covered_sets
        self._universe = universe_size
        self._ground_set = ground

    def ground(self) -> GroundSet:
        return self._ground_set

    def _set_of(self, e: int) -> np.ndarray:
        if not 0 <= e < self._ground_set.n:
            raise ValueError(f"element {e} out of range [0, {self._ground_set.n})")
        return self._covered[e]

    def value(self, members: Iterable[int]) -> int:
        members = list(members)
        if not members:
            return 0
        covered = np.zeros(self._universe, dtype=bool)
        for e in members:
            covered[self._set_of(int(e))] = True
        return int(np.count_nonzero(covered))

    def element_payload_size(self, e: int) -> int:
        return int(self._set_of(int(e)).size)

    def new_state(self) -> _UnionState:
        return _UnionState(self._universe)

    def gain(self, state: _UnionState, e: int) -> int:
        return int(np.count_nonzero(~state.covered[self._set_of(int(e))]))

    def add(self, state: _UnionState, e: int) -> None:
        s = self._set_of(int(e))
        state.count += int(np.count_nonzero(~state.covered[s]))
        state.covered[s] = True

    def state_value(self, state: _UnionState) -> int:
        return state.count


class CoverageOracle(_UnionCoverOracle):
    """k-cover: elements are subsets, value counts distinct covered items."""

    def __init__(self, family: SetFamily, labels: tuple[int, ...] | None = None):
        super().__init__(
            family.subsets,
            family.base_universe_size,
            GroundSet(len(family), labels),
        )
        self.family = family


class DominationOracle(_UnionCoverOracle):
    """k-dominating set: elements are vertices, value counts vertices covered
    by the union of neighborhoods.

    Open neighborhoods delta(u) by default; ``closed_neighborhoods=True``
    additionally counts each chosen vertex as covering itself.
    """

    def __init__(self, graph: Graph, closed_neighborhoods: bool = False,
                 labels: tuple[int, ...] | None = None):
        if closed_neighborhoods:
            covered = [
                np.unique(np.append(graph.neighbors[u], u))
                for u in range(graph.n)
            ]
        else:
            covered = graph.neighbors
        super().__init__(covered, graph.n, GroundSet(graph.n, labels))
        self.graph = graph
        self.closed_neighborhoods = closed_neighborhoods


class _MedoidState:
    __slots__ = ("dmin",)

    def __init__(self, dmin: np.ndarray):
        self.dmin = dmin


class MedoidOracle(SubmodularOracle):
    """k-medoid loss reduction, optionally averaged over a local ground.

    Elements are always addressed by their global row index; ``local`` and
    ``extra`` restrict which rows the loss averages over (machine-local
    evaluation), not which rows may be selected.  With both left at None the
    oracle is the global objective.

    Incremental states track the per-row distance to the nearest selected
    medoid, so a gain evaluation is one fused distance computation against
    the visible rows.  (The expanded |x|^2 - 2 x.p + |p|^2 form would be a
    bit faster but loses ~1e-8 to cancellation when a candidate coincides
    with a visible row, which the stored-vs-fresh value contract cannot
    absorb.)
    """

    integer_valued = False
    local_evaluation = True

    def __init__(self, points: PointSet, local: Iterable[int] | None = None,
                 extra: Iterable[int] | None = None,
                 labels: tuple[int, ...] | None = None):
        self.points = points
        n = points.n
        if local is None:
            visible = np.arange(n, dtype=np.int64)
            if extra is not None:
                raise ValueError("extra rows only make sense with a local ground")
        else:
            merged = set(int(v) for v in local)
            merged.update(int(v) for v in (extra if extra is not None else ()))
            visible = np.asarray(sorted(merged), dtype=np.int64)
            if visible.size and not (0 <= visible[0] and visible[-1] < n):
                raise ValueError(f"visible row outside [0, {n})")
        self.visible = visible
        self._ground_set = GroundSet(n, labels)
        X = np.ascontiguousarray(points.data[visible])
        self._X = X
        self._d0 = (
            np.linalg.norm(X - points.reference, axis=1)
            if visible.size else np.empty(0)
        )
        self._base_loss = float(self._d0.mean()) if visible.size else 0.0

    # -- plumbing --------------------------------------------------------

    def ground(self) -> GroundSet:
        return self._ground_set

    def element_payload_size(self, e: int) -> int:
        if not 0 <= e < self._ground_set.n:
            raise ValueError(f"element {e} out of range [0, {self._ground_set.n})")
        return self.points.dim

    def localized(self, local: Iterable[int], extra: Iterable[int] = ()) -> "MedoidOracle":
        """A copy of this objective averaging only over ``local | extra``."""
        return MedoidOracle(self.points, local, extra, labels=self._ground_set.labels)

    def sample_extras(self, count: int, seed: int, level: int, node: int) -> np.ndarray:
        """Deterministic per-node extra rows for localized accumulation."""
        return sample_without_replacement(
            self.points.n, count, derive_seed(seed, level, node)
        )

    def _check(self, e: int) -> int:
        e = int(e)
        if not 0 <= e < self._ground_set.n:
            raise ValueError(f"element {e} out of range [0, {self._ground_set.n})")
        return e

    def _dists_to(self, e: int) -> np.ndarray:
        diff = self._X - self.points.data[e]
        d2 = np.einsum("ij,ij->i", diff, diff)
        return np.sqrt(d2, out=d2)

    # -- evaluation ------------------------------------------------------

    def value(self, members: Iterable[int]) -> float:
        members = [self._check(e) for e in members]
        if not members or self.visible.size == 0:
            return 0.0
        dmin = self._d0.copy()
        for e in members:
            np.minimum(
                dmin,
                np.linalg.norm(self._X - self.points.data[e], axis=1),
                out=dmin,
            )
        return self._base_loss - float(dmin.mean())

    def new_state(self) -> _MedoidState:
        return _MedoidState(self._d0.copy())

    def gain(self, state: _MedoidState, e: int) -> float:
        e = self._check(e)
        if self.visible.size == 0:
            return 0.0
        return float(np.maximum(state.dmin - self._dists_to(e), 0.0).mean())

    def add(self, state: _MedoidState, e: int) -> None:
        e = self._check(e)
        if self.visible.size == 0:
            return
        np.minimum(state.dmin, self._dists_to(e), out=state.dmin)

    def state_value(self, state: _MedoidState) -> float:
        if self.visible.size == 0:
            return 0.0
        return self._base_loss - float(state.dmin.mean())


def localize(oracle: MedoidOracle, subset: Iterable[int], extra: Iterable[int] = ()) -> MedoidOracle:
    """Restrict a k-medoid oracle's averaging ground to ``subset | extra``."""
    return oracle.localized(subset, extra)
