"""Core value types and the oracle contract for monotone submodular maximization.

A problem instance is a ground set of ``n`` elements (always addressed by the
dense internal indices ``0..n-1``) together with a set function ``f`` exposed
through :class:`SubmodularOracle`.  Solvers only ever talk to the oracle
interface, so objectives and solvers can be mixed freely.

Function-call accounting convention: one "call" is one evaluation of ``f`` on
a candidate set, i.e. either ``value()`` or ``gain()``.  ``add()`` and
``state_value()`` extend or read out an already-evaluated state and are free.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class GroundSet:
    """The element universe of an instance.

    ``labels``, when present, maps the dense internal index back to the
    identifier used in the source file (e.g. original vertex ids of an edge
    list).  Internally everything runs on ``0..n-1``.
    """

    n: int
    labels: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"ground set size must be >= 0, got {self.n}")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError(
                f"expected {self.n} labels, got {len(self.labels)}"
            )

    def to_original(self, index: int) -> int:
        """Translate an internal index to its original identifier."""
        if not 0 <= index < self.n:
            raise ValueError(f"element {index} out of range [0, {self.n})")
        return index if self.labels is None else self.labels[index]


@dataclass(frozen=True)
class CardinalityConstraint:
    """The budget |S| <= k."""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"cardinality budget must be >= 1, got {self.k}")


@dataclass(frozen=True)
class Solution:
    """An immutable solver result.

    ``members`` is kept in selection order (the order greedy picked them),
    ``value`` is f(members) as computed by the producing oracle, and
    ``origin`` records who produced it: the string ``"sequential"`` or a
    ``(level, node)`` accumulation-tree label.
    """

    members: tuple[int, ...]
    value: float
    origin: tuple[int, int] | str = "sequential"

    def __post_init__(self):
        if len(set(self.members)) != len(self.members):
            raise ValueError("solution members must be duplicate-free")


@dataclass(frozen=True)
class GreedyStats:
    """Accounting sidecar returned by the greedy solvers."""

    function_calls: int
    selections: int


class SubmodularOracle:
    """Contract for a monotone submodular set function.

    Subclasses must provide :meth:`ground`, :meth:`value` and
    :meth:`element_payload_size`, and should override the incremental-state
    quartet (:meth:`new_state`, :meth:`gain`, :meth:`add`,
    :meth:`state_value`) with something faster than the generic
    recompute-from-scratch fallback below.

    Required semantics:

    * ``value(()) == 0`` (normalized),
    * monotone: adding an element never decreases the value,
    * submodular: marginal gains shrink as the base set grows,
    * ``integer_valued`` is True iff every value/gain is an exact integer.
    """

    integer_valued: bool = True
    #: True when the oracle averages over a machine-local ground and the
    #: engine should build per-node localized copies (k-medoid).
    local_evaluation: bool = False

    def ground(self) -> GroundSet:
        raise NotImplementedError

    def value(self, members: Iterable[int]) -> float:
        """Evaluate f on ``members`` from scratch.  One function call."""
        raise NotImplementedError

    def element_payload_size(self, e: int) -> int:
        """Units of data shipped when element ``e`` crosses machines
        (subset size, degree, or feature count depending on objective)."""
        raise NotImplementedError

    # -- incremental evaluation ------------------------------------------
    # The generic fallback keeps an explicit member list and re-runs
    # ``value``; fine for tests and toy objectives, too slow for real ones.

    def new_state(self):
        """Fresh evaluation state representing the empty set."""
        return _GenericState([], 0.0)

    def gain(self, state, e: int) -> float:
        """f(S + e) - f(S) for the set S held in ``state``.  One call."""
        return self.value(state.members + [e]) - state.value

    def add(self, state, e: int) -> None:
        """Commit ``e`` into ``state``.  Not a function call."""
        state.value = self.value(state.members + [e])
        state.members.append(e)

    def state_value(self, state) -> float:
        return state.value


class _GenericState:
    __slots__ = ("members", "value")

    def __init__(self, members, value):
        self.members = members
        self.value = value


def marginal_gain(oracle: SubmodularOracle, members: Sequence[int], e: int) -> float:
    """Reference marginal gain f(S + e) - f(S), evaluated from scratch.

    This is the slow dual route used to cross-check incremental states; the
    solvers never call it.
    """
    n = oracle.ground().n
    base = list(members)
    for x in base:
        if not 0 <= x < n:
            raise ValueError(f"element {x} out of range [0, {n})")
    if not 0 <= e < n:
        raise ValueError(f"element {e} out of range [0, {n})")
    if e in base:
        raise ValueError(f"element {e} already selected")
    return oracle.value(base + [e]) - oracle.value(base)


def is_feasible(constraint: CardinalityConstraint, members: Sequence[int], e: int) -> bool:
    """True iff adding ``e`` keeps the solution within budget and duplicate-free."""
    return len(members) + 1 <= constraint.k and e not in members
