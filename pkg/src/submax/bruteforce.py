"""Exhaustive search over all feasible solutions, for verification only.

Enumerates every subset of size 0..k in lexicographic order via
``itertools.combinations`` and keeps the first maximizer, so ties resolve to
the lexicographically smallest member tuple.  A hard guard on the number of
candidate sets keeps accidental big instances from hanging a test run.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable

from .core import CardinalityConstraint, SubmodularOracle
from .errors import InstanceSizeError

#: Refuse to enumerate more candidate sets than this.
MAX_ENUMERATED = 10_000_000


@dataclass(frozen=True)
class ExactResult:
    """Optimum value, one optimal set, and how many sets were scored."""

    value: float
    members: tuple[int, ...]
    evaluated: int


def exact_opt(oracle: SubmodularOracle, constraint: CardinalityConstraint,
              candidates: Iterable[int] | None = None) -> ExactResult:
    """Exact optimum of f over subsets of size <= k.

    For a monotone f the optimum is attained at size exactly k (when enough
    candidates exist), but smaller sizes are scored anyway: the oracle
    contract is the only assumption this module is allowed to lean on when
    it is being used to audit the solvers.
    """
    n = oracle.ground().n
    if candidates is None:
        pool = list(range(n))
    else:
        pool = sorted(set(int(e) for e in candidates))
        if pool and not (0 <= pool[0] and pool[-1] < n):
            raise ValueError(f"candidate outside ground set [0, {n})")
    k = min(constraint.k, len(pool))
    total = sum(comb(len(pool), size) for size in range(k + 1))
    if total > MAX_ENUMERATED:
        raise InstanceSizeError(
            f"{total} candidate sets exceeds the enumeration guard "
            f"({MAX_ENUMERATED}); shrink n or k"
        )
    best_value = 0.0
    best_members: tuple[int, ...] = ()
    evaluated = 1  # the empty set, value 0 by contract
    for size in range(1, k + 1):
        for members in combinations(pool, size):
            v = oracle.value(members)
            evaluated += 1
            if v > best_value:
                best_value = v
                best_members = members
    return ExactResult(best_value, best_members, evaluated)
