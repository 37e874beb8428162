"""Accumulation-tree arithmetic for the multilevel distributed solver.

The tree over ``m`` machines with branching factor ``b`` is the complete
b-ary reduction tree: leaves are the machines ``0..m-1`` at level 0, and a
node at level ``i`` is labelled by the smallest leaf id it covers, which is
always a multiple of ``b**i``.  The root is ``(levels, 0)`` with
``levels = ceil(log_b m)``.  All relations are closed-form on the labels, so
no tree object ever needs to be materialized on a worker:

* ``parent(id, i) = b**i * (id // b**i)``  (parent of a level-``i-1`` node),
* children of ``(i, id)`` are ``(i-1, id + j*b**(i-1))`` for ``j = 0..b-1``
  while the label stays below ``m`` (so per level at most one node has fewer
  than ``b`` children),
* a node's own label reappears as its first child: machines persist down the
  id-0 spine of their subtree.
"""

from __future__ import annotations


def levels_for(m: int, b: int) -> int:
    """Tree height ceil(log_b m), by integer search (no float log)."""
    _check_shape(m, b)
    levels = 0
    reach = 1
    while reach < m:
        reach *= b
        levels += 1
    return levels


def parent(node: int, level: int, b: int, m: int | None = None) -> int:
    """Label of the parent (at ``level``) of a node at ``level - 1``.

    ``level`` is the parent's level, i.e. ``parent(id, i)`` answers "which
    level-``i`` node receives the solution of level-``i-1`` node ``id``".
    Passing ``m`` additionally bounds-checks the label and level against the
    concrete tree.
    """
    if level < 1:
        raise ValueError(f"parent level must be >= 1, got {level}")
    if node < 0:
        raise ValueError(f"node label must be >= 0, got {node}")
    if m is not None:
        if node >= m:
            raise ValueError(f"node label {node} out of range [0, {m})")
        if level > levels_for(m, b):
            raise ValueError(f"level {level} above tree height {levels_for(m, b)}")
    step = b ** level
    return step * (node // step)


def children(node: int, level: int, b: int, m: int) -> list[int]:
    """Labels of the children of node ``(level, node)``, ascending.

    Level-0 nodes are leaves and have no children.  The first child always
    carries the node's own label.
    """
    _check_node(node, level, b, m)
    if level == 0:
        return []
    step = b ** (level - 1)
    out = []
    for j in range(b):
        child = node + j * step
        if child >= m:
            break
        out.append(child)
    return out


def node_level(node: int, b: int, m: int) -> int:
    """Highest level at which label ``node`` names a node.

    Label 0 persists all the way up, so its answer is the tree height; any
    other label tops out at the largest ``l`` with ``node % b**l == 0``.
    """
    if not 0 <= node < m:
        raise ValueError(f"node label {node} out of range [0, {m})")
    top = levels_for(m, b)
    if node == 0:
        return top
    level = 0
    step = b
    while node % step == 0:
        level += 1
        step *= b
    return level


class AccumulationTree:
    """Validated view of the reduction tree for one run.

    Thin wrapper over the closed-form label arithmetic above; exists so the
    engine and tests can ask shape questions without re-deriving bounds.
    """

    def __init__(self, m: int, b: int):
        _check_shape(m, b)
        self.m = m
        self.b = b
        self.levels = levels_for(m, b)

    def __repr__(self):
        return f"AccumulationTree(m={self.m}, b={self.b}, levels={self.levels})"

    def node_exists(self, level: int, node: int) -> bool:
        return (
            0 <= level <= self.levels
            and 0 <= node < self.m
            and node % (self.b ** level) == 0
        )

    def active_nodes(self, level: int) -> list[int]:
        """Labels of all nodes at ``level``, ascending."""
        if not 0 <= level <= self.levels:
            raise ValueError(f"level {level} out of range [0, {self.levels}]")
        return list(range(0, self.m, self.b ** level))

    def parent_of(self, node: int, level: int) -> int:
        if not self.node_exists(level - 1, node):
            raise ValueError(f"no node {node} at level {level - 1}")
        return parent(node, level, self.b)

    def children_of(self, node: int, level: int) -> list[int]:
        return children(node, level, self.b, self.m)

    def level_of(self, node: int) -> int:
        return node_level(node, self.b, self.m)

    def accessible_leaves(self, level: int, node: int) -> range:
        """Machines whose data can have reached node ``(level, node)``:
        the contiguous leaf block ``[node, node + b**level)`` clipped to m."""
        if not self.node_exists(level, node):
            raise ValueError(f"no node {node} at level {level}")
        return range(node, min(node + self.b ** level, self.m))


def _check_shape(m: int, b: int) -> None:
    if m < 1:
        raise ValueError(f"machine count must be >= 1, got {m}")
    if b < 2:
        raise ValueError(f"branching factor must be >= 2, got {b}")


def _check_node(node: int, level: int, b: int, m: int) -> None:
    _check_shape(m, b)
    if level < 0 or level > levels_for(m, b):
        raise ValueError(f"level {level} out of range")
    if not 0 <= node < m or node % (b ** level) != 0:
        raise ValueError(f"no node {node} at level {level}")
