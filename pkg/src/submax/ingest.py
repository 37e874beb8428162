"""File readers for the three input formats.

All parsers take an iterable of text lines (so tests can feed literal
strings), report failures as :class:`~submax.errors.ParseError` with a
1-based line number, and are deterministic: the same bytes always produce
the same structures.

* ``edges``   - whitespace-separated ``u v`` pairs, ``#``/``%`` comment
  lines; vertex ids are remapped to dense indices in order of first
  appearance, self-loops dropped, duplicate edges collapsed.
* ``fimi``    - one transaction per line as space-separated item ids; each
  transaction becomes one subset of the (first-appearance remapped) item
  universe.
* ``csv``     - one point per line as comma-separated reals; optionally
  preprocessed by per-row mean subtraction and L2 normalization.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import ParseError
from .objectives import Graph, PointSet, SetFamily, preprocess_points

FORMATS = ("edges", "fimi", "csv")


@dataclass(frozen=True)
class ParseStats:
    """What a parser saw: total lines, skipped (comment/blank) lines, the
    number of distinct identifiers remapped, and rows flagged as degenerate
    (csv preprocessing only)."""

    lines: int = 0
    skipped: int = 0
    remapped_ids: int = 0
    flagged_rows: int = 0


@dataclass(frozen=True)
class DatasetDescriptor:
    """Provenance tag the CLI attaches to a parsed dataset."""

    format: str
    path: str
    stats: ParseStats = field(default_factory=ParseStats)


def parse_edge_list(lines: Iterable[str]) -> tuple[Graph, tuple[int, ...], ParseStats]:
    """Parse an undirected edge list.

    Returns the graph, the original vertex id for each dense index, and the
    parse stats.
    """
    labels: dict[int, int] = {}
    edges: list[tuple[int, int]] = []
    total = skipped = 0
    for lineno, raw in enumerate(lines, start=1):
        total += 1
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith("%"):
            skipped += 1
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ParseError(
                f"expected 'u v', got {len(fields)} fields", line=lineno
            )
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"non-integer vertex id in {line!r}", line=lineno) from None
        if u < 0 or v < 0:
            raise ParseError("vertex ids must be >= 0", line=lineno)
        for x in (u, v):
            if x not in labels:
                labels[x] = len(labels)
        edges.append((labels[u], labels[v]))
    graph = Graph.from_edges(len(labels), edges)
    stats = ParseStats(lines=total, skipped=skipped, remapped_ids=len(labels))
    return graph, tuple(labels.keys()), stats


def parse_fimi(lines: Iterable[str]) -> tuple[SetFamily, ParseStats]:
    """Parse transactions: line i becomes subset i over the item universe."""
    items: dict[int, int] = {}
    subsets: list[list[int]] = []
    total = skipped = 0
    for lineno, raw in enumerate(lines, start=1):
        total += 1
        line = raw.strip()
        if not line:
            skipped += 1
            continue
        row = []
        for tok in line.split():
            try:
                item = int(tok)
            except ValueError:
                raise ParseError(f"non-integer item id {tok!r}", line=lineno) from None
            if item < 0:
                raise ParseError("item ids must be >= 0", line=lineno)
            if item not in items:
                items[item] = len(items)
            row.append(items[item])
        subsets.append(row)
    family = SetFamily(len(items), subsets)
    stats = ParseStats(lines=total, skipped=skipped, remapped_ids=len(items))
    return family, stats


def parse_dense_csv(lines: Iterable[str], preprocess: bool = True) -> tuple[PointSet, ParseStats]:
    """Parse comma-separated point rows; all rows must share one width."""
    rows: list[list[float]] = []
    width: int | None = None
    total = skipped = 0
    for lineno, raw in enumerate(lines, start=1):
        total += 1
        line = raw.strip()
        if not line:
            skipped += 1
            continue
        fields = line.split(",")
        if width is None:
            width = len(fields)
        elif len(fields) != width:
            raise ParseError(
                f"expected {width} fields, got {len(fields)}", line=lineno
            )
        try:
            rows.append([float(tok) for tok in fields])
        except ValueError:
            raise ParseError(f"non-numeric field in {line!r}", line=lineno) from None
    matrix = np.asarray(rows, dtype=np.float64)
    if matrix.size == 0:
        matrix = matrix.reshape(0, width or 0)
    flagged = 0
    if preprocess and matrix.shape[0]:
        matrix, flagged = preprocess_points(matrix)
    if not np.isfinite(matrix).all():
        raise ParseError("non-finite value in point data")
    stats = ParseStats(lines=total, skipped=skipped, flagged_rows=flagged)
    return PointSet(matrix), stats


def load_path(path: str, fmt: str, preprocess: bool = True):
    """Open ``path`` and parse it as ``fmt``.

    Returns ``(parsed, labels, descriptor)`` where ``parsed`` is a Graph,
    SetFamily, or PointSet, and ``labels`` maps dense indices to original
    ids (None when the format has no id remapping of its elements).
    """
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}, expected one of {FORMATS}")
    with open(path, "r", encoding="utf-8") as fh:
        if fmt == "edges":
            graph, labels, stats = parse_edge_list(fh)
            return graph, labels, DatasetDescriptor("edges", path, stats)
        if fmt == "fimi":
            family, stats = parse_fimi(fh)
            return family, None, DatasetDescriptor("fimi", path, stats)
        points, stats = parse_dense_csv(fh, preprocess=preprocess)
        return points, None, DatasetDescriptor("csv", path, stats)
