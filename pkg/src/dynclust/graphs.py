"""Weighted undirected graphs: parsing, validation, Laplacians, connectivity.

Vertices are 1-indexed in every public input and output; internally numpy
arrays are 0-indexed and the shift happens at the boundary.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import GraphFormatError

# Matrix input is symmetrized by averaging when the relative asymmetry is
# below this; anything larger is rejected as a data error.
ASYMMETRY_RTOL = 1e-12


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected graph on n vertices with a symmetric nonnegative weight matrix."""

    n: int
    weights: np.ndarray

    def __post_init__(self) -> None:
        w = np.asarray(self.weights, dtype=float)
        if w.shape != (self.n, self.n):
            raise GraphFormatError(
                f"weight matrix shape {w.shape} does not match vertex count {self.n}"
            )
        if self.n < 2:
            raise GraphFormatError("a graph needs at least 2 vertices")
        if not np.all(np.isfinite(w)):
            raise GraphFormatError("weight matrix contains non-finite entries")
        if np.any(w < 0):
            raise GraphFormatError("negative edge weight")
        if np.any(np.diag(w) != 0):
            raise GraphFormatError("nonzero diagonal entry (self-loops are not allowed)")
        if not np.array_equal(w, w.T):
            raise GraphFormatError("weight matrix is not symmetric")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    def edges(self) -> list[tuple[int, int, float]]:
        """All edges as (u, v, w) with u < v, 1-indexed, sorted."""
        iu, ju = np.nonzero(np.triu(self.weights))
        return [(int(i) + 1, int(j) + 1, float(self.weights[i, j])) for i, j in zip(iu, ju)]


@dataclass(frozen=True)
class Laplacian:
    """L = D - W for the diagonal degree matrix D of row sums of W."""

    matrix: np.ndarray

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


def laplacian(g: WeightedGraph) -> Laplacian:
    """Build the graph Laplacian; rows sum to zero by construction."""
    m = np.diag(g.weights.sum(axis=1)) - g.weights
    m.setflags(write=False)
    return Laplacian(matrix=m)


def parse_edge_list(text: str) -> WeightedGraph:
    """Parse line-oriented edge-list text into a WeightedGraph.

    Each non-comment line is "u v w" with 1-indexed vertices, or an optional
    header "n <N>" fixing the vertex count. Lines starting with '#' and blank
    lines are ignored. Duplicate edges are rejected, not accumulated.
    """
    n_declared: int | None = None
    edges: dict[tuple[int, int], float] = {}
    first_line: dict[tuple[int, int], int] = {}
    max_vertex = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "n":
            if len(parts) != 2:
                raise GraphFormatError(f"line {lineno}: malformed header {raw!r}")
            if n_declared is not None:
                raise GraphFormatError(f"line {lineno}: repeated 'n' header")
            try:
                n_declared = int(parts[1])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: bad vertex count {parts[1]!r}") from None
            if n_declared < 2:
                raise GraphFormatError(f"line {lineno}: vertex count must be at least 2")
            continue
        if len(parts) != 3:
            raise GraphFormatError(f"line {lineno}: expected 'u v w', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
            w = float(parts[2])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: could not parse {raw!r}") from None
        if u < 1 or v < 1:
            raise GraphFormatError(f"line {lineno}: vertex ids are 1-indexed, got {u} {v}")
        if u == v:
            raise GraphFormatError(f"line {lineno}: self-loop on vertex {u}")
        if not (w > 0) or not np.isfinite(w):
            raise GraphFormatError(f"line {lineno}: edge weight must be positive, got {parts[2]}")
        key = (min(u, v), max(u, v))
        if key in edges:
            raise GraphFormatError(
                f"line {lineno}: duplicate edge {key[0]}-{key[1]}"
                f" (first given on line {first_line[key]})"
            )
        edges[key] = w
        first_line[key] = lineno
        max_vertex = max(max_vertex, u, v)
    if not edges and n_declared is None:
        raise GraphFormatError("no edges and no 'n' header; vertex count unknown")
    n = n_declared if n_declared is not None else max_vertex
    if max_vertex > n:
        raise GraphFormatError(f"edge vertex {max_vertex} exceeds declared count {n}")
    weights = np.zeros((n, n))
    for (u, v), w in edges.items():
        weights[u - 1, v - 1] = weights[v - 1, u - 1] = w
    return WeightedGraph(n=n, weights=weights)


def parse_adjacency(csv_text: str) -> WeightedGraph:
    """Parse a plain CSV square matrix (no header row) into a WeightedGraph."""
    rows: list[list[float]] = []
    for lineno, raw in enumerate(csv_text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            rows.append([float(tok) for tok in line.split(",")])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-numeric entry in {raw!r}") from None
    if not rows:
        raise GraphFormatError("empty adjacency input")
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise GraphFormatError(f"adjacency matrix is not square ({n} rows)")
    w = np.array(rows, dtype=float)
    scale = max(1.0, float(np.abs(w).max()))
    asym = float(np.abs(w - w.T).max())
    if asym > ASYMMETRY_RTOL * scale:
        raise GraphFormatError(f"adjacency matrix asymmetric (max |w_ij - w_ji| = {asym:g})")
    w = (w + w.T) / 2.0
    if np.any(np.diag(w) != 0):
        raise GraphFormatError("adjacency diagonal must be zero (self-loops are not allowed)")
    return WeightedGraph(n=n, weights=w)


def render_edge_list(g: WeightedGraph) -> str:
    """Serialize to the edge-list format; parse_edge_list round-trips exactly."""
    lines = [f"n {g.n}"]
    lines += [f"{u} {v} {w!r}" for u, v, w in g.edges()]
    return "\n".join(lines) + "\n"


def render_adjacency(g: WeightedGraph) -> str:
    """Serialize the weight matrix as plain CSV; round-trips exactly."""
    return "\n".join(",".join(repr(float(x)) for x in row) for row in g.weights) + "\n"


def connected_components(g: WeightedGraph) -> list[list[int]]:
    """Maximal connected vertex sets, each ascending, ordered by smallest member."""
    seen = [False] * g.n
    out: list[list[int]] = []
    for start in range(g.n):
        if seen[start]:
            continue
        comp = []
        queue = deque([start])
        seen[start] = True
        while queue:
            v = queue.popleft()
            comp.append(v + 1)
            for u in np.nonzero(g.weights[v])[0]:
                if not seen[u]:
                    seen[u] = True
                    queue.append(int(u))
        out.append(sorted(comp))
    return out


def is_connected(g: WeightedGraph) -> bool:
    return len(connected_components(g)) == 1
