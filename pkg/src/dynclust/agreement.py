"""Zero-pattern agreement test and cluster extraction.

The machinery: for the cyclic difference matrix gamma(N), the product
P = gamma(N) @ pinv(L) satisfies P L = gamma(N). Expressing P in the
Laplacian eigenbasis T, row i of P @ T decides whether agents i and i+1
converge to each other: the pair agrees exactly when the row vanishes on
the columns of the unstable nonzero modes (the required-zero set). The same
test applies to any vertex pair through the difference row
(e_i - e_j) @ pinv(L).

Columns belonging to a repeated eigenvalue are only determined up to a
rotation of that eigenspace, so all tests measure the Euclidean mass of a
row over whole eigenvalue blocks, which is rotation invariant.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .dynamics import StabilityPartition
from .errors import DisconnectedGraphError
from .spectral import SpectralData, zero_eigenvalue_count

# Relative scale for the default row-mass threshold.
DEFAULT_TOL_SCALE = 1e-6

# Eigenvalues closer than this (times max(1, largest eigenvalue)) are treated
# as one repeated block for gauge purposes.
BLOCK_RTOL = 1e-6


@dataclass(frozen=True)
class Partition:
    """Disjoint vertex sets covering 1..N, each ascending, ordered by minimum."""

    clusters: tuple[tuple[int, ...], ...]

    @property
    def alpha(self) -> int:
        return len(self.clusters)

    def as_lists(self) -> list[list[int]]:
        return [list(c) for c in self.clusters]


@dataclass(frozen=True)
class AgreementReport:
    """Everything the zero-pattern test produced for one (graph, mode-split) run."""

    P: np.ndarray
    PT: np.ndarray
    zero_tolerance: float
    required_zero: tuple[int, ...]
    consecutive: tuple[bool, ...]
    pairs: np.ndarray
    partition: Partition


@dataclass(frozen=True)
class ScanEntry:
    """One distinct partition and the contiguous range of splits producing it."""

    h_min: int
    h_max: int
    partition: Partition


def gamma(N: int) -> np.ndarray:
    """Cyclic difference matrix: row i is e_i - e_{i+1}, last row e_N - e_1."""
    if N < 2:
        raise ValueError("need at least 2 vertices")
    g = np.eye(N)
    for i in range(N - 1):
        g[i, i + 1] = -1.0
    g[N - 1, 0] = -1.0
    return g


def compute_P(s: SpectralData) -> np.ndarray:
    """P = gamma(N) @ pseudoinverse; the minimal solution of P L = gamma(N)."""
    if zero_eigenvalue_count(s) != 1:
        raise DisconnectedGraphError(
            "the pairwise-difference propagator needs a connected graph"
            " (exactly one zero eigenvalue)"
        )
    return gamma(s.n) @ s.pseudoinverse


def compute_PT(P: np.ndarray, s: SpectralData) -> np.ndarray:
    """P expressed in the eigenbasis: the matrix whose zero pattern is tested."""
    return P @ s.basis


def eigenvalue_blocks(eigenvalues: np.ndarray) -> list[tuple[int, int]]:
    """Runs [start, end) of numerically equal eigenvalues, ascending order."""
    ev = np.asarray(eigenvalues, dtype=float)
    tol = BLOCK_RTOL * max(1.0, float(ev[-1]))
    blocks = []
    start = 0
    for k in range(1, len(ev)):
        if ev[k] - ev[k - 1] > tol:
            blocks.append((start, k))
            start = k
    blocks.append((start, len(ev)))
    return blocks


def _mass_columns(Z: Iterable[int], eigenvalues: np.ndarray | None, n: int) -> np.ndarray:
    """0-based column selection for the mass test: Z expanded to whole blocks."""
    zset = {int(k) - 1 for k in Z}
    if any(k < 1 or k >= n for k in zset):
        bad = sorted(k + 1 for k in zset if k < 1 or k >= n)
        raise ValueError(f"required-zero indices out of range 2..{n}: {bad}")
    if eigenvalues is None:
        return np.array(sorted(zset), dtype=int)
    cols: set[int] = set()
    for start, end in eigenvalue_blocks(eigenvalues):
        if zset.intersection(range(start, end)):
            cols.update(range(start, end))
    return np.array(sorted(cols), dtype=int)


def row_mass(row: np.ndarray, Z: Iterable[int], eigenvalues: np.ndarray | None = None) -> float:
    """Gauge-invariant magnitude of one eigenbasis row over the unstable columns."""
    cols = _mass_columns(Z, eigenvalues, len(row))
    if len(cols) == 0:
        return 0.0
    return float(np.linalg.norm(row[cols]))


def consecutive_agreements(
    PT: np.ndarray,
    Z: Iterable[int],
    zero_tolerance: float,
    eigenvalues: np.ndarray | None = None,
) -> list[bool]:
    """Agreement of each cyclically consecutive pair (i, i+1), pair (N, 1) last."""
    return [row_mass(PT[i], Z, eigenvalues) < zero_tolerance for i in range(PT.shape[0])]


def pair_agreement(
    i: int,
    j: int,
    s: SpectralData,
    Z: Iterable[int],
    zero_tolerance: float,
) -> bool:
    """Zero-pattern test for one vertex pair via its difference row."""
    if not (1 <= i <= s.n and 1 <= j <= s.n):
        raise ValueError(f"vertex pair ({i}, {j}) out of range 1..{s.n}")
    if i == j:
        return True
    p = s.pseudoinverse[i - 1] - s.pseudoinverse[j - 1]
    row = p @ s.basis
    return row_mass(row, Z, s.eigenvalues) < zero_tolerance


def agreement_matrix(s: SpectralData, Z: Iterable[int], zero_tolerance: float) -> np.ndarray:
    """Symmetric reflexive boolean matrix of pairwise agreements."""
    rows_t = s.pseudoinverse @ s.basis
    cols = _mass_columns(Z, s.eigenvalues, s.n)
    pairs = np.eye(s.n, dtype=bool)
    if len(cols) == 0:
        pairs[:] = True
        return pairs
    sub = rows_t[:, cols]
    for i in range(s.n - 1):
        masses = np.linalg.norm(sub[i + 1 :] - sub[i], axis=1)
        agree = masses < zero_tolerance
        pairs[i, i + 1 :] = agree
        pairs[i + 1 :, i] = agree
    return pairs


def extract_clusters(pairs: np.ndarray) -> Partition:
    """Connected components of the agreement relation, as a Partition."""
    rel = np.asarray(pairs, dtype=bool)
    n = rel.shape[0]
    if rel.shape != (n, n) or not np.array_equal(rel, rel.T) or not np.all(np.diag(rel)):
        raise ValueError("agreement relation must be square, symmetric, and reflexive")
    seen = [False] * n
    clusters = []
    for start in range(n):
        if seen[start]:
            continue
        comp = []
        queue = deque([start])
        seen[start] = True
        while queue:
            v = queue.popleft()
            comp.append(v + 1)
            for u in np.nonzero(rel[v])[0]:
                if not seen[u]:
                    seen[u] = True
                    queue.append(int(u))
        clusters.append(tuple(sorted(comp)))
    return Partition(clusters=tuple(clusters))


def default_zero_tolerance(PT: np.ndarray) -> float:
    """Scale-aware threshold: a row is 'zero' below this fraction of max |PT|."""
    return DEFAULT_TOL_SCALE * float(np.abs(PT).max())


def analyze_agreement(
    s: SpectralData,
    split: StabilityPartition | Iterable[int],
    zero_tolerance: float | None = None,
) -> AgreementReport:
    """Run the full zero-pattern pipeline for a given mode split.

    split is either a StabilityPartition or a bare iterable of 1-based
    unstable nonzero mode indices.
    """
    Z = tuple(split.required_zero) if isinstance(split, StabilityPartition) else tuple(
        sorted(int(k) for k in split)
    )
    P = compute_P(s)
    PT = compute_PT(P, s)
    tol = default_zero_tolerance(PT) if zero_tolerance is None else float(zero_tolerance)
    consecutive = tuple(consecutive_agreements(PT, Z, tol, s.eigenvalues))
    pairs = agreement_matrix(s, Z, tol)
    partition = extract_clusters(pairs)
    return AgreementReport(
        P=P,
        PT=PT,
        zero_tolerance=tol,
        required_zero=Z,
        consecutive=consecutive,
        pairs=pairs,
        partition=partition,
    )


def scan_h(s: SpectralData, zero_tolerance: float | None = None) -> list[ScanEntry]:
    """Partitions for every hypothetical split index h in 2..N, deduplicated.

    Raising h only adds unstable columns, so partitions refine monotonically;
    equal neighbors are merged into [h_min, h_max] ranges.
    """
    P = compute_P(s)
    PT = compute_PT(P, s)
    tol = default_zero_tolerance(PT) if zero_tolerance is None else float(zero_tolerance)
    entries: list[ScanEntry] = []
    for h in range(2, s.n + 1):
        Z = tuple(range(2, h))
        partition = extract_clusters(agreement_matrix(s, Z, tol))
        if entries and entries[-1].partition == partition:
            prev = entries[-1]
            entries[-1] = ScanEntry(prev.h_min, h, partition)
        else:
            entries.append(ScanEntry(h, h, partition))
    return entries


def report_dict(
    n: int,
    h: int | None,
    eigenvalues: Sequence[float],
    required_zero: Iterable[int],
    zero_tolerance: float | None,
    pairs: np.ndarray | None,
    partition: Partition,
    method: str,
    warning: str | None = None,
) -> dict:
    """Assemble the JSON-ready cluster report used by the command line."""
    if pairs is None:
        agreement_pairs = [
            [c[a], c[b]]
            for c in partition.clusters
            for a in range(len(c))
            for b in range(a + 1, len(c))
        ]
    else:
        agreement_pairs = [
            [i + 1, j + 1] for i in range(n) for j in range(i + 1, n) if pairs[i, j]
        ]
    out = {
        "n": n,
        "h": h,
        "eigenvalues": [float(v) for v in eigenvalues],
        "required_zero_columns": sorted(int(k) for k in required_zero),
        "zero_tolerance": None if zero_tolerance is None else float(zero_tolerance),
        "agreement_pairs": agreement_pairs,
        "clusters": partition.as_lists(),
        "method": method,
    }
    if warning is not None:
        out["warning"] = warning
    return out
