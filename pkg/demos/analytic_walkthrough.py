"""Walk through the analytic clustering pipeline on two small graphs.

The first graph is two tightly bonded groups joined by weak 0.1 bridges,
arranged so that the bridge pattern is symmetric between the groups. Its
agreement analysis recovers the two groups exactly. The second graph keeps
a similar shape but breaks the symmetry, and only two bonded pairs survive.
"""

from __future__ import annotations

import numpy as np

from dynclust import (
    AgentDynamics,
    WeightedGraph,
    analyze_agreement,
    eigendecompose,
    laplacian,
    scan_h,
    stability_partition,
)

BALANCED = np.array(
    [
        [0.0, 1.0, 1.0, 0.0, 0.1, 0.0],
        [1.0, 0.0, 1.0, 0.0, 0.0, 0.1],
        [1.0, 1.0, 0.0, 0.1, 0.0, 0.0],
        [0.0, 0.0, 0.1, 0.0, 1.0, 1.0],
        [0.1, 0.0, 0.0, 1.0, 0.0, 0.0],
        [0.0, 0.1, 0.0, 1.0, 0.0, 0.0],
    ]
)

LOPSIDED = np.array(
    [
        [0.0, 1.0, 1.0, 0.0, 0.0, 0.0],
        [1.0, 0.0, 1.0, 0.0, 0.0, 0.0],
        [1.0, 1.0, 0.0, 0.1, 0.0, 0.0],
        [0.0, 0.0, 0.1, 0.0, 1.0, 1.0],
        [0.0, 0.0, 0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0, 0.0, 0.0],
    ]
)

AUTONOMY = np.array([[0.25, 1.0], [-1.0, 0.25]])
GAIN = np.array([[0.0, -1.0], [0.5, 1.0]])

FAST_AUTONOMY = np.array([[0.25, 2.0], [-2.0, 0.25]])
STRONG_GAIN = np.array([[0.5, -1.0], [4.0, 0.5]])


def describe(name: str, weights: np.ndarray, autonomy: np.ndarray, gain: np.ndarray) -> None:
    print(f"=== {name} ===")
    g = WeightedGraph(n=weights.shape[0], weights=weights)
    s = eigendecompose(laplacian(g))
    print("eigenvalues:", np.round(s.eigenvalues, 5))

    dyn = AgentDynamics(d=2, A=autonomy, F=gain)
    part = stability_partition(dyn, s)
    flags = "".join("H" if f else "u" for f in part.flags)
    print(f"mode stability: {flags}  (H = Hurwitz, u = unstable), split index h = {part.h}")

    report = analyze_agreement(s, part)
    print("consecutive agreements:", report.consecutive)
    print("clusters:", report.partition.as_lists())

    print("hypothetical splits:")
    for entry in scan_h(s):
        span = f"h = {entry.h_min}" if entry.h_min == entry.h_max else f"h = {entry.h_min}..{entry.h_max}"
        print(f"  {span}: {[list(c) for c in entry.partition.clusters]}")
    print()


def main() -> None:
    describe("balanced bridges", BALANCED, AUTONOMY, GAIN)
    describe("lopsided bridge", LOPSIDED, FAST_AUTONOMY, STRONG_GAIN)


if __name__ == "__main__":
    main()
