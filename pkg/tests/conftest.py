"""Shared fixtures: the two worked example graphs, their gains, and helpers."""

from __future__ import annotations

import numpy as np
import pytest

from dynclust import (
    AgentDynamics,
    SpectralData,
    WeightedGraph,
    eigendecompose,
    laplacian,
)

# First worked example: two weakly bridged triangles, default weight 1,
# bridges 0.1. Reference spectrum {0, 0.2, 1.095, 3, 3.105, 3.2}.
W1 = np.array(
    [
        [0.0, 1.0, 1.0, 0.0, 0.1, 0.0],
        [1.0, 0.0, 1.0, 0.0, 0.0, 0.1],
        [1.0, 1.0, 0.0, 0.1, 0.0, 0.0],
        [0.0, 0.0, 0.1, 0.0, 1.0, 1.0],
        [0.1, 0.0, 0.0, 1.0, 0.0, 0.0],
        [0.0, 0.1, 0.0, 1.0, 0.0, 0.0],
    ]
)

EX1_SPECTRUM = np.array([0.0, 0.2, 1.095, 3.0, 3.105, 3.2])

EX1_A = np.array([[0.25, 1.0], [-1.0, 0.25]])
EX1_F = np.array([[0.0, -1.0], [0.5, 1.0]])

# Golden reference for the pairwise-difference propagator of the first
# example, 4-decimal precision (independently checkable: gamma(6) @ pinv(L)).
EX1_P = np.array(
    [
        [0.3235, -0.3235, 0.0, 0.0, 0.0294, -0.0294],
        [-0.0003, 0.3232, -0.3229, -0.0104, -0.0095, 0.0199],
        [1.5625, 1.5625, 1.8750, -1.8750, -1.5625, -1.5625],
        [-0.0199, 0.0095, 0.0104, 0.3229, -0.6173, 0.2944],
        [0.0294, -0.0294, 0.0, 0.0, 0.9118, -0.9118],
        [-1.8952, -1.5423, -1.5625, 1.5625, 1.2482, 2.1893],
    ]
)

# Golden |P T| reference for the first example, same precision. Every
# eigenvalue there is simple, so each column is defined up to one global
# sign and magnitudes are comparable entrywise.
EX1_PT = np.array(
    [
        [0.0, 0.0, 0.0643, 0.0, -0.4549, 0.0],
        [0.0, 0.0, -0.0322, -0.2887, 0.2274, 0.2706],
        [0.0, -4.0825, 0.0, 0.0, 0.0, -0.3608],
        [0.0, 0.0, -0.6450, 0.2887, -0.0113, 0.2706],
        [0.0, 0.0, 1.2899, 0.0, 0.0227, 0.0],
        [0.0, 4.0825, -0.6771, 0.0, 0.2161, -0.1804],
    ]
)

# Second worked example: a triangle and a star, bridged by 0.1.
# Reference spectrum {0, 0.0638, 1, 3, 3, 3.1362}.
W2 = np.array(
    [
        [0.0, 1.0, 1.0, 0.0, 0.0, 0.0],
        [1.0, 0.0, 1.0, 0.0, 0.0, 0.0],
        [1.0, 1.0, 0.0, 0.1, 0.0, 0.0],
        [0.0, 0.0, 0.1, 0.0, 1.0, 1.0],
        [0.0, 0.0, 0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0, 0.0, 0.0],
    ]
)

EX2_SPECTRUM = np.array([0.0, 0.0638, 1.0, 3.0, 3.0, 3.1362])

EX2_A = np.array([[0.25, 2.0], [-2.0, 0.25]])
EX2_F = np.array([[0.5, -1.0], [4.0, 0.5]])

# Golden propagator for the second example. Row 4 as originally printed in
# the reference material sums to -1.667, which no solution of P L = gamma
# admits (both factors annihilate the ones vector); the sign-corrected row
# below is the one the defining product actually yields, and all other rows
# match the reference as printed.
EX2_P = np.array(
    [
        [0.3333, -0.3333, 0.0, 0.0, 0.0, 0.0],
        [0.1667, 0.5, -0.1667, -0.1667, -0.1667, -0.1667],
        [5.0, 5.0, 5.0, -5.0, -5.0, -5.0],
        [0.1667, 0.1667, 0.1667, 0.1667, -0.8333, 0.1667],
        [0.0, 0.0, 0.0, 0.0, 1.0, -1.0],
        [-5.6667, -5.3333, -5.0, 5.0, 5.0, 6.0],
    ]
)

# Golden |P T| magnitudes for the second example's simple-eigenvalue columns
# (1, 2, 3, 6). Columns 4 and 5 belong to the repeated eigenvalue 3 and are
# only fixed up to a rotation; their per-row block masses are in
# EX2_PT_BLOCK_MASS.
EX2_PT_SIMPLE_ABS = {
    1: np.zeros(6),
    2: np.array([0.0, 0.4169, 12.2417, 0.4169, 0.0, 13.0755]),
    3: np.array([0.0, 0.0, 0.0, 0.7071, 1.4142, 0.7071]),
    6: np.array([0.0, 0.276, 0.376, 0.276, 0.0, 0.176]),
}
EX2_PT_BLOCK_MASS = np.array([0.4714, 0.3727, 0.0, 0.2887, 0.0, 0.2357])


def triangle_pair_graph() -> WeightedGraph:
    """Two disjoint unit triangles on {1,2,3} and {4,5,6}."""
    w = np.zeros((6, 6))
    for i, j in [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]:
        w[i, j] = w[j, i] = 1.0
    return WeightedGraph(n=6, weights=w)


def k3_graph() -> WeightedGraph:
    w = np.ones((3, 3)) - np.eye(3)
    return WeightedGraph(n=3, weights=w)


def random_connected_graph(rng: np.random.Generator, n: int) -> WeightedGraph:
    """Random spanning chain through a shuffled order plus random extra edges."""
    w = np.zeros((n, n))
    order = rng.permutation(n)
    for a, b in zip(order[:-1], order[1:]):
        w[a, b] = w[b, a] = rng.uniform(0.1, 2.0)
    extra = rng.integers(0, n)
    for _ in range(int(extra)):
        i, j = rng.integers(0, n, size=2)
        if i != j and w[i, j] == 0:
            w[i, j] = w[j, i] = rng.uniform(0.1, 2.0)
    return WeightedGraph(n=n, weights=w)


@pytest.fixture(scope="session")
def ex1_graph() -> WeightedGraph:
    return WeightedGraph(n=6, weights=W1)


@pytest.fixture(scope="session")
def ex1_spectral(ex1_graph) -> SpectralData:
    return eigendecompose(laplacian(ex1_graph))


@pytest.fixture(scope="session")
def ex1_dynamics() -> AgentDynamics:
    return AgentDynamics(d=2, A=EX1_A, F=EX1_F)


@pytest.fixture(scope="session")
def ex2_graph() -> WeightedGraph:
    return WeightedGraph(n=6, weights=W2)


@pytest.fixture(scope="session")
def ex2_spectral(ex2_graph) -> SpectralData:
    return eigendecompose(laplacian(ex2_graph))


@pytest.fixture(scope="session")
def ex2_dynamics() -> AgentDynamics:
    return AgentDynamics(d=2, A=EX2_A, F=EX2_F)
