"""Simulation of the coupled agent system and trajectory analytics.

The stacked state follows xdot = (I_N kron A - L kron F) x under classical
fixed-step fourth-order Runge-Kutta. Downstream analytics work on normalized
pairwise distances (raw distances are meaningless once the unstable
autonomous part has grown the whole state by orders of magnitude) and
extract clusters from the separation between slow within-group and fast
cross-group divergence.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import IO

import numpy as np
from scipy.cluster.hierarchy import fcluster, linkage
from scipy.linalg import expm

from .agreement import Partition
from .dynamics import AgentDynamics
from .errors import NumericError, TrajectoryFormatError
from .graphs import Laplacian

# Distances whose trailing-window average sits below this are collapsed before
# the dendrogram cut; they are numerically indistinguishable from zero.
DEGENERATE_DISTANCE = 1e-12

# Minimum merge-height ratio for a dendrogram cut to count as a real gap.
GAP_THRESHOLD = 2.0


@dataclass(frozen=True)
class SimConfig:
    """Integration settings; all randomness flows through seed."""

    t_end: float
    dt: float = 1e-3
    record_stride: int = 10
    seed: int = 0
    init: np.ndarray | str = "uniform(-1,1)"
    blowup_cap: float = 1e12

    def __post_init__(self) -> None:
        if not (self.t_end > 0):
            raise ValueError("t_end must be positive")
        if not (0 < self.dt <= self.t_end):
            raise ValueError("dt must be positive and at most t_end")
        if self.record_stride < 1:
            raise ValueError("record_stride must be at least 1")
        if not (self.blowup_cap > 0):
            raise ValueError("blowup_cap must be positive")


@dataclass(frozen=True)
class Trajectory:
    """Recorded times and per-agent states; truncated marks an early stop."""

    times: np.ndarray
    states: np.ndarray
    truncated: bool = False

    @property
    def n_agents(self) -> int:
        return self.states.shape[1]

    @property
    def dim(self) -> int:
        return self.states.shape[2]


@dataclass(frozen=True)
class QuasiClusterReport:
    partition: Partition
    gap_ratio: float
    evaluation_time: float


def build_system_matrix(L: Laplacian | np.ndarray, dyn: AgentDynamics) -> np.ndarray:
    """Kronecker assembly of the coupled system: I_N kron A - L kron F."""
    lm = L.matrix if isinstance(L, Laplacian) else np.asarray(L, dtype=float)
    n = lm.shape[0]
    return np.kron(np.eye(n), dyn.A) - np.kron(lm, dyn.F)


def initial_state(cfg: SimConfig, n: int, d: int) -> np.ndarray:
    """Initial agent states as an (n, d) array, explicit or seeded uniform."""
    if isinstance(cfg.init, str):
        if cfg.init != "uniform(-1,1)":
            raise ValueError(f"unknown initial-state option {cfg.init!r}")
        rng = np.random.default_rng(cfg.seed)
        return rng.uniform(-1.0, 1.0, size=(n, d))
    x0 = np.asarray(cfg.init, dtype=float)
    if x0.shape != (n, d):
        raise ValueError(f"explicit initial state must have shape ({n}, {d}), got {x0.shape}")
    return x0.copy()


def integrate(
    M: np.ndarray, x0: np.ndarray, cfg: SimConfig, agent_dim: int | None = None
) -> Trajectory:
    """Classical RK4 at fixed step cfg.dt, recording every record_stride steps.

    t = 0 and the final time are always recorded; the last step is shortened
    when dt does not divide t_end. Integration stops early (truncated=True)
    once any state magnitude exceeds blowup_cap, and raises NumericError on
    non-finite states.
    """
    x0 = np.asarray(x0, dtype=float)
    if x0.ndim == 2:
        n, d = x0.shape
        x = x0.reshape(-1).copy()
    else:
        if agent_dim is None:
            raise ValueError("flat x0 needs agent_dim to recover the (n, d) layout")
        d = int(agent_dim)
        if len(x0) % d != 0:
            raise ValueError(f"state length {len(x0)} is not a multiple of agent_dim {d}")
        n = len(x0) // d
        x = x0.copy()
    if M.shape != (n * d, n * d):
        raise ValueError(f"system matrix shape {M.shape} does not match state length {n * d}")

    full_steps = int(np.floor(cfg.t_end / cfg.dt + 1e-9))
    remainder = cfg.t_end - full_steps * cfg.dt
    if remainder <= 1e-12 * cfg.dt:
        remainder = 0.0
    total_steps = full_steps + (1 if remainder > 0 else 0)

    times = [0.0]
    states = [x.copy()]
    truncated = False
    t = 0.0
    for k in range(1, total_steps + 1):
        h = cfg.dt if k <= full_steps else remainder
        k1 = M @ x
        k2 = M @ (x + 0.5 * h * k1)
        k3 = M @ (x + 0.5 * h * k2)
        k4 = M @ (x + h * k3)
        x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t_new = k * cfg.dt if k <= full_steps else cfg.t_end
        if not np.all(np.isfinite(x)):
            raise NumericError(f"non-finite state at t = {t_new:.6g}; last valid t = {t:.6g}")
        t = t_new
        record = (k % cfg.record_stride == 0) or k == total_steps
        over_cap = float(np.abs(x).max()) > cfg.blowup_cap
        if record or over_cap:
            times.append(t)
            states.append(x.copy())
        if over_cap:
            truncated = True
            break
    return Trajectory(
        times=np.array(times),
        states=np.array(states).reshape(len(times), n, d),
        truncated=truncated,
    )


def run_simulation(L: Laplacian, dyn: AgentDynamics, cfg: SimConfig) -> Trajectory:
    """Build the stacked system, draw the initial state, integrate."""
    x0 = initial_state(cfg, L.n, dyn.d)
    return integrate(build_system_matrix(L, dyn), x0, cfg)


def consensus_mode(x0: np.ndarray, dyn: AgentDynamics, t: float) -> np.ndarray:
    """Reference trajectory of the agent-average: exp(A t) applied to the mean."""
    x0 = np.asarray(x0, dtype=float)
    if x0.ndim == 1:
        if len(x0) % dyn.d != 0:
            raise ValueError(f"state length {len(x0)} is not a multiple of d = {dyn.d}")
        x0 = x0.reshape(-1, dyn.d)
    mean0 = x0.mean(axis=0)
    return expm(dyn.A * float(t)) @ mean0


def _norms(states: np.ndarray) -> np.ndarray:
    return np.linalg.norm(states, axis=2)


def normalized_distance_series(tr: Trajectory, i: int, j: int) -> np.ndarray:
    """Rows (t, ||x_i - x_j|| / (1 + max_k ||x_k||)) over the recorded times."""
    _check_agent(tr, i)
    _check_agent(tr, j)
    num = np.linalg.norm(tr.states[:, i - 1] - tr.states[:, j - 1], axis=1)
    den = 1.0 + _norms(tr.states).max(axis=1)
    return np.column_stack([tr.times, num / den])


def difference_series(tr: Trajectory, i: int, j: int, coord: int) -> np.ndarray:
    """Rows (t, x_i[coord] - x_j[coord]), raw and signed."""
    _check_agent(tr, i)
    _check_agent(tr, j)
    if not (1 <= coord <= tr.dim):
        raise ValueError(f"coordinate {coord} out of range 1..{tr.dim}")
    series = tr.states[:, i - 1, coord - 1] - tr.states[:, j - 1, coord - 1]
    return np.column_stack([tr.times, series])


def _check_agent(tr: Trajectory, i: int) -> None:
    if not (1 <= i <= tr.n_agents):
        raise ValueError(f"agent index {i} out of range 1..{tr.n_agents}")


def _window_slice(times: np.ndarray, eval_window: float) -> np.ndarray:
    span = times[-1] - times[0]
    cutoff = times[-1] - eval_window * span
    idx = np.nonzero(times >= cutoff)[0]
    if len(idx) < 2:
        idx = np.arange(max(0, len(times) - 2), len(times))
    return idx


def quasi_clusters(tr: Trajectory, eval_window: float = 0.2) -> QuasiClusterReport:
    """Clusters from the separation of late-time normalized distances.

    Each pair's normalized distance is averaged geometrically over the
    trailing window, the pairs are merged by single linkage, and the
    dendrogram is cut at the largest ratio between successive merge heights.
    A largest ratio below GAP_THRESHOLD means no trustworthy separation and
    yields a single cluster.
    """
    if len(tr.times) < 10:
        raise ValueError("need at least 10 recorded points for cluster extraction")
    if not (0 < eval_window <= 1):
        raise ValueError("eval_window must lie in (0, 1]")
    n = tr.n_agents
    idx = _window_slice(tr.times, eval_window)
    window = tr.states[idx]
    den = 1.0 + _norms(window).max(axis=1)
    evaluation_time = float(tr.times[-1])

    condensed = []
    for i in range(n - 1):
        dists = np.linalg.norm(window[:, i + 1 :] - window[:, i : i + 1], axis=2) / den[:, None]
        log_mean = np.log(np.maximum(dists, 1e-300)).mean(axis=0)
        condensed.extend(np.exp(log_mean))
    condensed = np.asarray(condensed)

    single = Partition(clusters=(tuple(range(1, n + 1)),))
    if condensed.max() < DEGENERATE_DISTANCE:
        return QuasiClusterReport(partition=single, gap_ratio=1.0, evaluation_time=evaluation_time)
    if n == 2:
        return QuasiClusterReport(partition=single, gap_ratio=1.0, evaluation_time=evaluation_time)

    merges = linkage(condensed, method="single")
    heights = np.maximum(merges[:, 2], DEGENERATE_DISTANCE)
    ratios = heights[1:] / heights[:-1]
    cut = int(np.argmax(ratios))
    gap_ratio = float(ratios[cut])
    if gap_ratio < GAP_THRESHOLD:
        return QuasiClusterReport(
            partition=single, gap_ratio=gap_ratio, evaluation_time=evaluation_time
        )
    threshold = float(np.sqrt(heights[cut] * heights[cut + 1]))
    labels = fcluster(merges, t=threshold, criterion="distance")
    groups: dict[int, list[int]] = {}
    for vertex, label in enumerate(labels, start=1):
        groups.setdefault(int(label), []).append(vertex)
    clusters = tuple(sorted((tuple(sorted(g)) for g in groups.values()), key=lambda c: c[0]))
    return QuasiClusterReport(
        partition=Partition(clusters=clusters), gap_ratio=gap_ratio, evaluation_time=evaluation_time
    )


def write_trajectory_csv(tr: Trajectory, out: str | os.PathLike[str] | IO[str]) -> None:
    """Emit the trajectory as CSV: t, then agent-major coordinate-minor states."""
    header = "t," + ",".join(
        f"x_{i}_{c}" for i in range(1, tr.n_agents + 1) for c in range(1, tr.dim + 1)
    )
    lines = [header]
    flat = tr.states.reshape(len(tr.times), -1)
    for t, row in zip(tr.times, flat):
        lines.append(",".join(f"{v:.9g}" for v in np.concatenate([[t], row])))
    text = "\n".join(lines) + "\n"
    if isinstance(out, (str, os.PathLike)):
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        out.write(text)


def read_trajectory_csv(source: str | os.PathLike[str] | IO[str]) -> Trajectory:
    """Parse the CSV written by write_trajectory_csv back into a Trajectory."""
    if isinstance(source, (str, os.PathLike)):
        with open(source, "r", encoding="utf-8") as f:
            text = f.read()
    else:
        text = source.read()
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise TrajectoryFormatError("empty trajectory file")
    names = lines[0].split(",")
    if names[0] != "t" or len(names) < 2:
        raise TrajectoryFormatError("trajectory header must start with 't,x_1_1,...'")
    try:
        if any(not name.startswith("x_") for name in names[1:]):
            raise ValueError
        tags = [tuple(int(p) for p in name.split("_")[1:]) for name in names[1:]]
    except ValueError:
        raise TrajectoryFormatError(f"bad column name in header: {lines[0]!r}") from None
    n = max(t[0] for t in tags)
    d = max(t[1] for t in tags)
    expected = [(i, c) for i in range(1, n + 1) for c in range(1, d + 1)]
    if tags != expected:
        raise TrajectoryFormatError("trajectory columns must be agent-major, coordinate-minor")
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != 1 + n * d:
            raise TrajectoryFormatError(f"line {lineno}: expected {1 + n * d} values")
        try:
            rows.append([float(p) for p in parts])
        except ValueError:
            raise TrajectoryFormatError(f"line {lineno}: non-numeric value") from None
    data = np.array(rows)
    times = data[:, 0]
    if np.any(np.diff(times) <= 0):
        raise TrajectoryFormatError("times must be strictly increasing")
    return Trajectory(times=times, states=data[:, 1:].reshape(len(times), n, d))
