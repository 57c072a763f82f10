"""Agent dynamics (A, F), Hurwitz classification of the coupled modes, and a
second-order gain designer.

Every mode of the coupled system evolves under A - lambda_k F for an
eigenvalue lambda_k of the Laplacian. Which of those matrices are Hurwitz
decides which modes decay; the split between decaying and growing modes is
what this module computes. Stability is decided through the Routh table of
the characteristic polynomial, so no complex eigensolver is involved.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DesignError, DisconnectedGraphError, DynamicsFormatError
from .spectral import SpectralData, zero_eigenvalue_count

MAX_DIMENSION = 12

# A Routh first-column entry this close to zero means a root sits on or near
# the imaginary axis; classified as not Hurwitz because agreement needs
# strict decay.
MARGINAL_TOL = 1e-9


@dataclass(frozen=True)
class AgentDynamics:
    """Per-agent model: d states, autonomous matrix A, coupling gain F."""

    d: int
    A: np.ndarray
    F: np.ndarray

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError("state dimension must be at least 1")
        a = np.asarray(self.A, dtype=float)
        f = np.asarray(self.F, dtype=float)
        for name, m in (("A", a), ("F", f)):
            if m.shape != (self.d, self.d):
                raise ValueError(f"{name} must be {self.d}x{self.d}, got {m.shape}")
            if not np.all(np.isfinite(m)):
                raise ValueError(f"{name} contains non-finite entries")
        a.setflags(write=False)
        f.setflags(write=False)
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "F", f)


@dataclass(frozen=True)
class StabilityPartition:
    """Hurwitz flags per ascending eigenvalue and the induced mode split.

    flags[k-1] answers "is A - lambda_k F Hurwitz"; the first eigenvalue of a
    Laplacian is 0, so flags[0] concerns A itself. h is the 1-based index of
    the first stable mode when the flags are monotone (all unstable modes
    first), else None with an explanatory warning. required_zero lists the
    1-based indices k >= 2 of unstable modes; those are the columns where a
    pair's difference row must vanish for the pair to agree.
    """

    flags: tuple[bool, ...]
    h: int | None
    required_zero: tuple[int, ...]
    warning: str | None = None


@dataclass(frozen=True)
class ConsensusCheck:
    """Outcome of the full-agreement condition; truthy iff satisfied."""

    satisfied: bool
    caveat: str | None = None

    def __bool__(self) -> bool:
        return self.satisfied


def characteristic_polynomial(M: np.ndarray) -> list[float]:
    """Monic coefficients of det(sI - M), highest degree first.

    Faddeev-LeVerrier recurrence: exact in rational arithmetic, adequate in
    floating point for the small dimensions accepted here.
    """
    m = np.asarray(M, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    d = m.shape[0]
    if d > MAX_DIMENSION:
        raise ValueError(f"dimension {d} exceeds the supported maximum {MAX_DIMENSION}")
    coeffs = [1.0]
    work = m.copy()
    for k in range(1, d + 1):
        ck = -float(np.trace(work)) / k
        coeffs.append(ck)
        if k < d:
            work = m @ (work + ck * np.eye(d))
    return coeffs


def _routh_first_column(coeffs: list[float]) -> list[float] | None:
    """First column of the Routh table, or None when a pivot is marginal."""
    d = len(coeffs) - 1
    if d == 0:
        return [coeffs[0]]
    width = d // 2 + 1
    prev = coeffs[0::2] + [0.0] * (width - len(coeffs[0::2]))
    cur = coeffs[1::2] + [0.0] * (width - len(coeffs[1::2]))
    column = [prev[0], cur[0]]
    for _ in range(d - 1):
        pivot = cur[0]
        if abs(pivot) < MARGINAL_TOL:
            return None
        nxt = [
            (pivot * prev[i + 1] - prev[0] * cur[i + 1]) / pivot for i in range(width - 1)
        ] + [0.0]
        prev, cur = cur, nxt
        column.append(nxt[0])
    return column


def is_hurwitz(M: np.ndarray) -> bool:
    """True iff every eigenvalue of M has strictly negative real part.

    Decided from the Routh table; any first-column entry within MARGINAL_TOL
    of zero counts as a failure.
    """
    column = _routh_first_column(characteristic_polynomial(M))
    if column is None:
        return False
    return all(entry > MARGINAL_TOL for entry in column)


def stability_partition(dyn: AgentDynamics, s: SpectralData) -> StabilityPartition:
    """Classify every coupled mode A - lambda_k F as Hurwitz or not."""
    flags = tuple(is_hurwitz(dyn.A - lam * dyn.F) for lam in s.eigenvalues)
    required_zero = tuple(k for k in range(2, s.n + 1) if not flags[k - 1])
    monotone = all(flags[i] <= flags[i + 1] for i in range(len(flags) - 1))
    if not monotone:
        pattern = "".join("H" if f else "u" for f in flags)
        return StabilityPartition(
            flags=flags,
            h=None,
            required_zero=required_zero,
            warning=f"stability flags are not monotone in the eigenvalue order ({pattern});"
            " the generalized unstable-mode set is used instead of a single h",
        )
    if not any(flags):
        return StabilityPartition(
            flags=flags, h=None, required_zero=required_zero, warning="no Hurwitz modes"
        )
    return StabilityPartition(
        flags=flags, h=flags.index(True) + 1, required_zero=required_zero, warning=None
    )


@dataclass(frozen=True)
class ValidationItem:
    name: str
    passed: bool
    message: str


def validate_design(dyn: AgentDynamics, s: SpectralData) -> list[ValidationItem]:
    """Check the gain pair against the three design principles plus the split.

    Items: (1) homogeneity is structural here (one gain pair for all agents),
    recorded as always passing; (2) A should not be Hurwitz, otherwise every
    cluster sinks to the origin and the grouping carries no information;
    (3) stable and unstable nonzero modes must both be present, otherwise the
    outcome is a single cluster (all stable) or no agreement at all (none
    stable); (4) the split should be monotone so a single h describes it.
    """
    part = stability_partition(dyn, s)
    items = [
        ValidationItem(
            "single-gain-pair",
            True,
            "one (A, F) pair drives every agent; heterogeneous dynamics are not representable",
        )
    ]
    a_hurwitz = is_hurwitz(dyn.A)
    items.append(
        ValidationItem(
            "unstable-autonomy",
            not a_hurwitz,
            "A is Hurwitz: separated clusters all decay to the origin, so the grouping dissolves"
            if a_hurwitz
            else "A is not Hurwitz",
        )
    )
    nonzero_flags = part.flags[1:]
    if not part.required_zero:
        items.append(
            ValidationItem(
                "mixed-stability",
                False,
                "every nonzero mode is stable, which forces one global cluster",
            )
        )
    elif not any(nonzero_flags):
        items.append(
            ValidationItem(
                "mixed-stability",
                False,
                "no nonzero mode is stable, so no pair of agents can agree",
            )
        )
    else:
        items.append(
            ValidationItem(
                "mixed-stability", True, "stable and unstable nonzero modes both present"
            )
        )
    items.append(
        ValidationItem(
            "monotone-split",
            part.h is not None,
            f"first stable mode at index {part.h}" if part.h is not None else str(part.warning),
        )
    )
    return items


def check_consensus_condition(
    dyn: AgentDynamics, s: SpectralData, connected: bool
) -> ConsensusCheck:
    """Full agreement of all agents: connected graph and every nonzero mode stable.

    Meaningful when A itself is not Hurwitz; if it is, the returned caveat
    notes that all states decay to zero regardless of the graph.
    """
    part = stability_partition(dyn, s)
    satisfied = bool(connected) and all(part.flags[1:])
    caveat = None
    if is_hurwitz(dyn.A):
        caveat = (
            "A is Hurwitz, so every state decays to the origin no matter the coupling;"
            " the condition is evaluated outside its intended hypothesis"
        )
    return ConsensusCheck(satisfied=satisfied, caveat=caveat)


def design_second_order(s: SpectralData, target_h: int, omega: float = 1.0) -> AgentDynamics:
    """Choose d=2 gains realizing a requested first-stable-mode index.

    The autonomous part spirals outward at rate lambda*/2 where lambda* is
    the geometric mean of the two eigenvalues bracketing the requested split;
    the coupling gain then stabilizes exactly the modes at or above the
    split. Raises DesignError when the bracketing eigenvalues are numerically
    equal (no gap to aim at) or when the realized split disagrees with the
    request.
    """
    if not (omega > 0):
        raise ValueError("omega must be positive")
    n = s.n
    if not (3 <= target_h <= n):
        raise ValueError(f"target index must lie in [3, {n}], got {target_h}")
    if zero_eigenvalue_count(s) != 1:
        raise DisconnectedGraphError(
            "gain design needs a connected graph (exactly one zero eigenvalue)"
        )
    lo = float(s.eigenvalues[target_h - 2])
    hi = float(s.eigenvalues[target_h - 1])
    if hi - lo <= 1e-9 * max(1.0, float(s.eigenvalues[-1])):
        raise DesignError(
            f"degenerate gap: eigenvalues {target_h - 1} and {target_h}"
            f" are numerically equal ({lo:.6g}, {hi:.6g})"
        )
    lam_star = float(np.sqrt(lo * hi))
    w = max(float(omega), lam_star)
    dyn = AgentDynamics(
        d=2,
        A=np.array([[lam_star / 2.0, w], [-w, lam_star / 2.0]]),
        F=np.array([[0.0, -1.0], [0.5, 1.0]]),
    )
    part = stability_partition(dyn, s)
    if part.h != target_h:
        pattern = "".join("H" if f else "u" for f in part.flags)
        raise DesignError(
            f"design rejected: realized first stable index {part.h} != requested"
            f" {target_h} (flags {pattern})"
        )
    return dyn


def parse_dynamics(text: str) -> AgentDynamics:
    """Read the dynamics file format: "d <d>", then d rows of A, then d rows of F."""
    rows: list[list[float]] = []
    d: int | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if d is None:
            if parts[0] != "d" or len(parts) != 2:
                raise DynamicsFormatError(f"line {lineno}: expected header 'd <d>', got {raw!r}")
            try:
                d = int(parts[1])
            except ValueError:
                raise DynamicsFormatError(f"line {lineno}: bad dimension {parts[1]!r}") from None
            if d < 1:
                raise DynamicsFormatError(f"line {lineno}: dimension must be positive")
            continue
        try:
            rows.append([float(tok) for tok in parts])
        except ValueError:
            raise DynamicsFormatError(f"line {lineno}: non-numeric entry in {raw!r}") from None
        if len(rows[-1]) != d:
            raise DynamicsFormatError(f"line {lineno}: expected {d} numbers, got {len(rows[-1])}")
    if d is None:
        raise DynamicsFormatError("missing 'd <d>' header")
    if len(rows) != 2 * d:
        raise DynamicsFormatError(f"expected {2 * d} matrix rows after the header, got {len(rows)}")
    a = np.array(rows[:d])
    f = np.array(rows[d:])
    return AgentDynamics(d=d, A=a, F=f)


def render_dynamics(dyn: AgentDynamics) -> str:
    """Serialize to the dynamics file format; parse_dynamics round-trips exactly."""
    lines = [f"d {dyn.d}"]
    for m in (dyn.A, dyn.F):
        lines += [" ".join(repr(float(x)) for x in row) for row in m]
    return "\n".join(lines) + "\n"
