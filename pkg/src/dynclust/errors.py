"""Exception types shared across the package."""

from __future__ import annotations


class DynclustError(Exception):
    """Base class for all errors raised by this package."""


class GraphFormatError(DynclustError):
    """Malformed or invalid graph input (file contents or matrices)."""


class DynamicsFormatError(DynclustError):
    """Malformed agent-dynamics file."""


class TrajectoryFormatError(DynclustError):
    """Malformed trajectory CSV."""


class DisconnectedGraphError(DynclustError):
    """An operation that requires a connected graph was given a disconnected one."""


class NumericError(DynclustError):
    """A numerical routine failed (non-convergence, non-finite values)."""


class DesignError(DynclustError):
    """Gain design is infeasible for the requested target."""
