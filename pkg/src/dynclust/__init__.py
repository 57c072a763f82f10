"""Graph clustering through the lens of coupled linear agent dynamics.

A weighted undirected graph is associated with a homogeneous multi-agent
system whose coupling follows the graph Laplacian. Two routes produce
clusters: an analytic zero-pattern test on the pairwise-difference
propagator in the Laplacian eigenbasis, and an empirical route that
integrates the coupled system and groups agents whose mutual divergence is
much slower than the divergence across groups.
"""

from __future__ import annotations

from .agreement import (
    AgreementReport,
    Partition,
    ScanEntry,
    analyze_agreement,
    compute_P,
    compute_PT,
    consecutive_agreements,
    default_zero_tolerance,
    eigenvalue_blocks,
    extract_clusters,
    gamma,
    pair_agreement,
    report_dict,
    row_mass,
    scan_h,
)
from .dynamics import (
    AgentDynamics,
    ConsensusCheck,
    StabilityPartition,
    ValidationItem,
    characteristic_polynomial,
    check_consensus_condition,
    design_second_order,
    is_hurwitz,
    parse_dynamics,
    render_dynamics,
    stability_partition,
    validate_design,
)
from .errors import (
    DesignError,
    DisconnectedGraphError,
    DynamicsFormatError,
    DynclustError,
    GraphFormatError,
    NumericError,
    TrajectoryFormatError,
)
from .graphs import (
    Laplacian,
    WeightedGraph,
    connected_components,
    is_connected,
    laplacian,
    parse_adjacency,
    parse_edge_list,
    render_adjacency,
    render_edge_list,
)
from .sim import (
    QuasiClusterReport,
    SimConfig,
    Trajectory,
    build_system_matrix,
    consensus_mode,
    difference_series,
    initial_state,
    integrate,
    normalized_distance_series,
    quasi_clusters,
    read_trajectory_csv,
    run_simulation,
    write_trajectory_csv,
)
from .spectral import SpectralData, eigendecompose, pseudoinverse, zero_eigenvalue_count
from .svgchart import line_chart, phase_chart

__version__ = "0.1.0"

__all__ = [
    "AgentDynamics",
    "AgreementReport",
    "ConsensusCheck",
    "DesignError",
    "DisconnectedGraphError",
    "DynamicsFormatError",
    "DynclustError",
    "GraphFormatError",
    "Laplacian",
    "NumericError",
    "Partition",
    "QuasiClusterReport",
    "ScanEntry",
    "SimConfig",
    "SpectralData",
    "StabilityPartition",
    "Trajectory",
    "TrajectoryFormatError",
    "ValidationItem",
    "WeightedGraph",
    "analyze_agreement",
    "build_system_matrix",
    "characteristic_polynomial",
    "check_consensus_condition",
    "compute_P",
    "compute_PT",
    "connected_components",
    "consecutive_agreements",
    "consensus_mode",
    "default_zero_tolerance",
    "design_second_order",
    "difference_series",
    "eigendecompose",
    "eigenvalue_blocks",
    "extract_clusters",
    "gamma",
    "initial_state",
    "integrate",
    "is_connected",
    "is_hurwitz",
    "laplacian",
    "line_chart",
    "normalized_distance_series",
    "pair_agreement",
    "parse_adjacency",
    "parse_dynamics",
    "parse_edge_list",
    "phase_chart",
    "pseudoinverse",
    "quasi_clusters",
    "read_trajectory_csv",
    "render_adjacency",
    "render_dynamics",
    "render_edge_list",
    "report_dict",
    "row_mass",
    "run_simulation",
    "scan_h",
    "stability_partition",
    "validate_design",
    "write_trajectory_csv",
    "zero_eigenvalue_count",
]
