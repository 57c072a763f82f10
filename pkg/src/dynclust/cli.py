"""Command-line surface: spectrum, cluster, design, simulate, plot.

Exit codes: 0 success, 2 bad input, 3 connectivity precondition violated,
4 gain design infeasible.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import agreement, dynamics, graphs, sim, spectral, svgchart
from .errors import (
    DesignError,
    DisconnectedGraphError,
    DynamicsFormatError,
    GraphFormatError,
    NumericError,
    TrajectoryFormatError,
)


def _read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def _load_graph(path: str) -> graphs.WeightedGraph:
    text = _read_text(path)
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "," in line:
            return graphs.parse_adjacency(text)
        return graphs.parse_edge_list(text)
    raise GraphFormatError(f"no graph data in {path}")


def _load_dynamics(path: str) -> dynamics.AgentDynamics:
    return dynamics.parse_dynamics(_read_text(path))


def _decompose(g: graphs.WeightedGraph) -> spectral.SpectralData:
    return spectral.eigendecompose(graphs.laplacian(g))


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as f:
            f.write(text)


def _dump_json(obj: dict, out_path: str | None) -> None:
    _emit(json.dumps(obj, indent=2) + "\n", out_path)


def cmd_spectrum(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    s = _decompose(g)
    shown = [0.0 if v < s.zero_tol else float(v) for v in s.eigenvalues]
    print(", ".join(f"{v:.6g}" for v in shown))
    components = graphs.connected_components(g)
    print(f"connected: {'true' if len(components) == 1 else 'false'}")
    if len(components) > 1:
        print(f"components: {len(components)}")
    return 0


def cmd_cluster(args: argparse.Namespace) -> int:
    sources = [args.dynamics is not None, args.h is not None, args.scan]
    if sum(sources) != 1:
        print("error: give exactly one of --dynamics, --h, --scan", file=sys.stderr)
        return 2
    g = _load_graph(args.graph)
    s = _decompose(g)

    if args.scan:
        p0 = agreement.compute_P(s)
        pt = agreement.compute_PT(p0, s)
        tol = args.tol if args.tol is not None else agreement.default_zero_tolerance(pt)
        entries = agreement.scan_h(s, tol)
        _dump_json(
            {
                "n": g.n,
                "eigenvalues": [float(v) for v in s.eigenvalues],
                "zero_tolerance": tol,
                "method": "zero-pattern",
                "scan": [
                    {"h_min": e.h_min, "h_max": e.h_max, "clusters": e.partition.as_lists()}
                    for e in entries
                ],
            },
            args.out,
        )
        return 0

    warning = None
    if args.dynamics is not None:
        dyn = _load_dynamics(args.dynamics)
        split = dynamics.stability_partition(dyn, s)
        h = split.h
        warning = split.warning
        z: tuple[int, ...] = split.required_zero
        report = agreement.analyze_agreement(s, split, args.tol)
    else:
        if not (2 <= args.h <= g.n + 1):
            print(f"error: --h must lie in [2, {g.n + 1}]", file=sys.stderr)
            return 2
        h = args.h
        z = tuple(range(2, args.h))
        report = agreement.analyze_agreement(s, z, args.tol)
    _dump_json(
        agreement.report_dict(
            n=g.n,
            h=h,
            eigenvalues=s.eigenvalues,
            required_zero=z,
            zero_tolerance=report.zero_tolerance,
            pairs=report.pairs,
            partition=report.partition,
            method="zero-pattern",
            warning=warning,
        ),
        args.out,
    )
    return 0


def cmd_design(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    s = _decompose(g)
    dyn = dynamics.design_second_order(s, args.h, args.omega)
    split = dynamics.stability_partition(dyn, s)
    _emit(dynamics.render_dynamics(dyn), args.out)
    print(f"realized h: {split.h}", file=sys.stderr)
    for k, (lam, flag) in enumerate(zip(s.eigenvalues, split.flags), start=1):
        verdict = "Hurwitz" if flag else "not Hurwitz"
        print(f"mode {k}: lambda = {lam:.6g}, {verdict}", file=sys.stderr)
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    if (args.dynamics is None) == (args.h is None):
        print("error: give exactly one of --dynamics or --h", file=sys.stderr)
        return 2
    g = _load_graph(args.graph)
    s = _decompose(g)
    if args.dynamics is not None:
        dyn = _load_dynamics(args.dynamics)
    else:
        dyn = dynamics.design_second_order(s, args.h, args.omega)
    cfg = sim.SimConfig(t_end=args.t_end, dt=args.dt, seed=args.seed)
    tr = sim.run_simulation(graphs.laplacian(g), dyn, cfg)
    sim.write_trajectory_csv(tr, args.out)
    if tr.truncated:
        print(
            f"warning: state magnitude exceeded {cfg.blowup_cap:g};"
            f" trajectory truncated at t = {tr.times[-1]:.6g}",
            file=sys.stderr,
        )
    quasi = sim.quasi_clusters(tr)
    split = dynamics.stability_partition(dyn, s)
    report = agreement.report_dict(
        n=g.n,
        h=split.h,
        eigenvalues=s.eigenvalues,
        required_zero=split.required_zero,
        zero_tolerance=None,
        pairs=None,
        partition=quasi.partition,
        method="trajectory",
        warning=split.warning,
    )
    report["gap_ratio"] = quasi.gap_ratio
    report["evaluation_time"] = quasi.evaluation_time
    report["trajectory"] = args.out
    report["truncated"] = tr.truncated
    _dump_json(report, None)
    return 0


def cmd_plot(args: argparse.Namespace) -> int:
    if (args.pair is None) == (not args.phase):
        print("error: give exactly one of --pair or --phase", file=sys.stderr)
        return 2
    tr = sim.read_trajectory_csv(args.csv)
    if args.pair is not None:
        i, j = args.pair
        series = sim.difference_series(tr, i, j, args.coord)
        svg = svgchart.line_chart(
            [(f"x[{args.coord}] difference", series)],
            title=f"agents {i} and {j}, coordinate {args.coord}",
            x_label="t",
            y_label="difference",
        )
    else:
        if tr.dim < 2:
            print("error: phase plot needs at least 2 state coordinates", file=sys.stderr)
            return 2
        tracks = [
            (f"agent {i}", tr.states[:, i - 1, 0:2]) for i in range(1, tr.n_agents + 1)
        ]
        svg = svgchart.phase_chart(tracks, title="state-space trajectories")
    _emit(svg, args.out)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dynclust",
        description="Graph clustering through coupled linear agent dynamics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_spec = sub.add_parser("spectrum", help="print Laplacian eigenvalues and connectivity")
    p_spec.add_argument("graph", help="edge-list or adjacency-CSV file")
    p_spec.set_defaults(func=cmd_spectrum)

    p_cluster = sub.add_parser("cluster", help="zero-pattern cluster report")
    p_cluster.add_argument("graph")
    p_cluster.add_argument("--dynamics", help="agent dynamics file")
    p_cluster.add_argument("--h", type=int, help="assume the first stable mode index directly")
    p_cluster.add_argument("--scan", action="store_true", help="report partitions for all h")
    p_cluster.add_argument("--tol", type=float, help="row-mass zero tolerance override")
    p_cluster.add_argument("--out", help="write JSON here instead of stdout")
    p_cluster.set_defaults(func=cmd_cluster)

    p_design = sub.add_parser("design", help="second-order gain design for a target split")
    p_design.add_argument("graph")
    p_design.add_argument("--h", type=int, required=True, help="requested first stable mode index")
    p_design.add_argument("--omega", type=float, default=1.0, help="minimum rotation rate")
    p_design.add_argument("--out", help="write the dynamics file here instead of stdout")
    p_design.set_defaults(func=cmd_design)

    p_sim = sub.add_parser("simulate", help="integrate the coupled system")
    p_sim.add_argument("graph")
    p_sim.add_argument("--dynamics", help="agent dynamics file")
    p_sim.add_argument("--h", type=int, help="design gains for this split instead")
    p_sim.add_argument("--omega", type=float, default=1.0)
    p_sim.add_argument("--t-end", type=float, required=True, dest="t_end")
    p_sim.add_argument("--dt", type=float, default=1e-3)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--out", required=True, help="trajectory CSV path")
    p_sim.set_defaults(func=cmd_simulate)

    p_plot = sub.add_parser("plot", help="render a trajectory CSV as SVG")
    p_plot.add_argument("csv")
    p_plot.add_argument("--pair", type=int, nargs=2, metavar=("I", "J"))
    p_plot.add_argument("--coord", type=int, default=1)
    p_plot.add_argument("--phase", action="store_true")
    p_plot.add_argument("--out", required=True, help="SVG output path")
    p_plot.set_defaults(func=cmd_plot)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (
        GraphFormatError,
        DynamicsFormatError,
        TrajectoryFormatError,
        NumericError,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DisconnectedGraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except DesignError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
