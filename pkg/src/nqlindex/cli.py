"""Command-line interface: fit, rank, report and plot subcommands.

Exit codes: 0 success, 1 computation or data error, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import chain as chain_mod
from . import index as index_mod
from .config import ConfigError, load_run_config, validate_axes
from .dataset import (INDICATOR_COLUMNS, StandardizedMatrix, parse_table, standardize,
                      standardize_with)
from .errors import NqlIndexError, SchemaMismatch, UnwritablePath
from .model import FittedModel, parse_model, save_model
from .pca import covariance, eigendecompose, explained_variance_ratio
from .plots import axis_label, scatter_svg, write_report_figures

DEFAULT_PAIR = ("Russia", "Egypt")


def _read_text(path) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except FileNotFoundError:
        raise FileNotFoundError(f"cannot read {path}") from None


def _load_inputs(model_path, data_path):
    model = parse_model(_read_text(model_path))
    table = parse_table(_read_text(data_path))
    if model.columns != INDICATOR_COLUMNS:
        raise SchemaMismatch(
            f"model columns {model.columns} do not match data columns {INDICATOR_COLUMNS}")
    z = standardize_with(table.raw_values(), model.means, model.stds)
    matrix = StandardizedMatrix(z, model.means.copy(), model.stds.copy(), table.names)
    return model, table, matrix


def cmd_fit(args) -> int:
    run = load_run_config(args.config)
    table = parse_table(_read_text(run.data_path))
    matrix = standardize(table)
    basis = eigendecompose(covariance(matrix))
    result = chain_mod.fit(matrix, basis, run.chain)
    oriented = index_mod.orient(result.chain, matrix)

    run.output_dir.mkdir(parents=True, exist_ok=True)
    model_path = run.output_dir / "model.txt"
    model = FittedModel(INDICATOR_COLUMNS, matrix.column_means, matrix.column_stds,
                        basis, oriented, result.energy_log)
    save_model(model, model_path)

    pc1 = explained_variance_ratio(basis, 1)
    curve = chain_mod.curve_explained_variance(matrix, oriented)
    print("PC1 explained variance: %.6f" % pc1)
    print("curve explained variance: %.6f" % curve)
    print("model written to %s" % model_path)
    return 0


def cmd_rank(args) -> int:
    model, table, z = _load_inputs(args.model, args.data)
    index_table = index_mod.build_index_table(z, model.basis, model.chain)
    sys.stdout.write(index_table.to_tsv())
    return 0


def _pair_lines(table: index_mod.IndexTable, pair: tuple[str, str]) -> list[str]:
    a, b = table.row(pair[0]), table.row(pair[1])
    lin = sorted((a, b), key=lambda r: r.linear_rank)
    non = sorted((a, b), key=lambda r: r.nql_rank)
    reversed_order = (lin[0].name != non[0].name)
    return [
        f"pair {pair[0]} vs {pair[1]}:",
        "  linear:    %s (%d) above %s (%d)" % (
            lin[0].name, lin[0].linear_rank, lin[1].name, lin[1].linear_rank),
        "  nonlinear: %s (%d) above %s (%d)" % (
            non[0].name, non[0].nql_rank, non[1].name, non[1].nql_rank),
        "  order reversed between indices: %s" % ("yes" if reversed_order else "no"),
    ]


def cmd_report(args) -> int:
    model, table, z = _load_inputs(args.model, args.data)
    index_table = index_mod.build_index_table(z, model.basis, model.chain)
    pc1 = explained_variance_ratio(model.basis, 1)
    curve = chain_mod.curve_explained_variance(z, model.chain)
    comparison = index_mod.compare_linear_nonlinear(index_table)

    lines = [
        "PC1 explained variance: %.6f" % pc1,
        "curve explained variance: %.6f" % curve,
        "top %d rank movers (linear rank -> nonlinear rank):" % len(comparison.movers),
    ]
    for mover in comparison.movers:
        lines.append("  %-24s %3d -> %3d  (%+d)" % (
            mover.name, mover.linear_rank, mover.nql_rank, mover.shift))

    if args.pair is not None:
        pair = _parse_pair(args.pair)
        lines.extend(_pair_lines(index_table, pair))  # UnknownCountry propagates
    elif set(DEFAULT_PAIR) <= {r.name for r in index_table.rows}:
        lines.extend(_pair_lines(index_table, DEFAULT_PAIR))

    print("\n".join(lines))

    if args.out_dir is not None:
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        shift_path = out_dir / "rank_shifts.tsv"
        with open(shift_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("country\tlinear_rank\tnql_rank\tshift\n")
            for s in sorted(comparison.shifts, key=lambda s: (-abs(s.shift), s.name)):
                fh.write("%s\t%d\t%d\t%+d\n" % (s.name, s.linear_rank, s.nql_rank, s.shift))
        points, nodes, labels = _pc_plane(model, z, (1, 2))
        figures = write_report_figures(index_table, points, nodes, labels[0], labels[1], out_dir)
        print("wrote %s" % shift_path)
        for path in figures:
            print("wrote %s" % path)
    return 0


def _parse_pair(text: str) -> tuple[str, str]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2 or not all(parts):
        raise ConfigError(f"--pair expects 'A,B', got {text!r}")
    return (parts[0], parts[1])


def _pc_plane(model: FittedModel, z: StandardizedMatrix, axes: tuple[int, int]):
    a, b = axes
    basis = model.basis
    va, vb = basis.components[a - 1], basis.components[b - 1]
    points = np.column_stack([z.values @ va, z.values @ vb])
    nodes = np.column_stack([model.chain.nodes @ va, model.chain.nodes @ vb])
    labels = (axis_label(a, basis.eigenvalues[a - 1] / basis.total_variance),
              axis_label(b, basis.eigenvalues[b - 1] / basis.total_variance))
    return points, nodes, labels


def cmd_plot(args) -> int:
    axes = _parse_axes(args.axes)
    model, table, z = _load_inputs(args.model, args.data)
    points, nodes, labels = _pc_plane(model, z, axes)
    svg = scatter_svg(points, nodes, labels[0], labels[1])
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(svg)
    except OSError as exc:
        raise UnwritablePath(f"cannot write {args.out}: {exc}") from None
    print("wrote %s" % args.out)
    return 0


def _parse_axes(text: str) -> tuple[int, int]:
    try:
        parts = [int(p) for p in text.split(",")]
    except ValueError:
        raise ConfigError(f"--axes expects 'a,b', got {text!r}") from None
    if len(parts) != 2:
        raise ConfigError(f"--axes expects two components, got {text!r}")
    axes = (parts[0], parts[1])
    validate_axes(axes)
    return axes


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nqlindex",
                                     description="Nonlinear quality-of-life country index")
    sub = parser.add_subparsers(dest="command", required=True)

    p_fit = sub.add_parser("fit", help="fit the model described by a config file")
    p_fit.add_argument("--config", required=True)
    p_fit.set_defaults(func=cmd_fit)

    p_rank = sub.add_parser("rank", help="emit the ranking TSV on stdout")
    p_rank.add_argument("--model", required=True)
    p_rank.add_argument("--data", required=True)
    p_rank.set_defaults(func=cmd_rank)

    p_rep = sub.add_parser("report", help="linear vs nonlinear comparison report")
    p_rep.add_argument("--model", required=True)
    p_rep.add_argument("--data", required=True)
    p_rep.add_argument("--pair", default=None, help="country pair 'A,B' for the verdict")
    p_rep.add_argument("--out-dir", default=None,
                       help="also write rank_shifts.tsv and figures here")
    p_rep.set_defaults(func=cmd_report)

    p_plot = sub.add_parser("plot", help="SVG scatter of the fit in a PC plane")
    p_plot.add_argument("--model", required=True)
    p_plot.add_argument("--data", required=True)
    p_plot.add_argument("--axes", default="1,2")
    p_plot.add_argument("--out", required=True)
    p_plot.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, UnwritablePath, FileNotFoundError, NotADirectoryError) as exc:
        print(f"nqlindex: {exc}", file=sys.stderr)
        return 2
    except (NqlIndexError, ValueError) as exc:
        print(f"nqlindex: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
