"""Command-line front end: dataset ingestion, fitting, solving, geometry.

Subcommands: ``fit`` (max-affine regression on a CSV dataset), ``solve``
(optimal solutions of tropical linear systems in tropmat files), ``eval``
(evaluate a polynomial file at points), ``polytope`` (Newton polytopes,
joins, Minkowski sums).  Reports are plain structured text with a stable key
order, and plot data files are numeric columns consumable by any plotting
tool; given the same inputs and seed the outputs are byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .clodum import Clodum, TropicalError
from .formats import read_polynomial, read_tropmat, read_tropvec, write_polynomial
from .regression import (
    AutoSlopes,
    FitProblem,
    FitReport,
    GivenSlopes,
    fit_line,
    fit_max_affine,
    fit_plane,
    least_squares_line,
)
from .solver import solve
from .tropgeom import (
    Polytope,
    convex_hull_2d,
    newton_polytope,
    polytope_join,
    polytope_minkowski_sum,
)

__all__ = ["Dataset", "ingest_csv", "run_fit", "run_solve", "run_eval", "run_polytope", "main"]

USAGE_ERROR = 2


@dataclass(frozen=True, eq=False)
class Dataset:
    """A rectangular numeric table with one designated target column."""

    columns: list[str]
    values: np.ndarray
    target_index: int
    provenance: str

    @property
    def features(self) -> np.ndarray:
        keep = [i for i in range(self.values.shape[1]) if i != self.target_index]
        return self.values[:, keep]

    @property
    def feature_names(self) -> list[str]:
        return [c for i, c in enumerate(self.columns) if i != self.target_index]

    @property
    def target(self) -> np.ndarray:
        return self.values[:, self.target_index]

    @property
    def num_samples(self) -> int:
        return self.values.shape[0]


def _parse_cell(token: str, path: str, lineno: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise TropicalError(f"{path}:{lineno}: non-numeric cell {token!r}") from None
    if np.isnan(value):
        raise TropicalError(f"{path}:{lineno}: NaN is not a valid cell value")
    return value


def ingest_csv(path, has_header: bool = True, target: str | None = None) -> Dataset:
    """Read a numeric CSV dataset; the last column is the target by default.

    Cells must parse as finite reals or ``inf``/``-inf`` literals; ragged or
    malformed rows are reported with their line number.
    """
    path = str(path)
    rows: list[list[float]] = []
    columns: list[str] | None = None
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for lineno, record in enumerate(csv.reader(fh), start=1):
            cells = [c.strip() for c in record]
            if not cells or all(c == "" for c in cells):
                continue
            if columns is None and has_header:
                columns = cells
                continue
            values = [_parse_cell(c, path, lineno) for c in cells]
            if rows and len(values) != len(rows[0]):
                raise TropicalError(
                    f"{path}:{lineno}: ragged row has {len(values)} cells, expected {len(rows[0])}"
                )
            rows.append(values)
    if not rows:
        raise TropicalError(f"{path}: no data rows")
    width = len(rows[0])
    if columns is None:
        columns = [f"col{i + 1}" for i in range(width)]
    if len(columns) != width:
        raise TropicalError(f"{path}: header has {len(columns)} names for {width} columns")
    if width < 2:
        raise TropicalError(f"{path}: need at least one feature column and one target column")
    if target is None:
        target_index = width - 1
    else:
        if target not in columns:
            raise TropicalError(f"{path}: no column named {target!r} (have {columns})")
        target_index = columns.index(target)
    return Dataset(columns, np.array(rows), target_index, path)


# ---------------------------------------------------------------------------
# report helpers


def _fmt(value) -> str:
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, np.ndarray):
        return " ".join(repr(float(v)) for v in value)
    return str(value)


def _report_lines(title: str, pairs) -> str:
    lines = [f"tropalg {title} report"]
    for key, value in pairs:
        lines.append(f"{key}: {_fmt(value)}")
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    sys.stdout.write(text)
    if out:
        Path(out).write_text(text, encoding="utf-8")


# ---------------------------------------------------------------------------
# fit


def _resolve_slope_arg(arg: str, seed: int):
    if arg in ("line", "plane"):
        return arg
    if arg.startswith("auto:"):
        try:
            count = int(arg.split(":", 1)[1])
        except ValueError:
            raise TropicalError(f"bad slope count in {arg!r}") from None
        return AutoSlopes(count, seed)
    rows = []
    with open(arg, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                rows.append([float(t) for t in line.split()])
    if not rows:
        raise TropicalError(f"{arg}: slope file is empty")
    return GivenSlopes(np.array(rows))


def _fit_once(data: Dataset, clodum: Clodum, method: str, slope_arg, seed: int) -> FitReport:
    x, f = data.features, data.target
    if slope_arg == "line":
        if x.shape[1] != 1:
            raise TropicalError("--slopes line needs exactly one feature column")
        return fit_line(x[:, 0], f, clodum, method)
    if slope_arg == "plane":
        if x.shape[1] != 2:
            raise TropicalError("--slopes plane needs exactly two feature columns")
        return fit_plane(x, f, clodum, method)
    return fit_max_affine(FitProblem(x, f, slope_arg, clodum), method)


def _model_grid(report: FitReport, data: Dataset, grid: int) -> str:
    x = data.features
    n = x.shape[1]
    lines = []
    if n == 1:
        gx = np.linspace(x.min(), x.max(), grid)
        vals = report.model.evaluate(gx[:, None])
        for a, v in zip(gx, vals):
            lines.append(f"{float(a)!r} {float(v)!r}")
    elif n == 2:
        gx = np.linspace(x[:, 0].min(), x[:, 0].max(), grid)
        gy = np.linspace(x[:, 1].min(), x[:, 1].max(), grid)
        xx, yy = np.meshgrid(gx, gy, indexing="ij")
        pts = np.column_stack([xx.ravel(), yy.ravel()])
        vals = report.model.evaluate(pts)
        for (a, b), v in zip(pts, vals):
            lines.append(f"{float(a)!r} {float(b)!r} {float(v)!r}")
    else:
        lines.append(f"# grid emission supports 1 or 2 features; dataset has {n}")
    return "\n".join(lines) + "\n"


def _residual_table(report: FitReport, data: Dataset) -> str:
    x, f = data.features, data.target
    pred = f - report.residuals
    lines = []
    for i in range(data.num_samples):
        coords = " ".join(repr(float(v)) for v in x[i])
        lines.append(f"{coords} {float(f[i])!r} {float(pred[i])!r} {float(report.residuals[i])!r}")
    return "\n".join(lines) + "\n"


def run_fit(args) -> int:
    data = ingest_csv(args.data, has_header=not args.no_header, target=args.target)
    clodum = Clodum.parse(args.clodum)
    if args.slopes is None:
        width = data.features.shape[1]
        if width in (1, 2) or args.sweep_k:
            args.slopes = "line" if width == 1 else "plane"
        else:
            raise TropicalError("datasets with more than two features need an explicit --slopes")
    slope_arg = _resolve_slope_arg(args.slopes, args.seed)

    pairs = [
        ("dataset", data.provenance),
        ("samples", data.num_samples),
        ("features", " ".join(data.feature_names)),
        ("target", data.columns[data.target_index]),
        ("clodum", clodum.spec_string()),
        ("method", args.method),
        ("seed", args.seed),
    ]

    if args.sweep_k:
        lo, hi = args.sweep_k
        pairs.append(("sweep", f"{lo}:{hi}"))
        for k in range(lo, hi + 1):
            rep = _fit_once(data, clodum, args.method, AutoSlopes(k, args.seed), args.seed)
            pairs.append((f"sweep[{k}]", f"rms={rep.rms_error!r} linf={rep.linf_error!r}"))
        _emit(_report_lines("fit", pairs), None)
        return 0

    report = _fit_once(data, clodum, args.method, slope_arg, args.seed)
    pairs.append(("slope_source", report.slope_source))
    pairs.append(("terms", report.model.rank))
    for k in range(report.model.rank):
        coeffs = " ".join(repr(float(v)) for v in report.model.slopes[k])
        pairs.append((f"term[{k}]", f"{coeffs} | {float(report.model.intercepts[k])!r}"))
    pairs.append(("rms_error", report.rms_error))
    pairs.append(("linf_error", report.linf_error))
    if data.features.shape[1] == 1:
        a_ls, b_ls = least_squares_line(data.features[:, 0], data.target)
        res = data.target - (a_ls * data.features[:, 0] + b_ls)
        pairs.append(("lse_baseline", f"a={a_ls!r} b={b_ls!r} rms={float(np.sqrt(np.mean(res**2)))!r}"))
    pairs.append(("warnings", "; ".join(report.warnings) if report.warnings else "none"))

    out = args.out or str(Path(args.data).with_suffix("")) + f".{args.method}"
    _emit(_report_lines("fit", pairs), out + ".report.txt")
    write_polynomial(out + ".model.txt", report.model)
    Path(out + ".grid.txt").write_text(_model_grid(report, data, args.grid), encoding="utf-8")
    Path(out + ".residuals.txt").write_text(_residual_table(report, data), encoding="utf-8")
    return 0


# ---------------------------------------------------------------------------
# solve


def run_solve(args) -> int:
    A = read_tropmat(args.matrix)
    b = read_tropvec(args.rhs)
    result = solve(A, b, method=args.method)
    residual_tol = args.tol or 0.0
    exact = result.exact or bool(np.max(np.abs(result.residual_gle)) <= residual_tol)
    pairs = [
        ("matrix", f"{args.matrix} ({A.shape[0]}x{A.shape[1]})"),
        ("rhs", args.rhs),
        ("clodum", A.clodum.spec_string()),
        ("method", args.method),
        ("x_hat", result.x_hat.values),
        ("residual_gle", result.residual_gle),
        ("exact", "true" if exact else "false"),
        ("mu", result.mu),
    ]
    if result.x_tilde is not None:
        pairs.append(("x_tilde", result.x_tilde.values))
        pairs.append(("residual_mmae", result.residual_mmae))
    for note in result.notes:
        pairs.append(("note", note))
    _emit(_report_lines("solve", pairs), args.out)
    return 0


# ---------------------------------------------------------------------------
# eval


def run_eval(args) -> int:
    poly = read_polynomial(args.poly)
    if args.at:
        pts = np.array([[float(t) for t in args.at.split(",")]])
    else:
        if not args.data:
            raise TropicalError("eval needs --at or a dataset")
        data = ingest_csv(args.data, has_header=not args.no_header, target=args.target)
        pts = data.features
        if pts.shape[1] != poly.dimension:
            raise TropicalError(
                f"polynomial has dimension {poly.dimension} but dataset provides {pts.shape[1]} features"
            )
    vals = np.atleast_1d(poly.evaluate(pts))
    lines = []
    for row, v in zip(pts, vals):
        coords = " ".join(repr(float(c)) for c in row)
        lines.append(f"{coords} {float(v)!r}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


# ---------------------------------------------------------------------------
# polytope


def _describe_polytope(label: str, poly: Polytope, pairs: list, tol: float | None) -> None:
    hull = poly.hull_vertices
    if hull is not None and tol is not None and poly.dimension == 2:
        hull = convex_hull_2d(poly.generators, tol)
    if hull is not None:
        pairs.append((f"{label}.vertices", hull.shape[0]))
        for i, v in enumerate(hull):
            pairs.append((f"{label}.vertex[{i}]", v))
    else:
        pairs.append((f"{label}.notice", f"dimension {poly.dimension} > 2: listing generators, no hull"))
        for i, g in enumerate(poly.generators):
            pairs.append((f"{label}.generator[{i}]", g))


def run_polytope(args) -> int:
    polys = [read_polynomial(p) for p in args.polys]
    pairs = []
    newtons = []
    for idx, poly in enumerate(polys):
        np_poly = newton_polytope(poly)
        newtons.append(np_poly)
        pairs.append((f"polynomial[{idx}]", args.polys[idx]))
        _describe_polytope(f"newton[{idx}]", np_poly, pairs, args.tol)
    if len(newtons) >= 2:
        _describe_polytope("join", polytope_join(newtons[0], newtons[1]), pairs, args.tol)
        _describe_polytope("minkowski_sum", polytope_minkowski_sum(newtons[0], newtons[1]),
                           pairs, args.tol)
    _emit(_report_lines("polytope", pairs), args.out)
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def _sweep_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split(":")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected <min>:<max>, got {text!r}") from None
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad sweep range {text!r}")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tropalg", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_fit = sub.add_parser("fit", help="fit a max-affine model to a CSV dataset")
    p_fit.add_argument("data", help="CSV dataset; last column is the target unless --target")
    p_fit.add_argument("--clodum", default="max-plus")
    p_fit.add_argument("--method", choices=("gle", "mmae"), default="gle")
    p_fit.add_argument("--slopes", default=None,
                       help="'auto:K', a slope file, 'line', or 'plane' (default by feature count)")
    p_fit.add_argument("--seed", type=int, default=0)
    p_fit.add_argument("--target", default=None)
    p_fit.add_argument("--no-header", action="store_true")
    p_fit.add_argument("--out", default=None, help="output prefix for report/model/plot files")
    p_fit.add_argument("--grid", type=int, default=101, help="grid points per axis for the model surface")
    p_fit.add_argument("--sweep-k", type=_sweep_range, default=None, metavar="MIN:MAX")
    p_fit.set_defaults(func=run_fit)

    p_solve = sub.add_parser("solve", help="solve A (*) x = b from tropmat files")
    p_solve.add_argument("matrix")
    p_solve.add_argument("rhs")
    p_solve.add_argument("--method", choices=("gle", "mmae"), default="gle")
    p_solve.add_argument("--tol", type=float, default=None, help="residual tolerance for the exact flag")
    p_solve.add_argument("--out", default=None)
    p_solve.set_defaults(func=run_solve)

    p_eval = sub.add_parser("eval", help="evaluate a polynomial file at points")
    p_eval.add_argument("poly")
    p_eval.add_argument("--data", default=None, help="CSV of points (features only are used)")
    p_eval.add_argument("--at", default=None, help="comma-separated coordinates of one point")
    p_eval.add_argument("--target", default=None)
    p_eval.add_argument("--no-header", action="store_true")
    p_eval.add_argument("--out", default=None)
    p_eval.set_defaults(func=run_eval)

    p_poly = sub.add_parser("polytope", help="Newton polytopes, joins and Minkowski sums")
    p_poly.add_argument("polys", nargs="+", help="polynomial files")
    p_poly.add_argument("--tol", type=float, default=None)
    p_poly.add_argument("--out", default=None)
    p_poly.set_defaults(func=run_polytope)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TropicalError as exc:
        print(f"tropalg: error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except OSError as exc:
        print(f"tropalg: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
