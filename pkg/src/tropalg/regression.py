"""Convex piecewise-linear regression with max-affine models.

Fitting happens in two stages: slope vectors are either supplied or estimated
by clustering numerical derivatives (1-D uses natural-breaks clustering of
finite differences, higher dimensions cluster local least-squares gradients
with seeded k-means), and then the optimal intercepts come in closed form
from the greatest-subsolution machinery: the GLE fit touches the data from
below and minimizes every l_p residual norm among from-below fits, while the
MMAE fit (max-plus) shifts it up by half its l_inf error, reaching the
unconstrained l_inf optimum.  Closed-form tropical line and plane fits are
provided for every supported clodum.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .clodum import MAX_PLUS, Clodum, TropicalError, UnsupportedClodumError
from .tropgeom import TropicalPolynomial
from .wlattice import DimensionMismatchError

__all__ = [
    "GivenSlopes",
    "AutoSlopes",
    "FitProblem",
    "FitReport",
    "fit_line",
    "fit_plane",
    "fit_max_affine",
    "estimate_slopes_1d",
    "estimate_slopes_nd",
    "least_squares_line",
]

_INF = float("inf")

KMEANS_MAX_ITER = 100
KMEANS_TOL = 1e-9


@dataclass(frozen=True)
class GivenSlopes:
    """Use these slope vectors as supplied."""

    values: np.ndarray

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim == 1:
            vals = vals[:, None]
        if vals.ndim != 2 or vals.shape[0] < 1:
            raise DimensionMismatchError("slopes must form a (terms, dimension) array")
        if not np.isfinite(vals).all():
            raise TropicalError("slope vectors must be finite")
        vals = vals.copy()
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class AutoSlopes:
    """Estimate ``count`` slope vectors from the data derivatives."""

    count: int
    seed: int = 0

    def __post_init__(self) -> None:
        if self.count < 1:
            raise TropicalError("slope count must be >= 1")


@dataclass(frozen=True, eq=False)
class FitProblem:
    """Samples (x_i, f_i), the clodum to fit over, and the slope policy."""

    inputs: np.ndarray
    targets: np.ndarray
    slopes: GivenSlopes | AutoSlopes
    clodum: Clodum = MAX_PLUS

    def __post_init__(self) -> None:
        x = np.asarray(self.inputs, dtype=float)
        if x.ndim == 1:
            x = x[:, None]
        f = np.asarray(self.targets, dtype=float)
        if x.ndim != 2 or f.ndim != 1 or x.shape[0] != f.shape[0]:
            raise DimensionMismatchError("inputs must be (m, n) with one target per sample")
        if x.shape[0] < 1:
            raise TropicalError("need at least one sample")
        if not np.isfinite(x).all() or not np.isfinite(f).all():
            raise TropicalError("samples must be finite")
        if isinstance(self.slopes, AutoSlopes) and self.slopes.count > x.shape[0]:
            raise TropicalError("cannot estimate more slopes than samples")
        x = x.copy()
        f = f.copy()
        x.flags.writeable = False
        f.flags.writeable = False
        object.__setattr__(self, "inputs", x)
        object.__setattr__(self, "targets", f)

    @property
    def num_samples(self) -> int:
        return self.inputs.shape[0]

    @property
    def dimension(self) -> int:
        return self.inputs.shape[1]


@dataclass(frozen=True, eq=False)
class FitReport:
    """A fitted model with its residual statistics.

    GLE reports have all residuals >= 0 (the model touches the data from
    below); max-plus MMAE reports have exactly half the GLE l_inf error.
    """

    model: TropicalPolynomial
    method: str
    rms_error: float
    linf_error: float
    residuals: np.ndarray
    slope_source: str
    warnings: tuple[str, ...] = ()


def _finish(model, x, f, method, source, notes=()) -> FitReport:
    res = f - model.evaluate(x)
    return FitReport(
        model=model,
        method=method,
        rms_error=float(np.sqrt(np.mean(res**2))),
        linf_error=float(np.max(np.abs(res))),
        residuals=res,
        slope_source=source,
        warnings=tuple(notes),
    )


def _check_method(method: str, clodum: Clodum) -> None:
    if method not in ("gle", "mmae"):
        raise ValueError(f"unknown method {method!r}")
    if method == "mmae" and clodum != MAX_PLUS:
        raise UnsupportedClodumError(
            f"the MMAE fit is only l_inf-optimal over max-plus, not {clodum.spec_string()}"
        )


def _gle_intercepts(clodum: Clodum, columns: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Column-wise infimum of the scalar adjoint erosion: the GLE solution."""
    er = np.asarray(clodum.adjoint_erosion(columns, f[:, None]))
    return er.min(axis=0)


def fit_line(x, f, clodum: Clodum = MAX_PLUS, method: str = "gle") -> FitReport:
    """Closed-form fit of the tropical line max(mul(a, x), b) to 1-D data.

    The GLE parameters are a = inf_i adjoint_erosion(x_i, f_i) and
    b = inf_i f_i for every clodum; MMAE (max-plus only) shifts both up by
    half the GLE l_inf error.
    """
    x = np.asarray(x, dtype=float).reshape(-1)
    f = np.asarray(f, dtype=float).reshape(-1)
    if x.shape != f.shape or len(x) < 1:
        raise DimensionMismatchError("x and f must be equal-length non-empty vectors")
    _check_method(method, clodum)
    clodum.validate(x)
    clodum.validate(f)
    if not np.isfinite(f).all():
        raise TropicalError("target values must be finite")
    a_hat = float(np.min(clodum.adjoint_erosion(x, f)))
    b_hat = float(np.min(clodum.adjoint_erosion(clodum.unit, f)))
    slopes = np.array([[1.0], [0.0]])
    model = TropicalPolynomial(slopes, np.array([a_hat, b_hat]), clodum, "max")
    X = x[:, None]
    if method == "mmae":
        mu = 0.5 * float(np.max(f - model.evaluate(X)))
        model = TropicalPolynomial(slopes, model.intercepts + mu, clodum, "max")
    return _finish(model, X, f, method, "given")


def fit_plane(xy, f, clodum: Clodum = MAX_PLUS, method: str = "gle") -> FitReport:
    """Closed-form fit of max(mul(a, x), mul(b, y), c) to 2-D data."""
    xy = np.asarray(xy, dtype=float)
    f = np.asarray(f, dtype=float).reshape(-1)
    if xy.ndim != 2 or xy.shape[1] != 2 or xy.shape[0] != len(f) or len(f) < 1:
        raise DimensionMismatchError("xy must be (m, 2) with one target per sample")
    _check_method(method, clodum)
    clodum.validate(xy)
    clodum.validate(f)
    if not np.isfinite(f).all():
        raise TropicalError("target values must be finite")
    a_hat = float(np.min(clodum.adjoint_erosion(xy[:, 0], f)))
    b_hat = float(np.min(clodum.adjoint_erosion(xy[:, 1], f)))
    c_hat = float(np.min(clodum.adjoint_erosion(clodum.unit, f)))
    slopes = np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
    model = TropicalPolynomial(slopes, np.array([a_hat, b_hat, c_hat]), clodum, "max")
    if method == "mmae":
        mu = 0.5 * float(np.max(f - model.evaluate(xy)))
        model = TropicalPolynomial(slopes, model.intercepts + mu, clodum, "max")
    return _finish(model, xy, f, method, "given")


def fit_max_affine(problem: FitProblem, method: str = "gle") -> FitReport:
    """Fit a K-term max-affine model with optimal intercepts.

    With slopes a_k resolved, the design matrix X_ik = a_k . x_i turns the
    fit into the max-plus system X (*) b = f whose GLE solution is
    b_k = inf_i (f_i - X_ik); the whole intercept solve is one pass over the
    data, O(K m n).  MMAE adds half the GLE l_inf error to every intercept.
    """
    if problem.clodum != MAX_PLUS:
        raise UnsupportedClodumError(
            "fit_max_affine composes general slope vectors and needs max-plus; "
            "use fit_line/fit_plane for other cloda"
        )
    _check_method(method, problem.clodum)
    notes = []
    if isinstance(problem.slopes, GivenSlopes):
        slopes = problem.slopes.values
        source = "given"
        if slopes.shape[1] != problem.dimension:
            raise DimensionMismatchError("slope vectors and samples disagree on dimension")
    elif problem.dimension == 1:
        slopes = estimate_slopes_1d(
            problem.inputs[:, 0], problem.targets, problem.slopes.count, problem.slopes.seed
        )[:, None]
        source = "jenks"
    else:
        slopes = estimate_slopes_nd(
            problem.inputs, problem.targets, problem.slopes.count, problem.slopes.seed
        )
        source = "kmeans"

    # one design matmul at O(K m n); the intercept solve and predictions
    # walk it column by column through a reusable m-sized buffer so the
    # working set stays cache-resident at large m
    targets = problem.targets
    design = np.ascontiguousarray((problem.inputs @ slopes.T).T)
    k_terms, m = design.shape
    buf = np.empty(m)
    intercepts = np.empty(k_terms)
    for k in range(k_terms):
        np.subtract(targets, design[k], out=buf)
        intercepts[k] = buf.min()
    if np.isneginf(intercepts).any():
        dead = np.flatnonzero(np.isneginf(intercepts)).tolist()
        notes.append(f"terms {dead} received a bottom intercept and are inert")

    def predictions():
        pred = np.full(m, -_INF)
        for k in range(k_terms):
            np.add(design[k], intercepts[k], out=buf)
            np.maximum(pred, buf, out=pred)
        return pred

    pred = predictions()
    if method == "mmae":
        mu = 0.5 * float(np.max(targets - pred))
        intercepts += mu
        pred = predictions()
    model = TropicalPolynomial(slopes, intercepts, MAX_PLUS, "max")
    res = targets - pred
    return FitReport(
        model=model,
        method=method,
        rms_error=float(np.sqrt(np.mean(res**2))),
        linf_error=float(np.max(np.abs(res))),
        residuals=res,
        slope_source=source,
        warnings=tuple(notes),
    )


# ---------------------------------------------------------------------------
# slope estimation


def _numerical_derivatives(x: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Slopes of consecutive sorted samples (one-sided finite differences)."""
    order = np.argsort(x, kind="stable")
    xs, fs = x[order], f[order]
    if len(xs) < 2:
        raise TropicalError("need at least two samples to estimate derivatives")
    dx = np.diff(xs)
    keep = dx > 0  # duplicated abscissae carry no finite-difference information
    if not keep.any():
        raise TropicalError("all abscissae coincide; derivatives are undefined")
    return np.diff(fs)[keep] / dx[keep]


def _jenks_breaks(values: np.ndarray, k: int) -> np.ndarray:
    """Exact natural-breaks clustering of 1-D data (dynamic programming).

    Minimizes the total within-cluster sum of squared deviations over
    contiguous partitions of the sorted values; ties pick the lower break
    index.  Returns the k cluster means in ascending order.
    """
    v = np.sort(values)
    n = len(v)
    s1 = np.concatenate([[0.0], np.cumsum(v)])
    s2 = np.concatenate([[0.0], np.cumsum(v**2)])

    def sse(i: int, j: int) -> float:
        cnt = j - i + 1
        s = s1[j + 1] - s1[i]
        return max((s2[j + 1] - s2[i]) - s * s / cnt, 0.0)

    cost = np.full((k + 1, n), _INF)
    split = np.zeros((k + 1, n), dtype=int)
    for j in range(n):
        cost[1, j] = sse(0, j)
    for c in range(2, k + 1):
        for j in range(c - 1, n):
            best, arg = _INF, c - 1
            for i in range(c - 1, j + 1):
                val = cost[c - 1, i - 1] + sse(i, j)
                if val < best:
                    best, arg = val, i
            cost[c, j] = best
            split[c, j] = arg
    bounds = [n - 1]
    for c in range(k, 1, -1):
        bounds.append(split[c, bounds[-1]] - 1)
    bounds.append(-1)
    bounds = bounds[::-1]
    return np.array([v[bounds[t] + 1:bounds[t + 1] + 1].mean() for t in range(k)])


def estimate_slopes_1d(x, f, count: int, seed: int = 0) -> np.ndarray:
    """Slope candidates for 1-D data: natural breaks of the derivative estimates.

    The clustering is an exact 1-D k-means, so the result is deterministic;
    ``seed`` is accepted for interface symmetry with the n-D estimator.
    """
    x = np.asarray(x, dtype=float).reshape(-1)
    f = np.asarray(f, dtype=float).reshape(-1)
    if x.shape != f.shape:
        raise DimensionMismatchError("x and f must have equal length")
    if len(x) < count + 1:
        raise TropicalError(f"need at least {count + 1} samples for {count} slopes")
    derivs = _numerical_derivatives(x, f)
    if count > len(derivs):
        raise TropicalError(f"only {len(derivs)} derivative samples for {count} clusters")
    return _jenks_breaks(derivs, count)


def _kmeans(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """Seeded k-means++ with Lloyd iterations; empty clusters re-seed from
    the point currently farthest from its assigned center."""
    n = len(points)
    centers = np.empty((k, points.shape[1]))
    centers[0] = points[rng.integers(n)]
    d2 = np.sum((points - centers[0]) ** 2, axis=1)
    for c in range(1, k):
        total = d2.sum()
        if total == 0:
            idx = int(rng.integers(n))
        else:
            idx = int(rng.choice(n, p=d2 / total))
        centers[c] = points[idx]
        d2 = np.minimum(d2, np.sum((points - centers[c]) ** 2, axis=1))
    for _ in range(KMEANS_MAX_ITER):
        dist = np.sum((points[:, None, :] - centers[None, :, :]) ** 2, axis=2)
        assign = np.argmin(dist, axis=1)
        own = dist[np.arange(n), assign]
        new_centers = centers.copy()
        for c in range(k):
            mask = assign == c
            if mask.any():
                new_centers[c] = points[mask].mean(axis=0)
            else:
                far = int(np.argmax(own))
                new_centers[c] = points[far]
                own[far] = 0.0
        shift = float(np.max(np.abs(new_centers - centers)))
        centers = new_centers
        if shift <= KMEANS_TOL:
            break
    return centers


def estimate_slopes_nd(x, f, count: int, seed: int = 0) -> np.ndarray:
    """Slope candidates for n-D data: k-means centroids of local gradients.

    Each sample's gradient comes from a least-squares affine fit over its
    max(n+2, 8) nearest neighbours; rank-deficient neighbourhoods are skipped
    with a warning.  Clustering uses k-means++ initialization from ``seed``.
    """
    x = np.asarray(x, dtype=float)
    f = np.asarray(f, dtype=float).reshape(-1)
    if x.ndim != 2 or x.shape[0] != len(f):
        raise DimensionMismatchError("x must be (m, n) with one target per sample")
    m, n = x.shape
    if m < count + n:
        raise TropicalError(f"need at least {count + n} samples for {count} slopes in {n}-D")
    k_nn = min(max(n + 2, 8), m)
    _, idx = cKDTree(x).query(x, k=k_nn)
    idx = np.atleast_2d(idx)
    nb_x = x[idx] - x[:, None, :]
    design = np.concatenate([nb_x, np.ones((m, k_nn, 1))], axis=2)
    ranks = np.linalg.matrix_rank(design)
    good = ranks == n + 1
    if not good.any():
        raise TropicalError("every neighbourhood is rank-deficient; cannot estimate gradients")
    if not good.all():
        warnings.warn(f"skipped {int((~good).sum())} samples with rank-deficient neighbourhoods")
    beta = np.linalg.pinv(design[good]) @ f[idx[good]][..., None]
    gradients = beta[:, :n, 0]
    if count > len(gradients):
        raise TropicalError(f"only {len(gradients)} gradient samples for {count} clusters")
    return _kmeans(gradients, count, np.random.default_rng(seed))


def least_squares_line(x, f) -> tuple[float, float]:
    """Ordinary least-squares line fit; the Euclidean baseline for comparisons."""
    x = np.asarray(x, dtype=float).reshape(-1)
    f = np.asarray(f, dtype=float).reshape(-1)
    m = len(x)
    denom = m * np.sum(x * x) - np.sum(x) ** 2
    if denom == 0:
        return 0.0, float(np.mean(f))
    a = (m * np.sum(x * f) - np.sum(x) * np.sum(f)) / denom
    b = float(np.mean(f - a * x))
    return float(a), b
