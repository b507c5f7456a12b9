"""Scalar arithmetic of complete lattice-ordered double monoids (cloda).

A clodum is a complete lattice of scalars carrying two monoid operations:
a "multiplication" that distributes over suprema (a dilation) and a dual
"multiplication" that distributes over infima (an erosion).  Four concrete
cloda are provided:

* ``max-plus``     -- extended reals with lower/upper addition,
* ``max-times``    -- [0, inf] with lower/upper multiplication,
* ``max-min``      -- [0, 1] with min/max,
* ``max-softmin``  -- extended reals with log-sum-exp soft min/max at
  temperature ``theta``.

Every operation accepts scalars or numpy arrays (broadcasting) and is a pure
function, so values can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "TropicalError",
    "CarrierError",
    "UnsupportedClodumError",
    "Clodum",
    "MAX_PLUS",
    "MAX_TIMES",
    "MAX_MIN",
    "max_softmin",
    "soft_add",
]

_INF = float("inf")

_KINDS = ("max-plus", "max-times", "max-min", "max-softmin")

# kind -> (bottom, top, unit, dual_unit)
_STRUCTURE = {
    "max-plus": (-_INF, _INF, 0.0, 0.0),
    "max-times": (0.0, _INF, 1.0, 1.0),
    "max-min": (0.0, 1.0, 1.0, 0.0),
    "max-softmin": (-_INF, _INF, _INF, -_INF),
}


class TropicalError(ValueError):
    """Base class for errors raised by this library."""


class CarrierError(TropicalError):
    """A value lies outside the carrier set of the active clodum."""


class UnsupportedClodumError(TropicalError):
    """The requested operation is not defined for this clodum."""


def _ret(out: np.ndarray):
    """Return python floats for 0-d results, arrays otherwise."""
    return float(out) if np.ndim(out) == 0 else out


def _soft_max(theta: float, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # theta*log(e^{a/theta} + e^{b/theta}), overflow-safe: factor out the max.
    hi = np.maximum(a, b)
    with np.errstate(invalid="ignore", over="ignore"):
        gap = hi - np.minimum(a, b)
        out = hi + theta * np.log1p(np.exp(-gap / theta))
    # gap is NaN only when both arguments are the same infinity.
    return np.where(np.isnan(out), hi, out)


def _soft_min(theta: float, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # -theta*log(e^{-a/theta} + e^{-b/theta}), overflow-safe.
    lo = np.minimum(a, b)
    with np.errstate(invalid="ignore", over="ignore"):
        gap = np.maximum(a, b) - lo
        out = lo - theta * np.log1p(np.exp(-gap / theta))
    return np.where(np.isnan(out), lo, out)


@dataclass(frozen=True)
class Clodum:
    """A scalar clodum: carrier set, lattice bounds and the two multiplications.

    ``kind`` is one of ``max-plus``, ``max-times``, ``max-min`` or
    ``max-softmin``; the last requires a positive temperature ``theta``.
    Instances are immutable, hashable and cheap to pass around.
    """

    kind: str
    theta: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise TropicalError(f"unknown clodum kind {self.kind!r}")
        if self.kind == "max-softmin":
            if self.theta is None or not np.isfinite(self.theta) or self.theta <= 0:
                raise TropicalError("max-softmin requires a finite theta > 0")
            object.__setattr__(self, "theta", float(self.theta))
        elif self.theta is not None:
            raise TropicalError(f"{self.kind} does not take a theta parameter")

    # -- structure ---------------------------------------------------------

    @property
    def bottom(self) -> float:
        return _STRUCTURE[self.kind][0]

    @property
    def top(self) -> float:
        return _STRUCTURE[self.kind][1]

    @property
    def unit(self) -> float:
        """Identity of the multiplication."""
        return _STRUCTURE[self.kind][2]

    @property
    def dual_unit(self) -> float:
        """Identity of the dual multiplication."""
        return _STRUCTURE[self.kind][3]

    @property
    def is_clog(self) -> bool:
        """True when finite elements form a group (max-plus, max-times)."""
        return self.kind in ("max-plus", "max-times")

    # -- carrier -----------------------------------------------------------

    def validate(self, values) -> np.ndarray:
        """Coerce to a float array, rejecting NaN and out-of-carrier values.

        Raises :class:`CarrierError` rather than clamping: silently clamped
        scalars would corrupt the optimality guarantees of the solvers.
        """
        arr = np.asarray(values, dtype=float)
        if np.isnan(arr).any():
            raise CarrierError(f"NaN is not an element of the {self.kind} carrier")
        if self.kind == "max-times":
            if (arr < 0).any():
                raise CarrierError("max-times carrier is [0, inf]; got a negative value")
        elif self.kind == "max-min":
            if ((arr < 0) | (arr > 1)).any():
                raise CarrierError("max-min carrier is [0, 1]; got a value outside it")
        return arr

    def contains(self, values) -> bool:
        try:
            self.validate(values)
        except CarrierError:
            return False
        return True

    # -- operations ---------------------------------------------------------

    def mul(self, a, b):
        """Multiplication (a dilation): distributes over suprema.

        max-plus uses lower addition (-inf dominates +inf), max-times uses
        lower multiplication (0 * inf = 0), max-min uses min, max-softmin the
        log-sum-exp soft minimum.
        """
        a = self.validate(a)
        b = self.validate(b)
        if self.kind == "max-plus":
            with np.errstate(invalid="ignore", over="ignore"):
                out = a + b
            out = np.where(np.isnan(out), -_INF, out)
        elif self.kind == "max-times":
            with np.errstate(invalid="ignore", over="ignore"):
                out = a * b
            out = np.where(np.isnan(out), 0.0, out)
        elif self.kind == "max-min":
            out = np.minimum(a, b)
        else:
            out = _soft_min(self.theta, a, b)
        return _ret(out)

    def dual_mul(self, a, b):
        """Dual multiplication (an erosion): distributes over infima."""
        a = self.validate(a)
        b = self.validate(b)
        if self.kind == "max-plus":
            with np.errstate(invalid="ignore", over="ignore"):
                out = a + b
            out = np.where(np.isnan(out), _INF, out)
        elif self.kind == "max-times":
            with np.errstate(invalid="ignore", over="ignore"):
                out = a * b
            out = np.where(np.isnan(out), _INF, out)
        elif self.kind == "max-min":
            out = np.maximum(a, b)
        else:
            out = _soft_max(self.theta, a, b)
        return _ret(out)

    def adjoint_erosion(self, a, w):
        """Residual of the multiplication: sup{v : mul(a, v) <= w}.

        Together with ``mul`` this forms the scalar adjunction
        ``mul(a, v) <= w  <=>  v <= adjoint_erosion(a, w)``.
        """
        a = self.validate(a)
        w = self.validate(w)
        if self.kind == "max-plus":
            # upper addition of w and -a; the two NaN patterns (w = a = +inf
            # and w = a = -inf) both have unbounded solution sets.
            with np.errstate(invalid="ignore"):
                out = w - a
            out = np.where(np.isnan(out), _INF, out)
        elif self.kind == "max-times":
            # w/0 = inf, 0/0 = inf, inf/inf = inf: the solution set of
            # mul(a, v) <= w is unbounded in all three cases.
            with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
                out = w / a
            out = np.where(a == 0, _INF, out)
            out = np.where(np.isposinf(w), _INF, out)
        elif self.kind == "max-min":
            out = np.where(w >= a, 1.0, w)
        else:
            theta = self.theta
            with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
                t = (w - a) / theta
                val = w - theta * np.log(-np.expm1(t))
            out = np.where(w >= a, _INF, val)
        return _ret(out)

    def conjugate(self, a):
        """Lattice negation making the clodum self-conjugate.

        Involutive and order reversing; satisfies the De Morgan laws and,
        for clogs, ``conjugate(mul(a, b)) = dual_mul(conjugate(a), conjugate(b))``.
        """
        a = self.validate(a)
        if self.kind in ("max-plus", "max-softmin"):
            out = -a
        elif self.kind == "max-times":
            with np.errstate(divide="ignore", over="ignore"):
                out = 1.0 / a
        else:
            out = 1.0 - a
        return _ret(out)

    # -- serialization -------------------------------------------------------

    def spec_string(self) -> str:
        """Short string form, e.g. ``max-plus`` or ``max-softmin:θ=0.5``."""
        if self.kind == "max-softmin":
            return f"max-softmin:θ={self.theta!r}"
        return self.kind

    def __str__(self) -> str:
        return self.spec_string()

    @classmethod
    def parse(cls, text: str) -> "Clodum":
        """Inverse of :meth:`spec_string`; accepts ``θ=`` or ``theta=``."""
        s = text.strip()
        if s in ("max-plus", "max-times", "max-min"):
            return cls(s)
        if s.startswith("max-softmin:"):
            arg = s.split(":", 1)[1]
            for prefix in ("θ=", "theta="):
                if arg.startswith(prefix):
                    return cls("max-softmin", float(arg[len(prefix):]))
        raise TropicalError(f"cannot parse clodum string {text!r}")


MAX_PLUS = Clodum("max-plus")
MAX_TIMES = Clodum("max-times")
MAX_MIN = Clodum("max-min")


def max_softmin(theta: float) -> Clodum:
    """The soft min/max clodum at temperature ``theta`` > 0."""
    return Clodum("max-softmin", theta)


def soft_add(theta: float, a, b):
    """Log-sum-exp smooth maximum: theta*log(e^{a/theta} + e^{b/theta}).

    The dequantized addition of the Maslov family of semirings.  For finite
    inputs it satisfies ``max(a, b) <= soft_add(theta, a, b) <= max(a, b) +
    theta*log(2)``, with equality on the right at ``a == b``, and converges
    to ``max(a, b)`` as ``theta -> 0``.
    """
    if not (np.isfinite(theta) and theta > 0):
        raise TropicalError("soft_add requires a finite theta > 0")
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if not (np.isfinite(a).all() and np.isfinite(b).all()):
        raise TropicalError("soft_add is defined for finite arguments only")
    return _ret(_soft_max(theta, a, b))
