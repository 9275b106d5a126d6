"""Scalar multistable potential families and their stationary-point analysis.

Two families are provided: a tilted double-well polynomial and the potential
whose gradient reproduces the density-evolution recursion of regular LDPC
ensembles over the binary erasure channel.  Both expose the potential, its
analytic derivative, root finding for the stationary points, and the
equal-height (Maxwell) parameter of a bistable family.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq, minimize_scalar

ROOT_TOL = 1e-12
SCAN_POINTS = 10_000
_CURVATURE_DELTA = 1e-4


class DomainError(ValueError):
    """State value outside the potential's admissible interval."""


class BracketingError(ValueError):
    """Root bracket does not contain a sign change."""


class TopologyChangeError(ValueError):
    """Potential lost bistability at some probed parameter."""

    def __init__(self, message: str, parameter: float):
        super().__init__(message)
        self.parameter = parameter


class NoStationaryPointError(RuntimeError):
    """Gradient has no roots on the domain (should not happen for valid specs)."""


class Potential:
    """Base class: a scalar potential U with analytic derivative on an interval."""

    domain: tuple[float, float]

    def potential(self, y):
        raise NotImplementedError

    def gradient(self, y):
        raise NotImplementedError

    def _check_domain(self, y):
        arr = np.asarray(y, dtype=float)
        lo, hi = self.domain
        if np.any(arr < lo) or np.any(arr > hi):
            bad = float(np.asarray(arr).ravel()[0]) if arr.ndim == 0 else None
            raise DomainError(
                f"state outside domain [{lo}, {hi}]"
                + (f": {bad}" if bad is not None else "")
            )
        return arr

    def gradient_unchecked(self, arr: np.ndarray) -> np.ndarray:
        """Vectorized dU/dy without the domain check, for integrator hot loops
        whose state is already kept inside the domain by projection."""
        return np.asarray(self.gradient(arr))


def _maybe_scalar(arr, template):
    if np.isscalar(template) or np.ndim(template) == 0:
        return float(arr)
    return arr


@dataclass(frozen=True)
class DoubleWell(Potential):
    """Tilted double-well U(y) = y^4/4 - y^2/2 - h*y on a finite interval.

    The default interval [-2, 2] contains every real root of y^3 - y - h for
    the tilt range |h| <= 0.3 used in the sweeps here.
    """

    h: float
    domain: tuple[float, float] = (-2.0, 2.0)

    def potential(self, y):
        arr = self._check_domain(y)
        return _maybe_scalar(arr**4 / 4.0 - arr**2 / 2.0 - self.h * arr, y)

    def gradient(self, y):
        arr = self._check_domain(y)
        return _maybe_scalar(arr**3 - arr - self.h, y)

    def gradient_unchecked(self, arr):
        return arr * arr * arr - arr - self.h


@dataclass(frozen=True)
class LdpcBec(Potential):
    """Potential whose descent step is the (dv, dc)-regular BEC recursion.

    U(y) = int_0^y [z - eps * (1 - (1 - z)^(dc-1))^(dv-1)] dz, evaluated in
    closed form via the binomial expansion of the integrand.
    """

    epsilon: float
    dv: int
    dc: int
    domain: tuple[float, float] = (0.0, 1.0)

    def __post_init__(self):
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError(f"epsilon must be in [0, 1], got {self.epsilon}")
        if self.dv < 2 or self.dc < 2:
            raise ValueError(f"degrees must be >= 2, got dv={self.dv}, dc={self.dc}")

    def potential(self, y):
        arr = self._check_domain(y)
        n = self.dv - 1
        m = self.dc - 1
        # int_0^y (1 - (1-z)^m)^n dz = sum_k C(n,k)(-1)^k (1 - (1-y)^(mk+1))/(mk+1)
        acc = np.zeros_like(arr, dtype=float)
        one_minus = 1.0 - arr
        for k in range(n + 1):
            p = m * k + 1
            acc += comb(n, k) * (-1.0) ** k * (1.0 - one_minus**p) / p
        return _maybe_scalar(arr**2 / 2.0 - self.epsilon * acc, y)

    def gradient(self, y):
        arr = self._check_domain(y)
        n = self.dv - 1
        m = self.dc - 1
        g = arr - self.epsilon * (1.0 - (1.0 - arr) ** m) ** n
        return _maybe_scalar(g, y)

    def gradient_unchecked(self, arr):
        return arr - self.epsilon * (1.0 - (1.0 - arr) ** (self.dc - 1)) ** (self.dv - 1)


@dataclass(frozen=True)
class ReflectedPotential(Potential):
    """Mirror image U_ref(y) = U(-y), mapping the smallest stable point of the
    base potential onto the largest stable point of the reflection."""

    base: Potential
    domain: tuple[float, float] = field(init=False)

    def __post_init__(self):
        lo, hi = self.base.domain
        object.__setattr__(self, "domain", (-hi, -lo))

    def potential(self, y):
        arr = self._check_domain(y)
        return _maybe_scalar(np.asarray(self.base.potential(-arr), dtype=float), y)

    def gradient(self, y):
        arr = self._check_domain(y)
        return _maybe_scalar(-np.asarray(self.base.gradient(-arr), dtype=float), y)

    def gradient_unchecked(self, arr):
        return -self.base.gradient_unchecked(-arr)


def eval_potential(spec: Potential, y):
    """Evaluate U(y); raises DomainError outside spec.domain."""
    return spec.potential(y)


def eval_gradient(spec: Potential, y):
    """Evaluate dU/dy; raises DomainError outside spec.domain."""
    return spec.gradient(y)


@dataclass(frozen=True)
class StationaryPoint:
    y: float
    stable: bool
    degenerate: bool = False


@dataclass(frozen=True)
class StationaryPointSet:
    """Sorted roots of dU/dy on the domain, classified by local curvature."""

    points: tuple[StationaryPoint, ...]

    @property
    def stable_points(self) -> list[float]:
        return [p.y for p in self.points if p.stable]

    @property
    def unstable_points(self) -> list[float]:
        return [p.y for p in self.points if not p.stable]

    @property
    def y_minus(self) -> float:
        return self.stable_points[0]

    @property
    def y_plus(self) -> float:
        return self.stable_points[-1]

    @property
    def is_bistable(self) -> bool:
        return len(self.stable_points) >= 2


def _classify(spec: Potential, y: float) -> bool:
    lo, hi = spec.domain
    d = _CURVATURE_DELTA
    yc = min(max(y, lo + d), hi - d)
    second = spec.potential(yc + d) - 2.0 * spec.potential(yc) + spec.potential(yc - d)
    return second > 0.0


def find_stationary_points(
    spec: Potential,
    n_scan: int = SCAN_POINTS,
    root_tol: float = ROOT_TOL,
) -> StationaryPointSet:
    """Locate all roots of dU/dy by dense sign scan plus bisection.

    Sign-change roots are refined with Brent's method.  Grid points where the
    gradient nearly touches zero without changing sign (saddle-node parameter
    values) are refined by minimizing |dU/dy|^2 and reported as unstable with
    the degenerate flag set.
    """
    lo, hi = spec.domain
    ys = np.linspace(lo, hi, n_scan)
    g = np.asarray(spec.gradient(ys))

    roots: list[float] = []
    degenerate: list[float] = []

    # Exact zeros at grid nodes (the LDPC family has one at y = 0).
    for i in np.flatnonzero(np.abs(g) < root_tol):
        roots.append(float(ys[i]))

    sign = np.sign(g)
    for i in np.flatnonzero(sign[:-1] * sign[1:] < 0):
        r = brentq(lambda z: float(spec.gradient(z)), ys[i], ys[i + 1], xtol=1e-14)
        roots.append(float(r))

    # Near-zero touches without a sign change: candidate double roots.
    absg = np.abs(g)
    for i in range(1, n_scan - 1):
        if absg[i] < 1e-6 and absg[i] <= absg[i - 1] and absg[i] <= absg[i + 1]:
            if any(abs(ys[i] - r) < 10 * (hi - lo) / n_scan for r in roots):
                continue
            res = minimize_scalar(
                lambda z: float(spec.gradient(z)) ** 2,
                bounds=(ys[i - 1], ys[i + 1]),
                method="bounded",
                options={"xatol": 1e-14},
            )
            if abs(float(spec.gradient(res.x))) < 1e-9:
                degenerate.append(float(res.x))

    merged: list[StationaryPoint] = []
    for y in sorted(roots):
        if merged and abs(y - merged[-1].y) < 1e-9:
            continue
        merged.append(StationaryPoint(y, stable=_classify(spec, y)))
    for y in degenerate:
        if any(abs(y - p.y) < 1e-9 for p in merged):
            continue
        merged.append(StationaryPoint(y, stable=False, degenerate=True))
    merged.sort(key=lambda p: p.y)

    if not merged:
        raise NoStationaryPointError(
            "no stationary points found on the domain; invalid potential"
        )
    return StationaryPointSet(tuple(merged))


def equal_height_parameter(
    make_spec: Callable[[float], Potential],
    param_interval: Sequence[float],
    tol: float = 1e-10,
) -> float:
    """Parameter at which the two outer stable points have equal potential.

    Bisects the height difference U(y_minus) - U(y_plus) over the interval.
    Requires bistability at every probed parameter and a sign change across
    the bracket.
    """

    def height_diff(p: float) -> float:
        spec = make_spec(p)
        pts = find_stationary_points(spec)
        if not pts.is_bistable:
            raise TopologyChangeError(
                f"potential is not bistable at parameter {p}", p
            )
        return float(spec.potential(pts.y_minus) - spec.potential(pts.y_plus))

    a, b = float(param_interval[0]), float(param_interval[1])
    fa, fb = height_diff(a), height_diff(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if fa * fb > 0.0:
        raise BracketingError(
            f"height difference has the same sign at both ends of [{a}, {b}]"
        )
    while b - a > tol:
        mid = 0.5 * (a + b)
        fm = height_diff(mid)
        if fm == 0.0:
            return mid
        if fa * fm < 0.0:
            b, fb = mid, fm
        else:
            a, fa = mid, fm
    return 0.5 * (a + b)
