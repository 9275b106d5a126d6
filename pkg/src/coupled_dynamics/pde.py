"""Time integration of the spatially-coupled gradient-flow equation.

The field obeys  y_t = -U'(y) - (1/2) D'(y) y_x^2 + (D(y) y_x)_x  on
(-x_max, x_max) with both ends pinned (Dirichlet).  Space is discretized with
second-order central differences in flux form; time stepping is explicit
Euler with a CFL safety factor.  The free-energy functional
H = int [U(y) + D(y)/2 * y_x^2] dx is tracked along trajectories.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .potentials import Potential, find_stationary_points

CFL_SAFETY = 0.4
DEFAULT_STEADY_TOL = 1e-9
DEFAULT_SNAPSHOT_EVERY = 100


class DivergenceError(RuntimeError):
    """Non-finite state encountered during time integration."""

    def __init__(self, t: float, node: int):
        super().__init__(f"state diverged at t={t:.6g}, node {node}")
        self.t = t
        self.node = node


@dataclass(frozen=True)
class Grid:
    """Uniform grid over [-x_max, x_max] with an odd node count (x=0 on-grid)."""

    x_max: float
    n_points: int = 201

    def __post_init__(self):
        if self.x_max <= 0:
            raise ValueError("x_max must be positive")
        if self.n_points < 3 or self.n_points % 2 == 0:
            raise ValueError("n_points must be an odd integer >= 3")

    @property
    def dx(self) -> float:
        return 2.0 * self.x_max / (self.n_points - 1)

    @property
    def x(self) -> np.ndarray:
        return np.linspace(-self.x_max, self.x_max, self.n_points)


@dataclass
class Profile:
    """A sampled spatial field with Dirichlet value enforced at both ends."""

    grid: Grid
    values: np.ndarray
    boundary_value: float

    def __post_init__(self):
        self.values = np.array(self.values, dtype=float)
        if self.values.shape != (self.grid.n_points,):
            raise ValueError("values length must equal grid.n_points")
        self.values[0] = self.boundary_value
        self.values[-1] = self.boundary_value

    @classmethod
    def uniform(cls, grid: Grid, value: float, boundary_value: Optional[float] = None):
        bv = value if boundary_value is None else boundary_value
        return cls(grid, np.full(grid.n_points, float(value)), float(bv))

    def copy(self) -> "Profile":
        return Profile(self.grid, self.values.copy(), self.boundary_value)


class Coupling:
    """Positive coupling function D(y) with derivative D'(y)."""

    def diffusivity(self, y):
        raise NotImplementedError

    def derivative(self, y):
        raise NotImplementedError

    def max_over(self, domain: tuple[float, float]) -> float:
        ys = np.linspace(domain[0], domain[1], 513)
        return float(np.max(self.diffusivity(ys)))

    def validate_positive(self, domain: tuple[float, float]):
        ys = np.linspace(domain[0], domain[1], 513)
        if np.min(self.diffusivity(ys)) <= 0:
            raise ValueError("coupling function must be positive over the domain")


@dataclass(frozen=True)
class ConstantCoupling(Coupling):
    d: float

    def __post_init__(self):
        if self.d <= 0:
            raise ValueError(f"coupling constant must be positive, got {self.d}")

    def diffusivity(self, y):
        return np.full_like(np.asarray(y, dtype=float), self.d)

    def derivative(self, y):
        return np.zeros_like(np.asarray(y, dtype=float))

    def max_over(self, domain):
        return self.d


@dataclass(frozen=True)
class AffineCoupling(Coupling):
    """State-dependent built-in D(y) = max(d0 + d1*y, clip_min)."""

    d0: float
    d1: float
    clip_min: float = 1e-8

    def diffusivity(self, y):
        arr = np.asarray(y, dtype=float)
        return np.maximum(self.d0 + self.d1 * arr, self.clip_min)

    def derivative(self, y):
        arr = np.asarray(y, dtype=float)
        return np.where(self.d0 + self.d1 * arr > self.clip_min, self.d1, 0.0)


@dataclass
class TrajectoryRecord:
    snapshots: list  # list of (t, Profile)
    energies: list  # list of (t, H)
    final: Profile
    steady: bool
    residual: float
    t_final: float


def rhs(profile: Profile, spec: Potential, coupling: Coupling) -> np.ndarray:
    """Right-hand side on the grid; zero at the pinned boundary nodes."""
    y = profile.values
    dx = profile.grid.dx
    out = np.zeros_like(y)
    g = np.asarray(spec.gradient(y[1:-1]))
    if isinstance(coupling, ConstantCoupling):
        out[1:-1] = -g + coupling.d * (y[2:] - 2.0 * y[1:-1] + y[:-2]) / dx**2
    else:
        mid = 0.5 * (y[:-1] + y[1:])
        flux = coupling.diffusivity(mid) * np.diff(y) / dx
        slope = (y[2:] - y[:-2]) / (2.0 * dx)
        out[1:-1] = (
            -g
            - 0.5 * coupling.derivative(y[1:-1]) * slope**2
            + np.diff(flux) / dx
        )
    return out


def energy(profile: Profile, spec: Potential, coupling: Coupling) -> float:
    """Trapezoidal free energy; one-sided differences at the boundaries."""
    y = profile.values
    dx = profile.grid.dx
    dydx = np.gradient(y, dx)
    integrand = np.asarray(spec.potential(y)) + 0.5 * coupling.diffusivity(y) * dydx**2
    return float(np.trapezoid(integrand, dx=dx))


def stable_dt(grid: Grid, spec: Potential, coupling: Coupling) -> float:
    """Auto time step: CFL_SAFETY * dx^2 / max D over the potential domain."""
    return CFL_SAFETY * grid.dx**2 / coupling.max_over(spec.domain)


def integrate(
    profile0: Profile,
    spec: Potential,
    coupling: Coupling,
    dt: Optional[float] = None,
    t_end: float = 1000.0,
    steady_tol: float = DEFAULT_STEADY_TOL,
    snapshot_every: int = DEFAULT_SNAPSHOT_EVERY,
    keep_snapshots: bool = True,
) -> TrajectoryRecord:
    """Explicit-Euler evolution with Dirichlet re-imposition each step.

    Exits early with steady=True once max|rhs| < steady_tol.  A user-supplied
    dt above the diffusion stability bound is rejected.
    """
    grid = profile0.grid
    coupling.validate_positive(spec.domain)
    dt_bound = 0.5 * grid.dx**2 / coupling.max_over(spec.domain)
    if dt is None:
        dt = stable_dt(grid, spec, coupling)
    elif dt > dt_bound:
        raise ValueError(
            f"dt={dt:.6g} exceeds the explicit stability bound {dt_bound:.6g}"
        )
    bv = profile0.boundary_value
    work = Profile(grid, profile0.values.copy(), bv)
    y = work.values

    snapshots: list = []
    energies: list = []

    def record(t: float):
        energies.append((t, energy(work, spec, coupling)))
        if keep_snapshots:
            snapshots.append((t, work.copy()))

    constant = isinstance(coupling, ConstantCoupling)
    d_const = coupling.d if constant else 0.0
    inv_dx2 = 1.0 / grid.dx**2
    inv_2dx = 0.5 / grid.dx

    def rhs_interior() -> np.ndarray:
        if constant:
            return -spec.gradient_unchecked(y[1:-1]) + (d_const * inv_dx2) * (
                y[2:] - 2.0 * y[1:-1] + y[:-2]
            )
        mid = 0.5 * (y[:-1] + y[1:])
        flux = coupling.diffusivity(mid) * np.diff(y) / grid.dx
        slope = (y[2:] - y[:-2]) * inv_2dx
        return (
            -spec.gradient_unchecked(y[1:-1])
            - 0.5 * coupling.derivative(y[1:-1]) * slope**2
            + np.diff(flux) / grid.dx
        )

    t = 0.0
    steady = False
    record(0.0)
    residual = float(np.max(np.abs(rhs_interior())))
    n_steps = max(1, math.ceil(t_end / dt))
    for step in range(n_steps):
        r = rhs_interior()
        residual = float(np.max(np.abs(r)))
        if not np.isfinite(residual):
            node = int(np.flatnonzero(~np.isfinite(r))[0]) + 1
            raise DivergenceError(t, node)
        if residual < steady_tol:
            steady = True
            break
        y[1:-1] += dt * r
        y[0] = bv
        y[-1] = bv
        t += dt
        if (step + 1) % snapshot_every == 0:
            record(t)
    else:
        residual = float(np.max(np.abs(rhs_interior())))
        steady = residual < steady_tol

    record(t)
    return TrajectoryRecord(
        snapshots=snapshots,
        energies=energies,
        final=work.copy(),
        steady=steady,
        residual=residual,
        t_final=t,
    )


def simulate_discrete_chain(
    n_copies: int,
    spec: Potential,
    coupling_strength: float,
    y0: float,
    t_end: float,
    x_max: float = 1.0,
    steady_tol: float = DEFAULT_STEADY_TOL,
    dt: Optional[float] = None,
) -> np.ndarray:
    """Euler integration of the (2N+1)-copy chain with clamped endpoints.

    dy_i/dt = -U'(y_i) + (d/Delta^2)(y_{i+1} - 2 y_i + y_{i-1}) with
    Delta = x_max/N; endpoints held at the largest stable point of U.
    Kept as an independent code path to cross-validate the continuum solver.
    """
    if n_copies < 3 or n_copies % 2 == 0:
        raise ValueError("n_copies must be an odd integer >= 3")
    if coupling_strength < 0:
        raise ValueError("coupling_strength must be >= 0")
    n_half = (n_copies - 1) // 2
    delta = x_max / n_half
    y_plus = find_stationary_points(spec).y_plus
    lo, hi = spec.domain

    if dt is None:
        ys = np.linspace(lo, hi, 513)
        g = np.asarray(spec.gradient(ys))
        lip = float(np.max(np.abs(np.gradient(g, ys))))
        dt_react = 0.5 / max(lip, 1e-12)
        dt_diff = (
            CFL_SAFETY * delta**2 / coupling_strength
            if coupling_strength > 0
            else np.inf
        )
        dt = min(dt_react, dt_diff)

    y = np.full(n_copies, float(y0))
    y[0] = y_plus
    y[-1] = y_plus
    k = coupling_strength / delta**2
    n_steps = max(1, math.ceil(t_end / dt))
    for step in range(n_steps):
        r = spec.gradient_unchecked(y[1:-1])
        np.negative(r, out=r)
        r += k * (y[2:] - 2.0 * y[1:-1] + y[:-2])
        res = float(np.max(np.abs(r)))
        if not np.isfinite(res):
            node = int(np.flatnonzero(~np.isfinite(r))[0]) + 1
            raise DivergenceError(step * dt, node)
        if res < steady_tol:
            break
        y[1:-1] += dt * r
        y[0] = y_plus
        y[-1] = y_plus
    return y
