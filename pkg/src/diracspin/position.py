"""Position-representation synthesis and the momentum/position Parseval check.

A momentum-space state is carried to a fixed-time position slice by

    Psi(x) = (2 pi)^(-3/2) sum_eps int d3p/(2 omega) psi^eps(p) e^{-i eps (omega t - pvec.xvec)},

evaluated by trapezoid quadrature on the same centered momentum cubes the
scalar product uses.  On tensor-product grids the plane-wave phase factors
over the three axes, so a full position mesh costs three small contractions
instead of a six-dimensional loop.

The invariant scalar product can then be computed two ways — the
sign-weighted momentum integral or the position integral of
conj(Psi) gamma^0 Phi = Psi^+ Phi — and `parseval_check` reports both with
their relative mismatch.  With amplitudes normalized to vbar v = eps I
(so v^+ v = (omega/m) I), the fixed-time slice integral reproduces the
invariant momentum measure only up to a constant: the two routes satisfy

    sum_eps int d3p/(2 omega) psitilde^+ phitilde  =  2m int d3x Psi^+ Phi,

as the rest frame shows directly (v^+ v = I there, and the slice integral
collects 1/(2 omega)^2 ~ 1/(4 m^2) per mode).  `parseval_check` includes
the 2m factor on the position side.  Position cubes sized from the
uncertainty relation (extent 8 / width) keep the truncated tails below
quadrature error for Gaussian-decaying profiles.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import fsum

import numpy as np

from .states import (CovariantWaveFunction, Grid, SpinWaveFunction, _as_sectors,
                     omega_of, scalar_product, to_covariant)

TWO_PI_CUBED_SQRT = (2.0 * np.pi) ** 1.5

#: Default points per axis: momentum cube, position cube.  The momentum side
#: is effectively converged at 32 points (trapezoid aliasing far below the
#: position-side error); 18 position points leave the x-side aliasing near
#: 1e-4 so that one refinement level shows a clean accuracy gain.
DEFAULT_P_POINTS = 32
DEFAULT_X_POINTS = 18

#: Minimum decay widths the quadrature cubes must cover.
MIN_COVERAGE = 8.0


@dataclass(frozen=True)
class PositionGrid:
    """Uniform tensor-product position grid on [-xmax, xmax]^3."""

    xmax: float
    n: int = DEFAULT_X_POINTS

    def __post_init__(self):
        if self.xmax <= 0 or self.n < 2:
            raise ValueError(f"need xmax > 0 and n >= 2, got xmax={self.xmax}, n={self.n}")

    def axis(self) -> np.ndarray:
        return np.linspace(-self.xmax, self.xmax, self.n)

    def weights_1d(self) -> np.ndarray:
        w1 = np.full(self.n, 2.0 * self.xmax / (self.n - 1))
        w1[0] *= 0.5
        w1[-1] *= 0.5
        return w1

    def refined(self) -> "PositionGrid":
        return PositionGrid(self.xmax, 2 * self.n - 1)


@dataclass(frozen=True)
class PositionSample:
    """One bispinor value on a fixed-time slice."""

    x4: np.ndarray
    psi: np.ndarray


def _coverage_check(w, grid: Grid) -> None:
    reach = grid.pmax - float(np.abs(w.center).max())
    cover = reach / w.width
    if cover < MIN_COVERAGE - 1e-9:
        raise ValueError(
            f"momentum grid covers only {cover:.2f} decay widths past the profile "
            f"center; need >= {MIN_COVERAGE:g} (pmax >= |center| + {MIN_COVERAGE:g} * width)")


def _position_coverage_check(widths, grid: PositionGrid) -> None:
    # Spatial width of a Gaussian packet of momentum width w is 1/w.
    need = MIN_COVERAGE / min(widths)
    if grid.xmax < need * (1.0 - 1e-12):
        raise ValueError(
            f"position grid extent {grid.xmax:g} covers fewer than {MIN_COVERAGE:g} "
            f"spatial widths; need xmax >= {need:g}")


def _covariant_sectors(w) -> tuple:
    return tuple(to_covariant(s) if isinstance(s, SpinWaveFunction) else s
                 for s in _as_sectors(w))


def synthesize(w, x4, pgrid: Grid | None = None) -> PositionSample:
    """Evaluate the position-space bispinor at one spacetime point x4 = (t, xvec).

    `w` is a wavefunction or a sequence of them (one per energy sign); spin-basis
    profiles are contracted with the amplitude first.
    """
    x4 = np.asarray(x4, dtype=float)
    if x4.shape != (4,):
        raise ValueError("x4 must be a four-vector (t, x, y, z)")
    sectors = _covariant_sectors(w)
    psi = np.zeros(4, dtype=complex)
    for s in sectors:
        grid = pgrid if pgrid is not None else s.default_grid(DEFAULT_P_POINTS)
        _coverage_check(s, grid)
        pts = grid.points()
        om = omega_of(pts, s.mass)
        phase = np.exp(-1j * s.eps * (om * x4[0] - pts @ x4[1:]))
        wts = grid.weights() / (2.0 * om)
        psi = psi + np.einsum("n,n,na->a", wts, phase, s.evaluate(pts))
    return PositionSample(x4=x4, psi=psi / TWO_PI_CUBED_SQRT)


def synthesize_mesh(w, t: float, xgrid: PositionGrid, pgrid: Grid | None = None) -> np.ndarray:
    """Position-space bispinor on the full tensor mesh of `xgrid` at time t.

    Returns shape (n, n, n, 4) indexed by the three position axes.  The phase
    e^{i eps pvec.xvec} factorizes over axes, giving three dense contractions.
    """
    xa = xgrid.axis()
    out = np.zeros((xgrid.n, xgrid.n, xgrid.n, 4), dtype=complex)
    for s in _covariant_sectors(w):
        grid = pgrid if pgrid is not None else s.default_grid(DEFAULT_P_POINTS)
        _coverage_check(s, grid)
        pa = grid.axis()
        pts = grid.points()
        om = omega_of(pts, s.mass)
        core = (grid.weights() / (2.0 * om) * np.exp(-1j * s.eps * om * t))[:, None] * s.evaluate(pts)
        core = core.reshape(grid.n, grid.n, grid.n, 4)
        E = np.exp(1j * s.eps * np.outer(pa, xa))
        out = out + np.einsum("abcd,aj,bk,cl->jkld", core, E, E, E, optimize=True)
    return out / TWO_PI_CUBED_SQRT


def position_product(psi_mesh: np.ndarray, phi_mesh: np.ndarray, xgrid: PositionGrid) -> complex:
    """Quadrature of conj(Psi) gamma^0 Phi = Psi^+ Phi over the position cube,
    reduced with compensated summation."""
    w1 = xgrid.weights_1d()
    integrand = np.einsum("jkld,jkld,j,k,l->jkl", psi_mesh.conj(), phi_mesh, w1, w1, w1,
                          optimize=True).ravel()
    return complex(fsum(integrand.real) + 1j * fsum(integrand.imag))


def default_grids(a, b, p_points: int = DEFAULT_P_POINTS,
                  x_points: int = DEFAULT_X_POINTS) -> tuple[Grid, PositionGrid]:
    """Shared quadrature cubes for a pair of states: the largest per-sector
    momentum cube and a position cube of extent 8 / (smallest width)."""
    sectors = _as_sectors(a) + _as_sectors(b)
    pmax = max(s.default_grid().pmax for s in sectors)
    widths = [s.width for s in sectors]
    return Grid(pmax, p_points), PositionGrid(MIN_COVERAGE / min(widths), x_points)


def parseval_check(a, b, pgrid: Grid | None = None, xgrid: PositionGrid | None = None,
                   t: float = 0.0) -> tuple[complex, complex, float]:
    """Compare the two routes to the invariant scalar product (a, b).

    lhs: sign-weighted momentum integral; rhs: 2m times the position integral
    of Psi^+ Phi on a fixed-time slice (see the module docstring for why the
    mass factor belongs there).  Returns (lhs, rhs, relerr) with relerr the
    mismatch relative to the larger magnitude.  Reducing either grid spacing
    (one `refined()` level) tightens the match until tail truncation floors it.
    """
    if pgrid is None or xgrid is None:
        dp, dx = default_grids(a, b)
        pgrid = pgrid if pgrid is not None else dp
        xgrid = xgrid if xgrid is not None else dx
    sectors = _as_sectors(a) + _as_sectors(b)
    _position_coverage_check([s.width for s in sectors], xgrid)
    masses = [s.mass for s in sectors]
    if max(masses) - min(masses) > 1e-12:
        raise ValueError("parseval_check requires a common mass")
    lhs = scalar_product(a, b, pgrid)
    psi = synthesize_mesh(a, t, xgrid, pgrid)
    phi = synthesize_mesh(b, t, xgrid, pgrid)
    rhs = 2.0 * masses[0] * position_product(psi, phi, xgrid)
    scale = max(abs(lhs), abs(rhs))
    relerr = abs(lhs - rhs) / scale if scale > 0 else abs(lhs - rhs)
    return lhs, rhs, float(relerr)
