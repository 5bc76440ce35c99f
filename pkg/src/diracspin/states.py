"""Momentum-space wavefunctions, scalar products, Newton-Wigner shifts, and
Bloch-vector states.

A state on one mass shell is a two-component profile over spatial momentum:
either in the spin basis (components indexed by the rest-frame spin label)
or in the covariant basis (four bispinor components obtained by contracting
with the amplitude, psi = v^eps psitilde).  Profiles from the built-in
Gaussian-times-polynomial family are held as sympy expressions in the
momentum symbols P = (p1, p2, p3), which keeps Newton-Wigner applications
exact; transformed states fall back to plain callables.

Wavefunctions carry the bra-side index convention.  Consequences fixed here:
kets transform with the SU(2) Wigner matrix D, so spin-basis wavefunction
columns transform with its conjugate; and the one-parameter family of
Newton-Wigner shifts t -> shift(t a) has derivative -i (a . X) at t = 0,
with X the position operator X psi = i eps (grad - pvec/(2 omega^2)) psi.

The invariant scalar product is (a, b) = sum_eps int d3p/(2 omega)
atilde^+ btilde = sum_eps eps int d3p/(2 omega) abar b, approximated by
tensor-product trapezoid quadrature on a centered cube.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np
import sympy as sp

from .amplitudes import amplitude_batch
from .clifford import GAMMA, GAMMA0, PAULI
from .lorentz import bispinor_rep, wigner_rotation
from .minkowski import METRIC, check_energy_sign, check_mass, lorentz_matrix

#: Momentum symbols used by all symbolic profiles.
P = sp.symbols("p1 p2 p3", real=True)

_LAMBDA_CACHE: dict[sp.Expr, Callable] = {}


def _eval_expr(expr: sp.Expr, px: np.ndarray, py: np.ndarray, pz: np.ndarray) -> np.ndarray:
    fn = _LAMBDA_CACHE.get(expr)
    if fn is None:
        fn = sp.lambdify(P, expr, modules="numpy")
        _LAMBDA_CACHE[expr] = fn
    out = np.asarray(fn(px, py, pz), dtype=complex)
    if out.shape != np.shape(px):
        out = np.broadcast_to(out, np.shape(px)).copy()
    return out


def omega_expr(m: float) -> sp.Expr:
    """Symbolic on-shell energy sqrt(m^2 + |p|^2)."""
    return sp.sqrt(m * m + P[0] ** 2 + P[1] ** 2 + P[2] ** 2)


def omega_of(pts: np.ndarray, m: float) -> np.ndarray:
    """On-shell energies for an array of spatial momenta (..., 3)."""
    pts = np.asarray(pts, dtype=float)
    return np.sqrt(m * m + np.einsum("...i,...i->...", pts, pts))


@dataclass(frozen=True)
class Grid:
    """Uniform tensor-product momentum grid on [-pmax, pmax]^3 with n points per axis."""

    pmax: float
    n: int = 64

    def __post_init__(self):
        if self.pmax <= 0 or self.n < 2:
            raise ValueError(f"need pmax > 0 and n >= 2, got pmax={self.pmax}, n={self.n}")

    def axis(self) -> np.ndarray:
        return np.linspace(-self.pmax, self.pmax, self.n)

    def points(self) -> np.ndarray:
        """Flat list of grid points, shape (n^3, 3), axis-0 fastest last."""
        ax = self.axis()
        X, Y, Z = np.meshgrid(ax, ax, ax, indexing="ij")
        return np.stack([X.ravel(), Y.ravel(), Z.ravel()], axis=-1)

    def weights(self) -> np.ndarray:
        """Flat trapezoid weights matching points(), shape (n^3,)."""
        w1 = np.full(self.n, 2.0 * self.pmax / (self.n - 1))
        w1[0] *= 0.5
        w1[-1] *= 0.5
        return np.einsum("i,j,k->ijk", w1, w1, w1).ravel()

    def refined(self) -> "Grid":
        """One refinement level: doubles the resolution on the same cube."""
        return Grid(self.pmax, 2 * self.n - 1)


@dataclass(frozen=True)
class SpinWaveFunction:
    """Spin-basis profile psitilde on the energy-sign-eps mass shell.

    Either symbolic (`exprs`, a pair of sympy expressions in P) or callable
    (`fn`, mapping points (..., 3) to components (..., 2)).  `width` and
    `center` describe the momentum-space decay for default grid sizing.
    """

    eps: int
    mass: float
    width: float
    exprs: tuple[sp.Expr, sp.Expr] | None = None
    fn: Callable[[np.ndarray], np.ndarray] | None = field(default=None, repr=False)
    center: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        check_energy_sign(self.eps)
        check_mass(self.mass)
        if self.width <= 0:
            raise ValueError("profile width must be positive")
        if self.exprs is None and self.fn is None:
            raise ValueError("profile needs either symbolic exprs or a callable")
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float))

    def evaluate(self, pts: np.ndarray) -> np.ndarray:
        pts = np.asarray(pts, dtype=float)
        if self.exprs is not None:
            comps = [_eval_expr(e, pts[..., 0], pts[..., 1], pts[..., 2]) for e in self.exprs]
            return np.stack(comps, axis=-1)
        return self.fn(pts)

    def default_grid(self, n: int = 64) -> Grid:
        return Grid(float(np.linalg.norm(self.center)) + 8.0 * self.width, n)


@dataclass(frozen=True)
class CovariantWaveFunction:
    """Covariant-basis profile psi (four bispinor components) on one shell."""

    eps: int
    mass: float
    width: float
    fn: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    center: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        check_energy_sign(self.eps)
        check_mass(self.mass)
        if self.width <= 0:
            raise ValueError("profile width must be positive")
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float))

    def evaluate(self, pts: np.ndarray) -> np.ndarray:
        return self.fn(np.asarray(pts, dtype=float))

    def default_grid(self, n: int = 64) -> Grid:
        return Grid(float(np.linalg.norm(self.center)) + 8.0 * self.width, n)


def gaussian_packet(eps: int, mass: float, width: float,
                    spin: Sequence[complex] = (1.0, 0.0),
                    center: Sequence[float] = (0.0, 0.0, 0.0),
                    poly: sp.Expr | tuple[sp.Expr, sp.Expr] | None = None) -> SpinWaveFunction:
    """Gaussian-times-polynomial profile

        psitilde_s(p) = spin_s * poly_s(p) * exp(-|p - center|^2 / (2 width^2)).
    """
    center = np.asarray(center, dtype=float)
    gauss = sp.exp(-sum((P[i] - center[i]) ** 2 for i in range(3)) / (2.0 * width ** 2))
    if poly is None:
        polys = (sp.Integer(1), sp.Integer(1))
    elif isinstance(poly, tuple):
        polys = poly
    else:
        polys = (poly, poly)
    exprs = tuple(sp.sympify(complex(spin[s])) * polys[s] * gauss for s in range(2))
    return SpinWaveFunction(eps=eps, mass=mass, width=width, exprs=exprs, center=center)


# ---------------------------------------------------------------------------
# Basis changes and scalar products
# ---------------------------------------------------------------------------

def to_covariant(w: SpinWaveFunction) -> CovariantWaveFunction:
    """Contract with the amplitude: psi(p) = v^eps(p) psitilde(p)."""
    def fn(pts: np.ndarray) -> np.ndarray:
        flat = pts.reshape(-1, 3)
        v = amplitude_batch(w.eps, flat, w.mass)
        vals = w.evaluate(flat)
        return np.einsum("nab,nb->na", v, vals).reshape(pts.shape[:-1] + (4,))

    return CovariantWaveFunction(eps=w.eps, mass=w.mass, width=w.width, fn=fn, center=w.center)


def from_covariant(c: CovariantWaveFunction) -> SpinWaveFunction:
    """Invert the basis change: psitilde(p) = eps vbar^eps(p) psi(p)."""
    def fn(pts: np.ndarray) -> np.ndarray:
        flat = pts.reshape(-1, 3)
        v = amplitude_batch(c.eps, flat, c.mass)
        vals = c.evaluate(flat)
        out = c.eps * np.einsum("nbs,bc,nc->ns", v.conj(), GAMMA0, vals)
        return out.reshape(pts.shape[:-1] + (2,))

    return SpinWaveFunction(eps=c.eps, mass=c.mass, width=c.width, fn=fn, center=c.center)


def dirac_residual(c: CovariantWaveFunction, pts: np.ndarray) -> float:
    """Max violation of the shell constraint Lambda_{-eps}(p) psi(p) = 0."""
    pts = np.asarray(pts, dtype=float).reshape(-1, 3)
    m = c.mass
    p0 = omega_of(pts, m)
    p4 = np.concatenate([p0[:, None], pts], axis=1)
    sl = np.einsum("nm,mab->nab", p4 @ METRIC, GAMMA)
    proj = (m * np.eye(4, dtype=complex) - c.eps * sl) / (2.0 * m)
    vals = c.evaluate(pts)
    return float(np.abs(np.einsum("nab,nb->na", proj, vals)).max())


def _as_sectors(x) -> tuple:
    if isinstance(x, (SpinWaveFunction, CovariantWaveFunction)):
        return (x,)
    return tuple(x)


def _sector_product(a, b, grid: Grid | None) -> complex:
    if a.eps != b.eps:
        return 0.0 + 0.0j
    if abs(a.mass - b.mass) > 1e-12:
        raise ValueError("scalar product requires equal masses")
    if grid is None:
        ga, gb = a.default_grid(), b.default_grid()
        grid = Grid(max(ga.pmax, gb.pmax), max(ga.n, gb.n))
    pts = grid.points()
    wts = grid.weights() / (2.0 * omega_of(pts, a.mass))
    a_spin = isinstance(a, SpinWaveFunction)
    b_spin = isinstance(b, SpinWaveFunction)
    if a_spin != b_spin:
        a = a if not a_spin else to_covariant(a)
        b = b if not b_spin else to_covariant(b)
        a_spin = b_spin = False
    va, vb = a.evaluate(pts), b.evaluate(pts)
    if a_spin:
        return complex(np.einsum("n,ns,ns->", wts, va.conj(), vb))
    return complex(a.eps * np.einsum("n,nb,bc,nc->", wts, va.conj(), GAMMA0, vb))


def scalar_product(a, b, grid: Grid | None = None) -> complex:
    """Invariant scalar product (a, b); antilinear in a.

    Accepts single sectors or sequences of sectors (one per energy sign);
    sectors with different energy signs are orthogonal.
    """
    return sum(_sector_product(sa, sb, grid) for sa in _as_sectors(a) for sb in _as_sectors(b))


def norm(a, grid: Grid | None = None) -> float:
    """State norm sqrt((a, a))."""
    return float(np.sqrt(np.real(scalar_product(a, a, grid))))


def normalized(w: SpinWaveFunction, grid: Grid | None = None) -> SpinWaveFunction:
    """Scale a symbolic profile to unit norm."""
    nrm = norm(w, grid)
    if nrm == 0.0:
        raise ValueError("cannot normalize the zero profile")
    if w.exprs is not None:
        return replace(w, exprs=tuple(e / nrm for e in w.exprs))
    fn = w.fn
    return replace(w, fn=lambda pts: fn(pts) / nrm)


# ---------------------------------------------------------------------------
# Lorentz transport
# ---------------------------------------------------------------------------

def _onshell_batch(pts: np.ndarray, m: float) -> np.ndarray:
    pts = np.asarray(pts, dtype=float).reshape(-1, 3)
    return np.concatenate([omega_of(pts, m)[:, None], pts], axis=1)


def wigner_d_batch(L: np.ndarray, pts: np.ndarray, m: float, eps: int = 1) -> np.ndarray:
    """SU(2) Wigner matrices D(R(L, p)) on a batch of momenta, shape (n, 2, 2).

    Computed through the amplitude relation D^T = (eps vbar(Lp) S(L) v(p))^{-1},
    which pins the double-cover sign consistently with bispinor_rep(L).
    """
    L = np.asarray(L, dtype=float)
    pts = np.asarray(pts, dtype=float).reshape(-1, 3)
    S = bispinor_rep(L)
    p4 = _onshell_batch(pts, m)
    v_in = amplitude_batch(eps, pts, m)
    v_out = amplitude_batch(eps, (p4 @ L.T)[:, 1:], m)
    M = eps * np.einsum("nbs,bc,cd,nde->nse", v_out.conj(), GAMMA0, S, v_in)
    return np.linalg.inv(M).transpose(0, 2, 1)


def lorentz_transform(w, L: np.ndarray):
    """Transport a wavefunction to the frame reached by L.

    Covariant basis: psi'(p') = S(L) psi(p) with p = L^{-1} p'.  Spin basis:
    the columns pick up the conjugate Wigner matrix, psitilde'(p') =
    D(R(L, p))* psitilde(p).  Returns the same kind of object, callable-backed.
    """
    L = lorentz_matrix(L, proper=True)
    Linv = METRIC @ L.T @ METRIC
    m = w.mass
    new_center = (L @ _onshell_batch(w.center[None, :], m)[0])[1:]
    new_width = w.width * L[0, 0]

    if isinstance(w, CovariantWaveFunction):
        S = bispinor_rep(L)

        def fn(pts: np.ndarray) -> np.ndarray:
            flat = pts.reshape(-1, 3)
            pre = (_onshell_batch(flat, m) @ Linv.T)[:, 1:]
            vals = w.evaluate(pre)
            return np.einsum("ab,nb->na", S, vals).reshape(pts.shape[:-1] + (4,))

        return CovariantWaveFunction(eps=w.eps, mass=m, width=new_width, fn=fn, center=new_center)

    if isinstance(w, SpinWaveFunction):
        eps = w.eps

        def fn(pts: np.ndarray) -> np.ndarray:
            flat = pts.reshape(-1, 3)
            pre = (_onshell_batch(flat, m) @ Linv.T)[:, 1:]
            vals = w.evaluate(pre)
            D = wigner_d_batch(L, pre, m, eps)
            return np.einsum("nse,ne->ns", D.conj(), vals).reshape(pts.shape[:-1] + (2,))

        return SpinWaveFunction(eps=eps, mass=m, width=new_width, fn=fn, center=new_center)

    raise TypeError(f"cannot transform {type(w).__name__}")


# ---------------------------------------------------------------------------
# Newton-Wigner position: shifts and the operator itself
# ---------------------------------------------------------------------------

def nw_shift(w: SpinWaveFunction, a3: np.ndarray) -> SpinWaveFunction:
    """Newton-Wigner shift by the spatial vector a:

        psitilde(p) -> N(p, eps a) psitilde(p + eps a),
        N(p, b) = sqrt(omega(p) / omega(p + b)).

    Shifts compose additively and exactly (the N factors telescope), and
    preserve the norm because d3p/omega is shifted along with the profile.
    """
    a3 = np.asarray(a3, dtype=float)
    eps, m = w.eps, w.mass
    if w.exprs is not None:
        sub = {P[i]: P[i] + eps * a3[i] for i in range(3)}
        omega = omega_expr(m)
        factor = sp.sqrt(omega / omega.subs(sub, simultaneous=True))
        exprs = tuple(factor * e.subs(sub, simultaneous=True) for e in w.exprs)
        return replace(w, exprs=exprs, center=w.center - eps * a3)
    inner = w.fn

    def fn(pts: np.ndarray) -> np.ndarray:
        pts = np.asarray(pts, dtype=float)
        shifted = pts + eps * a3
        N = np.sqrt(omega_of(pts, m) / omega_of(shifted, m))
        return N[..., None] * inner(shifted)

    return replace(w, fn=fn, center=w.center - eps * a3)


def nw_apply(w: SpinWaveFunction, i: int) -> SpinWaveFunction:
    """Apply the Newton-Wigner position component X_i,

        (X_i psi)(p) = i eps (d/dp_i - p_i / (2 (|p|^2 + m^2))) psi(p).

    Requires a symbolic profile; use `sample` plus `nw_apply_sampled` for
    gridded data.  Components commute ([X_i, X_j] = 0) and are canonically
    conjugate to momentum ([X_i, P_j] = i delta_{ij}).
    """
    if w.exprs is None:
        raise ValueError("nw_apply needs a symbolic profile; sample it and use nw_apply_sampled")
    eps, m = w.eps, w.mass
    om2 = m * m + P[0] ** 2 + P[1] ** 2 + P[2] ** 2
    exprs = tuple(sp.I * eps * (sp.diff(e, P[i]) - P[i] / (2 * om2) * e) for e in w.exprs)
    return replace(w, exprs=exprs)


def momentum_apply(w: SpinWaveFunction, j: int) -> SpinWaveFunction:
    """Apply the momentum component P_j, which acts as multiplication by eps p_j."""
    if w.exprs is not None:
        return replace(w, exprs=tuple(w.eps * P[j] * e for e in w.exprs))
    eps, inner = w.eps, w.fn
    return replace(w, fn=lambda pts: eps * np.asarray(pts, float)[..., j : j + 1] * inner(pts))


def apply_spin(w: SpinWaveFunction, M2: np.ndarray) -> SpinWaveFunction:
    """Mix the two spin components with a 2x2 matrix acting on the column.

    For operator matrices stored in the ket-index convention pass their
    `column_action` first.
    """
    M2 = np.asarray(M2, dtype=complex)
    if w.exprs is not None:
        exprs = tuple(sum(sp.sympify(complex(M2[s, t])) * w.exprs[t] for t in range(2)) for s in range(2))
        return replace(w, exprs=exprs)
    inner = w.fn
    return replace(w, fn=lambda pts: inner(pts) @ M2.T)


@dataclass(frozen=True)
class SampledWaveFunction:
    """Spin-basis profile sampled on a uniform tensor grid (grid route for
    Newton-Wigner applications when no symbolic form is available)."""

    eps: int
    mass: float
    axes: tuple[np.ndarray, np.ndarray, np.ndarray]
    values: np.ndarray  # shape (n1, n2, n3, 2)

    def mesh(self, i: int) -> np.ndarray:
        shape = [1, 1, 1]
        shape[i] = len(self.axes[i])
        return self.axes[i].reshape(shape)


def sample(w: SpinWaveFunction, axes) -> SampledWaveFunction:
    """Evaluate a profile on the tensor product of three 1-D axes."""
    ax = tuple(np.asarray(a, dtype=float) for a in axes)
    X, Y, Z = np.meshgrid(*ax, indexing="ij")
    pts = np.stack([X, Y, Z], axis=-1)
    return SampledWaveFunction(eps=w.eps, mass=w.mass, axes=ax, values=w.evaluate(pts))


def nw_apply_sampled(s: SampledWaveFunction, i: int) -> SampledWaveFunction:
    """X_i on gridded data, with the derivative as a central difference."""
    deriv = np.gradient(s.values, s.axes[i], axis=i, edge_order=2)
    om2 = s.mass ** 2 + sum(s.mesh(k) ** 2 for k in range(3))
    vals = 1j * s.eps * (deriv - (s.mesh(i) / (2.0 * om2))[..., None] * s.values)
    return replace(s, values=vals)


def momentum_apply_sampled(s: SampledWaveFunction, j: int) -> SampledWaveFunction:
    """P_j on gridded data: multiplication by eps p_j."""
    return replace(s, values=s.eps * s.mesh(j)[..., None] * s.values)


# ---------------------------------------------------------------------------
# Sharp-momentum Bloch states
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DensityState:
    """Positive-energy state sharp at four-momentum q with Bloch vector xi,
    rho = (I + xi.sigma)/2 on the spin indices."""

    q4: np.ndarray
    xi: np.ndarray

    def __post_init__(self):
        q4 = np.asarray(self.q4, dtype=float)
        xi = np.asarray(self.xi, dtype=float)
        if q4.shape != (4,) or xi.shape != (3,):
            raise ValueError("DensityState needs a four-momentum and a 3-vector")
        if q4[0] <= 0:
            raise ValueError("DensityState requires positive energy")
        if q4[0] ** 2 - q4[1:] @ q4[1:] <= 0:
            raise ValueError("four-momentum must be timelike")
        if np.linalg.norm(xi) > 1.0 + 1e-12:
            raise ValueError(f"Bloch vector must satisfy |xi| <= 1, got {np.linalg.norm(xi)}")
        object.__setattr__(self, "q4", q4)
        object.__setattr__(self, "xi", xi)

    @property
    def mass(self) -> float:
        return float(np.sqrt(self.q4[0] ** 2 - self.q4[1:] @ self.q4[1:]))

    def density_matrix(self) -> np.ndarray:
        return (np.eye(2, dtype=complex) + np.einsum("i,iab->ab", self.xi, PAULI)) / 2.0


def spin_expectations(s: DensityState) -> dict[str, np.ndarray]:
    """Expectation values of W^0, Wvec, and Svec in a sharp Bloch state.

    Evaluated as tr(rho M_col) with M_col the coefficient-column action of
    the stored spin-basis matrices; closed forms are

        <W^0> = q.xi / 2,  <W_k> = (m xi + qvec (q.xi)/(q^0 + m))_k / 2,
        <S_k> = xi_k / 2.
    """
    from .spin_ops import column_action, pl_spin, spin_matrix

    rho = s.density_matrix()
    m = s.mass
    w0 = np.real(np.trace(rho @ column_action(pl_spin(0, 1, s.q4, m))))
    wvec = np.array([np.real(np.trace(rho @ column_action(pl_spin(k + 1, 1, s.q4, m)))) for k in range(3)])
    svec = np.array([np.real(np.trace(rho @ column_action(spin_matrix(k)))) for k in range(3)])
    return {"w0": float(w0), "wvec": wvec, "svec": svec}


def bloch_transform(s: DensityState, L: np.ndarray) -> DensityState:
    """Transport a sharp Bloch state: q -> Lq and xi -> R(L, q) xi.

    The Bloch vector rotates with the Wigner rotation, so its length is
    preserved; equivalently rho -> D rho D^+ with D the SU(2) lift.
    """
    L = lorentz_matrix(L, proper=True)
    R3, _ = wigner_rotation(L, s.q4, s.mass)
    return DensityState(q4=L @ s.q4, xi=R3 @ s.xi)
