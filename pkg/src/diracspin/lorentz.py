"""Lorentz transformations in the vector, SU(2), and bispinor realizations.

Covers velocity boosts, the standard boost taking the rest momentum to p,
Wigner rotations (both the brute-force matrix product and the closed form),
the SU(2) double cover of SO(3), and finite bispinor transformations built
either from generator parameters or by polar-decomposing a vector-realization
matrix into boost x rotation.
"""
from __future__ import annotations

import numpy as np
from scipy.linalg import expm
from scipy.spatial.transform import Rotation

from .clifford import GAMMA0, PAULI, SIGMA
from .minkowski import METRIC, check_mass, lorentz_matrix, on_shell

_I2 = np.eye(2, dtype=complex)
_Z2 = np.zeros((2, 2), dtype=complex)

#: Hard upper bound on boost speeds accepted anywhere in the package; keeps
#: gamma factors (and with them condition numbers) bounded in sweeps.
VMAX_HARD = 0.999999


def lorentz_gamma(v3: np.ndarray) -> float:
    """Lorentz factor gamma = (1 - |v|^2)^(-1/2) for |v| < 1."""
    v3 = np.asarray(v3, dtype=float)
    b2 = float(v3 @ v3)
    if b2 >= 1.0:
        raise ValueError(f"superluminal velocity: |v| = {np.sqrt(b2):.6f} >= 1")
    return 1.0 / np.sqrt(1.0 - b2)


def boost_from_velocity(v3: np.ndarray) -> np.ndarray:
    """Pure boost with velocity v, as a 4x4 vector-realization matrix.

    Row 0 is (gamma, -gamma v); the spatial block is
    I + gamma^2/(1+gamma) v (x) v.  The matrix is symmetric and
    boost_from_velocity(-v) is its inverse.
    """
    v3 = np.asarray(v3, dtype=float)
    if v3.shape != (3,):
        raise ValueError(f"velocity must have shape (3,), got {v3.shape}")
    g = lorentz_gamma(v3)
    L = np.eye(4)
    L[0, 0] = g
    L[0, 1:] = -g * v3
    L[1:, 0] = -g * v3
    L[1:, 1:] += (g * g / (1.0 + g)) * np.outer(v3, v3)
    return lorentz_matrix(L, proper=True)


def standard_boost(p4: np.ndarray, m: float) -> np.ndarray:
    """Boost L_p taking the rest four-momentum (m, 0, 0, 0) to p.

    Column 0 equals p/m; note L_p = boost_from_velocity(-pvec/p^0): the two
    constructors use opposite sign conventions for the velocity argument.
    """
    m = check_mass(m)
    p4 = np.asarray(p4, dtype=float)
    p0, pv = p4[0], p4[1:]
    L = np.eye(4)
    L[0, 0] = p0 / m
    L[0, 1:] = pv / m
    L[1:, 0] = pv / m
    L[1:, 1:] += np.outer(pv, pv) / (m * (m + p0))
    return lorentz_matrix(L, proper=True)


#: Metric in extended precision for the Wigner composition below.
_METRIC_LD = METRIC.astype(np.longdouble)


def _standard_boost_ld(pv: np.ndarray, m) -> np.ndarray:
    """Standard boost of the on-shell momentum with spatial part pv, assembled
    in extended precision with the energy recomputed from pv (which keeps the
    matrix pseudo-orthogonal to extended-precision roundoff even when the
    caller's four-vector is slightly off shell)."""
    p0 = np.sqrt(m * m + pv @ pv)
    L = np.eye(4, dtype=np.longdouble)
    L[0, 0] = p0 / m
    L[0, 1:] = pv / m
    L[1:, 0] = pv / m
    L[1:, 1:] += np.outer(pv, pv) / (m * (m + p0))
    return L


def wigner_rotation(L: np.ndarray, p4: np.ndarray, m: float) -> tuple[np.ndarray, np.ndarray]:
    """Wigner rotation R(L, p) = L_{Lp}^{-1} L L_p by direct matrix products.

    Composing the three factors involves entries of order (p^0/m)^2 that
    cancel down to a rotation, so the products run in extended precision
    (the inverse standard boost is its metric transpose, g L^T g); the
    result is returned as float64.  Longdouble inputs are used as given,
    which lets callers chain exact products of group elements.  Returns
    (R3, R4): the 3x3 rotation block and the full 4x4 matrix, whose time
    row and column equal (1, 0, 0, 0) up to roundoff.
    """
    Ld = np.asarray(L).astype(np.longdouble)
    p4d = np.asarray(p4).astype(np.longdouble)
    md = np.longdouble(m)
    Lp_out = _standard_boost_ld((Ld @ p4d)[1:], md)
    inv = _METRIC_LD @ Lp_out.T @ _METRIC_LD
    R4 = np.asarray(inv @ Ld @ _standard_boost_ld(p4d[1:], md), dtype=float)
    return R4[1:, 1:].copy(), R4


def wigner_rotation_batch(L: np.ndarray, P: np.ndarray, m: float) -> np.ndarray:
    """Wigner rotation blocks R(L, p) for a batch of spatial momenta, (n, 3, 3).

    Same extended-precision evaluation as wigner_rotation.
    """
    Ld = np.asarray(L).astype(np.longdouble)
    P = np.asarray(P).astype(np.longdouble).reshape(-1, 3)
    md = np.longdouble(m)

    def boosts(Q: np.ndarray) -> np.ndarray:
        q0 = np.sqrt(md * md + np.einsum("ni,ni->n", Q, Q))
        B = np.broadcast_to(np.eye(4, dtype=np.longdouble), (len(Q), 4, 4)).copy()
        B[:, 0, 0] = q0 / md
        B[:, 0, 1:] = Q / md
        B[:, 1:, 0] = Q / md
        B[:, 1:, 1:] += np.einsum("ni,nj->nij", Q, Q) / (md * (md + q0))[:, None, None]
        return B

    p0 = np.sqrt(md * md + np.einsum("ni,ni->n", P, P))
    p4 = np.concatenate([p0[:, None], P], axis=1)
    Lp = p4 @ Ld.T
    inv = np.einsum("ab,nbc,cd->nad", _METRIC_LD, boosts(Lp[:, 1:]).transpose(0, 2, 1), _METRIC_LD)
    R4 = np.einsum("nab,bc,ncd->nad", inv, Ld, boosts(P))
    return np.asarray(R4[:, 1:, 1:], dtype=float)


def wigner_rotation_closed(v3: np.ndarray, p4: np.ndarray, m: float) -> np.ndarray:
    """Closed-form Wigner rotation for a pure boost of velocity v acting on p.

    With a = m + p^0 and b = m + gamma (p^0 - v.p) (b is m plus the boosted
    energy), the rotation block is

        R = I + (1-gamma)/(a b) p(x)p + gamma^2 (m-p^0)/(b (1+gamma)) v(x)v
            + (gamma/b) p(x)v
            + (gamma/b) (2 gamma (v.p)/(a (1+gamma)) - 1) v(x)p.

    Agrees with wigner_rotation(boost_from_velocity(v), p, m).
    """
    v3 = np.asarray(v3, dtype=float)
    p4 = np.asarray(p4, dtype=float)
    m = check_mass(m)
    g = lorentz_gamma(v3)
    p0, pv = p4[0], p4[1:]
    a = m + p0
    b = m + g * (p0 - v3 @ pv)
    return (np.eye(3)
            + ((1.0 - g) / (a * b)) * np.outer(pv, pv)
            + (g * g * (m - p0) / (b * (1.0 + g))) * np.outer(v3, v3)
            + (g / b) * np.outer(pv, v3)
            + (g / b) * (2.0 * g * (v3 @ pv) / (a * (1.0 + g)) - 1.0) * np.outer(v3, pv))


def su2_from_so3(R3: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """SU(2) element D covering the rotation R, with D (sigma.a) D^+ = (R a).sigma.

    The double-cover sign is fixed by trace(D) >= 0; for half-turns
    (trace approximately 0) the first nonzero axis component is taken
    positive.
    """
    R3 = np.asarray(R3, dtype=float)
    if R3.shape != (3, 3):
        raise ValueError(f"rotation must have shape (3, 3), got {R3.shape}")
    if np.abs(R3.T @ R3 - np.eye(3)).max() >= tol or np.linalg.det(R3) <= 0.0:
        raise ValueError("matrix is not a proper rotation")
    rotvec = Rotation.from_matrix(R3).as_rotvec()
    theta = float(np.linalg.norm(rotvec))
    if theta == 0.0:
        return _I2.copy()
    axis = rotvec / theta
    D = np.cos(theta / 2.0) * _I2 - 1j * np.sin(theta / 2.0) * np.einsum("i,iab->ab", axis, PAULI)
    if abs(np.cos(theta / 2.0)) < 1e-8:
        lead = axis[np.abs(axis) > 1e-12]
        if lead.size and lead[0] < 0.0:
            D = -D
    return D


# ---------------------------------------------------------------------------
# Generator parameters: a real antisymmetric omega_{mu nu} feeds the matched
# exponential maps exp((i/2) omega_{mu nu} J^{mu nu}) in the vector and
# bispinor realizations.  The vector generators are
# (J^{ab})^mu_nu = i (g^{a mu} delta^b_nu - g^{b mu} delta^a_nu).
# ---------------------------------------------------------------------------

def _vector_generators() -> np.ndarray:
    J = np.zeros((4, 4, 4, 4), dtype=complex)
    for a in range(4):
        for b in range(4):
            for mu in range(4):
                for nu in range(4):
                    J[a, b, mu, nu] = 1j * (METRIC[a, mu] * (b == nu) - METRIC[b, mu] * (a == nu))
    return J


VECTOR_GENERATORS = _vector_generators()


def check_generator_params(omega: np.ndarray) -> np.ndarray:
    """Validate an exactly antisymmetric real 4x4 parameter matrix."""
    omega = np.asarray(omega, dtype=float)
    if omega.shape != (4, 4):
        raise ValueError(f"generator parameters must have shape (4, 4), got {omega.shape}")
    if not np.array_equal(omega, -omega.T):
        raise ValueError("generator parameters must be exactly antisymmetric")
    return omega


def boost_params(eta3: np.ndarray) -> np.ndarray:
    """Parameters of a pure boost with rapidity vector eta (omega_{0i} = eta_i)."""
    eta3 = np.asarray(eta3, dtype=float)
    omega = np.zeros((4, 4))
    omega[0, 1:] = eta3
    omega[1:, 0] = -eta3
    return omega


def rotation_params(theta3: np.ndarray) -> np.ndarray:
    """Parameters of a rotation by the axis-angle vector theta (omega_{ij} = -eps_{ijk} theta_k)."""
    theta3 = np.asarray(theta3, dtype=float)
    omega = np.zeros((4, 4))
    omega[1, 2], omega[2, 1] = -theta3[2], theta3[2]
    omega[2, 3], omega[3, 2] = -theta3[0], theta3[0]
    omega[3, 1], omega[1, 3] = -theta3[1], theta3[1]
    return omega


def lorentz_from_params(omega: np.ndarray) -> np.ndarray:
    """Vector-realization exponential exp((i/2) omega_{mu nu} J^{mu nu}).

    boost_params(eta x-hat) reproduces boost_from_velocity(tanh(eta) x-hat).
    """
    omega = check_generator_params(omega)
    gen = 0.5j * np.einsum("ab,abmn->mn", omega, VECTOR_GENERATORS)
    L = expm(gen)
    if np.abs(L.imag).max() > 1e-12:
        raise ValueError("generator parameters produced a non-real vector matrix")
    return lorentz_matrix(L.real, proper=True)


def bispinor_from_params(omega: np.ndarray) -> np.ndarray:
    """Bispinor-realization exponential exp((i/2) omega_{mu nu} Sigma^{mu nu}).

    Paired with lorentz_from_params on the same omega it satisfies the
    conjugation law S^{-1} gamma^mu S = L^mu_nu gamma^nu.
    """
    omega = check_generator_params(omega)
    return expm(0.5j * np.einsum("ab,abmn->mn", omega, SIGMA))


def bispinor_boost(v3: np.ndarray) -> np.ndarray:
    """Bispinor realization of boost_from_velocity(v): block-diagonal
    diag(exp(-eta n.sigma/2), exp(+eta n.sigma/2)) with eta = artanh |v|."""
    v3 = np.asarray(v3, dtype=float)
    speed = float(np.linalg.norm(v3))
    if speed == 0.0:
        return np.eye(4, dtype=complex)
    if speed >= 1.0:
        raise ValueError(f"superluminal velocity: |v| = {speed:.6f} >= 1")
    eta = np.arctanh(speed)
    ns = np.einsum("i,iab->ab", v3 / speed, PAULI)
    c, s = np.cosh(eta / 2.0), np.sinh(eta / 2.0)
    upper = c * _I2 - s * ns
    lower = c * _I2 + s * ns
    return np.block([[upper, _Z2], [_Z2, lower]])


def polar_decompose(L: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Split a proper orthochronous L into boost x rotation.

    The boost velocity is read off column 0 (v_i = -L^i_0 / L^0_0); the
    remainder B(v)^{-1} L is a pure rotation whose 3x3 block is returned.
    """
    L = np.asarray(L, dtype=float)
    v3 = -L[1:, 0] / L[0, 0]
    R4 = np.linalg.solve(boost_from_velocity(v3), L)
    return v3, R4[1:, 1:].copy()


def bispinor_rep(L: np.ndarray) -> np.ndarray:
    """Finite bispinor transformation S(L) for proper orthochronous L.

    Built through the polar split L = B(v) R as S = S(B(v)) diag(D, D) with
    D = su2_from_so3(R), which lands on the branch with S(I) = +I.  The
    inverse satisfies S^{-1} = gamma^0 S^+ gamma^0.
    """
    L = lorentz_matrix(L, proper=True)
    v3, R3 = polar_decompose(L)
    D = su2_from_so3(R3)
    return bispinor_boost(v3) @ np.block([[D, _Z2], [_Z2, D]])


def bispinor_inverse(S: np.ndarray) -> np.ndarray:
    """Inverse of a bispinor transformation via S^{-1} = gamma^0 S^+ gamma^0."""
    return GAMMA0 @ np.asarray(S).conj().T @ GAMMA0


def random_momentum(rng: np.random.Generator, m: float, pmax_over_m: float = 10.0) -> np.ndarray:
    """On-shell four-momentum with pvec = m u, u uniform in the ball |u| <= pmax_over_m."""
    u = rng.normal(size=3)
    u /= np.linalg.norm(u)
    r = pmax_over_m * rng.uniform() ** (1.0 / 3.0)
    return on_shell(m, m * r * u)


def random_velocity(rng: np.random.Generator, vmax: float = 0.99) -> np.ndarray:
    """Velocity uniform in the ball |v| <= vmax (vmax capped at 0.999999)."""
    if not 0.0 < vmax <= VMAX_HARD:
        raise ValueError(f"vmax must lie in (0, {VMAX_HARD}], got {vmax}")
    u = rng.normal(size=3)
    u /= np.linalg.norm(u)
    return vmax * rng.uniform() ** (1.0 / 3.0) * u


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    """Haar-random rotation matrix."""
    return Rotation.random(rng=rng).as_matrix()


def random_lorentz(rng: np.random.Generator, vmax: float = 0.99) -> np.ndarray:
    """Random proper orthochronous transformation, sampled as boost x rotation."""
    L = np.eye(4)
    L[1:, 1:] = random_rotation(rng)
    return boost_from_velocity(random_velocity(rng, vmax)) @ L
