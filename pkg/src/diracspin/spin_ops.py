"""Momentum-space matrix actions of spin and Pauli-Lubanski operators.

Index convention (fixed here once, reused everywhere): an operator acting on
sharp-momentum basis kets as O |a> = sum_b M_{ab} |b> is stored as the matrix
M with row index a, i.e. exactly as the summation is written.  Acting on a
column of expansion coefficients (or on a wavefunction, which carries the
same index) therefore uses the transpose; `column_action` performs that map.
That is why the spin-basis matrices appear with transposed Pauli matrices:
as stored, spin components obey [S_i, S_j] = -i eps_{ijk} S_k, while their
column actions obey the usual [S_i, S_j] = +i eps_{ijk} S_k.

All matrices are per mass shell: eps labels the energy sign and p is the
on-shell four-momentum, with operator eigenvalues P^mu -> eps p^mu.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .amplitudes import amplitude, dirac_bar
from .clifford import GAMMA, GAMMA0, GAMMA5, PAULI_T
from .lorentz import wigner_rotation_closed
from .minkowski import check_energy_sign, check_mass

_EYE2 = np.eye(2, dtype=complex)
_EYE4 = np.eye(4, dtype=complex)


def column_action(M: np.ndarray) -> np.ndarray:
    """Convert a stored (ket-index) operator matrix to its coefficient-column action."""
    return np.asarray(M).T.copy()


@dataclass(frozen=True)
class OperatorAction:
    """A momentum-space operator realization on one mass shell."""

    basis: str  # "covariant" or "spin"
    eps: int
    p4: np.ndarray = field(repr=False)
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.basis not in ("covariant", "spin"):
            raise ValueError(f"basis must be 'covariant' or 'spin', got {self.basis!r}")
        check_energy_sign(self.eps)

    @property
    def on_columns(self) -> np.ndarray:
        return column_action(self.matrix)


def pl_covariant(mu: int, eps: int, p4: np.ndarray, m: float) -> np.ndarray:
    """Pauli-Lubanski component W^mu on the covariant basis:

        W^mu -> -(eps/2) (eps m gamma^mu + p^mu I) gamma^5.

    Contracting with p_mu gives a matrix that annihilates the amplitude
    columns (transversality P.W = 0).
    """
    eps = check_energy_sign(eps)
    check_mass(m)
    p4 = np.asarray(p4, dtype=float)
    return -(eps / 2.0) * (eps * m * GAMMA[mu] + p4[mu] * _EYE4) @ GAMMA5


def pl_spin(mu: int, eps: int, p4: np.ndarray, m: float) -> np.ndarray:
    """Pauli-Lubanski component W^mu on the spin basis:

        W^0 -> (eps/2) pvec.sigma^T
        W^k -> (eps/2) (m sigma^T_k + p_k (pvec.sigma^T)/(m + p^0)),

    which equals the basis contraction eps vbar W^mu_cov v and also
    -(m/2) eps vbar gamma^mu gamma^5 v.
    """
    eps = check_energy_sign(eps)
    m = check_mass(m)
    p4 = np.asarray(p4, dtype=float)
    p0, pv = p4[0], p4[1:]
    pst = np.einsum("i,iab->ab", pv, PAULI_T)
    if mu == 0:
        return (eps / 2.0) * pst
    k = mu - 1
    return (eps / 2.0) * (m * PAULI_T[k] + pv[k] * pst / (m + p0))


def spin_matrix(i: int) -> np.ndarray:
    """Spin component S_i on the spin basis: sigma^T_i / 2, independent of p and eps."""
    return PAULI_T[i] / 2.0


def spin_from_pl(eps: int, p4: np.ndarray, m: float) -> np.ndarray:
    """Spin components rebuilt from the Pauli-Lubanski matrices,

        S_i = (1/m) (eps W_i - eps W^0 p_i / (p^0 + m)),

    using the shell eigenvalues P -> eps p (so E P^0 -> p^0 and
    E Wvec -> eps Wvec).  Returns shape (3, 2, 2); equals sigma^T/2 for
    both energy signs.
    """
    eps = check_energy_sign(eps)
    m = check_mass(m)
    p4 = np.asarray(p4, dtype=float)
    w0 = pl_spin(0, eps, p4, m)
    out = np.empty((3, 2, 2), dtype=complex)
    for i in range(3):
        out[i] = (eps * pl_spin(i + 1, eps, p4, m) - eps * w0 * p4[i + 1] / (p4[0] + m)) / m
    return out


def casimir_spin(eps: int, p4: np.ndarray, m: float) -> np.ndarray:
    """Spin-basis matrix of -W.W/m^2; equals s(s+1) I = (3/4) I."""
    check_mass(m)
    w = [pl_spin(mu, eps, p4, m) for mu in range(4)]
    return -(w[0] @ w[0] - sum(wk @ wk for wk in w[1:])) / (m * m)


def spin_covariant(i: int, eps: int, p4: np.ndarray, m: float) -> np.ndarray:
    """Spin component S_i on the covariant basis,

        S_i -> -(eps/2) (gamma^i + eps p_i (I - eps gamma^0)/(p^0 + m)) gamma^5,

    obtained from the Pauli-Lubanski actions with shell eigenvalues; it
    contracts to the spin-basis matrix, eps vbar S_i v = sigma^T_i / 2,
    for both energy signs.
    """
    eps = check_energy_sign(eps)
    m = check_mass(m)
    p4 = np.asarray(p4, dtype=float)
    return -(eps / 2.0) * (GAMMA[i + 1] + eps * p4[i + 1] * (_EYE4 - eps * GAMMA0) / (p4[0] + m)) @ GAMMA5


def hamiltonian_covariant(eps: int, p4: np.ndarray, m: float) -> np.ndarray:
    """Free Dirac Hamiltonian on the covariant basis, H = gamma^0 (eps pvec.gammavec + m I).

    Squares to (p^0)^2 I.
    """
    eps = check_energy_sign(eps)
    m = check_mass(m)
    p4 = np.asarray(p4, dtype=float)
    return GAMMA0 @ (eps * np.einsum("i,iab->ab", p4[1:], GAMMA[1:]) + m * _EYE4)


def fw_residual(eps: int, p4: np.ndarray, m: float) -> float:
    """Foldy-Wouthuysen diagonalization check: max entry of
    eps vbar H v - eps p^0 I, which vanishes identically."""
    v = amplitude(eps, p4, m)
    h = hamiltonian_covariant(eps, p4, m)
    p4 = np.asarray(p4, dtype=float)
    return float(np.abs(eps * dirac_bar(v) @ h @ v - eps * p4[0] * _EYE2).max())


def spin_transform_closed(v3: np.ndarray, p4: np.ndarray, m: float) -> np.ndarray:
    """Spin matrices seen from a frame boosted with velocity v, closed form.

    With gamma the Lorentz factor of v, a = m + p^0, and
    b = m + gamma (p^0 - v.p):

        S'_i = S_i + p_i [ (1-gamma)(p.S) + gamma (m + p^0)(v.S) ] / (a b)
                   + v_i (gamma/b) [ gamma (m - p^0)(v.S)/(1+gamma)
                                     + 2 gamma (v.p)(p.S)/(a (1+gamma)) - p.S ]

    evaluated on the positive-energy shell with the S_i of spin_matrix.
    Componentwise equal to applying the closed-form Wigner rotation to the
    spin triple.  Returns shape (3, 2, 2).
    """
    v3 = np.asarray(v3, dtype=float)
    p4 = np.asarray(p4, dtype=float)
    m = check_mass(m)
    b2 = float(v3 @ v3)
    if b2 >= 1.0:
        raise ValueError(f"superluminal velocity: |v| = {np.sqrt(b2):.6f} >= 1")
    g = 1.0 / np.sqrt(1.0 - b2)
    p0, pv = p4[0], p4[1:]
    a = m + p0
    b = m + g * (p0 - v3 @ pv)
    s = np.stack([spin_matrix(i) for i in range(3)])
    p_dot_s = np.einsum("i,iab->ab", pv, s)
    v_dot_s = np.einsum("i,iab->ab", v3, s)
    p_term = ((1.0 - g) * p_dot_s + g * (m + p0) * v_dot_s) / (a * b)
    v_term = (g / b) * (g * (m - p0) * v_dot_s / (1.0 + g)
                        + 2.0 * g * (v3 @ pv) * p_dot_s / (a * (1.0 + g))
                        - p_dot_s)
    return s + np.einsum("i,ab->iab", pv, p_term) + np.einsum("i,ab->iab", v3, v_term)


def spin_transform_wigner(v3: np.ndarray, p4: np.ndarray, m: float) -> np.ndarray:
    """Spin matrices transformed by rotating the triple with R(v, p)."""
    R = wigner_rotation_closed(v3, p4, m)
    s = np.stack([spin_matrix(i) for i in range(3)])
    return np.einsum("ij,jab->iab", R, s)
