"""Bispinor amplitudes on both mass shells and their algebraic identities.

The amplitude v^eps(p) is the 4x2 matrix of bispinor components of the
sharp-momentum basis states with energy sign eps.  Closed form:

    v^eps(p) = [ I + (p^0 I + pvec.sigma)/m       ]
               [ eps (I + (p^0 I - pvec.sigma)/m) ] sigma_2 / (2 sqrt(1 + p^0/m))

It satisfies vbar^eps' v^eps = eps delta_{eps eps'} I_2, v^eps vbar^eps =
eps Lambda_eps(p), and p_mu gamma^mu v^eps = eps m v^eps.  Under a finite
transformation the columns mix with the transposed SU(2) Wigner matrix:
S(L) v^eps(p) D^T(R(L, p)) = v^eps(Lp), where the transpose implements the
summation over the first index of D when kets are relabelled.
"""
from __future__ import annotations

import numpy as np

from .clifford import GAMMA, GAMMA0, GAMMA5, PAULI
from .lorentz import bispinor_rep, standard_boost, su2_from_so3, wigner_rotation
from .minkowski import check_energy_sign, check_mass, on_shell, parity_flip

_SIGMA2 = PAULI[1]


def amplitude(eps: int, p4: np.ndarray, m: float) -> np.ndarray:
    """Bispinor amplitude v^eps(p), shape (4, 2)."""
    eps = check_energy_sign(eps)
    m = check_mass(m)
    p4 = np.asarray(p4, dtype=float)
    p0, pv = p4[0], p4[1:]
    pref = 1.0 / (2.0 * np.sqrt(1.0 + p0 / m))
    psig = np.einsum("i,iab->ab", pv, PAULI)
    eye = np.eye(2, dtype=complex)
    top = eye + (p0 * eye + psig) / m
    bottom = eps * (eye + (p0 * eye - psig) / m)
    return pref * np.vstack([top, bottom]) @ _SIGMA2


def amplitude_batch(eps: int, P: np.ndarray, m: float) -> np.ndarray:
    """Amplitudes for a batch of spatial momenta, shape (n, 4, 2)."""
    eps = check_energy_sign(eps)
    m = check_mass(m)
    P = np.asarray(P, dtype=float).reshape(-1, 3)
    p0 = np.sqrt(m * m + np.einsum("ni,ni->n", P, P))
    psig = np.einsum("ni,iab->nab", P, PAULI)
    eye = np.eye(2, dtype=complex)
    top = eye + (p0[:, None, None] * eye + psig) / m
    bottom = eps * (eye + (p0[:, None, None] * eye - psig) / m)
    pref = 1.0 / (2.0 * np.sqrt(1.0 + p0 / m))
    return pref[:, None, None] * np.concatenate([top, bottom], axis=1) @ _SIGMA2


def dirac_bar(M: np.ndarray) -> np.ndarray:
    """Dirac adjoint Mbar = M^+ gamma^0 (shape (k, 4) for a (4, k) input)."""
    return np.asarray(M).conj().T @ GAMMA0


def amplitude_via_boost(eps: int, p4: np.ndarray, m: float) -> np.ndarray:
    """Amplitude generated from the rest frame, S(L_p) v^eps(q) with q = (m, 0).

    Agrees with the closed form because the standard boost has trivial
    Wigner rotation.
    """
    q = on_shell(m, np.zeros(3))
    return bispinor_rep(standard_boost(p4, m)) @ amplitude(eps, q, m)


def weinberg_residual(L: np.ndarray, eps: int, p4: np.ndarray, m: float) -> float:
    """Max-entry residual of S(L) v^eps(p) D^T(R(L, p)) = v^eps(Lp).

    The SU(2) lift of the Wigner rotation is defined up to a global sign;
    the residual is evaluated for both signs and the smaller one returned.
    """
    L = np.asarray(L, dtype=float)
    R3, _ = wigner_rotation(L, p4, m)
    D = su2_from_so3(R3)
    moved = bispinor_rep(L) @ amplitude(eps, p4, m)
    target = amplitude(eps, L @ p4, m)
    return min(float(np.abs(moved @ (sign * D).T - target).max()) for sign in (1.0, -1.0))


def parity_residual(eps: int, p4: np.ndarray, m: float) -> float:
    """Max-entry residual of eps v^eps(p) = gamma^0 v^eps(p^pi) (unit parity phase)."""
    eps = check_energy_sign(eps)
    lhs = eps * amplitude(eps, p4, m)
    rhs = GAMMA0 @ amplitude(eps, parity_flip(p4), m)
    return float(np.abs(lhs - rhs).max())


def sandwich(eps: int, p4: np.ndarray, m: float, M: np.ndarray) -> np.ndarray:
    """2x2 contraction vbar^eps(p) M v^eps(p)."""
    v = amplitude(eps, p4, m)
    return dirac_bar(v) @ np.asarray(M, dtype=complex) @ v


def sandwich_formulas(p4: np.ndarray, m: float) -> dict[str, np.ndarray]:
    """Closed forms for the five reference contractions, independent of eps:

        vbar gamma^mu v          = (p^mu / m) I
        vbar gamma^5 v           = 0
        vbar gamma^0 gamma^5 v   = -(pvec.sigma^T) / m
        vbar gamma^k gamma^5 v   = -(m sigma^T_k + p_k (pvec.sigma^T)/(m + p^0)) / m
        vbar gamma^0 (pvec.gammavec) v = 0

    Returned as target matrices keyed by formula name.
    """
    m = check_mass(m)
    p4 = np.asarray(p4, dtype=float)
    p0, pv = p4[0], p4[1:]
    eye = np.eye(2, dtype=complex)
    psig_t = np.einsum("i,iba->ab", pv, PAULI)  # pvec . sigma^T
    out = {f"gamma{mu}": (p4[mu] / m) * eye for mu in range(4)}
    out["gamma5"] = np.zeros((2, 2), dtype=complex)
    out["gamma0_gamma5"] = -psig_t / m
    for k in range(3):
        out[f"gamma{k + 1}_gamma5"] = -(m * PAULI[k].T + pv[k] * psig_t / (m + p0)) / m
    out["gamma0_pslash3"] = np.zeros((2, 2), dtype=complex)
    return out


def sandwich_formula_residual(eps: int, p4: np.ndarray, m: float) -> float:
    """Worst max-entry residual over all five closed-form contractions."""
    p4 = np.asarray(p4, dtype=float)
    targets = sandwich_formulas(p4, m)
    pv_gamma = np.einsum("i,iab->ab", p4[1:], GAMMA[1:])
    worst = 0.0
    for mu in range(4):
        worst = max(worst, float(np.abs(sandwich(eps, p4, m, GAMMA[mu]) - targets[f"gamma{mu}"]).max()))
        key = "gamma0_gamma5" if mu == 0 else f"gamma{mu}_gamma5"
        worst = max(worst, float(np.abs(sandwich(eps, p4, m, GAMMA[mu] @ GAMMA5) - targets[key]).max()))
    worst = max(worst, float(np.abs(sandwich(eps, p4, m, GAMMA5) - targets["gamma5"]).max()))
    worst = max(worst, float(np.abs(sandwich(eps, p4, m, GAMMA0 @ pv_gamma) - targets["gamma0_pslash3"]).max()))
    return worst
