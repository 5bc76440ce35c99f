"""Dirac gamma matrices, energy projectors, and the parity conjugation.

The gamma matrices are held in the chiral-like representation

    gamma^0 = [[0, I], [I, 0]],   gamma^k = [[0, -sigma_k], [sigma_k, 0]],
    gamma^5 = diag(I, -I),

with entries drawn from {0, +-1, +-i}, so the Clifford algebra
gamma^mu gamma^nu + gamma^nu gamma^mu = 2 g^{mu nu} I holds exactly in
floating point.  The spin generators are Sigma^{mu nu} = (i/4)
[gamma^mu, gamma^nu].
"""
from __future__ import annotations

import numpy as np

from .minkowski import METRIC, check_energy_sign, check_mass

_I2 = np.eye(2, dtype=complex)
_Z2 = np.zeros((2, 2), dtype=complex)

#: Pauli matrices, shape (3, 2, 2).
PAULI = np.stack([
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
])

#: Transposed Pauli matrices (sigma_2 flips sign under transposition).
PAULI_T = np.stack([PAULI[0].T.copy(), PAULI[1].T.copy(), PAULI[2].T.copy()])

GAMMA0 = np.block([[_Z2, _I2], [_I2, _Z2]])
GAMMA5 = np.block([[_I2, _Z2], [_Z2, -_I2]])

#: gamma^mu stacked over mu = 0..3, shape (4, 4, 4).
GAMMA = np.stack([
    GAMMA0,
    np.block([[_Z2, -PAULI[0]], [PAULI[0], _Z2]]),
    np.block([[_Z2, -PAULI[1]], [PAULI[1], _Z2]]),
    np.block([[_Z2, -PAULI[2]], [PAULI[2], _Z2]]),
])


def _sigma_tensor() -> np.ndarray:
    out = np.zeros((4, 4, 4, 4), dtype=complex)
    for mu in range(4):
        for nu in range(4):
            out[mu, nu] = 0.25j * (GAMMA[mu] @ GAMMA[nu] - GAMMA[nu] @ GAMMA[mu])
    return out


#: Sigma^{mu nu} = (i/4)[gamma^mu, gamma^nu], shape (4, 4, 4, 4).
SIGMA = _sigma_tensor()


def slash(p4: np.ndarray) -> np.ndarray:
    """Feynman slash p_mu gamma^mu = p^0 gamma^0 - pvec . gammavec."""
    p4 = np.asarray(p4, dtype=float)
    return np.einsum("m,mab->ab", METRIC @ p4, GAMMA)


def energy_projector(eps: int, p4: np.ndarray, m: float) -> np.ndarray:
    """Covariant projector onto the energy-sign-eps solutions,

        Lambda_eps(p) = (m I + eps p_mu gamma^mu) / (2 m).

    Idempotent, with Lambda_+ + Lambda_- = I and trace 2 each.
    """
    eps = check_energy_sign(eps)
    m = check_mass(m)
    return (m * np.eye(4, dtype=complex) + eps * slash(p4)) / (2.0 * m)


def parity_bispinor() -> np.ndarray:
    """Bispinor realization of space inversion with unit phase: S(P) = gamma^0.

    Conjugation sends gamma^0 -> gamma^0 and gamma^k -> -gamma^k, matching
    the vector-realization parity matrix.
    """
    return GAMMA0.copy()
