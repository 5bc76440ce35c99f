import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from diracspin.amplitudes import (amplitude, amplitude_batch, amplitude_via_boost, dirac_bar,
                                  parity_residual, sandwich, sandwich_formula_residual,
                                  sandwich_formulas, weinberg_residual)
from diracspin.clifford import GAMMA, GAMMA0, PAULI, energy_projector, slash
from diracspin.lorentz import random_lorentz, random_momentum
from diracspin.minkowski import on_shell

SQRT_HALF = np.sqrt(0.5)
# amplitudes at p = 0 (the sigma_2 pairing fixes the phase convention)
REST_PLUS = SQRT_HALF * np.vstack([PAULI[1], PAULI[1]])
REST_MINUS = SQRT_HALF * np.vstack([PAULI[1], -PAULI[1]])

coords = st.floats(-8, 8, allow_nan=False)


def test_rest_frame_frozen():
    p4 = on_shell(1.0, np.zeros(3))
    assert_allclose(amplitude(1, p4, 1.0), REST_PLUS, atol=1e-15)
    assert_allclose(amplitude(-1, p4, 1.0), REST_MINUS, atol=1e-15)


def test_rest_frame_mass_independent():
    # normalization vbar v = eps I makes the rest amplitude mass free
    p4 = on_shell(7.3, np.zeros(3))
    assert_allclose(amplitude(1, p4, 7.3), REST_PLUS, atol=1e-15)


@pytest.mark.parametrize("eps", [1, -1])
def test_orthonormality(eps, momenta):
    for p4 in momenta:
        v = amplitude(eps, p4, 1.0)
        assert_allclose(dirac_bar(v) @ v, eps * np.eye(2), atol=1e-12)
        w = amplitude(-eps, p4, 1.0)
        assert_allclose(dirac_bar(w) @ v, np.zeros((2, 2)), atol=1e-12)


@pytest.mark.parametrize("eps", [1, -1])
def test_projector_identity(eps, momenta):
    for p4 in momenta:
        v = amplitude(eps, p4, 1.0)
        assert_allclose(v @ dirac_bar(v), eps * energy_projector(eps, p4, 1.0), atol=1e-12)


def test_completeness(momenta):
    for p4 in momenta:
        total = sum(eps * amplitude(eps, p4, 1.0) @ dirac_bar(amplitude(eps, p4, 1.0))
                    for eps in (1, -1))
        assert_allclose(total, np.eye(4), atol=1e-12)


@pytest.mark.parametrize("eps", [1, -1])
def test_momentum_space_dirac_equation(eps, momenta):
    for p4 in momenta:
        v = amplitude(eps, p4, 1.0)
        assert_allclose(slash(p4) @ v, eps * 1.0 * v, atol=1e-11)


@pytest.mark.parametrize("eps", [1, -1])
def test_parity_relation(eps, momenta):
    for p4 in momenta:
        assert parity_residual(eps, p4, 1.0) < 1e-12


@given(coords, coords, coords, st.floats(0.1, 5.0))
@settings(max_examples=60)
def test_amplitude_normalization_property(px, py, pz, m):
    p4 = on_shell(m, [px, py, pz])
    v = amplitude(1, p4, m)
    assert np.abs(dirac_bar(v) @ v - np.eye(2)).max() < 1e-11


def test_batch_matches_scalar(rng):
    P = np.array([random_momentum(rng, 1.0) for _ in range(9)])
    batch = amplitude_batch(1, P[:, 1:], 1.0)
    assert batch.shape == (9, 4, 2)
    for k in range(9):
        assert_allclose(batch[k], amplitude(1, P[k], 1.0), atol=1e-14)


def test_construction_via_boost_agrees(momenta):
    # boosting the rest amplitude with the standard boost reproduces the
    # closed form, column by column including phases
    for p4 in momenta[:12]:
        for eps in (1, -1):
            assert_allclose(amplitude_via_boost(eps, p4, 1.0), amplitude(eps, p4, 1.0),
                            atol=1e-12)


def test_sandwich_gamma0_gives_energy_over_mass(momenta):
    for p4 in momenta[:10]:
        for eps in (1, -1):
            got = sandwich(eps, p4, 1.0, GAMMA0)
            assert_allclose(got, (p4[0] / 1.0) * np.eye(2), atol=1e-12)


def test_sandwich_formula_targets_cover_all_five(momenta):
    targets = sandwich_formulas(momenta[0], 1.0)
    assert set(targets) == {"gamma0", "gamma1", "gamma2", "gamma3", "gamma5",
                            "gamma0_gamma5", "gamma1_gamma5", "gamma2_gamma5",
                            "gamma3_gamma5", "gamma0_pslash3"}


@pytest.mark.parametrize("eps", [1, -1])
def test_sandwich_formulas_closed_forms(eps, momenta):
    for p4 in momenta:
        assert sandwich_formula_residual(eps, p4, 1.0) < 1e-12


def test_sandwich_formulas_eps_independent(momenta):
    # eps vbar M v is the same 2x2 for both shells, for every reference M
    p4 = momenta[3]
    for name, M in [("gamma0", GAMMA0), ("gamma2", GAMMA[2])]:
        del name
        assert_allclose(sandwich(1, p4, 1.0, M), sandwich(-1, p4, 1.0, M), atol=1e-12)


@pytest.mark.parametrize("eps", [1, -1])
def test_weinberg_transformation_law(eps, rng):
    worst = 0.0
    for _ in range(60):
        L = random_lorentz(rng)
        p4 = random_momentum(rng, 1.0)
        worst = max(worst, weinberg_residual(L, eps, p4, 1.0))
    assert worst < 1e-9


def test_weinberg_pure_rotation(rng):
    # rotations act without any boost mixing; the residual stays tiny
    from diracspin.lorentz import random_rotation
    R4 = np.eye(4)
    R4[1:, 1:] = random_rotation(rng)
    p4 = random_momentum(rng, 1.0)
    assert weinberg_residual(R4, 1, p4, 1.0) < 1e-12


def test_rejects_bad_energy_sign():
    p4 = on_shell(1.0, np.zeros(3))
    with pytest.raises(ValueError):
        amplitude(0, p4, 1.0)
    with pytest.raises(ValueError):
        amplitude(2, p4, 1.0)
