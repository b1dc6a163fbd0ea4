from math import pi

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from reflectron import (
    CyclicElement,
    dense_element,
    f_opt,
    fourier,
    haar_random_state,
    inverse_fourier,
    is_channel_element,
    is_unitary_element,
    lmr_coeffs,
    optimal_angle,
    optimal_reflection_coeffs,
    r_theta_coeffs,
)


def test_fourier_identity_element():
    e = CyclicElement.identity(4)
    assert np.abs(fourier(e) - np.ones(5)).max() < 1e-12


def test_fourier_two_point_by_hand():
    e = CyclicElement(1, [0.0, 1.0])
    ct = fourier(e)
    assert np.abs(ct - np.array([1.0, -1.0])).max() < 1e-12


def test_fourier_zeroth_is_coefficient_sum():
    rng = np.random.default_rng(0)
    for n in (1, 3, 8, 20):
        c = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
        assert abs(fourier(CyclicElement(n, c))[0] - c.sum()) < 1e-10


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=64), st.integers(min_value=0, max_value=2**31))
def test_fourier_roundtrip(n, seed):
    rng = np.random.default_rng(seed)
    c = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
    back = inverse_fourier(fourier(CyclicElement(n, c)))
    assert np.abs(back.coeffs - c).max() < 1e-12


def test_is_unitary_element_cases():
    assert is_unitary_element(CyclicElement.identity(3))
    assert not is_unitary_element(CyclicElement(1, [0.5, 0.5]))
    rng = np.random.default_rng(1)
    for n in (1, 2, 5, 9):
        assert is_unitary_element(r_theta_coeffs(n, rng.uniform(0, 2 * pi)))


def test_unitary_flag_matches_dense_check():
    rng = np.random.default_rng(2)
    for n, d in [(1, 2), (2, 2), (3, 2), (2, 3)]:
        phases = np.exp(1j * rng.uniform(0, 2 * pi, size=n + 1))
        e = inverse_fourier(phases)
        assert is_unitary_element(e)
        V = dense_element(e, d).entries
        assert np.abs(V @ V.conj().T - np.eye(d ** (n + 1))).max() < 1e-10


def test_r_theta_identity_at_zero():
    e = r_theta_coeffs(5, 0.0)
    assert np.abs(e.coeffs - CyclicElement.identity(5).coeffs).max() < 1e-15


def test_r_theta_pi_values():
    e = r_theta_coeffs(3, pi)
    assert abs(e.coeffs[0] - 0.5) < 1e-14
    assert np.abs(e.coeffs[1:] + 0.5).max() < 1e-14


def test_r_theta_fourier_profile():
    theta = 1.37
    ct = fourier(r_theta_coeffs(6, theta))
    assert abs(ct[0] - np.exp(1j * theta)) < 1e-12
    assert np.abs(ct[1:] - 1.0).max() < 1e-12


def test_optimal_reflection_values():
    assert abs(f_opt(2) + 0.6875) < 1e-15
    assert abs(f_opt(1) + 13 / 27) < 1e-15
    for n in (1, 2, 5):
        assert is_unitary_element(optimal_reflection_coeffs(n))
        assert is_unitary_element(optimal_reflection_coeffs(n, -1))
    # the two signs are conjugate coefficient families
    plus = optimal_reflection_coeffs(3, +1).coeffs
    minus = optimal_reflection_coeffs(3, -1).coeffs
    assert np.abs(plus - minus.conj()).max() < 1e-14


def test_optimal_angle_branch():
    for n in (1, 4, 9):
        assert 0.0 <= optimal_angle(n) <= pi


def test_lmr_swap_case():
    e = lmr_coeffs([pi / 2])
    assert np.abs(e.coeffs - np.array([0.0, 1j])).max() < 1e-15


def test_lmr_identity_case():
    e = lmr_coeffs(np.zeros(4))
    assert np.abs(e.coeffs - CyclicElement.identity(4).coeffs).max() < 1e-15


def test_lmr_fourier_zero_phase():
    rng = np.random.default_rng(3)
    for n in (1, 3, 7):
        thetas = rng.uniform(0, pi, size=n)
        ct0 = fourier(lmr_coeffs(thetas))[0]
        assert abs(ct0 - np.exp(1j * thetas.sum())) < 1e-11


def test_lmr_is_channel_but_not_unitary_element():
    thetas = np.full(4, 0.9)
    e = lmr_coeffs(thetas)
    assert is_channel_element(e)
    assert not is_unitary_element(e)


def test_lmr_equal_angle_ratio_structure():
    theta = 0.7
    e = lmr_coeffs(np.full(6, theta))
    ratios = e.coeffs[2:-1] / e.coeffs[1:-2]
    expected = np.exp(-1j * theta) * np.cos(theta)
    assert np.abs(ratios - expected).max() < 1e-12
    assert np.abs(expected - 1.0) > 1e-3


def test_dense_element_identity():
    assert np.abs(dense_element(CyclicElement.identity(2), 2).entries - np.eye(8)).max() == 0


def test_dense_element_reflection_eigencheck():
    # n=1, theta=pi: I - (I + SWAP)/1... acts with eigenvalue -1 on |psi psi>
    e = r_theta_coeffs(1, pi)
    V = dense_element(e, 2).entries
    psi = haar_random_state(2, 7)
    vec = np.kron(psi.amplitudes, psi.amplitudes)
    assert np.abs(V @ vec + vec).max() < 1e-12


def test_unitary_elements_preserve_program_sector_norm():
    rng = np.random.default_rng(4)
    for n, d in [(2, 2), (3, 2), (2, 3)]:
        e = r_theta_coeffs(n, rng.uniform(0, pi))
        V = dense_element(e, d).entries
        phi = haar_random_state(d, rng)
        psi = haar_random_state(d, rng)
        vec = np.kron(phi.amplitudes, psi.tensor_power(n).amplitudes)
        assert abs(np.linalg.norm(V @ vec) - 1.0) < 1e-11


def test_lmr_restriction_is_isometric():
    # channel-normalized but non-unitary elements still act isometrically
    # on the physical phi x psi^n sector
    rng = np.random.default_rng(5)
    e = lmr_coeffs(rng.uniform(0, pi, size=3))
    V = dense_element(e, 2).entries
    phi = haar_random_state(2, rng)
    psi = haar_random_state(2, rng)
    vec = np.kron(phi.amplitudes, psi.tensor_power(3).amplitudes)
    assert abs(np.linalg.norm(V @ vec) - 1.0) < 1e-11


def test_json_roundtrip():
    e = lmr_coeffs([0.3, 1.1])
    back = CyclicElement.from_json(e.to_json())
    assert back.n == e.n
    assert np.abs(back.coeffs - e.coeffs).max() < 1e-15


def test_coefficient_length_validation():
    with pytest.raises(ValueError):
        CyclicElement(2, [1.0, 0.0])
