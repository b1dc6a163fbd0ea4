from math import comb, pi

import numpy as np
import pytest

from reflectron import (
    CyclicElement,
    MeasureReflectChannel,
    NonChannelElementError,
    choi,
    dense_reflection_channel,
    effective_channel,
    group_twirl_state,
    haar_random_state,
    lmr_coeffs,
    lmr_sequential_dense,
    mr_channel,
    r_theta_coeffs,
    reflection_channel,
    rotation_channel,
)
from reflectron.channels import orthonormal_frame


def random_matrix(d, rng):
    return rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))


def stabilizer_unitary(psi, rng):
    """Random unitary fixing psi up to phase: psi block + Haar on the complement."""
    v = psi.amplitudes
    d = v.size
    frame = orthonormal_frame(v)
    z = (rng.normal(size=(d - 1, d - 1)) + 1j * rng.normal(size=(d - 1, d - 1))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    q = q * (np.diag(r) / np.abs(np.diag(r)))[None, :]
    gamma = np.exp(1j * rng.uniform(0, 2 * pi))
    return gamma * np.outer(v, v.conj()) + frame @ q @ frame.conj().T


def test_rotation_zero_angle_identity():
    rng = np.random.default_rng(0)
    psi = haar_random_state(3, rng)
    X = random_matrix(3, rng)
    assert np.abs(rotation_channel(psi, 0.0, X).entries - X).max() < 1e-12


def test_reflection_fixes_axis():
    psi = haar_random_state(2, 1)
    P = psi.projector()
    assert np.abs(reflection_channel(psi, P).entries - P).max() < 1e-12


def test_reflection_flips_cross_terms():
    psi = haar_random_state(3, 2)
    perp = orthonormal_frame(psi.amplitudes)[:, 0]
    cross = np.outer(perp, psi.amplitudes.conj())  # |psi_i><psi|
    out = reflection_channel(psi, cross).entries
    assert np.abs(out + cross).max() < 1e-12


def test_dense_channel_identity_element():
    rng = np.random.default_rng(3)
    psi = haar_random_state(2, rng)
    X = random_matrix(2, rng)
    out = dense_reflection_channel(CyclicElement.identity(3), psi, X).entries
    assert np.abs(out - X).max() < 1e-12


def test_dense_channel_swap_replaces_with_program():
    rng = np.random.default_rng(4)
    psi = haar_random_state(2, rng)
    X = random_matrix(2, rng)
    out = dense_reflection_channel(CyclicElement(1, [0.0, 1.0]), psi, X).entries
    assert np.abs(out - np.trace(X) * psi.projector()).max() < 1e-12


@pytest.mark.parametrize("n,d", [(1, 2), (2, 2), (4, 2), (6, 2), (1, 3), (2, 3), (3, 3), (2, 4)])
def test_effective_matches_dense(n, d):
    rng = np.random.default_rng(n * 10 + d)
    psi = haar_random_state(d, rng)
    X = random_matrix(d, rng)
    for element in (
        r_theta_coeffs(n, rng.uniform(0, 2 * pi)),
        lmr_coeffs(rng.uniform(0, pi, size=n)),
    ):
        dense = dense_reflection_channel(element, psi, X).entries
        closed = effective_channel(element, psi)(X)
        assert np.abs(dense - closed).max() < 1e-10


def test_effective_matches_dense_exhaustive_small_region():
    # every (n, d) with d^{n+1} <= 2^12, three element families each; the
    # full 2^16 sweep runs the same comparison and is reported in the docs
    rng = np.random.default_rng(77)
    from reflectron import inverse_fourier

    worst = 0.0
    d = 2
    while d * d <= 2**12:
        n = 1
        while d ** (n + 1) <= 2**12:
            psi = haar_random_state(d, rng)
            X = random_matrix(d, rng)
            for element in (
                r_theta_coeffs(n, rng.uniform(0, 2 * pi)),
                lmr_coeffs(rng.uniform(0, pi, size=n)),
                inverse_fourier(np.exp(1j * rng.uniform(0, 2 * pi, size=n + 1))),
            ):
                dense = dense_reflection_channel(element, psi, X).entries
                closed = effective_channel(element, psi)(X)
                worst = max(worst, np.abs(dense - closed).max())
            n += 1
        d += 1
    assert worst < 1e-10


def test_effective_matches_dense_large_boundary():
    # largest qubit instance inside the d^{n+1} <= 2^16 verification regime
    rng = np.random.default_rng(99)
    psi = haar_random_state(2, rng)
    X = random_matrix(2, rng)
    element = r_theta_coeffs(15, 2.1)
    dense = dense_reflection_channel(element, psi, X).entries
    closed = effective_channel(element, psi)(X)
    assert np.abs(dense - closed).max() < 1e-10


def test_effective_identity_and_swap_cases():
    rng = np.random.default_rng(5)
    psi = haar_random_state(2, rng)
    X = random_matrix(2, rng)
    ident = effective_channel(r_theta_coeffs(3, 0.0), psi)
    assert np.abs(ident(X) - X).max() < 1e-12
    swap = effective_channel(CyclicElement(1, [0.0, 1.0]), psi)
    assert np.abs(swap(X) - np.trace(X) * psi.projector()).max() < 1e-12


def test_effective_trace_preserving():
    rng = np.random.default_rng(6)
    psi = haar_random_state(3, rng)
    for element in (r_theta_coeffs(5, 1.2), lmr_coeffs(rng.uniform(0, pi, size=5))):
        chan = effective_channel(element, psi)
        X = random_matrix(3, rng)
        assert abs(np.trace(chan(X)) - np.trace(X)) < 1e-11


def test_non_channel_element_rejected():
    psi = haar_random_state(2, 7)
    bad = CyclicElement(1, [0.5, 0.5])
    with pytest.raises(NonChannelElementError):
        effective_channel(bad, psi)
    with pytest.raises(NonChannelElementError):
        dense_reflection_channel(bad, psi, np.eye(2))


def test_lmr_sequential_trivialities():
    rng = np.random.default_rng(8)
    psi = haar_random_state(2, rng)
    X = random_matrix(2, rng)
    assert np.abs(lmr_sequential_dense([0.0, 0.0], psi, X).entries - X).max() < 1e-12
    out = lmr_sequential_dense([pi / 2], psi, X).entries
    assert np.abs(out - np.trace(X) * psi.projector()).max() < 1e-12


def test_lmr_sequential_matches_effective():
    rng = np.random.default_rng(9)
    for trial in range(20):
        n = int(rng.integers(1, 9))
        d = int(rng.integers(2, 4))
        psi = haar_random_state(d, rng)
        X = random_matrix(d, rng)
        thetas = rng.uniform(0, pi, size=n)
        seq = lmr_sequential_dense(thetas, psi, X).entries
        closed = effective_channel(lmr_coeffs(thetas), psi)(X)
        assert np.abs(seq - closed).max() < 1e-10


def test_mr_trace_preserving_and_d2_value():
    rng = np.random.default_rng(10)
    psi = haar_random_state(2, rng)
    X = random_matrix(2, rng)
    out = mr_channel(psi, 4, X).entries
    assert abs(np.trace(out) - np.trace(X)) < 1e-11


def test_mr_covariance():
    rng = np.random.default_rng(11)
    psi = haar_random_state(3, rng)
    chan = MeasureReflectChannel(psi, 3)
    U = stabilizer_unitary(psi, rng)
    X = random_matrix(3, rng)
    lhs = U @ chan(X) @ U.conj().T
    rhs = chan(U @ X @ U.conj().T)
    assert np.abs(lhs - rhs).max() < 1e-10


def test_effective_covariance():
    rng = np.random.default_rng(12)
    psi = haar_random_state(3, rng)
    chan = effective_channel(r_theta_coeffs(4, 1.9), psi)
    U = stabilizer_unitary(psi, rng)
    X = random_matrix(3, rng)
    lhs = U @ chan(X) @ U.conj().T
    rhs = chan(U @ X @ U.conj().T)
    assert np.abs(lhs - rhs).max() < 1e-10


def test_choi_identity_channel():
    ident = lambda X: X
    J = choi(ident, 2).entries
    eig = np.linalg.eigvalsh(J)
    assert abs(eig[-1] - 2.0) < 1e-12
    assert np.abs(eig[:-1]).max() < 1e-12


def test_choi_swap_channel():
    psi = haar_random_state(2, 13)
    chan = effective_channel(CyclicElement(1, [0.0, 1.0]), psi)
    J = choi(chan, 2).entries
    assert np.abs(J - np.kron(np.eye(2), psi.projector())).max() < 1e-12


def test_choi_complete_positivity_random_elements():
    rng = np.random.default_rng(14)
    psi = haar_random_state(2, rng)
    for trial in range(10):
        n = int(rng.integers(1, 7))
        phases = np.exp(1j * rng.uniform(0, 2 * pi, size=n + 1))
        from reflectron import inverse_fourier

        chan = effective_channel(inverse_fourier(phases), psi)
        eig = np.linalg.eigvalsh(choi(chan, 2).entries)
        assert eig.min() > -1e-9
        # partial trace over the output slot returns the identity
        J = choi(chan, 2).entries
        red = np.trace(J.reshape(2, 2, 2, 2), axis1=1, axis2=3)
        assert np.abs(red - np.eye(2)).max() < 1e-10


def test_effective_channel_json():
    import json

    psi = haar_random_state(2, 20)
    chan = effective_channel(r_theta_coeffs(2, 1.0), psi)
    payload = json.loads(chan.to_json())
    assert set(payload) == {"d", "psi", "a_x", "a_px", "a_xp", "a_tr", "a_trp"}
    assert payload["d"] == 2


def test_group_twirl_fixed_points():
    rng = np.random.default_rng(15)
    psi = haar_random_state(3, rng)
    P = psi.projector()
    assert np.abs(group_twirl_state(P, psi).entries - P).max() < 1e-12
    assert np.abs(group_twirl_state(np.eye(3) / 3, psi).entries - np.eye(3) / 3).max() < 1e-12


def test_group_twirl_output_in_commutant():
    rng = np.random.default_rng(16)
    psi = haar_random_state(3, rng)
    rho = random_matrix(3, rng)
    rho = rho @ rho.conj().T
    rho /= np.trace(rho)
    out = group_twirl_state(rho, psi).entries
    for _ in range(5):
        U = stabilizer_unitary(psi, rng)
        assert np.abs(U @ out - out @ U).max() < 1e-10


def test_mr_choi_positive_and_trace_preserving():
    for d, n in [(2, 1), (2, 4), (3, 2), (3, 7)]:
        psi = haar_random_state(d, d * 10 + n)
        chan = MeasureReflectChannel(psi, n)
        J = choi(chan, d).entries
        assert np.linalg.eigvalsh(J).min() > -1e-9
        red = np.trace(J.reshape(d, d, d, d), axis1=1, axis2=3)
        assert np.abs(red - np.eye(d)).max() < 1e-11


def test_mr_tr_pn_ratio_consistency():
    # the closed form only sees dimension ratios; spot check them
    d, n = 3, 5
    T = lambda m: comb(m + d - 1, d - 1)
    assert T(n + 2) * (n + 2) == T(n + 1) * (n + d + 1)
