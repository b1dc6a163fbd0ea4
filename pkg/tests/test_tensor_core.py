import itertools
from math import comb, factorial

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from reflectron import (
    DimensionBudgetError,
    PureState,
    cyclic_permutation,
    haar_random_state,
    haar_random_unitary,
    partial_trace,
    permutation_operator,
    sym_dim,
    symmetric_encoder,
    symmetric_projector,
)
from reflectron.tensor_core import cyclic_perm_tuple, random_permutation


def test_permutation_identity():
    op = permutation_operator((0, 1), 2)
    assert np.abs(op.entries - np.eye(4)).max() == 0


def test_permutation_swap_defining_property():
    swap = permutation_operator((1, 0), 2).entries
    ket01 = np.zeros(4)
    ket01[1] = 1  # |01>
    ket10 = np.zeros(4)
    ket10[2] = 1  # |10>
    assert np.abs(swap @ ket01 - ket10).max() == 0


def test_permutation_cycle_direct_bookkeeping():
    # cycle pushing right: |100> -> |010>
    op = permutation_operator(cyclic_perm_tuple(3), 2).entries
    ket100 = np.zeros(8)
    ket100[4] = 1
    ket010 = np.zeros(8)
    ket010[2] = 1
    assert np.abs(op @ ket100 - ket010).max() == 0
    # brute-force oracle: compare against explicit index relabeling
    for x in range(8):
        bits = [(x >> (2 - s)) & 1 for s in range(3)]
        moved = [0] * 3
        for s in range(3):
            moved[(s + 1) % 3] = bits[s]
        y = sum(b << (2 - s) for s, b in enumerate(moved))
        assert op[y, x] == 1


def test_permutation_homomorphism():
    rng = np.random.default_rng(3)
    for k, d in [(3, 2), (4, 2), (5, 2), (3, 3), (4, 3)]:
        sigma = random_permutation(k, rng)
        tau = random_permutation(k, rng)
        combined = tuple(sigma[tau[s]] for s in range(k))
        lhs = permutation_operator(sigma, d).entries @ permutation_operator(tau, d).entries
        rhs = permutation_operator(combined, d).entries
        assert np.abs(lhs - rhs).max() < 1e-12


def test_cyclic_swap_and_order():
    assert np.abs(cyclic_permutation(2, 2).entries - permutation_operator((1, 0), 2).entries).max() == 0
    C = cyclic_permutation(3, 2).entries
    assert np.abs(np.linalg.matrix_power(C, 3) - np.eye(8)).max() < 1e-13


def test_cyclic_fixes_symmetric_states():
    psi = haar_random_state(2, 11)
    vec = psi.tensor_power(3).amplitudes
    C = cyclic_permutation(3, 2).entries
    assert np.abs(C @ vec - vec).max() < 1e-12


def test_partial_trace_product_states():
    rng = np.random.default_rng(0)
    rho = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    sigma = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    joint = np.kron(rho, sigma)
    kept = partial_trace(joint, keep=[0], d=2, factors=2).entries
    assert np.abs(kept - rho * np.trace(sigma)).max() < 1e-12
    other = partial_trace(joint, keep=[1], d=2, factors=2).entries
    assert np.abs(other - sigma * np.trace(rho)).max() < 1e-12


def test_partial_trace_maximally_entangled():
    bell = np.zeros(4)
    bell[0] = bell[3] = 1 / np.sqrt(2)
    rho = np.outer(bell, bell)
    red = partial_trace(rho, keep=[1], d=2, factors=2).entries
    assert np.abs(red - np.eye(2) / 2).max() < 1e-12


def test_partial_trace_preserves_trace_and_validates():
    rng = np.random.default_rng(1)
    X = rng.normal(size=(27, 27)) + 1j * rng.normal(size=(27, 27))
    red = partial_trace(X, keep=[0, 2], d=3, factors=3)
    assert abs(np.trace(red.entries) - np.trace(X)) < 1e-12
    assert red.dim == 9
    with pytest.raises(ValueError):
        partial_trace(X, keep=[3], d=3, factors=3)


@pytest.mark.parametrize("n,d,expected", [(2, 2, 3), (3, 2, 4), (0, 5, 1), (4, 3, 15)])
def test_sym_dim(n, d, expected):
    assert sym_dim(n, d) == expected


def test_sym_dim_stars_and_bars_oracle():
    # brute-force enumeration of sorted multi-indices
    for n, d in [(2, 2), (3, 3), (4, 3), (5, 2)]:
        count = sum(
            1
            for tup in itertools.product(range(d), repeat=n)
            if list(tup) == sorted(tup)
        )
        assert sym_dim(n, d) == count


def test_symmetric_projector_properties():
    for n, d in [(2, 2), (3, 2), (2, 3)]:
        P = symmetric_projector(n, d).entries
        assert np.abs(P @ P - P).max() < 1e-11
        assert np.abs(P - P.conj().T).max() < 1e-12
        assert abs(np.trace(P) - comb(n + d - 1, d - 1)) < 1e-10


def test_symmetric_projector_fixes_power_states():
    psi = haar_random_state(3, 5)
    vec = psi.tensor_power(2).amplitudes
    P = symmetric_projector(2, 3).entries
    assert np.abs(P @ vec - vec).max() < 1e-12


def test_symmetric_projector_equals_group_average():
    for n, d in [(2, 2), (3, 2), (4, 2), (3, 3)]:
        acc = np.zeros((d**n, d**n), dtype=complex)
        for perm in itertools.permutations(range(n)):
            acc += permutation_operator(perm, d).entries
        acc /= factorial(n)
        assert np.abs(acc - symmetric_projector(n, d).entries).max() < 1e-11


def test_symmetric_encoder_two_term_column():
    enc = symmetric_encoder(2, 2).entries
    # sorted multi-indices in lex order: (0,0), (0,1), (1,1)
    expected = np.zeros(4)
    expected[1] = expected[2] = 1 / np.sqrt(2)
    assert np.abs(enc[:, 1] - expected).max() < 1e-12


def test_symmetric_encoder_isometry_and_range():
    for n, d in [(2, 2), (3, 2), (2, 3), (3, 3)]:
        enc = symmetric_encoder(n, d).entries
        assert enc.shape[1] == sym_dim(n, d)
        assert np.abs(enc.conj().T @ enc - np.eye(enc.shape[1])).max() < 1e-10
        P = symmetric_projector(n, d).entries
        assert np.abs(enc @ enc.conj().T - P).max() < 1e-11


def test_symmetric_encoder_power_state_in_range():
    psi = haar_random_state(2, 9)
    vec = psi.tensor_power(3).amplitudes
    enc = symmetric_encoder(3, 2).entries
    assert abs(np.linalg.norm(enc.conj().T @ vec) - 1.0) < 1e-10


def test_haar_state_and_unitary():
    psi = haar_random_state(4, 0)
    assert abs(np.linalg.norm(psi.amplitudes) - 1.0) < 1e-12
    U = haar_random_unitary(4, 0).entries
    assert np.abs(U @ U.conj().T - np.eye(4)).max() < 1e-10
    # determinism per seed
    again = haar_random_unitary(4, 0).entries
    assert np.abs(U - again).max() == 0


def test_haar_moment():
    rng = np.random.default_rng(42)
    d = 3
    samples = 100_000
    vals = np.empty(samples)
    for k in range(samples):
        vals[k] = abs(haar_random_unitary(d, rng).entries[0, 0]) ** 2
    stderr = vals.std() / np.sqrt(samples)
    assert abs(vals.mean() - 1 / d) < 3 * stderr


def test_pure_state_validation():
    with pytest.raises(ValueError):
        PureState(np.array([1.0, 1.0]), 2, 1)
    with pytest.raises(ValueError):
        PureState(np.array([1.0, 0.0, 0.0]), 2, 1)


def test_budget_overflow():
    with pytest.raises(DimensionBudgetError):
        permutation_operator(tuple(range(24)), 2)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=2, max_value=4), st.integers(min_value=1, max_value=4))
def test_trace_norm_tensor_power_states(d, n):
    # || psi1^n - psi2^n ||_1 = 2 sqrt(1 - cos^{2n} phi)
    rng = np.random.default_rng(d * 100 + n)
    psi1 = haar_random_state(d, rng)
    psi2 = haar_random_state(d, rng)
    cosphi = abs(np.vdot(psi1.amplitudes, psi2.amplitudes))
    diff = psi1.tensor_power(n).projector() - psi2.tensor_power(n).projector()
    tn = np.sum(np.abs(np.linalg.eigvalsh(diff)))
    assert abs(tn - 2 * np.sqrt(1 - cosphi ** (2 * n))) < 1e-9
