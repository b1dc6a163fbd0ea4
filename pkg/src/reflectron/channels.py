"""Channel constructions: rotations, approximate reflections, sequential
swap-interaction channels, and the measure-and-reflect baseline.

Every channel here acts on d x d operators and is covariant with respect to
the unitaries fixing its axis state, which is what the distance module's
one-parameter reduction relies on.
"""

import json
from dataclasses import dataclass
from math import comb

import numpy as np

from .config import NonChannelElementError, ensure_vector_budget
from .cyclic import CyclicElement, is_channel_element
from .tensor_core import DenseOperator, PureState, as_matrix, as_vector


def rotation_unitary(psi, alpha: float) -> np.ndarray:
    """e^{i alpha |psi><psi|} = I + (e^{i alpha} - 1) |psi><psi|."""
    v = as_vector(psi)
    return np.eye(v.size) + (np.exp(1j * alpha) - 1.0) * np.outer(v, v.conj())


def rotation_channel(psi, alpha: float, X) -> DenseOperator:
    v = as_vector(psi)
    R = rotation_unitary(v, alpha)
    return DenseOperator(R @ as_matrix(X) @ R.conj().T, v.size, 1)


def reflection_channel(psi, X) -> DenseOperator:
    return rotation_channel(psi, np.pi, X)


def make_rotation_channel(psi, alpha: float):
    """Callable form, X -> R X R^dag."""
    v = as_vector(psi)
    R = rotation_unitary(v, alpha)
    Rd = R.conj().T
    return lambda X: R @ as_matrix(X) @ Rd


def _require_channel_element(e: CyclicElement):
    if not is_channel_element(e):
        raise NonChannelElementError(
            "cyclic element is not trace-preserving (needs |ct_0| = 1 and "
            "sum |c_l|^2 = 1)"
        )


@dataclass
class EffectiveChannel:
    """Closed-form action of the approximate reflection channel on C^d.

    With s = ct_0 - c_0, q = sum_{l>=1} |c_l|^2 and P = |psi><psi|:

        E(X) = a_x X + a_px P X + a_xp X P + a_tr tr(X) P + a_trp tr(P X) P

    where a_x = |c_0|^2, a_px = conj(c_0) s, a_xp = c_0 conj(s), a_tr = q,
    a_trp = |s|^2 - q. Exact for any coefficient vector; trace-preserving
    exactly when the element is channel-normalized. Verified against the
    dense partial-trace oracle in the test suite.
    """

    d: int
    psi: PureState
    a_x: complex
    a_px: complex
    a_xp: complex
    a_tr: complex
    a_trp: complex

    def apply(self, X) -> np.ndarray:
        X = as_matrix(X)
        P = self.psi.projector()
        return (
            self.a_x * X
            + self.a_px * (P @ X)
            + self.a_xp * (X @ P)
            + self.a_tr * np.trace(X) * P
            + self.a_trp * np.trace(P @ X) * P
        )

    def __call__(self, X) -> np.ndarray:
        return self.apply(X)

    def to_json(self) -> str:
        def c2(z):
            return [float(np.real(z)), float(np.imag(z))]

        return json.dumps(
            {
                "d": self.d,
                "psi": [c2(a) for a in self.psi.amplitudes],
                "a_x": c2(self.a_x),
                "a_px": c2(self.a_px),
                "a_xp": c2(self.a_xp),
                "a_tr": c2(self.a_tr),
                "a_trp": c2(self.a_trp),
            }
        )


def effective_channel(e: CyclicElement, psi) -> EffectiveChannel:
    _require_channel_element(e)
    if not isinstance(psi, PureState):
        psi = PureState(as_vector(psi), as_vector(psi).size, 1)
    c0 = e.coeffs[0]
    s = np.sum(e.coeffs[1:])
    q = float(np.sum(np.abs(e.coeffs[1:]) ** 2))
    return EffectiveChannel(
        d=psi.dim,
        psi=psi,
        a_x=abs(c0) ** 2,
        a_px=np.conj(c0) * s,
        a_xp=c0 * np.conj(s),
        a_tr=q,
        a_trp=abs(s) ** 2 - q,
    )


def _cyclic_axes(k: int, power: int) -> list:
    # row axes for transpose: output slot t carries input slot (t - power) mod k
    return [(t - power) % k for t in range(k)]


def dense_reflection_channel(e: CyclicElement, psi, X) -> DenseOperator:
    """tr_P[ V (X x psi^{xn}) V^dag ] simulated on the full Hilbert space.

    V is applied as a sum of axis permutations of tensors, never materialized
    as a d^{n+1} square matrix, so the budget constrains only the vector
    dimension d^{n+1}.
    """
    _require_channel_element(e)
    v = as_vector(psi)
    d = v.size
    n = e.n
    ensure_vector_budget(d ** (n + 1), "reflection channel simulation")
    prog = v
    for _ in range(n - 1):
        prog = np.kron(prog, v)
    # W[:, a] = sum_l c_l C^l (|a> x psi^{xn}), a d^{n+1} x d isometry
    W = np.zeros((d ** (n + 1), d), dtype=complex)
    shape = (d,) * (n + 1)
    for a in range(d):
        base = np.zeros((d ** (n + 1),), dtype=complex)
        base[a * d**n : (a + 1) * d**n] = prog
        tensor = base.reshape(shape)
        acc = np.zeros(shape, dtype=complex)
        for l, c in enumerate(e.coeffs):
            if c == 0:
                continue
            acc += c * np.transpose(tensor, axes=_cyclic_axes(n + 1, l))
        W[:, a] = acc.reshape(-1)
    WX = (W @ as_matrix(X)).reshape(d, d**n * d)
    Wr = W.reshape(d, d**n * d)
    out = WX @ Wr.conj().T
    return DenseOperator(out, d, 1)


def lmr_sequential_dense(thetas, psi, X) -> DenseOperator:
    """Sequential e^{i theta SWAP} interactions with fresh program copies.

    Only two registers are alive at a time; each step couples the system to
    one copy of psi and traces the copy out.
    """
    v = as_vector(psi)
    d = v.size
    P = np.outer(v, v.conj())
    swap = np.zeros((d * d, d * d))
    for i in range(d):
        for j in range(d):
            swap[j * d + i, i * d + j] = 1.0
    rho = as_matrix(X)
    for theta in np.asarray(thetas, dtype=float).reshape(-1):
        U = np.cos(theta) * np.eye(d * d) + 1j * np.sin(theta) * swap
        sigma = U @ np.kron(rho, P) @ U.conj().T
        rho = np.trace(sigma.reshape(d, d, d, d), axis1=1, axis2=3)
    return DenseOperator(rho, d, 1)


def orthonormal_frame(psi) -> np.ndarray:
    """Deterministic orthonormal completion of psi, columns perpendicular.

    Gram-Schmidt seeded by the computational basis with the largest-overlap
    vector dropped; any frame works by covariance, this one is reproducible.
    """
    v = as_vector(psi)
    d = v.size
    drop = int(np.argmax(np.abs(v)))
    cols = [v]
    for i in range(d):
        if i == drop:
            continue
        w = np.zeros(d, dtype=complex)
        w[i] = 1.0
        for u in cols:
            w = w - u * np.vdot(u, w)
        cols.append(w / np.linalg.norm(w))
    return np.stack(cols[1:], axis=1)


class MeasureReflectChannel:
    """Closed-form measure-and-reflect channel for n program copies.

    The action on the psi-adapted operator basis involves only ratios of
    symmetric-subspace dimensions, so arbitrary n is cheap.
    """

    def __init__(self, psi, n: int):
        if n < 1:
            raise ValueError("need n >= 1")
        v = as_vector(psi)
        self.d = v.size
        if self.d < 2:
            raise ValueError("need d >= 2")
        self.n = n
        self.psi = PureState(v, self.d, 1)
        self.basis = np.concatenate([v[:, None], orthonormal_frame(v)], axis=1)
        T = lambda m: comb(m + self.d - 1, self.d - 1)
        t1 = T(n) / T(n + 1)
        t2 = T(n) / T(n + 2)
        self.diag_psi = 1.0 - 4 * t1 + 4 * t2
        self.spread = 4 * t2 / (n + 2)
        self.off_psi = 1.0 - 2 * (n + 2) * t1 / (n + 1) + 4 * t2 / (n + 2)
        self.off_perp = 1.0 - 4 * t1 / (n + 1) + 4 * t2 / ((n + 1) * (n + 2))
        self.spread_perp = 4 * t2 / ((n + 1) * (n + 2))

    def apply(self, X) -> np.ndarray:
        B = self.basis
        Y = B.conj().T @ as_matrix(X) @ B
        out = np.empty_like(Y)
        s1 = np.trace(Y[1:, 1:])
        out[0, 0] = self.diag_psi * Y[0, 0] + self.spread * s1
        out[0, 1:] = self.off_psi * Y[0, 1:]
        out[1:, 0] = self.off_psi * Y[1:, 0]
        out[1:, 1:] = self.off_perp * Y[1:, 1:]
        idx = np.arange(1, self.d)
        out[idx, idx] += self.spread * Y[0, 0] + self.spread_perp * s1
        return B @ out @ B.conj().T

    def __call__(self, X) -> np.ndarray:
        return self.apply(X)


def mr_channel(psi, n: int, X) -> DenseOperator:
    chan = MeasureReflectChannel(psi, n)
    return DenseOperator(chan.apply(X), chan.d, 1)


def choi(channel, d: int) -> DenseOperator:
    """sum_ij |i><j| x E(|i><j|)."""
    out = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            unit = np.zeros((d, d), dtype=complex)
            unit[i, j] = 1.0
            out[i * d : (i + 1) * d, j * d : (j + 1) * d] = as_matrix(channel(unit))
    return DenseOperator(out, d, 2)


def group_twirl_state(rho, psi) -> DenseOperator:
    """Average of rho over unitaries fixing psi up to phase."""
    v = as_vector(psi)
    d = v.size
    P = np.outer(v, v.conj())
    Pperp = np.eye(d) - P
    mat = as_matrix(rho)
    out = np.trace(P @ mat) * P + np.trace(Pperp @ mat) * Pperp / (d - 1)
    return DenseOperator(out, d, 1)
