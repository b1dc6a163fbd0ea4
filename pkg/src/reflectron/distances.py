"""Trace-norm and diamond-distance computation.

Covariance reduces the diamond maximization to the one-parameter family
phi_p; every closed form here is cross-checked against a dense evaluation
on C^{d^2}, and a grid guards the analytic critical point.
"""

from dataclasses import dataclass

import numpy as np

from .config import ConsistencyError, NonChannelElementError
from .channels import (
    effective_channel,
    make_rotation_channel,
    orthonormal_frame,
)
from .cyclic import CyclicElement, is_channel_element
from .tensor_core import PureState, as_matrix, as_vector, haar_random_state

CLOSED_FORM_TOL = 1e-9
GRID_TOL = 1e-8

_DEFAULT_PSI_SEED = 2024


def trace_norm(X) -> float:
    """Sum of singular values."""
    return float(np.sum(np.linalg.svd(as_matrix(X), compute_uv=False)))


def _herm_trace_norm(X) -> float:
    return float(np.sum(np.abs(np.linalg.eigvalsh(X))))


@dataclass
class PhiP:
    """Worst-case probe sqrt(p)|0>|psi> + sqrt((1-p)/(d-1)) sum_i |i>|psi_i>."""

    p: float
    psi: PureState
    d: int

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")

    def vector(self) -> np.ndarray:
        v = self.psi.amplitudes
        d = self.d
        frame = orthonormal_frame(v)
        out = np.zeros(d * d, dtype=complex)
        out[:d] = np.sqrt(self.p) * v
        for i in range(1, d):
            out[i * d : (i + 1) * d] = np.sqrt((1.0 - self.p) / (d - 1)) * frame[:, i - 1]
        return out


def apply_reference_extended(channel, d: int, rho: np.ndarray) -> np.ndarray:
    """(I_R x channel)(rho) for a reference register of dimension d."""
    out = np.zeros_like(rho)
    for i in range(d):
        for j in range(d):
            blk = rho[i * d : (i + 1) * d, j * d : (j + 1) * d]
            out[i * d : (i + 1) * d, j * d : (j + 1) * d] = as_matrix(channel(blk))
    return out


def _element_invariants(e: CyclicElement, alpha: float):
    if not is_channel_element(e):
        raise NonChannelElementError(
            "distance formulas require a trace-preserving cyclic element"
        )
    c0 = e.coeffs[0]
    ct0 = np.sum(e.coeffs)
    gap = abs(ct0 * np.conj(c0) - np.exp(1j * alpha))
    return abs(c0) ** 2, gap


def _closed_distance_at_p(c0sq: float, gap: float, p) -> np.ndarray:
    a = (1.0 - p) * (1.0 - c0sq)
    return a + np.sqrt(a * a + 4.0 * p * (1.0 - p) * gap * gap)


def _dense_distance_at_p(e: CyclicElement, alpha: float, p: float, psi: PureState) -> float:
    chan = effective_channel(e, psi)
    rot = make_rotation_channel(psi, alpha)
    probe = PhiP(p, psi, psi.dim).vector()
    rho = np.outer(probe, probe.conj())
    diff = apply_reference_extended(rot, psi.dim, rho) - apply_reference_extended(
        chan, psi.dim, rho
    )
    return _herm_trace_norm(diff)


def _default_psi(d: int) -> PureState:
    return haar_random_state(d, _DEFAULT_PSI_SEED)


def distance_at_p(e: CyclicElement, alpha: float, p: float, psi=None, check: bool = True) -> float:
    """Trace distance on the phi_p probe, closed form checked densely.

    When ``check`` is set the value is recomputed on C^{d^2} through the
    effective channel; disagreement beyond 1e-9 raises ConsistencyError.
    """
    c0sq, gap = _element_invariants(e, alpha)
    value = float(_closed_distance_at_p(c0sq, gap, p))
    if check:
        state = _default_psi(2) if psi is None else _coerce_state(psi)
        dense = _dense_distance_at_p(e, alpha, p, state)
        if abs(dense - value) > CLOSED_FORM_TOL:
            raise ConsistencyError(
                f"phi_p distance mismatch: closed {value} vs dense {dense}"
            )
    return value


def _coerce_state(psi) -> PureState:
    if isinstance(psi, PureState):
        return psi
    v = as_vector(psi)
    return PureState(v, v.size, 1)


def diamond_covariant(e: CyclicElement, alpha: float, psi=None) -> tuple:
    """Diamond distance of the covariant channel pair, with its argmax p.

    The analytic critical point is used where it exists; a 1001-point grid
    plus golden-section refinement must agree within 1e-8.
    """
    c0sq, gap = _element_invariants(e, alpha)
    A = 1.0 - c0sq
    if gap > A:
        p_star = (gap - A) / (2.0 * gap - A)
        value = float(_closed_distance_at_p(c0sq, gap, p_star))
    else:
        p_star = 0.0
        value = 2.0 * A
    ps = np.linspace(0.0, 1.0, 1001)
    grid_vals = _closed_distance_at_p(c0sq, gap, ps)
    k = int(np.argmax(grid_vals))
    lo = ps[max(k - 1, 0)]
    hi = ps[min(k + 1, len(ps) - 1)]
    _, refined = _golden_max(lambda p: _closed_distance_at_p(c0sq, gap, p), lo, hi)
    if abs(refined - value) > GRID_TOL:
        raise ConsistencyError(
            f"diamond maximization mismatch: analytic {value} vs grid {refined}"
        )
    state = _default_psi(2) if psi is None else _coerce_state(psi)
    distance_at_p(e, alpha, p_star, psi=state, check=True)
    return value, p_star


def _golden_max(f, a, b, tol=1e-12):
    gr = (np.sqrt(5.0) - 1.0) / 2.0
    c = b - gr * (b - a)
    d = a + gr * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - gr * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + gr * (b - a)
            fd = f(d)
    mid = 0.5 * (a + b)
    return mid, float(f(mid))


def closed_form_rotation_distance(e: CyclicElement, alpha: float) -> float:
    """Two-case diamond distance formula for the rotation target."""
    if not 0.0 <= alpha <= np.pi + 1e-12:
        raise ValueError("alpha must lie in [0, pi]")
    c0sq, gap = _element_invariants(e, alpha)
    A = 1.0 - c0sq
    if gap <= A:
        return 2.0 * A
    return float(2.0 * gap * gap / (2.0 * gap + c0sq - 1.0))


def equal_angle_distance(n: int, alpha: float) -> float:
    """Diamond distance of the theta = alpha algorithm from the rotation."""
    if n < 1:
        raise ValueError("need n >= 1")
    if not 0.0 <= alpha <= np.pi + 1e-12:
        raise ValueError("alpha must lie in [0, pi]")
    if alpha == 0.0:
        return 0.0
    threshold = 2.0 * np.arcsin(min(1.0, (n + 1) / (2.0 * n)))
    if alpha >= threshold:
        return float(4.0 * n * (1.0 - np.cos(alpha)) / (n + 1) ** 2)
    return float(2.0 / ((n + 1) / np.sin(alpha / 2.0) - n))


def linear_bound(n: int, alpha: float) -> float:
    return 3.0 * alpha / n


def diamond_unitary_channels(U, V) -> float:
    """Diamond distance of two unitary channels via the spectral arc."""
    U = as_matrix(U)
    V = as_matrix(V)
    for M in (U, V):
        dev = np.abs(M @ M.conj().T - np.eye(M.shape[0])).max()
        if dev > 1e-10:
            raise ValueError(f"input is not unitary, deviation {dev}")
    eig = np.linalg.eigvals(U.conj().T @ V)
    phases = np.sort(np.mod(np.angle(eig), 2.0 * np.pi))
    gaps = np.diff(np.concatenate([phases, [phases[0] + 2.0 * np.pi]]))
    arc = 2.0 * np.pi - float(np.max(gaps))
    if arc >= np.pi:
        return 2.0
    return float(2.0 * np.sin(arc / 2.0))


def dense_diamond_covariant(channel_a, channel_b, psi, num_grid: int = 201) -> tuple:
    """Diamond distance of a covariant channel pair by maximizing over phi_p.

    Dense evaluation on C^{d^2}; used for channels without coefficient
    closed forms (the measure-and-reflect baseline).
    """
    psi = _coerce_state(psi)
    d = psi.dim

    def at_p(p):
        probe = PhiP(float(p), psi, d).vector()
        rho = np.outer(probe, probe.conj())
        diff = apply_reference_extended(channel_a, d, rho) - apply_reference_extended(
            channel_b, d, rho
        )
        return _herm_trace_norm(diff)

    grid = np.linspace(0.0, 1.0, num_grid)
    vals = [at_p(p) for p in grid]
    k = int(np.argmax(vals))
    lo = grid[max(k - 1, 0)]
    hi = grid[min(k + 1, num_grid - 1)]
    p_best, value = _golden_max(at_p, lo, hi)
    return value, p_best


def mr_diamond_distance(psi, n: int) -> tuple:
    """Diamond distance of measure-and-reflect from the exact reflection."""
    from .channels import MeasureReflectChannel, make_rotation_channel

    psi = _coerce_state(psi)
    chan = MeasureReflectChannel(psi, n)
    rot = make_rotation_channel(psi, np.pi)
    return dense_diamond_covariant(rot, chan, psi)


def sampled_diamond_lower_bound(channel_a, channel_b, d: int, trials: int, seed=0) -> float:
    """Max trace distance over Haar-random pure probes on C^{d^2}.

    A lower bound on the diamond distance, nondecreasing in ``trials``.
    """
    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(trials):
        v = rng.normal(size=d * d) + 1j * rng.normal(size=d * d)
        v /= np.linalg.norm(v)
        rho = np.outer(v, v.conj())
        diff = apply_reference_extended(channel_a, d, rho) - apply_reference_extended(
            channel_b, d, rho
        )
        best = max(best, _herm_trace_norm(diff))
    return best
