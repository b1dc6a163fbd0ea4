"""Elements sum_l c_l C^l of the cyclic subalgebra of C[S_{n+1}].

The forward transform is unnormalized, ct_k = sum_l exp(2 pi i l k/(n+1)) c_l,
so ct_0 is literally the coefficient sum; the inverse carries the 1/(n+1).
"""

import json
from dataclasses import dataclass
from math import acos

import numpy as np

from .config import ensure_operator_budget
from .tensor_core import DenseOperator, cyclic_perm_tuple, permutation_operator

UNITARY_TOL = 1e-10


@dataclass
class CyclicElement:
    n: int
    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex).reshape(-1)
        if self.coeffs.size != self.n + 1:
            raise ValueError(f"expected {self.n + 1} coefficients, got {self.coeffs.size}")

    @classmethod
    def identity(cls, n: int) -> "CyclicElement":
        c = np.zeros(n + 1, dtype=complex)
        c[0] = 1.0
        return cls(n, c)

    def to_json(self) -> str:
        pairs = [[float(c.real), float(c.imag)] for c in self.coeffs]
        return json.dumps({"n": self.n, "coeffs": pairs})

    @classmethod
    def from_json(cls, text: str) -> "CyclicElement":
        data = json.loads(text)
        coeffs = np.array([complex(re, im) for re, im in data["coeffs"]])
        return cls(int(data["n"]), coeffs)


def fourier(e: CyclicElement) -> np.ndarray:
    """ct_k = sum_l exp(+2 pi i l k / (n+1)) c_l."""
    return (e.n + 1) * np.fft.ifft(e.coeffs)


def inverse_fourier(ct: np.ndarray) -> CyclicElement:
    ct = np.asarray(ct, dtype=complex).reshape(-1)
    return CyclicElement(ct.size - 1, np.fft.fft(ct) / ct.size)


def is_unitary_element(e: CyclicElement, tol: float = UNITARY_TOL) -> bool:
    """True iff every DFT coefficient has unit modulus."""
    return bool(np.max(np.abs(np.abs(fourier(e)) - 1.0)) <= tol)


def is_channel_element(e: CyclicElement, tol: float = UNITARY_TOL) -> bool:
    """True iff the element defines a trace-preserving reflection channel.

    Needs |ct_0| = 1 and sum_l |c_l|^2 = 1. Unitary elements always qualify;
    the sequential-interaction coefficient families qualify without being
    unitary elements of the algebra.
    """
    ct0 = np.sum(e.coeffs)
    total = np.sum(np.abs(e.coeffs) ** 2)
    return bool(abs(abs(ct0) - 1.0) <= tol and abs(total - 1.0) <= tol)


def f_opt(n: int) -> float:
    """Cosine of the optimal rotation angle for reflections."""
    return -(n**3 + 6 * n**2 + 6 * n) / (n + 2) ** 3


def optimal_angle(n: int) -> float:
    return acos(f_opt(n))


def r_theta_coeffs(n: int, theta: float) -> CyclicElement:
    """Coefficients of I + (e^{i theta} - 1)/(n+1) sum_l C^l."""
    if n < 1:
        raise ValueError("need n >= 1")
    phase = np.exp(1j * theta)
    c = np.full(n + 1, (phase - 1.0) / (n + 1), dtype=complex)
    c[0] = (n + phase) / (n + 1)
    return CyclicElement(n, c)


def optimal_reflection_coeffs(n: int, sign: int = +1) -> CyclicElement:
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    return r_theta_coeffs(n, sign * optimal_angle(n))


def lmr_coeffs(thetas) -> CyclicElement:
    """Coefficients of the sequential swap-rotation algorithm."""
    thetas = np.asarray(thetas, dtype=float).reshape(-1)
    n = thetas.size
    if n < 1:
        raise ValueError("need at least one angle")
    c = np.zeros(n + 1, dtype=complex)
    cosines = np.cos(thetas)
    c[0] = np.prod(cosines)
    for l in range(1, n + 1):
        tail_phase = np.exp(1j * np.sum(thetas[l:]))
        c[l] = tail_phase * 1j * np.sin(thetas[l - 1]) * np.prod(cosines[: l - 1])
    return CyclicElement(n, c)


def dense_element(e: CyclicElement, d: int) -> DenseOperator:
    """Materialize sum_l c_l C^l on (C^d)^{x(n+1)}."""
    k = e.n + 1
    ensure_operator_budget(d**k, "dense cyclic element")
    acc = np.zeros((d**k, d**k), dtype=complex)
    for l, c in enumerate(e.coeffs):
        if c == 0:
            continue
        acc += c * permutation_operator(cyclic_perm_tuple(k, l), d).entries
    return DenseOperator(acc, d, k)
