"""Dense complex linear algebra over tensor-product spaces.

Conventions: factor 0 is the leftmost tensor slot (the system register);
the cyclic permutation pushes contents right, factor s -> factor s+1 mod k.
Permutations are tuples ``perm`` of length k with ``perm[s]`` the slot that
receives the contents of slot ``s``.
"""

from dataclasses import dataclass, field
from math import comb
from itertools import permutations as _all_permutations

import numpy as np

from .config import ensure_operator_budget, ensure_vector_budget

NORM_TOL = 1e-12
ISOMETRY_TOL = 1e-10


@dataclass
class PureState:
    """Normalized vector on (C^d)^{x factors}."""

    amplitudes: np.ndarray
    local_dim: int
    factors: int = 1

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        dim = self.local_dim**self.factors
        if self.amplitudes.size != dim:
            raise ValueError(
                f"state has {self.amplitudes.size} amplitudes, expected "
                f"{self.local_dim}^{self.factors} = {dim}"
            )
        norm = np.linalg.norm(self.amplitudes)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm {norm} deviates from 1 beyond {NORM_TOL}")

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def tensor_power(self, n: int) -> "PureState":
        vec = self.amplitudes
        for _ in range(n - 1):
            vec = np.kron(vec, self.amplitudes)
        ensure_vector_budget(vec.size, "tensor power state")
        return PureState(vec, self.local_dim, self.factors * n)


@dataclass
class DenseOperator:
    """Square complex matrix on (C^d)^{x factors}."""

    entries: np.ndarray
    local_dim: int
    factors: int = 1

    def __post_init__(self):
        self.entries = np.asarray(self.entries, dtype=complex)
        if self.entries.ndim != 2 or self.entries.shape[0] != self.entries.shape[1]:
            raise ValueError(f"operator must be square, got shape {self.entries.shape}")
        dim = self.local_dim**self.factors
        if self.entries.shape[0] != dim:
            raise ValueError(
                f"operator dimension {self.entries.shape[0]} != "
                f"{self.local_dim}^{self.factors}"
            )

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)


@dataclass
class Isometry:
    """Matrix with orthonormal columns, checked at construction."""

    entries: np.ndarray
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        self.entries = np.asarray(self.entries, dtype=complex)
        if self.check:
            g = self.entries.conj().T @ self.entries
            dev = np.abs(g - np.eye(g.shape[0])).max()
            if dev > ISOMETRY_TOL:
                raise ValueError(f"columns not orthonormal, deviation {dev}")

    @property
    def dim_in(self) -> int:
        return self.entries.shape[1]

    @property
    def dim_out(self) -> int:
        return self.entries.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)


def as_matrix(X) -> np.ndarray:
    if isinstance(X, DenseOperator):
        return X.entries
    return np.asarray(X, dtype=complex)


def as_vector(psi) -> np.ndarray:
    if isinstance(psi, PureState):
        return psi.amplitudes
    return np.asarray(psi, dtype=complex).reshape(-1)


def permute_vector(perm, d: int, vec: np.ndarray) -> np.ndarray:
    """Apply the permutation operator to a vector without materializing it.

    Output slot t carries input slot perm^{-1}(t), so the transpose axes are
    the inverse permutation.
    """
    k = len(perm)
    inv = np.argsort(np.asarray(perm))
    return np.transpose(vec.reshape((d,) * k), axes=inv).reshape(-1)


def permutation_operator(perm, d: int) -> DenseOperator:
    """0/1 matrix sending |i_0 ... i_{k-1}> to the permuted basis ket."""
    perm = tuple(perm)
    k = len(perm)
    if sorted(perm) != list(range(k)):
        raise ValueError(f"{perm} is not a permutation of 0..{k - 1}")
    if d < 2 or k < 1:
        raise ValueError("need d >= 2 and k >= 1")
    dim = d**k
    ensure_operator_budget(dim, "permutation operator")
    # column x maps to row y with y[perm[s]] = x[s]
    idx = np.arange(dim)
    digits = [(idx // d ** (k - 1 - s)) % d for s in range(k)]
    rows = np.zeros(dim, dtype=np.int64)
    for s in range(k):
        rows += digits[s] * d ** (k - 1 - perm[s])
    entries = np.zeros((dim, dim), dtype=complex)
    entries[rows, idx] = 1.0
    return DenseOperator(entries, d, k)


def cyclic_perm_tuple(k: int, power: int = 1) -> tuple:
    """Permutation tuple of C^power where C moves slot s to slot s+1 mod k."""
    return tuple((s + power) % k for s in range(k))


def cyclic_permutation(k: int, d: int) -> DenseOperator:
    return permutation_operator(cyclic_perm_tuple(k), d)


def partial_trace(X, keep, d: int | None = None, factors: int | None = None) -> DenseOperator:
    """Trace out all factors not listed in ``keep`` (0-based indices)."""
    if isinstance(X, DenseOperator):
        d = X.local_dim if d is None else d
        factors = X.factors if factors is None else factors
    mat = as_matrix(X)
    if d is None or factors is None:
        raise ValueError("d and factors required for raw arrays")
    keep = sorted(set(int(i) for i in keep))
    if not keep or any(i < 0 or i >= factors for i in keep):
        raise ValueError(f"keep indices {keep} invalid for {factors} factors")
    tensor = mat.reshape((d,) * (2 * factors))
    traced = 0
    for i in range(factors):
        if i in keep:
            continue
        offset = i - traced
        live = factors - traced
        tensor = np.trace(tensor, axis1=offset, axis2=live + offset)
        traced += 1
    dim = d ** len(keep)
    return DenseOperator(tensor.reshape(dim, dim), d, len(keep))


def sym_dim(n: int, d: int) -> int:
    """Dimension of the symmetric subspace, stars and bars."""
    if n < 0 or d < 1:
        raise ValueError("need n >= 0 and d >= 1")
    return comb(n + d - 1, d - 1)


def _sorted_multi_indices(n, d):
    out = []

    def rec(prefix, lo):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for i in range(lo, d):
            rec(prefix + [i], i)

    rec([], 0)
    return out


def symmetric_encoder(n: int, d: int) -> Isometry:
    """Isometry from sorted multi-index kets to symmetrized basis vectors.

    Column order is lexicographic in the sorted multi-index; each column is
    the equal-weight superposition of the distinct arrangements.
    """
    dim = d**n
    ensure_vector_budget(dim * sym_dim(n, d), "symmetric encoder")
    cols = []
    weights = d ** np.arange(n - 1, -1, -1)
    for multi in _sorted_multi_indices(n, d):
        arrangements = sorted(set(_all_permutations(multi)))
        col = np.zeros(dim, dtype=complex)
        amp = 1.0 / np.sqrt(len(arrangements))
        for arr in arrangements:
            col[int(np.dot(arr, weights))] = amp
        cols.append(col)
    return Isometry(np.stack(cols, axis=1))


def symmetric_projector(n: int, d: int) -> DenseOperator:
    enc = symmetric_encoder(n, d).entries
    ensure_operator_budget(d**n, "symmetric projector")
    return DenseOperator(enc @ enc.conj().T, d, n)


def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def haar_random_state(d: int, seed=0) -> PureState:
    rng = _as_rng(seed)
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return PureState(v / np.linalg.norm(v), d, 1)


def haar_random_unitary(d: int, seed=0) -> DenseOperator:
    """Haar unitary via QR with R-diagonal phase correction (Mezzadri)."""
    rng = _as_rng(seed)
    z = (rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    phases = np.diag(r).copy()
    phases /= np.abs(phases)
    return DenseOperator(q * phases[None, :], d, 1)


def random_permutation(k: int, seed=0) -> tuple:
    rng = _as_rng(seed)
    return tuple(int(x) for x in rng.permutation(k))
