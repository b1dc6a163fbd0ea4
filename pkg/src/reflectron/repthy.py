"""Lower-bound machinery: SU(2) Clebsch-Gordan coefficients, the
flat-spectrum probe systems, exact Haar twirling over the partially
transposed permutation commutant, Holevo entropies, and the final
program-dimension bounds.

Spin arguments are doubled half-integers (two_j, two_m) throughout.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, log, log2, exp, e as _e

import numpy as np
from scipy.optimize import minimize

from .config import ensure_vector_budget
from .tensor_core import PureState, as_vector

COMMUTANT_MAX_GROUP = 720  # (2n)! cap
COMMUTANT_MAX_DIM = 2**10  # d^{2n} cap
EIG_CUTOFF = 1e-12
GRAM_RCOND = 1e-10


# ---------------------------------------------------------------------------
# labels


@dataclass(frozen=True)
class SpinLabel:
    two_j: int
    two_m: int

    def __post_init__(self):
        if self.two_j < 0 or abs(self.two_m) > self.two_j:
            raise ValueError(f"invalid spin label {self}")
        if (self.two_j - self.two_m) % 2:
            raise ValueError(f"two_j and two_m must share parity: {self}")


@dataclass(frozen=True)
class GTPattern:
    """Interlacing integer triangle; rows[-1] is the highest weight."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        for k, row in enumerate(rows):
            if len(row) != k + 1:
                raise ValueError("row k must have k+1 entries")
        for k in range(len(rows) - 1):
            upper = rows[k + 1]
            lower = rows[k]
            for i in range(len(lower)):
                if not (upper[i] >= lower[i] >= upper[i + 1]):
                    raise ValueError(f"interlacing violated at row {k}: {self.rows}")

    @property
    def d(self) -> int:
        return len(self.rows)

    def weight(self) -> tuple:
        sums = [0] + [sum(r) for r in self.rows]
        return tuple(sums[k + 1] - sums[k] for k in range(self.d))


def gt_patterns(top_row) -> list:
    """All GT patterns with the given highest-weight top row."""
    top = tuple(int(x) for x in top_row)

    def rec(row):
        if len(row) == 1:
            yield (row,)
            return
        ranges = [range(row[i + 1], row[i] + 1) for i in range(len(row) - 1)]
        for nxt in itertools.product(*ranges):
            for rest in rec(tuple(nxt)):
                yield rest + (row,)

    return [GTPattern(rows) for rows in rec(top)]


def weyl_dim(lam, d: int) -> int:
    """Dimension of the U(d) irrep with highest weight lam (padded)."""
    w = tuple(lam) + (0,) * (d - len(lam))
    num, den = 1, 1
    for i in range(d):
        for j in range(i + 1, d):
            num *= w[i] - w[j] + j - i
            den *= j - i
    return num // den


def partitions(n: int, max_rows: int) -> list:
    """Partitions of n into at most max_rows parts, lexicographically decreasing."""
    out = []

    def rec(remaining, maxpart, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        if len(prefix) == max_rows:
            return
        for part in range(min(maxpart, remaining), 0, -1):
            rec(remaining - part, part, prefix + [part])

    rec(n, n, [])
    return out


# ---------------------------------------------------------------------------
# SU(2) Clebsch-Gordan, exact rational Racah sum


@lru_cache(maxsize=None)
def _cg_su2_cached(tj1, tm1, tj2, tm2, tJ, tM):
    Fr = Fraction
    fact = factorial

    def F(x):
        return Fr(fact(x))

    j1pj2mJ = (tj1 + tj2 - tJ) // 2
    pref = Fr(tJ + 1) * F(j1pj2mJ) * F((tj1 - tj2 + tJ) // 2) * F((-tj1 + tj2 + tJ) // 2)
    pref /= F((tj1 + tj2 + tJ) // 2 + 1)
    pref *= (
        F((tJ + tM) // 2)
        * F((tJ - tM) // 2)
        * F((tj1 - tm1) // 2)
        * F((tj1 + tm1) // 2)
        * F((tj2 - tm2) // 2)
        * F((tj2 + tm2) // 2)
    )
    total = Fraction(0)
    kmin = max(0, -(tJ - tj2 + tm1) // 2, -(tJ - tj1 - tm2) // 2)
    kmax = min(j1pj2mJ, (tj1 - tm1) // 2, (tj2 + tm2) // 2)
    for k in range(kmin, kmax + 1):
        den = (
            F(k)
            * F(j1pj2mJ - k)
            * F((tj1 - tm1) // 2 - k)
            * F((tj2 + tm2) // 2 - k)
            * F((tJ - tj2 + tm1) // 2 + k)
            * F((tJ - tj1 - tm2) // 2 + k)
        )
        total += Fr((-1) ** k) / den
    square = pref * total * total
    sign = 1.0 if total >= 0 else -1.0
    return sign * float(square) ** 0.5


def cg_su2(two_j1: int, two_m1: int, two_j2: int, two_m2: int, two_J: int, two_M: int) -> float:
    """Condon-Shortley <j1 m1 j2 m2 | J M>, exact rationals under the root."""
    for tj, tm in ((two_j1, two_m1), (two_j2, two_m2), (two_J, two_M)):
        if (tj - tm) % 2 or tj < 0:
            raise ValueError("spin labels must be doubled half-integers of equal parity")
    if two_M != two_m1 + two_m2:
        return 0.0
    if not abs(two_j1 - two_j2) <= two_J <= two_j1 + two_j2:
        return 0.0
    if (two_j1 + two_j2 + two_J) % 2:
        return 0.0
    if abs(two_m1) > two_j1 or abs(two_m2) > two_j2 or abs(two_M) > two_J:
        return 0.0
    return _cg_su2_cached(two_j1, two_m1, two_j2, two_m2, two_J, two_M)


def magic_sum_check(two_j: int) -> float:
    """sum_m (-1)^{j-m} C^{00}_{jm,j-m}; equals sqrt(2j+1)."""
    return sum(
        (-1) ** ((two_j - tm) // 2) * cg_su2(two_j, tm, two_j, -tm, 0, 0)
        for tm in range(-two_j, two_j + 1, 2)
    )


# ---------------------------------------------------------------------------
# d = 2 conjecture linear system


def conjecture_system_d2(n: int):
    """Matrix and rhs of the flat-spectrum system, plus its index labels.

    Rows are J in {n mod 2, ..., n}, columns two_j in the same stride;
    A[J, j] = |sum_m C^{J0}_{jm,j-m}|^2 / (2j+1), b[J] = (2J+1)/binom(n+2,2).
    """
    if n < 1:
        raise ValueError("need n >= 1")
    two_js = list(range(n % 2, n + 1, 2))
    Js = list(range(n % 2, n + 1, 2))
    A = np.zeros((len(Js), len(two_js)))
    for r, J in enumerate(Js):
        for c, tj in enumerate(two_js):
            if tj < J:
                continue
            s = sum(cg_su2(tj, tm, tj, -tm, 2 * J, 0) for tm in range(-tj, tj + 1, 2))
            A[r, c] = s * s / (tj + 1)
    b = np.array([(2 * J + 1) / comb(n + 2, 2) for J in Js])
    return A, b, two_js, Js


@dataclass
class ProbeSpec:
    """Block weights q over irrep labels (two_j for d=2, partitions for d>2)."""

    n: int
    d: int
    q: dict

    def __post_init__(self):
        clipped = {}
        for key, val in self.q.items():
            if val < -1e-10:
                raise ValueError(f"negative weight {val} at {key}")
            clipped[key] = max(float(val), 0.0)
        total = sum(clipped.values())
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"weights sum to {total}, expected 1")
        self.q = clipped

    def weights(self, keys) -> np.ndarray:
        return np.array([self.q.get(k, 0.0) for k in keys])


def solve_q_d2(n: int):
    """Solve the flat-spectrum system; returns (ProbeSpec, residual).

    A solution with weights outside [0,1] beyond tolerance would falsify the
    conjecture at that n; it is surfaced as a ValueError from ProbeSpec, not
    silently clipped away.
    """
    A, b, two_js, _ = conjecture_system_d2(n)
    q = np.linalg.solve(A, b)
    residual = float(np.abs(A @ q - b).max())
    spec = ProbeSpec(n=n, d=2, q={tj: qi for tj, qi in zip(two_js, q)})
    return spec, residual


# ---------------------------------------------------------------------------
# commutant of U^{xn} x Ubar^{xn} and the exact Haar twirl


def _cycle_count(perm) -> int:
    seen = [False] * len(perm)
    count = 0
    for i in range(len(perm)):
        if not seen[i]:
            count += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
    return count


@dataclass
class CommutantBasis:
    """Partially transposed permutation operators spanning the commutant.

    Each operator is stored as its nonzero coordinate pairs (one per column
    of the underlying permutation matrix); the Gram matrix of Hilbert-Schmidt
    inner products comes from the cycle-count identity
    tr(eta_pi^dag eta_sigma) = d^{cycles(pi^{-1} sigma)}.
    """

    n: int
    d: int
    perms: list
    pairs: list
    gram: np.ndarray
    gram_pinv: np.ndarray = field(repr=False, default=None)

    def op_dense(self, k: int) -> np.ndarray:
        dim = self.d ** (2 * self.n)
        out = np.zeros((dim, dim), dtype=complex)
        rows, cols = self.pairs[k]
        out[rows, cols] = 1.0
        return out


@lru_cache(maxsize=None)
def commutant_basis(n: int, d: int) -> CommutantBasis:
    k2 = 2 * n
    if factorial(k2) > COMMUTANT_MAX_GROUP or d**k2 > COMMUTANT_MAX_DIM:
        raise ValueError(
            f"commutant basis budget: need (2n)! <= {COMMUTANT_MAX_GROUP} and "
            f"d^(2n) <= {COMMUTANT_MAX_DIM}"
        )
    perms = list(itertools.permutations(range(k2)))
    dim = d**k2
    idx = np.arange(dim)
    digits = [(idx // d ** (k2 - 1 - s)) % d for s in range(k2)]
    # eta[(a,e),(c,b)] = P[(a,b),(c,e)] for column x = (c,e) and row y = pi(x) = (a,b):
    # the partial transpose swaps the row/column roles of the last n slots
    pairs = []
    for pm in perms:
        ydig = [None] * k2
        for s in range(k2):
            ydig[pm[s]] = digits[s]
        rows = np.zeros(dim, dtype=np.int64)
        cols = np.zeros(dim, dtype=np.int64)
        for s in range(k2):
            w = d ** (k2 - 1 - s)
            if s < n:
                rows += ydig[s] * w
                cols += digits[s] * w
            else:
                rows += digits[s] * w
                cols += ydig[s] * w
        pairs.append((rows, cols))
    m = len(perms)
    gram = np.zeros((m, m))
    index = {pm: i for i, pm in enumerate(perms)}
    cycles = np.array([_cycle_count(pm) for pm in perms])
    arr = np.array(perms)
    for i, pm in enumerate(perms):
        inv = np.argsort(np.asarray(pm))
        comp_ids = [index[tuple(row[inv])] for row in arr]
        gram[i, :] = np.power(float(d), cycles[comp_ids])
    pinv = np.linalg.pinv(gram, rcond=GRAM_RCOND)
    return CommutantBasis(n=n, d=d, perms=perms, pairs=pairs, gram=gram, gram_pinv=pinv)


def twirl(X, basis: CommutantBasis) -> np.ndarray:
    """Orthogonal projection of X onto the span of the eta operators.

    Coincides with the Haar average of (U^{xn} x Ubar^{xn}) X (.)^dag; the
    rank-deficient Gram matrix (d < 2n) is inverted by SVD pseudo-inverse.
    """
    X = np.asarray(X, dtype=complex)
    overlaps = np.array([X[rows, cols].sum() for rows, cols in basis.pairs])
    coeffs = basis.gram_pinv @ overlaps
    out = np.zeros_like(X)
    for cf, (rows, cols) in zip(coeffs, basis.pairs):
        np.add.at(out, (rows, cols), cf)
    return out


# ---------------------------------------------------------------------------
# block bases: spin chains for d = 2, Young symmetrizers for d >= 3


def _spin_ops(n: int):
    dim = 2**n
    Jp = np.zeros((dim, dim))
    for i in range(n):
        # sigma^+ on qubit i: |0><1| with bit value 1 meaning m = -1/2
        stride = 2 ** (n - 1 - i)
        for x in range(dim):
            if (x // stride) % 2 == 1:
                Jp[x - stride, x] += 1.0
    return Jp


@lru_cache(maxsize=None)
def spin_chain_blocks(n: int) -> dict:
    """For each two_j, the list of lowering chains of the spin blocks.

    Chain t is a (2j+1, 2^n) real array whose rows are |j, m, t> for
    m = j..-j, built by orthonormalizing the highest-weight space of ker J+
    and lowering with nonnegative matrix elements. Chains are U(2)-invariant
    subspaces, so pairing chain t with itself realizes the maximally
    entangled block states.
    """
    dim = 2**n
    Jp = _spin_ops(n)
    Jm = Jp.T
    popcount = np.array([bin(x).count("1") for x in range(dim)])
    blocks = {}
    for two_j in range(n % 2, n + 1, 2):
        ones = (n - two_j) // 2  # S_z eigenvalue j has (n - 2j)/2 down spins
        sel = np.where(popcount == ones)[0]
        basis = np.zeros((dim, sel.size))
        basis[sel, np.arange(sel.size)] = 1.0
        raised = Jp @ basis
        _, svals, vt = np.linalg.svd(raised, full_matrices=True)
        rank = int(np.sum(svals > 1e-10))
        null = vt[rank:].T
        highest = basis @ null
        chains = []
        for t in range(highest.shape[1]):
            v = highest[:, t]
            v = v / np.linalg.norm(v)
            chain = [v]
            for _ in range(two_j):
                v = Jm @ v
                v = v / np.linalg.norm(v)
                chain.append(v)
            chains.append(np.stack(chain))
        blocks[two_j] = chains
    return blocks


def _permutation_parity(pm) -> int:
    return 1 if (_cycle_count(pm) - len(pm)) % 2 == 0 else -1


def _perm_vec_indices(pm, d, digits):
    k = len(pm)
    rows = np.zeros(digits[0].size, dtype=np.int64)
    for s in range(k):
        rows += digits[s] * d ** (k - 1 - pm[s])
    return rows


@lru_cache(maxsize=None)
def young_symmetrizer_block(shape: tuple, d: int) -> np.ndarray:
    """Real orthonormal basis of the first-tableau Young symmetrizer image.

    The image is a U(d)-invariant subspace carrying the irrep once, so its
    columns serve as one multiplicity copy of the Weyl module.
    """
    n = sum(shape)
    dim = d**n
    ensure_vector_budget(dim * dim, "Young symmetrizer")
    tableau = []
    x = 0
    for r in shape:
        tableau.append(list(range(x, x + r)))
        x += r
    cols = []
    for c in range(shape[0]):
        col = [tableau[r][c] for r in range(len(shape)) if len(tableau[r]) > c]
        cols.append(col)
    idx = np.arange(dim)
    digits = [(idx // d ** (n - 1 - s)) % d for s in range(n)]

    def set_perms(sets):
        base = list(range(n))
        for prods in itertools.product(*[itertools.permutations(s) for s in sets]):
            pm = base[:]
            for group, perm in zip(sets, prods):
                for a, b in zip(group, perm):
                    pm[a] = b
            yield tuple(pm)

    row_sym = np.zeros((dim, dim))
    for pm in set_perms(tableau):
        row_sym[_perm_vec_indices(pm, d, digits), idx] += 1.0
    col_anti = np.zeros((dim, dim))
    for pm in set_perms(cols):
        col_anti[_perm_vec_indices(pm, d, digits), idx] += _permutation_parity(pm)
    symmetrizer = col_anti @ row_sym
    u, svals, _ = np.linalg.svd(symmetrizer)
    rank = int(np.sum(svals > 1e-9 * svals[0]))
    block = u[:, :rank]
    expected = weyl_dim(shape, d)
    if rank != expected:
        raise RuntimeError(f"Young block rank {rank} != Weyl dimension {expected}")
    return block


def block_basis(n: int, d: int) -> dict:
    """First multiplicity copy of each irrep block, as real orthonormal columns."""
    if d == 2:
        return {two_j: chains[0].T for two_j, chains in spin_chain_blocks(n).items()}
    return {lam: young_symmetrizer_block(lam, d) for lam in partitions(n, d)}


def _probe_vector(n: int, d: int, weights: dict, blocks: dict) -> np.ndarray:
    dim = d**n
    ensure_vector_budget(dim * dim, "probe state")
    v = np.zeros(dim * dim)
    for key, w in weights.items():
        if w <= 0.0:
            continue
        B = blocks[key]
        dlam = B.shape[1]
        for t in range(dlam):
            v += np.sqrt(w / dlam) * np.kron(B[:, t], B[:, t])
    return v


def build_probe_d2(n: int, probe: ProbeSpec) -> PureState:
    """Probe sum_j sqrt(q_j) |Phi+_j> on (C^2)^{x2n} from spin chains."""
    if probe.d != 2:
        raise ValueError("build_probe_d2 expects a d=2 ProbeSpec")
    blocks = block_basis(n, 2)
    unknown = set(probe.q) - set(blocks)
    if unknown:
        raise ValueError(f"weights on invalid spins {sorted(unknown)}")
    v = _probe_vector(n, 2, probe.q, blocks)
    return PureState(v / np.linalg.norm(v), 2, 2 * n)


def build_probe(n: int, d: int, q: dict) -> PureState:
    if d == 2:
        return build_probe_d2(n, ProbeSpec(n=n, d=2, q=q))
    blocks = block_basis(n, d)
    v = _probe_vector(n, d, q, blocks)
    return PureState(v / np.linalg.norm(v), d, 2 * n)


def _reflection_signs(n: int, d: int) -> np.ndarray:
    """Diagonal of R^{xn} x I with R = I - 2|d-1><d-1|."""
    single = np.ones(d)
    single[d - 1] = -1.0
    signs = single
    for _ in range(n - 1):
        signs = np.kron(signs, single)
    return np.kron(signs, np.ones(d**n))


def ensemble_state(n: int, d: int, probe) -> np.ndarray:
    """Haar average of the reflected probe, rho = twirl(R Phi R)."""
    vec = as_vector(probe)
    reflected = _reflection_signs(n, d) * vec
    return twirl(np.outer(reflected, reflected.conj()), commutant_basis(n, d))


def ensemble_entropy(n: int, d: int, probe) -> float:
    rho = ensemble_state(n, d, probe)
    eig = np.linalg.eigvalsh(rho)
    eig = eig[eig > EIG_CUTOFF]
    return float(-np.sum(eig * np.log2(eig)))


def ensemble_rank(n: int, d: int, probe) -> int:
    rho = ensemble_state(n, d, probe)
    return int(np.sum(np.linalg.eigvalsh(rho) > EIG_CUTOFF))


def entropy_target(n: int, d: int) -> float:
    if d == 2:
        return log2(comb(n + 2, 2))
    return 2.0 * log2(comb(n + d - 1, d - 1))


def support_bound(n: int, d: int) -> int:
    return comb(n + d - 1, d - 1) ** 2


@dataclass
class EntropyReport:
    n: int
    d: int
    probe: ProbeSpec
    entropy: float
    target: float
    below_target: bool
    gap: float
    rank: int
    rank_bound: int
    basis: str
    trivial_sector_weight: float
    trivial_sector_flat: float


def _character_reflection(lam, d: int) -> float:
    """Character of R = I - 2|d-1><d-1| in the irrep lam (via its block)."""
    B = young_symmetrizer_block(tuple(lam), d) if d > 2 else None
    if B is None:
        # d = 2, lam is two_j: chi = 1 for integer j, 0 for half-integer
        return 1.0 if lam % 2 == 0 else 0.0
    n = sum(lam)
    signs = np.ones(d)
    signs[d - 1] = -1.0
    diag = signs
    for _ in range(n - 1):
        diag = np.kron(diag, signs)
    return float(np.einsum("it,i,it->", B, diag, B))


def maximize_entropy_over_q(n: int, d: int, restarts: int = 20, seed: int = 0) -> EntropyReport:
    """Nelder-Mead search over the weight simplex for the ensemble entropy.

    The entropy is evaluated on the joint support of the pairwise twirled
    block outer products, which is exact and keeps an evaluation cheap. A
    persistent gap below target is reported, not raised: it is evidence
    about the flat-spectrum conjecture, and for (n, d) in {(2, 3), (3, 3)}
    the trivial-sector weight sum_lam q_lam (chi_lam(R)/dim_lam)^2 pins the
    spectrum away from flat for every q.
    """
    blocks = block_basis(n, d)
    keys = sorted(blocks)
    basis_name = "spin-chain" if d == 2 else "young-symmetrizer"
    cb = commutant_basis(n, d)
    signs = _reflection_signs(n, d)
    sides = {}
    for key in keys:
        B = blocks[key]
        dlam = B.shape[1]
        v = np.zeros(d ** (2 * n))
        for t in range(dlam):
            v += np.kron(B[:, t], B[:, t]) / np.sqrt(dlam)
        sides[key] = signs * v
    twirled = {}
    for a in keys:
        for b in keys:
            twirled[(a, b)] = twirl(np.outer(sides[a], sides[b]).astype(complex), cb)
    support = sum(twirled[(a, a)] for a in keys)
    for a in keys:
        for b in keys:
            support = support + twirled[(a, b)] @ twirled[(a, b)].conj().T
    eigval, eigvec = np.linalg.eigh(support)
    Q = eigvec[:, eigval > 1e-12 * max(eigval.max(), 1.0)]
    reduced = {k: Q.conj().T @ v @ Q for k, v in twirled.items()}

    def entropy_of(qvec):
        rho = sum(
            np.sqrt(qvec[i] * qvec[j]) * reduced[(keys[i], keys[j])]
            for i in range(len(keys))
            for j in range(len(keys))
        )
        eig = np.linalg.eigvalsh(rho)
        eig = eig[eig > EIG_CUTOFF]
        return float(-np.sum(eig * np.log2(eig)))

    def negent(x):
        expd = np.exp(x - x.max())
        return -entropy_of(expd / expd.sum())

    rng = np.random.default_rng(seed)
    best_x, best_val = None, np.inf
    for _ in range(max(1, restarts)):
        x0 = rng.normal(size=len(keys))
        res = minimize(
            negent,
            x0,
            method="Nelder-Mead",
            options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 2000},
        )
        if res.fun < best_val:
            best_x, best_val = res.x, res.fun
    expd = np.exp(best_x - best_x.max())
    qvec = expd / expd.sum()
    entropy = entropy_of(qvec)
    target = entropy_target(n, d)
    probe = ProbeSpec(n=n, d=d, q={k: float(w) for k, w in zip(keys, qvec)})
    full_probe = build_probe(n, d, probe.q)
    rank = ensemble_rank(n, d, full_probe)
    pinned = sum(
        probe.q[k] * (_character_reflection(k, d) / blocks[k].shape[1]) ** 2 for k in keys
    )
    return EntropyReport(
        n=n,
        d=d,
        probe=probe,
        entropy=entropy,
        target=target,
        below_target=bool(entropy < target * (1.0 - 1e-4)),
        gap=float(target - entropy),
        rank=rank,
        rank_bound=support_bound(n, d),
        basis=basis_name,
        trivial_sector_weight=float(pinned),
        trivial_sector_flat=1.0 / support_bound(n, d),
    )


# ---------------------------------------------------------------------------
# Lambert W and the program-dimension lower bound


def lambert_w0(x: float) -> float:
    """Principal Lambert W by Halley iteration, |W e^W - x| below 1e-12."""
    if x < -1.0 / _e - 1e-15:
        raise ValueError(f"lambert_w0 domain is [-1/e, inf), got {x}")
    if x == 0.0:
        return 0.0
    if x < -1.0 / _e + 1e-15:
        return -1.0
    if x < 0.0:
        p = np.sqrt(2.0 * (_e * x + 1.0))
        w = -1.0 + p - p * p / 3.0 + 11.0 * p**3 / 72.0
    elif x < _e:
        w = np.log1p(x) * (1.0 - np.log(1.0 + np.log1p(x)) / (2.0 + np.log1p(x)))
    else:
        lx = log(x)
        w = lx - log(lx)
    for _ in range(100):
        ew = exp(w)
        f = w * ew - x
        if abs(f) <= 1e-12 * (1.0 + abs(x)):
            break
        wp1 = w + 1.0
        w = w - f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
    return float(w)


def lower_bound_fd(epsilon: float, n: int, d: int) -> float:
    """f_d(eps, n), the Holevo-information lower bound before optimizing n."""
    if d == 2:
        return (
            log(comb(n + 2, 2))
            - 4.0 * n * np.sqrt(2.0 * epsilon) * log(comb(n + 3, 3))
            - log(2.0)
        )
    return (
        2.0 * log(comb(n + d - 1, d - 1))
        - 4.0 * n * np.sqrt(2.0 * epsilon) * log(comb(n + d * d - 1, d * d - 1))
        - log(2.0)
    )


def n_of_eps(epsilon: float, d: int) -> float:
    """Copy count solving n ln n = 1/(2(d+1) sqrt(2 eps)), via W0."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    return exp(lambert_w0(np.sqrt(1.0 / (8.0 * (d + 1) ** 2 * epsilon))))


def asymptotic_regime(epsilon: float, d: int) -> bool:
    return epsilon <= 1e-3 / (d + 1) ** 2


def final_lower_bound(epsilon: float, d: int, delta: float = 0.0) -> float:
    """ln d_P >= (1-delta)(d-1) ln(1/(8 (d^2-1)^2 eps))."""
    return (1.0 - delta) * (d - 1) * log(1.0 / (8.0 * (d * d - 1) ** 2 * epsilon))


def lambert_sandwich_holds(x: float) -> bool:
    """Bracketing bounds on W0 for x >= e."""
    if x < _e:
        raise ValueError("bounds stated for x >= e")
    w = lambert_w0(x)
    lx, llx = log(x), log(log(x))
    lower = lx - llx + llx / (2.0 * lx)
    upper = lx - llx + (_e / (_e - 1.0)) * llx / lx
    return lower - 1e-12 <= w <= upper + 1e-12
