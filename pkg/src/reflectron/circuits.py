"""Gate-level realization of the approximate rotation unitary for qubits.

Register layout: ancilla qubits 0..L-1 (L = log2(n+1)), system qubit L,
program qubits L+1..L+n. The ancilla is prepared in the uniform
superposition with Hadamards, the control blocks apply C^{2^j} conditioned
on ancilla bit j, the phase e^{i theta |s><s|} is compiled as
H^{xL} (phase on |0...0>) H^{xL}, then everything uncomputes.

Controlled-SWAP accounting: block j needs n+1-2^j transpositions from its
cycle decomposition; adjacent identical pairs are appended so the total is
exactly 2 n log2(n+1), the count the efficiency theorem advertises. A block
with exactly n controlled swaps on one control is impossible for j >= 1 by
permutation parity, so the padding is distributed across blocks instead.
"""

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .config import ensure_operator_budget

GATE_KINDS = ("h", "swap", "cswap", "single_qubit_phase", "multi_controlled_phase")

_EXPORT_NAMES = {
    "h": "H",
    "swap": "SWAP",
    "cswap": "CSWAP",
    "single_qubit_phase": "PHASE0",
    "multi_controlled_phase": "MCPHASE",
}
_IMPORT_KINDS = {v: k for k, v in _EXPORT_NAMES.items()}


@dataclass(frozen=True)
class Gate:
    kind: str
    targets: tuple = ()
    controls: tuple = ()
    angle: float | None = None

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind}")


@dataclass
class RotationCircuit:
    n: int
    theta: float
    gates: list = field(default_factory=list)

    @property
    def ancilla(self) -> int:
        return int(round(np.log2(self.n + 1)))

    @property
    def total_qubits(self) -> int:
        return self.ancilla + 1 + self.n

    def __iter__(self):
        return iter(self.gates)

    def __len__(self):
        return len(self.gates)


def _gates_of(circ) -> list:
    return circ.gates if isinstance(circ, RotationCircuit) else list(circ)


def _cycle_transpositions(perm: dict) -> list:
    """Write a slot permutation (s -> perm[s]) as adjacent-in-cycle swaps."""
    swaps = []
    seen = set()
    for start in sorted(perm):
        if start in seen or perm[start] == start:
            seen.add(start)
            continue
        cycle = [start]
        seen.add(start)
        cur = perm[start]
        while cur != start:
            cycle.append(cur)
            seen.add(cur)
            cur = perm[cur]
        for i in range(len(cycle) - 2, -1, -1):
            swaps.append((cycle[i], cycle[i + 1]))
    return swaps


def _controlled_cycle_block(control: int, power: int, n: int, offset: int, pad_pairs: int) -> list:
    """Controlled C^power on slots offset..offset+n as controlled swaps."""
    k = n + 1
    perm = {s: (s + power) % k for s in range(k)}
    gates = [
        Gate("cswap", targets=(offset + a, offset + b), controls=(control,))
        for a, b in _cycle_transpositions(perm)
    ]
    filler = Gate("cswap", targets=(offset, offset + 1), controls=(control,))
    gates.extend([filler] * (2 * pad_pairs))
    return gates


def build_rotation_circuit(n: int, theta: float) -> RotationCircuit:
    if n < 1 or (n + 1) & n != 0:
        raise ValueError(f"n + 1 must be a power of two, got n = {n}")
    L = (n + 1).bit_length() - 1
    sys_offset = L  # first permuted slot; system qubit L, program L+1..L+n
    gates = []
    anc = list(range(L))
    gates.extend(Gate("h", targets=(q,)) for q in anc)

    # pad to the advertised 2nL controlled swaps: per-side deficit n - L,
    # split across the two control blocks (parity forbids an even split
    # when n - L is odd)
    deficit = n - L
    fwd_pairs = (deficit + 1) // 2
    inv_pairs = deficit // 2

    def control_block(inverse: bool, pairs: int) -> list:
        block = []
        order = range(L - 1, -1, -1) if inverse else range(L)
        for j in order:
            power = -(2**j) if inverse else 2**j
            pad = pairs if j == L - 1 else 0
            block.extend(_controlled_cycle_block(j, power % (n + 1), n, sys_offset, pad))
        return block

    gates.extend(control_block(inverse=False, pairs=fwd_pairs))

    gates.extend(Gate("h", targets=(q,)) for q in anc)
    if L == 1:
        gates.append(Gate("single_qubit_phase", targets=(0,), angle=float(theta)))
    else:
        gates.append(Gate("multi_controlled_phase", targets=tuple(anc), angle=float(theta)))
    gates.extend(Gate("h", targets=(q,)) for q in anc)

    gates.extend(control_block(inverse=True, pairs=inv_pairs))

    gates.extend(Gate("h", targets=(q,)) for q in anc)
    return RotationCircuit(n=n, theta=float(theta), gates=gates)


def gate_counts(circ) -> dict:
    return dict(Counter(g.kind for g in _gates_of(circ)))


def _apply_gate(state: np.ndarray, gate: Gate, total: int) -> np.ndarray:
    """Apply one gate to an array whose first axis is the 2^total row index."""
    shape = state.shape
    tensor = state.reshape((2,) * total + (-1,))

    def axis_swap(a, b):
        return np.swapaxes(tensor, a, b)

    if gate.kind == "h":
        (q,) = gate.targets
        tensor = np.moveaxis(tensor, q, 0)
        plus = (tensor[0] + tensor[1]) / np.sqrt(2.0)
        minus = (tensor[0] - tensor[1]) / np.sqrt(2.0)
        tensor = np.moveaxis(np.stack([plus, minus]), 0, q)
    elif gate.kind == "swap":
        a, b = gate.targets
        tensor = axis_swap(a, b)
    elif gate.kind == "cswap":
        (c,) = gate.controls
        a, b = gate.targets
        tensor = np.moveaxis(tensor, c, 0)
        a, b = (x if x < c else x - 1 for x in (a, b))
        swapped = np.swapaxes(tensor[1], a, b)
        tensor = np.moveaxis(np.stack([tensor[0], swapped]), 0, c)
    elif gate.kind in ("single_qubit_phase", "multi_controlled_phase"):
        # phase e^{i angle} on the all-zeros state of the listed qubits
        phase = np.exp(1j * gate.angle)
        sel = tuple(0 for _ in gate.targets)
        tensor = np.moveaxis(tensor, gate.targets, range(len(gate.targets))).copy()
        tensor[sel] = tensor[sel] * phase
        tensor = np.moveaxis(tensor, range(len(gate.targets)), gate.targets)
    else:
        raise ValueError(f"unhandled gate kind {gate.kind}")
    return tensor.reshape(shape)


def circuit_to_dense(circ, total_qubits: int | None = None) -> np.ndarray:
    """Product of the gate matrices, applied to the identity."""
    gates = _gates_of(circ)
    if total_qubits is None:
        if not isinstance(circ, RotationCircuit):
            raise ValueError("total_qubits required for a bare gate list")
        total_qubits = circ.total_qubits
    if total_qubits > 20:
        raise ValueError("dense conversion capped at 20 qubits")
    dim = 2**total_qubits
    ensure_operator_budget(dim, "dense circuit unitary")
    mat = np.eye(dim, dtype=complex)
    for gate in gates:
        mat = _apply_gate(mat, gate, total_qubits)
    return mat


def apply_circuit(circ, state: np.ndarray) -> np.ndarray:
    """Apply the circuit to a state vector; cheaper than circuit_to_dense."""
    gates = _gates_of(circ)
    total = int(np.log2(state.size))
    out = np.asarray(state, dtype=complex).reshape(-1, 1)
    for gate in gates:
        out = _apply_gate(out, gate, total)
    return out.reshape(-1)


def export_circuit(circ: RotationCircuit) -> str:
    lines = [
        f"# registers: ancilla={circ.ancilla} system=1 program={circ.n}",
        f"# theta: {circ.theta!r}",
    ]
    for g in circ.gates:
        name = _EXPORT_NAMES[g.kind]
        parts = [name]
        if g.angle is not None:
            parts.append(repr(g.angle))
        parts.extend(str(q) for q in g.controls)
        parts.extend(str(q) for q in g.targets)
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def parse_circuit(text: str) -> RotationCircuit:
    n = None
    theta = 0.0
    gates = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            if "registers:" in line:
                fields = dict(tok.split("=") for tok in line.split()[2:])
                n = int(fields["program"])
            elif "theta:" in line:
                theta = float(line.split(":", 1)[1])
            continue
        parts = line.split()
        kind = _IMPORT_KINDS[parts[0]]
        if kind == "h":
            gates.append(Gate("h", targets=(int(parts[1]),)))
        elif kind == "swap":
            gates.append(Gate("swap", targets=(int(parts[1]), int(parts[2]))))
        elif kind == "cswap":
            gates.append(
                Gate("cswap", controls=(int(parts[1]),), targets=(int(parts[2]), int(parts[3])))
            )
        elif kind == "single_qubit_phase":
            gates.append(Gate("single_qubit_phase", targets=(int(parts[2]),), angle=float(parts[1])))
        else:
            gates.append(
                Gate(
                    "multi_controlled_phase",
                    targets=tuple(int(x) for x in parts[2:]),
                    angle=float(parts[1]),
                )
            )
    if n is None:
        raise ValueError("missing register header")
    return RotationCircuit(n=n, theta=theta, gates=gates)
