from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from app.quantum.state import NORM_TOLERANCE, QuantumState, SimulationConfigError

GateKind = Literal["H", "X", "Y", "Z", "RY", "SWAP", "U"]
Control = tuple[int, int]

_SQRT_HALF = 1.0 / math.sqrt(2.0)

_FIXED_MATRICES: dict[str, np.ndarray] = {
    "H": np.array([[_SQRT_HALF, _SQRT_HALF], [_SQRT_HALF, -_SQRT_HALF]], dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
    "SWAP": np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
        dtype=np.complex128,
    ),
}


def ry_matrix(theta: float) -> np.ndarray:
    """Ry(theta) = [[cos(theta/2), -sin(theta/2)], [sin(theta/2), cos(theta/2)]]."""

    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    return np.array([[c, -s], [s, c]], dtype=np.complex128)


def _is_unitary(matrix: np.ndarray) -> bool:
    identity = np.eye(matrix.shape[0])
    return bool(np.allclose(matrix.conj().T @ matrix, identity, rtol=0.0, atol=NORM_TOLERANCE))


@dataclass(frozen=True)
class Gate:
    """A (multi-)controlled one- or two-qubit unitary.

    ``controls`` holds ``(qubit, polarity)`` pairs; polarity 0 fires the gate
    when the control qubit is |0>.
    """

    kind: GateKind
    targets: tuple[int, ...]
    controls: tuple[Control, ...] = ()
    theta: float | None = None
    matrix: np.ndarray | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "targets", tuple(int(q) for q in self.targets))
        object.__setattr__(self, "controls", tuple((int(q), int(p)) for q, p in self.controls))

        expected_targets = 2 if self.kind == "SWAP" else 1
        if len(self.targets) != expected_targets:
            raise SimulationConfigError(f"{self.kind} gate needs {expected_targets} target(s)")
        if len(set(self.targets)) != len(self.targets):
            raise SimulationConfigError("gate targets must be distinct")

        control_qubits = [qubit for qubit, _ in self.controls]
        if len(set(control_qubits)) != len(control_qubits):
            raise SimulationConfigError("gate controls must be distinct")
        if set(control_qubits) & set(self.targets):
            raise SimulationConfigError("gate controls and targets must be disjoint")
        if any(polarity not in (0, 1) for _, polarity in self.controls):
            raise SimulationConfigError("control polarity must be 0 or 1")
        if any(qubit < 0 for qubit in (*self.targets, *control_qubits)):
            raise SimulationConfigError("qubit indices must be non-negative")

        if self.kind == "RY":
            if self.theta is None or not math.isfinite(self.theta):
                raise SimulationConfigError("RY gate needs a finite angle")
        elif self.kind == "U":
            if self.matrix is None:
                raise SimulationConfigError("generic gate needs a matrix")
            matrix = np.array(self.matrix, dtype=np.complex128)
            if matrix.shape != (2, 2) or not _is_unitary(matrix):
                raise SimulationConfigError("generic gate matrix must be a 2x2 unitary")
            matrix.setflags(write=False)
            object.__setattr__(self, "matrix", matrix)
        elif self.kind not in _FIXED_MATRICES:
            raise SimulationConfigError(f"unknown gate kind {self.kind!r}")

    def unitary(self) -> np.ndarray:
        if self.kind == "RY":
            return ry_matrix(float(self.theta))
        if self.kind == "U":
            return self.matrix
        return _FIXED_MATRICES[self.kind]

    @property
    def qubits(self) -> tuple[int, ...]:
        return (*self.targets, *(qubit for qubit, _ in self.controls))


def h(qubit: int) -> Gate:
    return Gate("H", (qubit,))


def x(qubit: int, controls: Iterable[Control] = ()) -> Gate:
    return Gate("X", (qubit,), tuple(controls))


def y(qubit: int, controls: Iterable[Control] = ()) -> Gate:
    return Gate("Y", (qubit,), tuple(controls))


def ry(qubit: int, theta: float, controls: Iterable[Control] = ()) -> Gate:
    return Gate("RY", (qubit,), tuple(controls), theta=theta)


def swap(first: int, second: int, controls: Iterable[Control] = ()) -> Gate:
    return Gate("SWAP", (first, second), tuple(controls))


def unitary(qubit: int, matrix: np.ndarray, controls: Iterable[Control] = ()) -> Gate:
    return Gate("U", (qubit,), tuple(controls), matrix=matrix)


def apply(state: QuantumState, gate: Gate) -> QuantumState:
    """Apply ``gate`` and return the transformed state."""

    n = state.num_qubits
    out_of_range = [qubit for qubit in gate.qubits if qubit >= n]
    if out_of_range:
        raise SimulationConfigError(f"qubit(s) {out_of_range} out of range for {n} qubits")

    psi = np.array(state.tensor_view())
    index: list[int | slice] = [slice(None)] * n
    for qubit, polarity in gate.controls:
        index[qubit] = polarity
    block = psi[tuple(index)]

    # Integer indexing removed the control axes; re-number targets accordingly.
    control_qubits = {qubit for qubit, _ in gate.controls}
    axes = [target - sum(1 for c in control_qubits if c < target) for target in gate.targets]
    k = len(axes)
    front = np.moveaxis(block, axes, list(range(k)))
    shape = front.shape
    updated = (gate.unitary() @ front.reshape(1 << k, -1)).reshape(shape)
    psi[tuple(index)] = np.moveaxis(updated, list(range(k)), axes)
    return state.with_amplitudes(psi.reshape(-1))


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list over ``num_qubits`` qubits."""

    num_qubits: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self) -> None:
        gates = tuple(self.gates)
        for gate in gates:
            if any(qubit >= self.num_qubits for qubit in gate.qubits):
                raise SimulationConfigError(f"{gate.kind} gate does not fit {self.num_qubits} qubits")
        object.__setattr__(self, "gates", gates)

    def __len__(self) -> int:
        return len(self.gates)


def run_circuit(state: QuantumState, circuit: Circuit) -> QuantumState:
    if circuit.num_qubits != state.num_qubits:
        raise SimulationConfigError(
            f"circuit spans {circuit.num_qubits} qubits, state has {state.num_qubits}"
        )
    for gate in circuit.gates:
        state = apply(state, gate)
    return state
