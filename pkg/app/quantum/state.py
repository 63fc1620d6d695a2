"""Dense complex-amplitude statevectors over named registers.

Ordering convention: qubit 0 is the most significant bit of the basis index.
Registers are laid out in the order they are listed, so the first register
occupies the most significant bits and, inside a register, its first qubit is
the most significant one. ``new_state(layout, "000010")`` therefore puts
amplitude 1 at index ``0b000010``.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

NORM_TOLERANCE = 1e-10
IMPOSSIBLE_TOLERANCE = 1e-12


class SimulationConfigError(ValueError):
    """Raised when a state, gate or circuit does not fit together."""


class ImpossiblePostselectionError(ValueError):
    """Raised when postselecting an outcome whose probability is zero."""


@dataclass(frozen=True)
class Register:
    name: str
    width: int

    def __post_init__(self) -> None:
        if not self.name:
            raise SimulationConfigError("register name is required")
        if self.width < 1:
            raise SimulationConfigError(f"register {self.name!r} must have width >= 1")


@dataclass(frozen=True)
class Counts:
    ones: int
    zeros: int

    @property
    def shots(self) -> int:
        return self.ones + self.zeros


def _as_layout(layout: Iterable[Register | tuple[str, int]]) -> tuple[Register, ...]:
    registers = tuple(item if isinstance(item, Register) else Register(*item) for item in layout)
    if not registers:
        raise SimulationConfigError("layout must contain at least one register")
    names = [register.name for register in registers]
    duplicates = sorted({name for name in names if names.count(name) > 1})
    if duplicates:
        raise SimulationConfigError(f"duplicate register names: {', '.join(duplicates)}")
    return registers


@dataclass(frozen=True, eq=False)
class QuantumState:
    """Immutable statevector; operations return new states."""

    layout: tuple[Register, ...]
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        layout = _as_layout(self.layout)
        num_qubits = sum(register.width for register in layout)
        amplitudes = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amplitudes.shape != (1 << num_qubits,):
            raise SimulationConfigError(
                f"expected {1 << num_qubits} amplitudes for {num_qubits} qubits, got {amplitudes.size}"
            )
        if not np.all(np.isfinite(amplitudes)):
            raise SimulationConfigError("amplitudes must be finite")
        amplitudes.setflags(write=False)
        object.__setattr__(self, "layout", layout)
        object.__setattr__(self, "amplitudes", amplitudes)

    @property
    def num_qubits(self) -> int:
        return sum(register.width for register in self.layout)

    def norm(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def tensor_view(self) -> np.ndarray:
        return self.amplitudes.reshape((2,) * self.num_qubits)

    def amplitude(self, bits: str) -> complex:
        if len(bits) != self.num_qubits or set(bits) - {"0", "1"}:
            raise SimulationConfigError(f"basis label {bits!r} does not match {self.num_qubits} qubits")
        return complex(self.amplitudes[int(bits, 2)])

    def qubits(self, name: str) -> tuple[int, ...]:
        offset = 0
        for register in self.layout:
            if register.name == name:
                return tuple(range(offset, offset + register.width))
            offset += register.width
        raise SimulationConfigError(f"unknown register {name!r}")

    def with_amplitudes(self, amplitudes: np.ndarray) -> QuantumState:
        return QuantumState(self.layout, amplitudes)

    def relabel(self, prefix: str) -> QuantumState:
        layout = tuple(Register(f"{prefix}{register.name}", register.width) for register in self.layout)
        return QuantumState(layout, self.amplitudes)


def _check_qubit(state: QuantumState, qubit: int) -> None:
    if not 0 <= qubit < state.num_qubits:
        raise SimulationConfigError(f"qubit {qubit} out of range for {state.num_qubits} qubits")


def new_state(layout: Iterable[Register | tuple[str, int]], basis: str | None = None) -> QuantumState:
    """Basis state over ``layout``; ``basis`` defaults to all zeros."""

    registers = _as_layout(layout)
    width = sum(register.width for register in registers)
    bits = "0" * width if basis is None else basis
    if len(bits) != width or set(bits) - {"0", "1"}:
        raise SimulationConfigError(f"basis {bits!r} does not match total register width {width}")
    amplitudes = np.zeros(1 << width, dtype=np.complex128)
    amplitudes[int(bits, 2)] = 1.0
    return QuantumState(registers, amplitudes)


def probability(state: QuantumState, qubit: int, outcome: int) -> float:
    _check_qubit(state, qubit)
    if outcome not in (0, 1):
        raise SimulationConfigError(f"outcome must be 0 or 1, got {outcome}")
    branch = np.take(state.tensor_view(), outcome, axis=qubit)
    return float(np.sum(np.abs(branch) ** 2))


def sample(state: QuantumState, qubit: int, shots: int, rng: np.random.Generator) -> Counts:
    """Draw ``shots`` projective measurements of ``qubit``."""

    if shots < 1:
        raise SimulationConfigError(f"shots must be >= 1, got {shots}")
    p_one = min(1.0, max(0.0, probability(state, qubit, 1)))
    ones = int(rng.binomial(shots, p_one))
    return Counts(ones=ones, zeros=shots - ones)


def postselect(state: QuantumState, qubit: int, outcome: int) -> tuple[QuantumState, float]:
    """Collapse ``qubit`` onto ``outcome`` and renormalize."""

    success = probability(state, qubit, outcome)
    if success <= IMPOSSIBLE_TOLERANCE:
        raise ImpossiblePostselectionError(
            f"outcome {outcome} on qubit {qubit} has probability {success:.3e}"
        )
    psi = np.array(state.tensor_view())
    index: list[int | slice] = [slice(None)] * state.num_qubits
    index[qubit] = 1 - outcome
    psi[tuple(index)] = 0.0
    return state.with_amplitudes(psi.reshape(-1) / np.sqrt(success)), success


def overlap(a: QuantumState, b: QuantumState) -> complex:
    """Inner product <a|b>."""

    if a.layout != b.layout:
        raise SimulationConfigError("overlap requires identical register layouts")
    return complex(np.sum(np.conj(a.amplitudes) * b.amplitudes))


def tensor(a: QuantumState, b: QuantumState) -> QuantumState:
    """|a> (x) |b>, with ``a`` in the most significant bits."""

    return QuantumState(a.layout + b.layout, np.kron(a.amplitudes, b.amplitudes))


def drop_registers(state: QuantumState, names: Sequence[str]) -> QuantumState:
    """Remove registers that sit in a definite basis state.

    Raises ``SimulationConfigError`` when the registers are entangled with
    the rest of the state (more than one basis value carries weight).
    """

    dropped = [qubit for name in names for qubit in state.qubits(name)]
    kept_layout = tuple(register for register in state.layout if register.name not in names)
    if not kept_layout:
        raise SimulationConfigError("cannot drop every register")
    kept = [qubit for qubit in range(state.num_qubits) if qubit not in dropped]

    moved = np.moveaxis(state.tensor_view(), dropped + kept, list(range(state.num_qubits)))
    rows = moved.reshape(1 << len(dropped), 1 << len(kept))
    weights = np.sum(np.abs(rows) ** 2, axis=1)
    occupied = np.flatnonzero(weights > IMPOSSIBLE_TOLERANCE)
    if occupied.size != 1:
        raise SimulationConfigError(
            f"registers {', '.join(names)} are not in a definite basis state"
        )
    return QuantumState(kept_layout, rows[occupied[0]])
