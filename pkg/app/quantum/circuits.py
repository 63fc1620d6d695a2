"""Circuit primitives of the quantum Relief pipeline.

Encoded samples use the register layout ``[sample:m][feature:n][flag:1][amplitude:1]``:

    |phi>_j = 1/sqrt(N) |j> sum_i |i> |1> (sqrt(1 - v_i^2) |0> + v_i |1>)
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Literal

import numpy as np

from app.quantum.gates import Circuit, Gate, apply, h, ry, run_circuit, swap, x
from app.quantum.state import (
    QuantumState,
    Register,
    SimulationConfigError,
    drop_registers,
    new_state,
    postselect,
    probability,
    sample,
    tensor,
)

logger = logging.getLogger("qrelief.circuits")

PrepMode = Literal["exact", "sampled"]

SAMPLE_REGISTER = "sample"
FEATURE_REGISTER = "feature"
FLAG_REGISTER = "flag"
AMPLITUDE_REGISTER = "amplitude"
CMP_WORK_REGISTER = "cmp_work"
CMP_RESULT_REGISTER = "cmp_result"
SWAP_ANCILLA_REGISTER = "swap_ancilla"

DEFAULT_RETRY_FACTOR = 64


class EncodingError(ValueError):
    """Raised when a feature vector cannot be amplitude-encoded."""


class PreparationFailedError(RuntimeError):
    """Raised when repeat-until-success preparation runs out of attempts."""


def _bits(value: int, width: int) -> list[int]:
    return [(value >> (width - 1 - k)) & 1 for k in range(width)]


def register_widths(num_samples: int, num_features: int) -> tuple[int, int]:
    """Sample-index and feature-index register widths ``(m, n)``."""

    if num_samples < 1 or num_features < 1:
        raise SimulationConfigError("need at least one sample and one feature")
    return max(1, (num_samples - 1).bit_length()), max(1, (num_features - 1).bit_length())


@dataclass(frozen=True)
class ComparatorCircuit:
    """Reversible ``result ^= [i >= N]`` over an n-qubit index register.

    Local qubit order: index ``0..n-1`` (MSB first), work ancillas, result.
    """

    n: int
    threshold: int
    num_ancillas: int
    gates: tuple[Gate, ...]

    @property
    def num_qubits(self) -> int:
        return self.n + self.num_ancillas + 1

    @property
    def result_qubit(self) -> int:
        return self.n + self.num_ancillas

    def as_circuit(self) -> Circuit:
        return Circuit(self.num_qubits, self.gates)


def build_comparator(n: int, N: int) -> ComparatorCircuit:
    """MSB-first ripple comparison of the index register against the constant N.

    With c = N - 1, i >= N iff i > c iff for some bit k the prefixes above k
    agree, i_k = 1 and c_k = 0. Work ancilla k holds "i and c agree on bits
    0..k"; it is computed with controls whose polarity is c's bit, so the
    constant never needs its own register. Each c_k = 0 stage flips the result,
    then the ancillas are uncomputed in reverse.
    """

    if n < 1:
        raise SimulationConfigError(f"comparator needs n >= 1, got {n}")
    if not 1 <= N <= (1 << n):
        raise SimulationConfigError(f"comparator threshold N={N} outside 1..{1 << n}")

    c_bits = _bits(N - 1, n)
    num_ancillas = n - 1
    ancilla = [n + k for k in range(num_ancillas)]
    result = n + num_ancillas

    compute: list[Gate] = []
    for k in range(num_ancillas):
        controls = [(k, c_bits[k])]
        if k > 0:
            controls.insert(0, (ancilla[k - 1], 1))
        compute.append(x(ancilla[k], controls))

    flips: list[Gate] = []
    for k in range(n):
        if c_bits[k] == 0:
            controls = [(k, 1)]
            if k > 0:
                controls.insert(0, (ancilla[k - 1], 1))
            flips.append(x(result, controls))

    # N == 2^n has no zero bit in c: nothing can reach the threshold.
    gates = (*compute, *flips, *reversed(compute)) if flips else ()
    return ComparatorCircuit(n=n, threshold=N, num_ancillas=num_ancillas, gates=tuple(gates))


@dataclass(frozen=True)
class UniformPreparation:
    state: QuantumState
    attempts: int
    success_probability: float
    gate_count: int


def prepare_uniform(
    n: int,
    N: int,
    mode: PrepMode = "exact",
    rng: np.random.Generator | None = None,
    retry_factor: int = DEFAULT_RETRY_FACTOR,
) -> UniformPreparation:
    """(1/sqrt(N)) sum_{i<N} |i> on a ``feature`` register of n qubits.

    H on every index qubit, the comparator, then the branch with result 0 is
    kept. Exact mode postselects once; sampled mode measures the result qubit
    with ``rng`` and retries until it reads 0.
    """

    if not 1 <= N <= (1 << n):
        raise SimulationConfigError(f"uniform preparation needs 1 <= N <= {1 << n}, got N={N}")

    hadamards = [h(q) for q in range(n)]
    if N == 1 << n:
        state = run_circuit(new_state([(FEATURE_REGISTER, n)]), Circuit(n, tuple(hadamards)))
        return UniformPreparation(state=state, attempts=1, success_probability=1.0, gate_count=n)

    if mode == "sampled" and rng is None:
        raise SimulationConfigError("sampled preparation needs an rng")

    comparator = build_comparator(n, N)
    layout = [Register(FEATURE_REGISTER, n)]
    work_registers = [CMP_RESULT_REGISTER]
    if comparator.num_ancillas:
        layout.append(Register(CMP_WORK_REGISTER, comparator.num_ancillas))
        work_registers.insert(0, CMP_WORK_REGISTER)
    layout.append(Register(CMP_RESULT_REGISTER, 1))

    circuit = Circuit(comparator.num_qubits, (*hadamards, *comparator.gates))
    prepared = run_circuit(new_state(layout), circuit)
    result_qubit = comparator.result_qubit

    attempts = 1
    if mode == "sampled":
        max_attempts = math.ceil(retry_factor * (1 << n) / N)
        while sample(prepared, result_qubit, 1, rng).ones:
            attempts += 1
            if attempts > max_attempts:
                raise PreparationFailedError(
                    f"uniform preparation over {N} of {1 << n} states failed {max_attempts} times"
                )
        logger.debug("uniform preparation n=%d N=%d succeeded after %d attempt(s)", n, N, attempts)

    collapsed, success = postselect(prepared, result_qubit, 0)
    return UniformPreparation(
        state=drop_registers(collapsed, work_registers),
        attempts=attempts,
        success_probability=success,
        gate_count=attempts * len(circuit),
    )


@dataclass(frozen=True)
class EncodedSample:
    sample_index: int
    features: tuple[float, ...]
    state: QuantumState
    gate_count: int
    prep_attempts: int


def encode_sample(
    v: Sequence[float],
    j: int,
    m: int,
    n: int,
    mode: PrepMode = "exact",
    rng: np.random.Generator | None = None,
    retry_factor: int = DEFAULT_RETRY_FACTOR,
) -> EncodedSample:
    """Amplitude-encode feature vector ``v`` as sample ``j``."""

    features = tuple(float(value) for value in v)
    if not features:
        raise EncodingError("feature vector is empty")
    if len(features) > 1 << n:
        raise EncodingError(f"{len(features)} features do not fit a {n}-qubit feature register")
    if not 0 <= j < 1 << m:
        raise EncodingError(f"sample index {j} does not fit a {m}-qubit sample register")
    for i, value in enumerate(features):
        if not (math.isfinite(value) and 0.0 <= value <= 1.0):
            raise EncodingError(f"feature {i} value {value!r} outside [0, 1]")

    prefix = new_state([(SAMPLE_REGISTER, m)])
    prefix_gates = [x(q) for q, bit in enumerate(_bits(j, m)) if bit]
    prefix = run_circuit(prefix, Circuit(m, tuple(prefix_gates)))

    suffix = apply(new_state([(FLAG_REGISTER, 1), (AMPLITUDE_REGISTER, 1)]), x(0))

    uniform = prepare_uniform(n, len(features), mode=mode, rng=rng, retry_factor=retry_factor)
    state = tensor(tensor(prefix, uniform.state), suffix)

    feature_qubits = state.qubits(FEATURE_REGISTER)
    amplitude_qubit = state.qubits(AMPLITUDE_REGISTER)[0]
    rotations = [
        ry(
            amplitude_qubit,
            2.0 * math.asin(value),
            controls=[(q, bit) for q, bit in zip(feature_qubits, _bits(i, n))],
        )
        for i, value in enumerate(features)
        if value != 0.0
    ]
    state = run_circuit(state, Circuit(state.num_qubits, tuple(rotations)))

    return EncodedSample(
        sample_index=j,
        features=features,
        state=state,
        gate_count=len(prefix_gates) + 1 + uniform.gate_count + len(rotations),
        prep_attempts=uniform.attempts,
    )


def swap_last_two(e: EncodedSample | QuantumState) -> QuantumState:
    """Exchange the flag and amplitude qubits."""

    state = e.state if isinstance(e, EncodedSample) else e
    flag = state.qubits(FLAG_REGISTER)[0]
    amplitude = state.qubits(AMPLITUDE_REGISTER)[0]
    return apply(state, swap(flag, amplitude))


@dataclass(frozen=True)
class SwapTestResult:
    p1: float
    exact_p1: float
    mode: PrepMode
    shots: int | None
    ones: int | None
    zeros: int | None
    num_qubits: int
    gate_count: int


def swap_test(
    varphi: QuantumState,
    phi: QuantumState,
    mode: PrepMode = "exact",
    shots: int | None = None,
    rng: np.random.Generator | None = None,
    spectators: Sequence[str] = (SAMPLE_REGISTER,),
) -> SwapTestResult:
    """Swap test on |0>|varphi>|phi>; P(1) = 1/2 - |<varphi|phi>|^2 / 2.

    Registers named in ``spectators`` are left out of the controlled swap, so
    the sample-index kets do not enter the overlap.
    """

    if varphi.layout != phi.layout:
        raise SimulationConfigError("swap test requires identical register layouts")
    if mode == "sampled" and (shots is None or rng is None):
        raise SimulationConfigError("sampled swap test needs shots and an rng")

    composite = tensor(
        tensor(new_state([(SWAP_ANCILLA_REGISTER, 1)]), varphi.relabel("a.")),
        phi.relabel("b."),
    )
    controlled_swaps = [
        swap(a, b, controls=[(0, 1)])
        for register in varphi.layout
        if register.name not in spectators
        for a, b in zip(composite.qubits(f"a.{register.name}"), composite.qubits(f"b.{register.name}"))
    ]
    circuit = Circuit(composite.num_qubits, (h(0), *controlled_swaps, h(0)))
    measured = run_circuit(composite, circuit)
    exact_p1 = probability(measured, 0, 1)

    if mode == "exact":
        return SwapTestResult(
            p1=exact_p1,
            exact_p1=exact_p1,
            mode=mode,
            shots=None,
            ones=None,
            zeros=None,
            num_qubits=composite.num_qubits,
            gate_count=len(circuit),
        )

    counts = sample(measured, 0, int(shots), rng)
    return SwapTestResult(
        p1=counts.ones / counts.shots,
        exact_p1=exact_p1,
        mode=mode,
        shots=counts.shots,
        ones=counts.ones,
        zeros=counts.zeros,
        num_qubits=composite.num_qubits,
        gate_count=len(circuit),
    )
