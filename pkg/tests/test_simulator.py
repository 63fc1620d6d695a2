import math

import numpy as np
import pytest

from app.quantum.gates import Circuit, Gate, apply, h, ry, ry_matrix, run_circuit, swap, unitary, x, y
from app.quantum.rng import fresh_seed, make_rng, spawn_rng
from app.quantum.state import (
    ImpossiblePostselectionError,
    QuantumState,
    Register,
    SimulationConfigError,
    drop_registers,
    new_state,
    overlap,
    postselect,
    probability,
    sample,
    tensor,
)


def test_new_state_puts_first_register_in_most_significant_bits() -> None:
    state = new_state([("a", 2), ("b", 1)], "101")

    assert state.num_qubits == 3
    assert state.amplitudes[0b101] == 1
    assert state.norm() == pytest.approx(1.0)
    assert state.qubits("a") == (0, 1)
    assert state.qubits("b") == (2,)


@pytest.mark.parametrize(
    "layout",
    [
        [],
        [("a", 0)],
        [("a", 1), ("a", 2)],
    ],
)
def test_invalid_layouts_are_rejected(layout) -> None:
    with pytest.raises(SimulationConfigError):
        new_state(layout)


def test_new_state_rejects_basis_of_wrong_width() -> None:
    with pytest.raises(SimulationConfigError):
        new_state([("a", 2)], "1")


def test_x_on_qubit_zero_flips_most_significant_bit() -> None:
    state = apply(new_state([("q", 3)]), x(0))

    assert state.amplitude("100") == 1


def test_controlled_gate_respects_polarity() -> None:
    zero_control = apply(new_state([("q", 2)]), x(1, controls=[(0, 0)]))
    one_control = apply(new_state([("q", 2)]), x(1, controls=[(0, 1)]))

    assert zero_control.amplitude("01") == 1
    assert one_control.amplitude("00") == 1


def test_ry_rotation_amplitudes() -> None:
    theta = 2.0 * math.asin(0.6)
    state = apply(new_state([("q", 1)]), ry(0, theta))

    assert state.amplitudes[0].real == pytest.approx(0.8)
    assert state.amplitudes[1].real == pytest.approx(0.6)
    assert np.allclose(ry_matrix(theta) @ ry_matrix(-theta), np.eye(2))


def test_swap_exchanges_qubits() -> None:
    state = apply(new_state([("q", 3)], "100"), swap(0, 2))

    assert state.amplitude("001") == 1


def test_controlled_swap_on_non_adjacent_qubits() -> None:
    state = apply(new_state([("q", 4)], "1100"), swap(1, 3, controls=[(0, 1)]))

    assert state.amplitude("1001") == 1


def test_gate_validation() -> None:
    with pytest.raises(SimulationConfigError):
        x(0, controls=[(0, 1)])
    with pytest.raises(SimulationConfigError):
        unitary(0, np.array([[1, 1], [0, 1]]))
    with pytest.raises(SimulationConfigError):
        Gate("RY", (0,), theta=float("nan"))
    with pytest.raises(SimulationConfigError):
        apply(new_state([("q", 1)]), x(3))


def test_circuit_rejects_gate_outside_its_width() -> None:
    with pytest.raises(SimulationConfigError):
        Circuit(2, (x(2),))
    with pytest.raises(SimulationConfigError):
        run_circuit(new_state([("q", 1)]), Circuit(2, (x(0),)))


def test_random_circuits_preserve_norm() -> None:
    rng = make_rng(7)
    state = new_state([("q", 5)])
    for _ in range(60):
        target, control = rng.choice(5, size=2, replace=False)
        choice = int(rng.integers(3))
        if choice == 0:
            gate = h(int(target))
        elif choice == 1:
            gate = ry(int(target), float(rng.uniform(-math.pi, math.pi)), controls=[(int(control), int(rng.integers(2)))])
        else:
            gate = x(int(target), controls=[(int(control), 1)])
        state = apply(state, gate)

    assert abs(state.norm() - 1.0) < 1e-10


def test_probability_and_postselect() -> None:
    state = apply(new_state([("q", 2)]), h(0))

    assert probability(state, 0, 1) == pytest.approx(0.5)
    collapsed, success = postselect(state, 0, 1)
    assert success == pytest.approx(0.5)
    assert collapsed.amplitude("10") == pytest.approx(1.0)


def test_postselect_impossible_outcome_raises() -> None:
    with pytest.raises(ImpossiblePostselectionError):
        postselect(new_state([("q", 1)]), 0, 1)


def test_sample_is_reproducible_for_same_seed() -> None:
    state = apply(new_state([("q", 1)]), h(0))

    first = sample(state, 0, 1000, make_rng(11))
    second = sample(state, 0, 1000, make_rng(11))

    assert first == second
    assert first.shots == 1000
    with pytest.raises(SimulationConfigError):
        sample(state, 0, 0, make_rng(11))


def test_overlap_requires_matching_layouts() -> None:
    a = new_state([("a", 1)])
    b = new_state([("b", 1)])

    assert overlap(a, a) == pytest.approx(1.0)
    with pytest.raises(SimulationConfigError):
        overlap(a, b)


def test_tensor_and_drop_registers() -> None:
    plus = apply(new_state([("data", 1)]), h(0))
    combined = tensor(plus, new_state([("work", 2)], "10"))

    assert combined.layout == (Register("data", 1), Register("work", 2))
    restored = drop_registers(combined, ["work"])
    assert np.allclose(restored.amplitudes, plus.amplitudes)


def test_drop_registers_refuses_entangled_register() -> None:
    bell = apply(apply(new_state([("a", 1), ("b", 1)]), h(0)), x(1, controls=[(0, 1)]))

    with pytest.raises(SimulationConfigError):
        drop_registers(bell, ["b"])


def test_spawned_streams_depend_only_on_their_key() -> None:
    first = spawn_rng(42, 2, 1, 3).random(4)
    spawn_rng(42, 2, 1, 0).random(100)
    again = spawn_rng(42, 2, 1, 3).random(4)
    other = spawn_rng(42, 2, 1, 2).random(4)

    assert np.array_equal(first, again)
    assert not np.array_equal(first, other)
    assert 0 <= fresh_seed() < 2**64


def test_y_and_generic_unitary_match_their_matrices() -> None:
    start = new_state([("q", 1)])

    assert apply(start, y(0)).amplitudes[1] == pytest.approx(1j)
    rotated = apply(start, unitary(0, ry_matrix(0.7)))
    assert np.allclose(rotated.amplitudes, apply(start, ry(0, 0.7)).amplitudes)


def _random_state(rng, width: int = 3) -> QuantumState:
    amplitudes = rng.normal(size=1 << width) + 1j * rng.normal(size=1 << width)
    return QuantumState((Register("q", width),), amplitudes / np.linalg.norm(amplitudes))


def test_hadamard_and_swap_are_involutions() -> None:
    rng = make_rng(101)
    for _ in range(20):
        state = _random_state(rng)
        target, other = (int(q) for q in rng.choice(3, size=2, replace=False))

        assert np.allclose(apply(apply(state, h(target)), h(target)).amplitudes, state.amplitudes, atol=1e-12)
        twice = apply(apply(state, swap(target, other)), swap(target, other))
        assert np.allclose(twice.amplitudes, state.amplitudes, atol=1e-12)


def test_outcome_probabilities_sum_to_one() -> None:
    rng = make_rng(102)
    for _ in range(20):
        state = _random_state(rng)
        for qubit in range(3):
            assert probability(state, qubit, 0) + probability(state, qubit, 1) == pytest.approx(1.0, abs=1e-12)


def test_overlap_is_conjugate_symmetric() -> None:
    rng = make_rng(103)
    for _ in range(20):
        a = _random_state(rng)
        b = _random_state(rng)

        assert overlap(a, b) == pytest.approx(overlap(b, a).conjugate(), abs=1e-12)
        assert abs(overlap(a, b)) <= 1.0 + 1e-12


@pytest.mark.parametrize("shots", [1024, 8192])
@pytest.mark.parametrize("theta", [0.3, 1.1, 2.0, 2.9])
def test_sample_frequency_stays_within_three_sigma(shots: int, theta: float) -> None:
    state = apply(new_state([("q", 1)]), ry(0, theta))
    p_one = probability(state, 0, 1)

    counts = sample(state, 0, shots, spawn_rng(9, shots, int(theta * 10)))

    sigma = math.sqrt(p_one * (1.0 - p_one) / shots)
    assert abs(counts.ones / shots - p_one) <= 3.0 * sigma
