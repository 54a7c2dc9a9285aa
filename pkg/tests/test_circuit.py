# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
# Author: Markus Ritschel
# eMail:  git@markusritschel.de
# Date:   2024-09-07
# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
#
import logging
import math
import pytest
import numpy as np

from ion_ghz.circuit import (Circuit, GateKind, Instruction, barrier, check_equivalence, cx, decompose_cx, decompose_h,
                             fold_virtual_rz, h, msxx, phase_insensitive_distance, rphi, rx, ry, rz, transpile,
                             unitary_of_circuit)
from ion_ghz.core.exceptions import EquivalenceError, QubitCountError, QubitIndexError, ValidationError
from ion_ghz.ghz import build_ghz_circuit

log = logging.getLogger(__name__)


def random_h_cx_circuit(rng, n=2, depth=10):
    circuit = Circuit(n)
    for _ in range(rng.integers(1, depth + 1)):
        if rng.random() < 0.5:
            circuit.append(h(int(rng.integers(n))))
        else:
            control, target = rng.choice(n, size=2, replace=False)
            circuit.append(cx(int(control), int(target)))
    return circuit


def test_hadamard_decomposition():
    distance = check_equivalence(Circuit(1, [h(0)]), Circuit(1, decompose_h(0)), atol=1e-12)
    assert distance < 1e-12


@pytest.mark.parametrize("control, target", [(0, 1), (1, 0), (0, 2), (2, 1)])
def test_cnot_decomposition(control, target):
    original = Circuit(3, [cx(control, target)])
    native = Circuit(3, decompose_cx(control, target))
    assert native.is_native()
    assert check_equivalence(original, native, atol=1e-12) < 1e-12, f"CX({control}, {target}) decomposition is wrong"


def test_cnot_decomposition_needs_two_qubits():
    with pytest.raises(ValidationError):
        decompose_cx(1, 1)


def test_cnot_uses_one_ms_gate():
    native = Circuit(2, decompose_cx(0, 1))
    assert native.count(GateKind.MSXX) == 1
    assert native.instructions[1].params == (math.pi / 4,)


def test_random_circuits_transpile():
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        circuit = random_h_cx_circuit(rng)
        native = transpile(circuit)
        assert native.is_native()
        assert check_equivalence(circuit, native) < 1e-8
        assert check_equivalence(circuit, transpile(circuit, fold=True)) < 1e-8, "Folding changed the unitary"


def test_transpile_keeps_native_gates():
    circuit = Circuit(2, [rx(0, 0.3), barrier(0, 1), msxx(0, 1), rz(1, 0.2)], frame={0: 0.5})
    native = transpile(circuit)
    assert native.instructions == circuit.instructions
    assert native.frame == {0: 0.5}


def test_fold_examples():
    folded = fold_virtual_rz(Circuit(1, [rz(0, 0.4), rphi(0, 1.0, 0.3), rz(0, 0.1), rx(0, 0.5)]))
    assert folded.count(GateKind.RZ) == 0
    assert folded.instructions[0].params == pytest.approx((1.0, 0.3 - 0.4))
    assert folded.instructions[1].params == pytest.approx((0.5, -0.5))
    assert folded.frame == pytest.approx({0: 0.5})


def test_fold_materializes_frame_before_ms():
    folded = fold_virtual_rz(Circuit(2, [rz(0, 0.7), rz(1, 2 * math.pi), msxx(0, 1), rx(0, 0.2)]))
    kinds = [i.kind for i in folded]
    assert kinds == [GateKind.RZ, GateKind.MSXX, GateKind.RPHI], "Only the non-trivial frame must become an RZ"
    assert folded.instructions[0].targets == (0,)
    assert folded.instructions[2].params == pytest.approx((0.2, 0.0))
    assert folded.frame == pytest.approx({1: 2 * math.pi})


def test_fold_rejects_non_native():
    with pytest.raises(ValidationError):
        fold_virtual_rz(Circuit(1, [h(0)]))


@pytest.mark.parametrize("n", [3, 5])
def test_fold_ghz(n):
    circuit = build_ghz_circuit(n)
    native = transpile(circuit)
    folded = transpile(circuit, fold=True)
    assert folded.count(GateKind.RZ) <= native.count(GateKind.RZ)
    assert check_equivalence(circuit, folded) < 1e-8

    ground = np.zeros(2**n)
    ground[0] = 1
    probs = np.abs(unitary_of_circuit(native, include_frame=False) @ ground) ** 2
    probs_folded = np.abs(unitary_of_circuit(folded, include_frame=False) @ ground) ** 2
    assert np.abs(probs - probs_folded).max() < 1e-12, "A trailing Z frame must not change the populations"


def test_equivalence_failure():
    with pytest.raises(EquivalenceError):
        check_equivalence(Circuit(1, [h(0)]), Circuit(1, [rx(0, math.pi)]))
    with pytest.raises(EquivalenceError):
        check_equivalence(Circuit(1), Circuit(2))


def test_phase_insensitive_distance():
    u = unitary_of_circuit(Circuit(2, [h(0), cx(0, 1)]))
    assert phase_insensitive_distance(u, np.exp(0.3j) * u) < 1e-14


def test_instruction_validation():
    with pytest.raises(ValidationError):
        Instruction("H", (0, 1))
    with pytest.raises(ValidationError):
        Instruction("FOO", (0,))
    with pytest.raises(ValidationError):
        Instruction(GateKind.RPHI, (0,), (1.0,))
    with pytest.raises(ValidationError):
        Instruction(GateKind.RZ, (0,), (1.0,), duration=1e-6)
    with pytest.raises(ValidationError):
        rx(0, math.nan)
    with pytest.raises(QubitIndexError):
        cx(1, 1)


def test_circuit_validation():
    with pytest.raises(QubitIndexError):
        Circuit(2).append(h(2))
    with pytest.raises(QubitCountError):
        Circuit(13)
    with pytest.raises(QubitCountError):
        unitary_of_circuit(Circuit(11))


def test_durations():
    circuit = Circuit(2, [rx(0, math.pi), ry(1, -math.pi / 2), rz(0, 1.0), msxx(0, 1)])
    assert circuit.total_duration() == pytest.approx(10e-6 + 5e-6 + 200e-6)
    slow = circuit.retimed(dur_1q=20e-6, dur_2q=100e-6)
    assert slow.total_duration() == pytest.approx(20e-6 + 10e-6 + 100e-6)
    assert circuit.total_duration() == pytest.approx(215e-6), "retimed must return a copy"


def test_gate_counts_and_copy():
    circuit = Circuit(2).append(h(0)).append(cx(0, 1)).append(h(1))
    assert circuit.gate_counts() == {"H": 2, "CX": 1}
    assert list(circuit.gate_counts()) == ["H", "CX"]
    clone = circuit.copy().append(rz(0, 1.0))
    assert len(clone) == 4 and len(circuit) == 3
