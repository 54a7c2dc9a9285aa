# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
# Author: Markus Ritschel
# eMail:  git@markusritschel.de
# Date:   2024-09-10
# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
#
import logging
import math
import pytest
import numpy as np

from ion_ghz.circuit import Circuit, GateKind, barrier, cx, gate_matrix, h, rx, rz, transpile
from ion_ghz.core.exceptions import ValidationError
from ion_ghz.experiments import direct_fidelity
from ion_ghz.ghz import build_ghz_circuit
from ion_ghz.noise import NoiseSpec, depolarizing
from ion_ghz.qstate import DensityMatrix, apply_kraus, apply_unitary, ground_state, probabilities
from ion_ghz.simulator import simulate, simulate_statevector

log = logging.getLogger(__name__)


@pytest.fixture(scope="module")
def bell():
    return Circuit(2, [h(0), cx(0, 1)])


def test_noiseless_paths_agree(bell):
    pure = simulate(bell)
    mixed = simulate(bell, NoiseSpec.ideal(), initial=ground_state(2).to_density())
    assert np.abs(pure.elements - mixed.elements).max() < 1e-12, "Ideal density-matrix run differs from state vector"
    assert np.allclose(probabilities(pure), [0.5, 0, 0, 0.5])


def test_ideal_noise_spec_is_exact():
    circuit = build_ghz_circuit(5)
    rho = simulate(circuit, NoiseSpec.ideal())
    assert abs(direct_fidelity(rho, 5) - 1) < 1e-10


def test_depolarizing_matches_kraus_reference(bell):
    noise = NoiseSpec.ideal().replace(p1=0.01, p2=0.05)
    rho = simulate(bell, noise)

    expected = ground_state(2).to_density()
    for instruction in transpile(bell):
        expected = apply_unitary(expected, gate_matrix(instruction), instruction.targets)
        if instruction.kind is not GateKind.RZ:
            p = noise.p1 if len(instruction.targets) == 1 else noise.p2
            expected = apply_kraus(expected, depolarizing(p, len(instruction.targets)), instruction.targets)
    assert np.abs(rho.elements - expected.elements).max() < 1e-12


def test_decay_over_idle_time():
    t1 = 1e-4
    noise = NoiseSpec.ideal().replace(t1_seconds=t1)
    rho = simulate(Circuit(2, [rx(0, math.pi), rx(1, math.pi)]), noise)
    probs = probabilities(rho).reshape(2, 2)
    assert probs[1, :].sum() == pytest.approx(math.exp(-20e-6 / t1), abs=1e-12), \
        "Ion 0 must decay during both pulses"
    assert probs[:, 1].sum() == pytest.approx(math.exp(-10e-6 / t1), abs=1e-12)


def test_virtual_rz_takes_no_time():
    noise = NoiseSpec.ideal().replace(t1_seconds=1e-4)
    circuit = Circuit(1, [rx(0, math.pi)])
    reference = simulate(circuit, noise)
    circuit.append(barrier(0)).append(rz(0, 1.3))
    assert circuit.count(GateKind.RZ) == 1
    assert np.allclose(probabilities(simulate(circuit, noise)), probabilities(reference))


def test_collective_dephasing_applied_once():
    n = 3
    circuit = build_ghz_circuit(n)
    noise = NoiseSpec.ideal().replace(sigma_collective=0.2)
    duration = transpile(circuit).retimed().total_duration()
    sigma = noise.sigma_effective(duration)
    rho = simulate(circuit, noise)
    assert abs(rho.elements[0, -1]) == pytest.approx(0.5 * math.exp(-0.5 * sigma**2 * n**2), abs=1e-12)
    undamped = simulate(circuit, noise, dephase=False)
    assert abs(undamped.elements[0, -1]) == pytest.approx(0.5, abs=1e-12)


def test_noisy_state_is_physical():
    rho = simulate(build_ghz_circuit(4), NoiseSpec(sigma_collective=0.1))
    assert rho.is_physical()
    assert 0.5 < direct_fidelity(rho, 4) < 1


def test_initial_state_mismatch(bell):
    with pytest.raises(ValidationError):
        simulate(bell, initial=ground_state(3))
    with pytest.raises(ValidationError):
        simulate_statevector(bell, DensityMatrix.maximally_mixed(2))


def test_frame_applied():
    circuit = Circuit(1, [h(0)], frame={0: math.pi})
    state = simulate_statevector(circuit)
    expected = np.array([1, -1]) / math.sqrt(2)
    overlap = abs(np.vdot(expected, state.amplitudes))
    assert overlap == pytest.approx(1), "The Z frame must act after the last instruction"
