# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
# Author: Markus Ritschel
# eMail:  git@markusritschel.de
# Date:   2024-09-09
# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
#
import logging
import math
import pytest
import numpy as np

from ion_ghz.circuit import GateKind, transpile
from ion_ghz.core.exceptions import QubitCountError, ValidationError
from ion_ghz.experiments import direct_fidelity, ghz_coherence
from ion_ghz.ghz import GhzSpec, build_ghz_circuit, ghz_sign, ideal_ghz_state
from ion_ghz.noise import collective_dephasing
from ion_ghz.simulator import simulate_statevector

log = logging.getLogger(__name__)


def prepared(n, include_dd=True, detuning_phase=0.0, fold=False):
    circuit = build_ghz_circuit(GhzSpec(n, include_dd, detuning_phase))
    if fold:
        circuit = transpile(circuit, fold=True)
    return simulate_statevector(circuit)


@pytest.mark.parametrize("n", range(2, 9))
@pytest.mark.parametrize("include_dd", [True, False])
def test_ideal_preparation(n, include_dd):
    fidelity = direct_fidelity(prepared(n, include_dd), n)
    assert abs(fidelity - 1) < 1e-10, f"GHZ-{n} (dd={include_dd}) prepared with fidelity {fidelity}"


@pytest.mark.parametrize("n", [3, 6])
def test_native_preparation(n):
    assert abs(direct_fidelity(prepared(n, fold=True), n) - 1) < 1e-10, "Folded native circuit must prepare GHZ"


def test_target_state():
    for n in range(2, 11):
        psi = ideal_ghz_state(n).amplitudes
        assert np.isclose(abs(psi[0]) ** 2 + abs(psi[-1]) ** 2, 1)
        assert np.isclose(psi[-1] / psi[0], ghz_sign(n))


def test_circuit_structure():
    circuit = build_ghz_circuit(4)
    assert circuit.count(GateKind.CX) == 3
    assert circuit.count(GateKind.H) == 1
    assert circuit.count(GateKind.RPHI) == 2 + 3, "Echo layers act on all ions entangled so far"
    assert build_ghz_circuit(GhzSpec(4, include_dd=False)).count(GateKind.RPHI) == 0
    assert build_ghz_circuit(2).count(GateKind.RPHI) == 0


@pytest.mark.parametrize("n", [1, 11, True, 3.0])
def test_invalid_size(n):
    with pytest.raises(QubitCountError):
        GhzSpec(n)


def test_invalid_detuning():
    with pytest.raises(ValidationError):
        GhzSpec(3, detuning_phase=math.inf)


@pytest.mark.parametrize("n", [2, 4, 8])
def test_coherence_decay(n):
    rho = ideal_ghz_state(n).to_density()
    sigma = 0.1
    dephased = collective_dephasing(sigma, n)(rho)
    expected = 0.5 * math.exp(-0.5 * sigma**2 * n**2)
    assert abs(abs(ghz_coherence(dephased)) - expected) < 1e-12, "Coherence must decay as exp(-sigma^2 N^2 / 2)"
    assert np.isclose(direct_fidelity(dephased, n), 0.5 + expected)


def test_echo_cancels_detuning_exactly():
    delta = 0.05
    assert direct_fidelity(prepared(4, False, delta), 4) == pytest.approx(math.cos(5 * delta / 2) ** 2, abs=1e-12)
    assert direct_fidelity(prepared(4, True, delta), 4) == pytest.approx(math.cos(delta / 2) ** 2, abs=1e-12)


@pytest.mark.parametrize("n", [4, 6, 8])
def test_echo_improves_fidelity(n):
    delta = 0.05
    without = direct_fidelity(prepared(n, False, delta), n)
    with_dd = direct_fidelity(prepared(n, True, delta), n)
    accumulated = n * (n - 1) / 2 - 1          # phases of 2, 3, ..., n-1 ions
    assert without == pytest.approx(math.cos(accumulated * delta / 2) ** 2, abs=1e-12)
    assert with_dd > without, f"Echo layers must reduce the detuning error for N={n}"
