# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
# Author: Markus Ritschel
# eMail:  git@markusritschel.de
# Date:   2024-09-14
# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
#
import logging
import math
import pytest
import numpy as np

from ion_ghz.core.exceptions import FitError, ValidationError
from ion_ghz.experiments import (FidelityReport, analysis_circuit, default_phases, direct_fidelity,
                                 fidelity_and_witness, fit_parity, parity_of_distribution, parity_scan,
                                 parity_scan_from_state, parity_weights, population_experiment,
                                 population_from_probabilities, population_from_state, protocol_check, readout,
                                 select_parity_frequency)
from ion_ghz.ghz import build_ghz_circuit, ideal_ghz_state
from ion_ghz.noise import NoiseSpec
from ion_ghz.qstate import DensityMatrix, ground_state
from ion_ghz.simulator import simulate

log = logging.getLogger(__name__)


@pytest.fixture(scope="module")
def noisy_ghz3():
    noise = NoiseSpec(p2=0.03, sigma_collective=0.12)
    return simulate(build_ghz_circuit(3), noise), noise


# --- population experiment ---

@pytest.mark.parametrize("n", [2, 5, 8])
def test_population_ideal(n):
    result = population_experiment(build_ghz_circuit(n))
    assert abs(result.a_value - 1) < 1e-12
    assert result.stderr == 0


def test_population_mixed():
    result = population_from_state(DensityMatrix.maximally_mixed(2))
    assert result.a_value == pytest.approx(0.5)
    assert result.a_value == result.p_all_zero + result.p_all_one


def test_population_two_qubit_depolarizing():
    result = population_experiment(build_ghz_circuit(2), NoiseSpec(p2=0.0493))
    assert 0.93 < result.a_value < 1.0, f"A = {result.a_value} outside of the expected range"
    assert result.spam_corrected


def test_population_raw_and_corrected():
    noise = NoiseSpec.ideal().replace(eps_bright=0.02, eps_dark=0.03)
    corrected = population_experiment(build_ghz_circuit(3), noise)
    raw = population_experiment(build_ghz_circuit(3), noise, spam_correct=False)
    assert corrected.a_value == pytest.approx(1, abs=1e-10), "Exact-mode SPAM correction must be lossless"
    assert raw.a_value < 1
    assert corrected.raw_a_value == pytest.approx(raw.a_value)


def test_population_shots():
    result = population_experiment(build_ghz_circuit(3), NoiseSpec(), shots=500, seed=3)
    again = population_experiment(build_ghz_circuit(3), NoiseSpec(), shots=500, seed=3)
    assert result.a_value == again.a_value, "Same seed must give the same counts"
    assert result.stderr == pytest.approx(math.sqrt(result.a_value * (1 - result.a_value) / 500))
    frame = result.to_frame()
    assert list(frame.columns) == ["bitstring", "probability", "stderr"]
    assert frame.bitstring.iloc[-1] == "111"


def test_readout_negative_shots():
    with pytest.raises(ValidationError):
        readout(ground_state(1), shots=-1)


# --- parity ---

def test_parity_of_distribution():
    assert parity_of_distribution([1, 0, 0, 0]) == 1
    assert parity_of_distribution([0, 1]) == -1
    assert parity_of_distribution(np.full(4, 0.25)) == 0


def test_parity_ghz2_three_phases():
    phases = [0, math.pi / 4, math.pi / 2]
    scan = parity_scan(build_ghz_circuit(2), 2, phases=phases)
    assert scan.fitted_b == pytest.approx(1, abs=1e-9)
    expected = np.cos(2 * np.array(phases) + scan.fitted_phi0)
    assert np.abs(scan.parities - expected).max() < 1e-9


@pytest.mark.parametrize("n", range(2, 9))
def test_parity_ideal_ghz(n):
    scan = parity_scan(build_ghz_circuit(n))
    assert abs(scan.fitted_b - 1) < 1e-9, f"GHZ-{n}: B = {scan.fitted_b}"
    assert scan.rms_residual < 1e-9
    assert select_parity_frequency(scan.phases, scan.parities, n + 3) == n, "Parity must oscillate with frequency N"


def test_parity_mixed_state():
    scan = parity_scan_from_state(DensityMatrix.maximally_mixed(3), 3)
    assert np.abs(scan.parities).max() < 1e-12
    assert scan.fitted_b < 1e-12


def test_parity_matches_coherence(noisy_ghz3):
    rho, _ = noisy_ghz3
    scan = parity_scan_from_state(rho, 3)
    assert scan.fitted_b == pytest.approx(2 * abs(rho.elements[0, -1]), abs=1e-9), \
        "B must equal twice the GHZ coherence for ideal analysis pulses"


def test_parity_scan_frame(noisy_ghz3):
    rho, noise = noisy_ghz3
    scan = parity_scan_from_state(rho, 3, noise, shots=200, seed=1)
    frame = scan.to_frame()
    assert list(frame.columns) == ["phi_radians", "parity", "stderr"]
    assert len(frame) == 13
    assert np.all(np.abs(scan.parities) <= 1 + 1e-12)
    assert scan.fitted_b <= 1 + 3 * scan.stderrs.max()


def test_analysis_circuit():
    circuit = analysis_circuit(3, 0.2, qubits=[0, 2])
    assert len(circuit) == 2
    assert circuit.instructions[1].params == (math.pi / 2, 0.2)


def test_default_phases():
    phases = default_phases(2)
    assert phases.size == 9
    assert phases[0] == 0 and phases[-1] < 2 * math.pi


# --- fit ---

def test_fit_exact_recovery():
    phi = np.linspace(0, 2 * np.pi, 13, endpoint=False)
    fit = fit_parity(phi, 0.8 * np.cos(3 * phi + 0.4), 3)
    assert abs(fit.b - 0.8) < 1e-9 and abs(fit.phi0 - 0.4) < 1e-9


def test_fit_zero_data():
    phi = np.linspace(0, 2 * np.pi, 9, endpoint=False)
    fit = fit_parity(phi, np.zeros(9), 2)
    assert fit.b == 0


def test_fit_errors():
    with pytest.raises(FitError):
        fit_parity([0, 1], [1, 0], 2)
    with pytest.raises(FitError):
        fit_parity([0, math.pi, 2 * math.pi], [1, 1, 1], 2)
    with pytest.raises(FitError):
        fit_parity([0, 1, 2], [1, 0], 2)


def test_fit_noisy_data():
    rng = np.random.default_rng(99)
    phi = np.linspace(0, 2 * np.pi, 25, endpoint=False)
    truth = 0.7 * np.cos(4 * phi - 1.1)
    hits = sum(abs(fit_parity(phi, truth + rng.normal(0, 0.01, phi.size), 4).b - 0.7) < 0.01 for _ in range(1000))
    assert hits >= 950, f"Only {hits} of 1000 fits recovered B within 0.01"


@pytest.mark.parametrize("n", range(2, 9))
def test_frequency_selection(n):
    phi = default_phases(n)
    assert select_parity_frequency(phi, 0.6 * np.cos(n * phi + 0.3), 2 * n) == n


# --- fidelity and witness ---

def test_fidelity_and_witness_examples():
    w = fidelity_and_witness(1, 1)
    assert w.fidelity == 1 and w.witness == -1 and w.entangled
    w = fidelity_and_witness(0.579, 0.579)
    assert w.witness == pytest.approx(-0.158) and w.entangled
    w = fidelity_and_witness(0.5, 0.4)
    assert w.fidelity == pytest.approx(0.45) and not w.entangled


def test_fidelity_out_of_range_warns(caplog):
    with caplog.at_level(logging.WARNING):
        fidelity_and_witness(1.2, 0.9)
    assert "outside of [0, 1]" in caplog.text


def test_direct_fidelity_examples():
    assert direct_fidelity(DensityMatrix.maximally_mixed(2), 2) == pytest.approx(0.25)
    assert direct_fidelity(ideal_ghz_state(4).to_density(), 4) == pytest.approx(1)
    with pytest.raises(ValidationError):
        direct_fidelity(DensityMatrix.maximally_mixed(2), 3)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_protocol_matches_direct_fidelity(n):
    # perfect analysis pulses and lossless SPAM correction: (A + B)/2 is exact
    noise = NoiseSpec(p1=0.0, t1_seconds=math.inf, p2=0.03, sigma_collective=0.1)
    rho = simulate(build_ghz_circuit(n), noise)
    population = population_from_state(rho, noise)
    scan = parity_scan_from_state(rho, n, noise)
    report = FidelityReport.from_results(population, scan, direct=direct_fidelity(rho, n))
    assert abs(protocol_check(report)) < 1e-9
    assert report.witness == pytest.approx(1 - 2 * report.fidelity)


def test_protocol_bounds(noisy_ghz3):
    rho, noise = noisy_ghz3
    population = population_from_state(rho, noise)
    scan = parity_scan_from_state(rho, 3, noise)
    p0, p1 = rho.elements[0, 0].real, rho.elements[-1, -1].real
    assert population.a_value <= 1 + 1e-9
    assert scan.fitted_b <= 1
    assert scan.fitted_b <= 2 * math.sqrt(p0 * p1) + 1e-9, "B violates the Cauchy-Schwarz bound"


def test_report_dict(noisy_ghz3):
    rho, noise = noisy_ghz3
    report = FidelityReport.from_results(population_from_state(rho, noise), parity_scan_from_state(rho, 3, noise),
                                         seed=5)
    content = report.to_dict()
    assert content["verdict"] == "genuinely entangled"
    assert content["fidelity"] == pytest.approx((content["a_value"] + content["b_value"]) / 2)
    with pytest.raises(ValidationError):
        protocol_check(report)


def test_population_from_probabilities():
    result = population_from_probabilities([0.4, 0.1, 0.1, 0.4], shots=100)
    assert result.a_value == pytest.approx(0.8)
    assert result.stderr == pytest.approx(0.04)


# --- shot statistics ---

def test_b_stderr_scales_with_shots(noisy_ghz3):
    rho, noise = noisy_ghz3
    mean_stderr, spread = {}, {}
    for shots in (100, 1000, 10000):
        seeds = np.random.SeedSequence(2024).spawn(100)
        scans = [parity_scan_from_state(rho, 3, noise, shots=shots, seed=s) for s in seeds]
        mean_stderr[shots] = np.mean([s.b_stderr for s in scans])
        spread[shots] = np.std([s.fitted_b for s in scans], ddof=1)
    for low, high in [(100, 1000), (1000, 10000)]:
        ratio = mean_stderr[low] / mean_stderr[high]
        assert abs(ratio / math.sqrt(10) - 1) < 0.2, f"stderr ratio {ratio:.3f} for shots {low} -> {high}"
    assert spread[1000] == pytest.approx(mean_stderr[1000], rel=0.35), "Reported error must match the scatter"


def test_parity_weights_undo_readout_errors():
    noise = NoiseSpec.ideal().replace(eps_bright=0.03, eps_dark=0.07)
    probs = np.abs(ideal_ghz_state(3).amplitudes) ** 2
    observed = readout(ideal_ghz_state(3).to_density(), noise, spam_correct=False).probabilities
    weights = parity_weights(3, noise.confusion(3))
    assert observed @ weights == pytest.approx(parity_of_distribution(probs), abs=1e-12)


def test_corrected_parity_stderr_is_inflated():
    noise = NoiseSpec.ideal().replace(eps_bright=0.05, eps_dark=0.05)
    rho = DensityMatrix.maximally_mixed(2)
    corrected = parity_scan_from_state(rho, 2, noise, [0.0, 1.0], shots=500, seed=3)
    raw = parity_scan_from_state(rho, 2, noise, [0.0, 1.0], shots=500, seed=3, spam_correct=False)
    assert np.allclose(corrected.stderrs, raw.stderrs / 0.9**2, rtol=1e-9), \
        "The SPAM inversion must scale the parity error by 1/(1 - 2 eps)^N"


def test_corrected_parity_stderr_matches_scatter():
    noise = NoiseSpec.ideal().replace(eps_bright=0.05, eps_dark=0.05)
    rho = DensityMatrix.maximally_mixed(2)
    seeds = np.random.SeedSequence(11).spawn(300)
    scans = [parity_scan_from_state(rho, 2, noise, [0.0], shots=1000, seed=s) for s in seeds]
    scatter = np.std([s.parities[0] for s in scans], ddof=1)
    reported = np.mean([s.stderrs[0] for s in scans])
    assert reported == pytest.approx(1 / (0.81 * math.sqrt(1000)), rel=0.02)
    assert scatter == pytest.approx(reported, rel=0.15), f"scatter {scatter:.4f} vs reported {reported:.4f}"
