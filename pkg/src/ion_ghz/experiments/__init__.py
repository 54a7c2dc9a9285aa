# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
# Author: Markus Ritschel
# eMail:  git@markusritschel.de
# Date:   2024-09-11
# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
#
"""The two-experiment GHZ fidelity protocol and the noise calibration.

- population experiment: A = P(0...0) + P(1...1)
- parity experiment: amplitude B of the N-fold parity oscillation
- F = A/2 + B/2 and the witness <W> = 1 - 2F
"""
import logging


log = logging.getLogger(__name__)

from .readout import Readout, readout
from .population import (PopulationResult, population_experiment, population_from_probabilities,
                         population_from_state)
from .parity import (ParityFit, ParityScanResult, analysis_circuit, default_phases, fit_parity,
                     frequency_residuals, parity_of_distribution, parity_scan, parity_scan_from_state,
                     parity_stderr, parity_weights, select_parity_frequency)
from .fidelity import (FidelityReport, WitnessResult, direct_fidelity, fidelity_and_witness, ghz_coherence,
                       protocol_check)
from .calibration import (TABLE1, CalibrationResult, calibrate_noise_to_table1, simulated_fidelities,
                          simulated_fidelity)
