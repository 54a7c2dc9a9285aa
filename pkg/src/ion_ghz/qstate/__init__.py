# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
# Author: Markus Ritschel
# eMail:  git@markusritschel.de
# Date:   2024-09-02
# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
#
"""State containers and the operations acting on them."""
import logging


log = logging.getLogger(__name__)

from .states import (MAX_QUBITS, DensityMatrix, Outcome, StateVector, apply_kraus, apply_unitary,
                     basis_popcounts, bitstring, check_targets, ground_state, outcome_frequencies,
                     probabilities, sample_shots)
