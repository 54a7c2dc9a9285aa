# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
# Author: Markus Ritschel
# eMail:  git@markusritschel.de
# Date:   2024-09-11
# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
#
"""Fluorescence readout of a simulated register: readout errors, shots, SPAM correction."""
from dataclasses import dataclass
import logging
import numpy as np

from ..core.exceptions import ValidationError
from ..noise import apply_spam, invert_spam
from ..qstate import outcome_frequencies, probabilities, sample_shots


log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Readout:
    """Outcome distribution of one measurement setting.

    Attributes
    ----------
    probabilities : numpy.ndarray
        The distribution used for analysis (SPAM-corrected if requested).
    raw : numpy.ndarray
        The observed distribution before SPAM correction.
    unclamped : numpy.ndarray or None
        Linear SPAM inversion before clamping negative entries.
    shots : int
        0 in exact (infinite-shot) mode.
    spam_corrected : bool
    """
    probabilities: np.ndarray
    raw: np.ndarray
    unclamped: np.ndarray | None
    shots: int
    spam_corrected: bool


def readout(state, noise=None, shots=0, seed=None, spam_correct=True):
    """Measure all ions of `state` in the computational basis.

    Parameters
    ----------
    state : DensityMatrix or StateVector
    noise : NoiseSpec, optional
        Source of the readout confusion matrices; ``None`` is a perfect readout.
    shots : int
        Number of repetitions; 0 returns exact probabilities.
    seed : int or numpy.random.SeedSequence, optional
    spam_correct : bool
        Invert the confusion matrices on the observed distribution.

    Example
    -------
    >>> from ..qstate import ground_state
    >>> readout(ground_state(1)).probabilities
    array([1., 0.])
    """
    if shots < 0:
        raise ValidationError(f"Number of shots must be >= 0, got {shots}")
    probs = probabilities(state)
    n = state.n_qubits
    confusion = noise.confusion(n) if noise is not None and noise.has_readout_error else None
    observed = apply_spam(probs, confusion) if confusion is not None else probs
    if shots:
        observed = outcome_frequencies(sample_shots(observed, shots, seed), observed.size)
    if confusion is None or not spam_correct:
        return Readout(observed, observed, None, int(shots), False)
    corrected, unclamped = invert_spam(observed, confusion, return_raw=True)
    return Readout(corrected, observed, unclamped, int(shots), True)
