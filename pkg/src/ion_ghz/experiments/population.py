# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
# Author: Markus Ritschel
# eMail:  git@markusritschel.de
# Date:   2024-09-11
# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
#
"""Population experiment: weight of the prepared state in Span(|0...0>, |1...1>)."""
from dataclasses import dataclass
import logging
import math
import numpy as np
import pandas as pd

from ..qstate import bitstring
from ..simulator import simulate
from .readout import readout


log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PopulationResult:
    """Result of the population experiment.

    ``a_value = p_all_zero + p_all_one``; `stderr` is the binomial standard
    error of `a_value` (0 in exact mode).
    """
    a_value: float
    p_all_zero: float
    p_all_one: float
    shots: int
    stderr: float
    probabilities: np.ndarray
    raw_a_value: float
    spam_corrected: bool = False

    @property
    def n_qubits(self):
        return self.probabilities.size.bit_length() - 1

    def to_frame(self):
        """One row per basis state: ``bitstring, probability, stderr``."""
        n = self.n_qubits
        probs = self.probabilities
        if self.shots:
            stderr = np.sqrt(probs * (1 - probs) / self.shots)
        else:
            stderr = np.zeros_like(probs)
        return pd.DataFrame({
            'bitstring': [bitstring(i, n) for i in range(probs.size)],
            'probability': probs,
            'stderr': stderr,
        })


def _binomial_stderr(p, shots):
    if not shots:
        return 0.0
    return math.sqrt(max(p * (1 - p), 0.0) / shots)


def population_from_probabilities(probs, shots=0, raw=None, spam_corrected=False):
    """Evaluate A on an outcome distribution.

    Example
    -------
    >>> population_from_probabilities(np.full(4, 0.25)).a_value
    0.5
    """
    probs = np.asarray(probs, dtype=float)
    raw = probs if raw is None else np.asarray(raw, dtype=float)
    p0, p1 = float(probs[0]), float(probs[-1])
    a = p0 + p1
    return PopulationResult(a_value=a, p_all_zero=p0, p_all_one=p1, shots=int(shots),
                            stderr=_binomial_stderr(a, shots), probabilities=probs,
                            raw_a_value=float(raw[0] + raw[-1]), spam_corrected=spam_corrected)


def population_from_state(state, noise=None, shots=0, seed=None, spam_correct=True):
    """Read out `state` and evaluate A; see :func:`readout`."""
    result = readout(state, noise, shots, seed, spam_correct)
    return population_from_probabilities(result.probabilities, shots, result.raw, result.spam_corrected)


def population_experiment(circuit, noise=None, shots=0, seed=None, spam_correct=True):
    """Prepare `circuit` under `noise`, measure all ions and return A.

    Parameters
    ----------
    circuit : Circuit
        The preparation circuit.
    noise : NoiseSpec, optional
    shots : int
        0 for exact (infinite-shot) probabilities.
    seed : int, optional
    spam_correct : bool
    """
    rho = simulate(circuit, noise)
    result = population_from_state(rho, noise, shots, seed, spam_correct)
    log.info(f"Population experiment ({circuit.n_qubits} ions, shots={shots or 'exact'}): "
             f"A = {result.a_value:.6f} +- {result.stderr:.2g}")
    return result
