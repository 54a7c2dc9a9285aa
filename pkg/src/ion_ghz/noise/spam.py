# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
# Author: Markus Ritschel
# eMail:  git@markusritschel.de
# Date:   2024-09-04
# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
#
"""Readout errors: per-qubit confusion matrices and their inversion (SPAM correction)."""
from dataclasses import dataclass
import logging
import numpy as np

from ..core.exceptions import CalibrationError, ValidationError
from ..linalg import apply_to_axes, inv


log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConfusionMatrix:
    """Readout confusion of a single ion.

    ``matrix[observed, true]``; `eps_bright` is the probability of reading a
    bright ion (|0>) as dark, `eps_dark` the probability of reading a dark
    ion (|1>) as bright.

    Example
    -------
    >>> ConfusionMatrix(0.01, 0.02).matrix
    array([[0.99, 0.02],
           [0.01, 0.98]])
    """
    eps_bright: float = 0.0
    eps_dark: float = 0.0

    def __post_init__(self):
        for name in ("eps_bright", "eps_dark"):
            value = getattr(self, name)
            if not 0 <= value <= 1:
                raise ValidationError(f"{name} must be in [0, 1], got {value!r}")

    @property
    def matrix(self):
        eb, ed = self.eps_bright, self.eps_dark
        return np.array([[1 - eb, ed], [eb, 1 - ed]])

    @property
    def is_identity(self):
        return self.eps_bright == 0 and self.eps_dark == 0


@inv.register(ConfusionMatrix)
def _(x):
    """Invert a :class:`ConfusionMatrix`; singular iff ``eps_bright + eps_dark == 1``."""
    det = 1 - x.eps_bright - x.eps_dark
    if abs(det) < 1e-12:
        raise CalibrationError(f"Confusion matrix {x} is singular (eps_bright + eps_dark = 1)")
    return inv(x.matrix)


def _per_qubit(confusion, n):
    if isinstance(confusion, ConfusionMatrix):
        return [confusion] * n
    confusion = list(confusion)
    if len(confusion) != n:
        raise ValidationError(f"Got {len(confusion)} confusion matrices for {n} qubits")
    return confusion


def _as_tensor(probs):
    probs = np.asarray(probs, dtype=float)
    n = probs.size.bit_length() - 1
    if probs.ndim != 1 or probs.size < 2 or 2**n != probs.size:
        raise ValidationError(f"Probability vector must have length 2^n, got shape {probs.shape}")
    return probs.reshape((2,) * n), n


def _apply_matrices(probs, matrices):
    tensor, n = _as_tensor(probs)
    for q, m in enumerate(matrices):
        tensor = apply_to_axes(tensor, m, [q])
    return tensor.ravel()


def apply_spam(probs, confusion):
    """Map true outcome probabilities to observed ones, :math:`(\\bigotimes_i M_i)\\,p`.

    The tensor product acts qubit by qubit; the full :math:`2^n \\times 2^n`
    matrix is never formed.

    Parameters
    ----------
    probs : array-like
        Probability vector of length 2^n.
    confusion : ConfusionMatrix or sequence of ConfusionMatrix
        One matrix for all qubits, or one per qubit (qubit 0 first).

    Example
    -------
    >>> apply_spam([1, 0], ConfusionMatrix(0.01, 0.02))
    array([0.99, 0.01])
    """
    tensor, n = _as_tensor(probs)
    return _apply_matrices(probs, [c.matrix for c in _per_qubit(confusion, n)])


def invert_spam(probs, confusion, return_raw=False):
    """Undo readout errors: apply :math:`\\bigotimes_i M_i^{-1}`, clamp and renormalize.

    Parameters
    ----------
    probs : array-like
        Observed probabilities (length 2^n).
    confusion : ConfusionMatrix or sequence of ConfusionMatrix
    return_raw : bool
        Also return the unclamped result of the linear inversion.

    Returns
    -------
    numpy.ndarray or tuple of numpy.ndarray
        The corrected distribution, or ``(corrected, raw)`` if `return_raw`.

    Raises
    ------
    CalibrationError
        If one of the confusion matrices is singular.
    """
    tensor, n = _as_tensor(probs)
    raw = _apply_matrices(probs, [inv(c) for c in _per_qubit(confusion, n)])
    corrected = np.clip(raw, 0.0, None)
    total = corrected.sum()
    if total <= 0:
        raise CalibrationError("SPAM inversion produced no positive probability mass.")
    if raw.min() < -1e-12:
        log.debug(f"SPAM inversion clamped negative mass {raw[raw < 0].sum():.3e}")
    corrected = corrected / total
    if return_raw:
        return corrected, raw
    return corrected
