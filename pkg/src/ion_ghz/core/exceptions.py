# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
# Author: Markus Ritschel
# eMail:  git@markusritschel.de
# Date:   2024-09-02
# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
#
"""Exceptions raised throughout :mod:`ion_ghz`.

Each class also derives from the closest builtin exception, so callers can
catch either ``ValidationError`` or plain ``ValueError``.
"""
import logging


log = logging.getLogger(__name__)


class IonGhzError(Exception):
    """Base class of all errors raised by this package."""


class ValidationError(IonGhzError, ValueError):
    """An argument violates the documented preconditions."""


class QubitCountError(ValidationError):
    """The number of qubits is outside of the supported range."""


class QubitIndexError(IonGhzError, IndexError):
    """A qubit index is duplicated or out of range."""


class CalibrationError(IonGhzError, ValueError):
    """A calibration quantity cannot be computed (e.g. singular confusion matrix)."""


class FitError(IonGhzError, ValueError):
    """A least-squares fit is ill-posed."""


class CircuitParseError(ValidationError):
    """Malformed circuit text.

    Parameters
    ----------
    msg : str
        Description of the problem.
    line_number : int, optional
        1-based line number of the offending line.
    """

    def __init__(self, msg, line_number=None):
        self.line_number = line_number
        if line_number is not None:
            msg = f"line {line_number}: {msg}"
        super().__init__(msg)


class ConfigError(ValidationError):
    """Malformed run configuration."""


class EquivalenceError(IonGhzError, RuntimeError):
    """A transpiled circuit is not equivalent to its source circuit."""
