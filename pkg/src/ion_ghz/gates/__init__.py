# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
# Author: Markus Ritschel
# eMail:  git@markusritschel.de
# Date:   2024-09-03
# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
#
"""Exact unitaries of the native gate set of the trapped-ion processor.

* :func:`r_phi` -- resonant single-qubit rotation
  :math:`R_\\phi(\\theta) = \\exp(-i\\sigma_\\phi\\theta/2)` with
  :math:`\\sigma_\\phi = \\sigma_x\\cos\\phi + \\sigma_y\\sin\\phi`
* :func:`r_z` -- virtual phase rotation :math:`\\exp(-i\\sigma_z\\theta/2)`
* :func:`ms_xx` -- Mølmer-Sørensen interaction
  :math:`\\exp(-i\\frac{\\chi}{2}(\\sigma_x\\otimes\\mathbb{I} + \\mathbb{I}\\otimes\\sigma_x)^2)`

All gates are given in closed form; the global phases of the exponentials are kept.
"""
from dataclasses import dataclass
import logging
import math
import numpy as np

from ..core.exceptions import ValidationError


log = logging.getLogger(__name__)

IDENTITY = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (IDENTITY, PAULI_X, PAULI_Y, PAULI_Z)


@dataclass(frozen=True, eq=False)
class GateMatrix:
    """A gate unitary together with a human-readable label.

    Instances behave like arrays (``np.asarray(gate)``), so they can be passed
    wherever a matrix is expected.
    """
    matrix: np.ndarray
    label: str

    def __post_init__(self):
        self.matrix.flags.writeable = False

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.matrix
        return self.matrix.astype(dtype)

    def __matmul__(self, other):
        return np.asarray(self) @ np.asarray(other)

    def __rmatmul__(self, other):
        return np.asarray(other) @ np.asarray(self)

    @property
    def dim(self):
        return self.matrix.shape[0]

    def __repr__(self):
        return f"GateMatrix({self.label})"


def _finite(**params):
    for name, value in params.items():
        try:
            ok = math.isfinite(value)
        except TypeError:
            ok = False
        if not ok:
            raise ValidationError(f"Gate parameter {name} must be a finite real number, got {value!r}")
    return tuple(float(v) for v in params.values())


def r_phi(theta, phi):
    """Rotation by `theta` about the equatorial axis at azimuth `phi`.

    Example
    -------
    >>> bool(np.allclose(r_phi(np.pi, 0), -1j * PAULI_X))
    True
    >>> bool(np.allclose(r_phi(np.pi/2, np.pi/2), np.array([[1, -1], [1, 1]]) / np.sqrt(2)))
    True
    """
    theta, phi = _finite(theta=theta, phi=phi)
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    m = np.array([[c, -1j * np.exp(-1j * phi) * s],
                  [-1j * np.exp(1j * phi) * s, c]], dtype=complex)
    return GateMatrix(m, f"RPHI(theta={theta!r}, phi={phi!r})")


def r_x(theta):
    """:math:`R_x(\\theta) = R_{\\phi=0}(\\theta)`"""
    return r_phi(theta, 0.0)


def r_y(theta):
    """:math:`R_y(\\theta) = R_{\\phi=\\pi/2}(\\theta)`"""
    return r_phi(theta, math.pi / 2)


def r_z(theta):
    """Virtual Z rotation ``diag(exp(-i theta/2), exp(i theta/2))``.

    Example
    -------
    >>> bool(np.allclose(r_z(2 * np.pi), -np.eye(2)))
    True
    """
    theta, = _finite(theta=theta)
    m = np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])
    return GateMatrix(m, f"RZ(theta={theta!r})")


def ms_xx(chi):
    """Mølmer-Sørensen gate.

    The squared generator equals :math:`2\\mathbb{I} + 2\\sigma_x\\otimes\\sigma_x`, hence

    .. math:: XX(\\chi) = e^{-i\\chi}\\left(\\cos\\chi\\,\\mathbb{I} - i\\sin\\chi\\,\\sigma_x\\otimes\\sigma_x\\right)

    which is fully entangling at :math:`\\chi = \\pi/4`.

    Example
    -------
    >>> psi = ms_xx(np.pi / 4) @ np.array([1, 0, 0, 0])
    >>> bool(np.allclose(psi, np.exp(-1j*np.pi/4) * np.array([1, 0, 0, -1j]) / np.sqrt(2)))
    True
    """
    chi, = _finite(chi=chi)
    xx = np.kron(PAULI_X, PAULI_X)
    m = np.exp(-1j * chi) * (math.cos(chi) * np.eye(4) - 1j * math.sin(chi) * xx)
    return GateMatrix(m, f"MSXX(chi={chi!r})")


def hadamard():
    """The (non-native) Hadamard gate."""
    return GateMatrix(np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2), "H")


def cnot():
    """The (non-native) controlled-NOT, first qubit is the control."""
    m = np.eye(4, dtype=complex)[[0, 1, 3, 2]]
    return GateMatrix(m, "CX")


def ms_generator():
    """Hermitian generator :math:`\\frac{1}{2}(\\sigma_x\\otimes\\mathbb{I} + \\mathbb{I}\\otimes\\sigma_x)^2`
    of :func:`ms_xx` (per unit of :math:`\\chi`)."""
    s = np.kron(PAULI_X, IDENTITY) + np.kron(IDENTITY, PAULI_X)
    return 0.5 * s @ s
