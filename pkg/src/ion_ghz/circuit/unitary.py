# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
# Author: Markus Ritschel
# eMail:  git@markusritschel.de
# Date:   2024-09-06
# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
#
import logging
import numpy as np

from ..core.exceptions import QubitCountError, ValidationError
from ..gates import cnot, hadamard, ms_xx, r_phi, r_z
from ..linalg import apply_to_axes
from .ir import GateKind


log = logging.getLogger(__name__)

MAX_UNITARY_QUBITS = 10


def gate_matrix(instruction):
    """The :class:`ion_ghz.gates.GateMatrix` of an instruction (``None`` for barriers)."""
    kind, params = instruction.kind, instruction.params
    if kind is GateKind.RPHI:
        return r_phi(*params)
    if kind is GateKind.RZ:
        return r_z(*params)
    if kind is GateKind.MSXX:
        return ms_xx(*params)
    if kind is GateKind.H:
        return hadamard()
    if kind is GateKind.CX:
        return cnot()
    return None


def unitary_of_circuit(circuit, include_frame=True):
    """Full :math:`2^n \\times 2^n` unitary of `circuit`.

    Parameters
    ----------
    circuit : Circuit
    include_frame : bool
        Apply the circuit's trailing Z frame as :math:`R_z` rotations.

    Raises
    ------
    QubitCountError
        For more than 10 qubits.

    Example
    -------
    >>> from .ir import Circuit
    >>> unitary_of_circuit(Circuit(1)).real
    array([[1., 0.],
           [0., 1.]])
    """
    n = circuit.n_qubits
    if n > MAX_UNITARY_QUBITS:
        raise QubitCountError(f"Unitary reconstruction is limited to {MAX_UNITARY_QUBITS} qubits, got {n}")
    dim = 2**n
    u = np.eye(dim, dtype=complex).reshape((2,) * (2 * n))
    for instruction in circuit:
        m = gate_matrix(instruction)
        if m is not None:
            u = apply_to_axes(u, np.asarray(m), instruction.targets)
    if include_frame:
        for q, theta in sorted(circuit.frame.items()):
            u = apply_to_axes(u, np.asarray(r_z(theta)), [q])
    return u.reshape(dim, dim)


def phase_insensitive_distance(u, v):
    """Max-abs distance between `u` and `v` after removing the global phase.

    The phase is :math:`\\alpha = \\arg\\,\\mathrm{tr}(v^\\dagger u)`.

    Example
    -------
    >>> x = np.array([[0, 1], [1, 0]])
    >>> phase_insensitive_distance(x, -x) < 1e-15
    True
    >>> phase_insensitive_distance(np.eye(2), x)
    1.0
    """
    u, v = np.asarray(u, dtype=complex), np.asarray(v, dtype=complex)
    if u.shape != v.shape:
        raise ValidationError(f"Cannot compare operators of shapes {u.shape} and {v.shape}")
    overlap = np.vdot(v, u)
    alpha = np.angle(overlap) if abs(overlap) > 0 else 0.0
    return float(np.abs(u - np.exp(1j * alpha) * v).max(initial=0.0))
