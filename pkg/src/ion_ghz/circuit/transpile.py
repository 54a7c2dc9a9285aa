# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
# Author: Markus Ritschel
# eMail:  git@markusritschel.de
# Date:   2024-09-06
# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
#
"""Translation of {H, CX} circuits into the native {RPHI, RZ, MSXX} gate set."""
import logging
import math

from ..core.exceptions import EquivalenceError, ValidationError
from .ir import Circuit, GateKind, msxx, rphi, rx, ry, rz
from .unitary import phase_insensitive_distance, unitary_of_circuit


log = logging.getLogger(__name__)

FRAME_ATOL = 1e-12


def decompose_h(target):
    """Hadamard as :math:`R_z(\\pi)\\,R_y(-\\pi/2)` (equals :math:`-iH`).

    Returns the instructions in time order.
    """
    return [rphi(target, -math.pi / 2, math.pi / 2), rz(target, math.pi)]


def decompose_cx(control, target):
    """CX from a single MS gate.

    Time order: :math:`R_y(\\pi/2)` on the control, :math:`XX(\\pi/4)`,
    :math:`R_x(-\\pi/2)` on both ions, :math:`R_y(-\\pi/2)` on the control.
    The result equals CX up to a global phase.

    Raises
    ------
    ValidationError
        If `control` equals `target`.
    """
    if control == target:
        raise ValidationError(f"CX needs two distinct qubits, got {control} twice")
    return [
        ry(control, math.pi / 2),
        msxx(control, target, math.pi / 4),
        rx(control, -math.pi / 2),
        rx(target, -math.pi / 2),
        ry(control, -math.pi / 2),
    ]


def transpile(circuit, fold=False):
    """Expand all H and CX instructions into native gates.

    Parameters
    ----------
    circuit : Circuit
    fold : bool
        Additionally push the RZ rotations into the phases of later pulses,
        see :func:`fold_virtual_rz`.

    Example
    -------
    >>> from .ir import cx, h
    >>> native = transpile(Circuit(2, [h(0), cx(0, 1)]))
    >>> native.gate_counts()
    {'RPHI': 5, 'RZ': 1, 'MSXX': 1}
    """
    out = Circuit(circuit.n_qubits, frame=dict(circuit.frame))
    for instruction in circuit:
        if instruction.kind is GateKind.H:
            out.extend(decompose_h(*instruction.targets))
        elif instruction.kind is GateKind.CX:
            out.extend(decompose_cx(*instruction.targets))
        else:
            out.append(instruction)
    log.debug(f"Transpiled {len(circuit)} into {len(out)} instructions")
    if fold:
        out = fold_virtual_rz(out)
    return out


def _is_trivial(angle):
    return abs(math.remainder(angle, 2 * math.pi)) < FRAME_ATOL


def fold_virtual_rz(circuit):
    """Remove RZ instructions by shifting the phase of all later pulses.

    An :math:`R_z(\\theta)` on qubit q is absorbed by replacing every later
    :math:`R_\\phi(\\theta')` on q with :math:`R_{\\phi-\\theta}(\\theta')`.
    The accumulated angles are returned as the circuit's ``frame``. A frame that
    is not a multiple of 2π cannot cross an MS gate and is emitted as an RZ
    directly before it.

    Raises
    ------
    ValidationError
        If the circuit contains non-native instructions.

    Example
    -------
    >>> folded = fold_virtual_rz(Circuit(1, [rz(0, math.pi), rphi(0, math.pi / 2, 0)]))
    >>> folded.instructions[0].params, folded.frame
    ((1.5707963267948966, -3.141592653589793), {0: 3.141592653589793})
    """
    frame = [0.0] * circuit.n_qubits
    out = Circuit(circuit.n_qubits)
    for instruction in circuit:
        kind = instruction.kind
        if kind is GateKind.RZ:
            frame[instruction.targets[0]] += instruction.params[0]
        elif kind is GateKind.RPHI:
            q = instruction.targets[0]
            theta, phi = instruction.params
            out.append(instruction.__class__(kind, (q,), (theta, phi - frame[q]), instruction.duration))
        elif kind is GateKind.MSXX:
            for q in instruction.targets:
                if not _is_trivial(frame[q]):
                    out.append(rz(q, frame[q]))
                    frame[q] = 0.0
            out.append(instruction)
        elif kind is GateKind.BARRIER:
            out.append(instruction)
        else:
            raise ValidationError(f"Cannot fold frames through non-native {kind.value}; transpile first")
    for q, theta in circuit.frame.items():
        frame[q] += theta
    out.frame = {q: theta for q, theta in enumerate(frame) if theta != 0}
    return out


def check_equivalence(original, transpiled, atol=1e-8):
    """Compare both circuits (frames included) with the unitary oracle.

    Returns
    -------
    float
        The phase-insensitive distance.

    Raises
    ------
    EquivalenceError
        If the distance exceeds `atol`.
    """
    if original.n_qubits != transpiled.n_qubits:
        raise EquivalenceError("Circuits act on registers of different size")
    distance = phase_insensitive_distance(unitary_of_circuit(original), unitary_of_circuit(transpiled))
    if distance > atol:
        raise EquivalenceError(f"Transpiled circuit deviates from its source by {distance:.3e}")
    log.debug(f"Equivalence check passed (distance {distance:.2e})")
    return distance
