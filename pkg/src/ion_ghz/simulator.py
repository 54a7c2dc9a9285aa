# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
# Author: Markus Ritschel
# eMail:  git@markusritschel.de
# Date:   2024-09-10
# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
#
"""Dense density-matrix execution of circuits under a :class:`NoiseSpec`.

Noiseless runs evolve a state vector and are promoted at the end. Noisy runs
transpile to native gates first and then, gate by gate,

1. let the target ions decay for the time they have been idle,
2. apply the gate unitary,
3. depolarize the targets with ``p1`` or ``p2``.

Virtual RZ rotations are exact and take no time. After the last gate all ions
decay for their remaining idle time and the collective dephasing of the whole
circuit duration is applied once.
"""
import logging
import numpy as np

from .circuit import GateKind, gate_matrix, transpile
from .core.exceptions import ValidationError
from .gates import r_z
from .linalg import apply_to_axes
from .noise import NoiseSpec, damp, damping_gamma, depolarize
from .qstate import DensityMatrix, StateVector, apply_unitary, ground_state


log = logging.getLogger(__name__)


def _initial(circuit, initial):
    if initial is None:
        return ground_state(circuit.n_qubits)
    if initial.n_qubits != circuit.n_qubits:
        raise ValidationError(f"Initial state has {initial.n_qubits} qubits, circuit {circuit.n_qubits}")
    return initial


def simulate_statevector(circuit, initial=None):
    """Ideal (unitary) evolution of a pure state; frames are applied at the end."""
    state = _initial(circuit, initial)
    if not isinstance(state, StateVector):
        raise ValidationError("Pure-state simulation needs a StateVector as initial state")
    for instruction in circuit:
        m = gate_matrix(instruction)
        if m is not None:
            state = apply_unitary(state, m, instruction.targets)
    for q, theta in sorted(circuit.frame.items()):
        state = apply_unitary(state, r_z(theta), [q])
    return state


def _unitary(rho, u, targets, n):
    rho = apply_to_axes(rho, u, targets)
    return apply_to_axes(rho, u.conj(), [n + q for q in targets])


def simulate(circuit, noise=None, initial=None, dephase=True):
    """Run `circuit` and return the final density matrix.

    Parameters
    ----------
    circuit : Circuit
        Any circuit; non-native gates are transpiled when noise is present.
    noise : NoiseSpec, optional
        ``None`` for an ideal run. Readout errors are not part of the state
        and are ignored here.
    initial : StateVector or DensityMatrix, optional
        Defaults to :math:`|0\\cdots0\\rangle`.
    dephase : bool
        Apply the collective dephasing of the circuit duration at the end.

    Returns
    -------
    DensityMatrix

    Example
    -------
    >>> from .circuit import Circuit, h, cx
    >>> rho = simulate(Circuit(2, [h(0), cx(0, 1)]))
    >>> float(round(abs(rho.elements[0, 3]), 12))
    0.5
    """
    if noise is None:
        if initial is None or isinstance(initial, StateVector):
            return simulate_statevector(circuit, initial).to_density()
        noise = NoiseSpec.ideal()

    n = circuit.n_qubits
    native = circuit if circuit.is_native() else transpile(circuit)
    native = native.retimed(noise.dur_1q_seconds, noise.dur_2q_seconds)

    state = _initial(native, initial)
    if isinstance(state, StateVector):
        state = state.to_density()
    rho = np.array(state.tensor())
    idle = np.zeros(n)

    def flush(qubits):
        nonlocal rho
        for q in qubits:
            if idle[q] > 0:
                rho = damp(rho, damping_gamma(idle[q], noise.t1_seconds), q)
                idle[q] = 0.0

    for instruction in native:
        kind, targets = instruction.kind, instruction.targets
        if kind is GateKind.BARRIER:
            continue
        u = np.asarray(gate_matrix(instruction))
        if kind is GateKind.RZ:
            rho = _unitary(rho, u, targets, n)
            continue
        flush(targets)
        rho = _unitary(rho, u, targets, n)
        rho = depolarize(rho, noise.p1 if len(targets) == 1 else noise.p2, targets)
        idle += instruction.duration
    flush(range(n))

    for q, theta in sorted(native.frame.items()):
        rho = _unitary(rho, np.asarray(r_z(theta)), [q], n)

    out = DensityMatrix(rho.reshape(2**n, 2**n))
    total = native.total_duration()
    if dephase:
        out = noise.dephasing(total, n)(out)
    log.debug(f"Simulated {len(native)} native instructions on {n} qubits, duration {total:.3e} s")
    return out
