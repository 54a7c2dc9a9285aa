# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
# Author: Markus Ritschel
# eMail:  git@markusritschel.de
# Date:   2024-09-09
# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
#
"""Preparation of N-qubit GHZ states

.. math:: |GHZ_N\\rangle = \\frac{1}{\\sqrt{2}}\\left(|0\\rangle^{\\otimes N}
          + (-1)^{\\lfloor (N-1)/2\\rfloor}|1\\rangle^{\\otimes N}\\right)

with a Hadamard on the first ion, a chain of N-1 CX gates and echo layers of
:math:`R_y(\\pm\\pi)` pulses on all ions entangled so far.
"""
from dataclasses import dataclass
import logging
import math
import numpy as np

from ..circuit import Circuit, cx, h, ry, rz
from ..core.exceptions import QubitCountError, ValidationError
from ..qstate import StateVector


log = logging.getLogger(__name__)

MIN_QUBITS = 2
MAX_GHZ_QUBITS = 10


def _check_size(n):
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or not MIN_QUBITS <= n <= MAX_GHZ_QUBITS:
        raise QubitCountError(f"GHZ states need {MIN_QUBITS}..{MAX_GHZ_QUBITS} qubits, got {n!r}")
    return int(n)


@dataclass(frozen=True)
class GhzSpec:
    """What to prepare.

    Attributes
    ----------
    n : int
        Number of ions, 2..10.
    include_dd : bool
        Insert the alternating :math:`R_y(\\pm\\pi)` layers between the CX gates.
    detuning_phase : float
        Phase error (radians) of a quasi-static laser detuning, injected as
        :math:`R_z(\\delta)` on every entangled ion after each CX but the last.
    """
    n: int
    include_dd: bool = True
    detuning_phase: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "n", _check_size(self.n))
        if not math.isfinite(self.detuning_phase):
            raise ValidationError(f"detuning_phase must be finite, got {self.detuning_phase!r}")


def ghz_sign(n):
    """Relative sign :math:`(-1)^{\\lfloor (n-1)/2\\rfloor}` of the target state.

    Example
    -------
    >>> [ghz_sign(n) for n in range(2, 9)]
    [1, -1, -1, 1, 1, -1, -1]
    """
    return -1 if ((n - 1) // 2) % 2 else 1


def ideal_ghz_state(n):
    """The target state of an `n`-ion GHZ preparation.

    Example
    -------
    >>> psi = ideal_ghz_state(3).amplitudes
    >>> float(round(psi[0].real, 6)), float(round(psi[-1].real, 6))
    (0.707107, -0.707107)
    """
    n = _check_size(n)
    amps = np.zeros(2**n, dtype=complex)
    amps[0] = 1 / math.sqrt(2)
    amps[-1] = ghz_sign(n) / math.sqrt(2)
    return StateVector(amps)


def _echo(coefficients, m, theta):
    # R_y(pi) maps |0> -> |1>, |1> -> -|0>; R_y(-pi) maps |0> -> -|1>, |1> -> |0>
    a, b = coefficients
    parity = (-1) ** m
    if theta > 0:
        return parity * b, a
    return b, parity * a


def build_ghz_circuit(spec):
    """GHZ preparation circuit over {H, CX, RPHI, RZ}.

    ``H(q0)``, then ``CX(q[k-1], q[k])`` for k = 1..n-1. Between consecutive
    CX gates, layers of :math:`R_y(\\pi)` (k odd) or :math:`R_y(-\\pi)`
    (k even) act on q0..qk. The sign these layers leave on
    :math:`|1\\cdots1\\rangle` is tracked; when it differs from the target
    sign a virtual :math:`R_z(\\pi)` on q0 is appended.

    Parameters
    ----------
    spec : GhzSpec or int

    Example
    -------
    >>> build_ghz_circuit(GhzSpec(3)).gate_counts()
    {'H': 1, 'CX': 2, 'RPHI': 2, 'RZ': 1}
    """
    if not isinstance(spec, GhzSpec):
        spec = GhzSpec(spec)
    n = spec.n
    circuit = Circuit(n).append(h(0))
    coefficients = (1, 1)
    for k in range(1, n):
        circuit.append(cx(k - 1, k))
        if k == n - 1:
            break
        involved = range(k + 1)
        if spec.detuning_phase:
            circuit.extend(rz(q, spec.detuning_phase) for q in involved)
        if spec.include_dd:
            theta = math.pi if k % 2 else -math.pi
            circuit.extend(ry(q, theta) for q in involved)
            coefficients = _echo(coefficients, k + 1, theta)
    a, b = coefficients
    if a * b != ghz_sign(n):
        circuit.append(rz(0, math.pi))
    log.debug(f"Built GHZ-{n} circuit: {circuit.gate_counts()}")
    return circuit
