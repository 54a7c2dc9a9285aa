# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
# Author: Markus Ritschel
# eMail:  git@markusritschel.de
# Date:   2024-09-06
# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
#
"""Gate-level intermediate representation.

A :class:`Circuit` is an ordered list of :class:`Instruction` objects on a
fixed register, plus an optional per-qubit Z *frame*: phase angles that are
to be applied as :math:`R_z` after the last instruction (see
:func:`ion_ghz.circuit.fold_virtual_rz`).
"""
from collections import Counter
from dataclasses import dataclass, field, replace
from enum import Enum
import logging
import math

from ..core.exceptions import QubitCountError, QubitIndexError, ValidationError
from ..qstate import MAX_QUBITS


log = logging.getLogger(__name__)

DEFAULT_DUR_1Q = 10e-6
DEFAULT_DUR_2Q = 200e-6


class GateKind(str, Enum):
    RPHI = "RPHI"
    RZ = "RZ"
    MSXX = "MSXX"
    H = "H"
    CX = "CX"
    BARRIER = "BARRIER"

    @property
    def parameters(self):
        return _PARAMETERS[self]

    @property
    def arity(self):
        """Number of targets; ``None`` for any number."""
        return _ARITY[self]

    @property
    def is_native(self):
        return self in NATIVE_KINDS


_PARAMETERS = {
    GateKind.RPHI: ("theta", "phi"),
    GateKind.RZ: ("theta",),
    GateKind.MSXX: ("chi",),
    GateKind.H: (),
    GateKind.CX: (),
    GateKind.BARRIER: (),
}
_ARITY = {GateKind.RPHI: 1, GateKind.RZ: 1, GateKind.MSXX: 2, GateKind.H: 1, GateKind.CX: 2, GateKind.BARRIER: None}
NATIVE_KINDS = frozenset({GateKind.RPHI, GateKind.RZ, GateKind.MSXX, GateKind.BARRIER})


def gate_duration(kind, params, dur_1q=DEFAULT_DUR_1Q, dur_2q=DEFAULT_DUR_2Q):
    """Wall-clock time of a native gate.

    RPHI scales with the rotation angle (``dur_1q`` per π), MSXX takes
    ``dur_2q``; virtual RZ, barriers and non-native gates take no time.

    Example
    -------
    >>> gate_duration(GateKind.RPHI, (math.pi / 2, 0.0))
    5e-06
    """
    kind = GateKind(kind)
    if kind is GateKind.RPHI:
        return dur_1q * abs(params[0]) / math.pi
    if kind is GateKind.MSXX:
        return dur_2q
    return 0.0


@dataclass(frozen=True)
class Instruction:
    """One gate application.

    Parameters
    ----------
    kind : GateKind or str
    targets : tuple of int
        Distinct qubit indices; for CX the control comes first.
    params : tuple of float
        Angles in radians in the order of ``kind.parameters``.
    duration : float
        Seconds; must be 0 for RZ and BARRIER.
    """
    kind: GateKind
    targets: tuple
    params: tuple = ()
    duration: float = 0.0

    def __post_init__(self):
        try:
            kind = GateKind(self.kind)
        except ValueError:
            raise ValidationError(f"Unknown gate kind {self.kind!r}") from None
        targets = tuple(int(q) for q in self.targets)
        params = tuple(float(p) for p in self.params)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "targets", targets)
        object.__setattr__(self, "params", params)

        if kind.arity is not None and len(targets) != kind.arity:
            raise ValidationError(f"{kind.value} acts on {kind.arity} qubit(s), got targets {targets}")
        if not targets:
            raise ValidationError(f"{kind.value} needs at least one target")
        if len(set(targets)) != len(targets) or min(targets) < 0:
            raise QubitIndexError(f"Invalid targets {targets} for {kind.value}")
        if len(params) != len(kind.parameters):
            raise ValidationError(f"{kind.value} takes parameters {kind.parameters}, got {params}")
        if not all(math.isfinite(p) for p in params):
            raise ValidationError(f"Non-finite parameter in {kind.value}{params}")
        if not (self.duration >= 0 and math.isfinite(self.duration)):
            raise ValidationError(f"Invalid duration {self.duration!r}")
        if kind in (GateKind.RZ, GateKind.BARRIER) and self.duration != 0:
            raise ValidationError(f"{kind.value} is instantaneous, got duration {self.duration!r}")

    @property
    def parameters(self):
        """Parameters as ``{name: value}``."""
        return dict(zip(self.kind.parameters, self.params))

    @property
    def is_native(self):
        return self.kind.is_native

    def timed(self, dur_1q=DEFAULT_DUR_1Q, dur_2q=DEFAULT_DUR_2Q):
        """Copy with the duration recomputed from the given gate times."""
        return replace(self, duration=gate_duration(self.kind, self.params, dur_1q, dur_2q))

    def __str__(self):
        qubits = " ".join(f"q{q}" for q in self.targets)
        params = " ".join(f"{k}={v!r}" for k, v in self.parameters.items())
        return f"{self.kind.value} {qubits} {params}".rstrip()


def rphi(q, theta, phi):
    """:math:`R_\\phi(\\theta)` on qubit `q`."""
    return Instruction(GateKind.RPHI, (q,), (theta, phi), gate_duration(GateKind.RPHI, (theta,)))


def rx(q, theta):
    return rphi(q, theta, 0.0)


def ry(q, theta):
    return rphi(q, theta, math.pi / 2)


def rz(q, theta):
    return Instruction(GateKind.RZ, (q,), (theta,))


def msxx(q0, q1, chi=math.pi / 4):
    return Instruction(GateKind.MSXX, (q0, q1), (chi,), DEFAULT_DUR_2Q)


def h(q):
    return Instruction(GateKind.H, (q,))


def cx(control, target):
    return Instruction(GateKind.CX, (control, target))


def barrier(*qubits):
    return Instruction(GateKind.BARRIER, qubits)


@dataclass
class Circuit:
    """An ordered gate sequence on `n_qubits` qubits.

    Example
    -------
    >>> c = Circuit(2).append(h(0)).append(cx(0, 1))
    >>> c.gate_counts()
    {'H': 1, 'CX': 1}
    >>> c.is_native()
    False
    """
    n_qubits: int
    instructions: list = field(default_factory=list)
    frame: dict = field(default_factory=dict)

    def __post_init__(self):
        if isinstance(self.n_qubits, bool) or not 1 <= int(self.n_qubits) <= MAX_QUBITS:
            raise QubitCountError(f"Circuits support 1..{MAX_QUBITS} qubits, got {self.n_qubits!r}")
        self.n_qubits = int(self.n_qubits)
        instructions, self.instructions = list(self.instructions), []
        for instruction in instructions:
            self.append(instruction)
        frame = {}
        for q, theta in self.frame.items():
            self._check_qubit(q)
            if not math.isfinite(theta):
                raise ValidationError(f"Non-finite frame angle for qubit {q}")
            frame[int(q)] = float(theta)
        self.frame = frame

    def _check_qubit(self, q):
        if not 0 <= q < self.n_qubits:
            raise QubitIndexError(f"Qubit {q} out of range for a {self.n_qubits}-qubit circuit")

    def append(self, instruction):
        """Append one instruction; returns the circuit for chaining."""
        for q in instruction.targets:
            self._check_qubit(q)
        self.instructions.append(instruction)
        return self

    def extend(self, instructions):
        for instruction in instructions:
            self.append(instruction)
        return self

    def __iter__(self):
        return iter(self.instructions)

    def __len__(self):
        return len(self.instructions)

    def copy(self):
        return Circuit(self.n_qubits, list(self.instructions), dict(self.frame))

    def count(self, kind):
        kind = GateKind(kind)
        return sum(1 for i in self.instructions if i.kind is kind)

    def gate_counts(self):
        """Number of instructions per kind, in order of first appearance."""
        return dict(Counter(i.kind.value for i in self.instructions))

    def total_duration(self):
        """Sum of instruction durations (ions are addressed one gate at a time)."""
        return float(sum(i.duration for i in self.instructions))

    def is_native(self):
        return all(i.is_native for i in self.instructions)

    def retimed(self, dur_1q=DEFAULT_DUR_1Q, dur_2q=DEFAULT_DUR_2Q):
        """Copy with all durations recomputed from the given gate times."""
        return Circuit(self.n_qubits, [i.timed(dur_1q, dur_2q) for i in self.instructions], dict(self.frame))
