# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
# Author: Markus Ritschel
# eMail:  git@markusritschel.de
# Date:   2024-09-07
# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
#
"""Line-oriented text format of circuits.

::

    QUBITS 2                      # optional header
    H q0; CX q0 q1                # ';' separates statements
    RPHI q0 theta=1.5707963267948966 phi=0.0
    MSXX q0 q1 chi=0.7853981633974483
    FRAME q0 theta=3.141592653589793

Parameters are written with ``repr(float)`` so that ``loads(dumps(c)) == c``.
Durations are not stored; they follow from the gate parameters.
"""
import logging
import math
from pathlib import Path

from ..core.exceptions import CircuitParseError, IonGhzError
from ..core.utils import save
from .ir import Circuit, GateKind, Instruction, gate_duration


log = logging.getLogger(__name__)


def dumps(circuit):
    """Render `circuit` as text, header first and frame records last."""
    lines = [f"QUBITS {circuit.n_qubits}"]
    lines += [str(instruction) for instruction in circuit]
    lines += [f"FRAME q{q} theta={theta!r}" for q, theta in sorted(circuit.frame.items())]
    return "\n".join(lines) + "\n"


def _qubit(token, line_number):
    if not (token[:1] in "qQ" and token[1:].isdigit()):
        raise CircuitParseError(f"Expected a qubit like 'q0', got {token!r}", line_number)
    return int(token[1:])


def _parse_statement(tokens, line_number):
    keyword = tokens[0].upper()
    qubits, params = [], {}
    for token in tokens[1:]:
        if "=" in token:
            name, _, value = token.partition("=")
            try:
                params[name.lower()] = float(value)
            except ValueError:
                raise CircuitParseError(f"Parameter {name!r} is not a number: {value!r}", line_number) from None
            if not math.isfinite(params[name.lower()]):
                raise CircuitParseError(f"Parameter {name!r} must be finite", line_number)
        else:
            if params:
                raise CircuitParseError("Qubits must precede parameters", line_number)
            qubits.append(_qubit(token, line_number))
    return keyword, qubits, params


def loads(text, n_qubits=None):
    """Parse circuit text.

    Parameters
    ----------
    text : str
    n_qubits : int, optional
        Register size when the text has no ``QUBITS`` header; defaults to the
        highest qubit index plus one.

    Raises
    ------
    CircuitParseError
        With the 1-based line number of the first malformed statement.

    Example
    -------
    >>> c = loads("H q0; CX q0 q1")
    >>> c.n_qubits, c.gate_counts()
    (2, {'H': 1, 'CX': 1})
    """
    header = None
    statements, frames = [], []
    for line_number, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0]
        for statement in line.split(";"):
            tokens = statement.split()
            if not tokens:
                continue
            if tokens[0].upper() == "QUBITS":
                if header is not None or statements or len(tokens) != 2 or not tokens[1].isdigit():
                    raise CircuitParseError("Expected a single leading 'QUBITS <n>' header", line_number)
                header = int(tokens[1])
                continue
            keyword, qubits, params = _parse_statement(tokens, line_number)
            if keyword == "FRAME":
                if len(qubits) != 1 or set(params) != {"theta"}:
                    raise CircuitParseError("Expected 'FRAME q<i> theta=<rad>'", line_number)
                frames.append((qubits[0], params["theta"], line_number))
                continue
            try:
                kind = GateKind(keyword)
            except ValueError:
                raise CircuitParseError(f"Unknown gate {tokens[0]!r}", line_number) from None
            if set(params) != set(kind.parameters):
                raise CircuitParseError(f"{kind.value} takes parameters {kind.parameters}, got {sorted(params)}",
                                        line_number)
            values = tuple(params[name] for name in kind.parameters)
            try:
                instruction = Instruction(kind, tuple(qubits), values, gate_duration(kind, values))
            except (IonGhzError, ValueError, IndexError) as err:
                raise CircuitParseError(str(err), line_number) from None
            statements.append((instruction, line_number))

    if header is None:
        header = n_qubits
    if header is None:
        used = [q for i, _ in statements for q in i.targets] + [q for q, _, _ in frames]
        if not used:
            raise CircuitParseError("Empty circuit without 'QUBITS' header")
        header = max(used) + 1

    try:
        circuit = Circuit(header)
    except IonGhzError as err:
        raise CircuitParseError(str(err), 1) from None
    for instruction, line_number in statements:
        try:
            circuit.append(instruction)
        except IndexError as err:
            raise CircuitParseError(str(err), line_number) from None
    for q, theta, line_number in frames:
        if not 0 <= q < circuit.n_qubits:
            raise CircuitParseError(f"Frame qubit {q} out of range", line_number)
        circuit.frame[q] = circuit.frame.get(q, 0.0) + theta
    return circuit


def read_circuit(path, n_qubits=None):
    """Read a circuit file; see :func:`loads`."""
    text = Path(path).read_text()
    log.debug(f"Read circuit file {path}")
    return loads(text, n_qubits)


def write_circuit(circuit, path):
    Path(path).write_text(dumps(circuit))


@save.register(Circuit)
def _(circuit, path, *args, **kwargs):
    kwargs.pop("provenance", None)
    write_circuit(circuit, path)
