# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
# Author: Markus Ritschel
# eMail:  git@markusritschel.de
# Date:   2024-09-02
# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
#
"""Pure and mixed N-qubit states over the computational basis.

Basis convention: qubit 0 is the most significant bit, i.e. the basis index of
the bitstring :math:`b_0 b_1 \\cdots b_{N-1}` is :math:`\\sum_i b_i 2^{N-1-i}`,
with :math:`b_i = 1` meaning ion i is in :math:`|1\\rangle` (the D-state).
"""
from dataclasses import dataclass
from functools import singledispatch
import logging
import numpy as np

from ..core.exceptions import QubitCountError, QubitIndexError, ValidationError
from ..linalg import apply_to_axes, check_completeness, check_unitary, is_hermitian


log = logging.getLogger(__name__)

MAX_QUBITS = 12
NORM_ATOL = 1e-9
CLAMP_ATOL = 1e-12


def _check_qubit_count(n):
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_QUBITS:
        raise QubitCountError(f"Number of qubits must be an integer in [1, {MAX_QUBITS}], got {n!r}")
    return int(n)


def _qubits_from_dim(dim):
    n = int(dim).bit_length() - 1
    if dim < 2 or 2**n != dim:
        raise QubitCountError(f"Dimension {dim} is not a power of two.")
    return _check_qubit_count(n)


def check_targets(targets, n_qubits):
    """Validate a list of target qubits and return it as tuple of ints.

    Raises
    ------
    QubitIndexError
        On duplicated or out-of-range indices.
    """
    targets = tuple(int(q) for q in targets)
    if len(set(targets)) != len(targets):
        raise QubitIndexError(f"Duplicate target qubits {targets}")
    for q in targets:
        if not 0 <= q < n_qubits:
            raise QubitIndexError(f"Qubit {q} out of range for a {n_qubits}-qubit register")
    return targets


def basis_popcounts(n):
    """Number of excited ions (ones) of every basis index of an `n`-qubit register.

    Example
    -------
    >>> basis_popcounts(2)
    array([0, 1, 1, 2])
    """
    index = np.arange(2**n)
    return sum((index >> k) & 1 for k in range(n))


def bitstring(index, n):
    """Render a basis index as bitstring with qubit 0 first.

    Example
    -------
    >>> bitstring(1, 3)
    '001'
    """
    return format(int(index), f"0{n}b")


class StateVector:
    """A normalized pure state of `n_qubits` qubits.

    The amplitude array is read-only; operations return new objects.

    Parameters
    ----------
    amplitudes : array-like
        Complex vector of length 2^n.
    check : bool
        Verify the normalization (within 1e-9).
    """

    __slots__ = ("n_qubits", "amplitudes")

    def __init__(self, amplitudes, check=True):
        amps = np.array(amplitudes, dtype=complex).ravel()
        n = _qubits_from_dim(amps.size)
        if check:
            norm = float(np.vdot(amps, amps).real)
            if abs(norm - 1) > NORM_ATOL:
                raise ValidationError(f"State vector is not normalized (norm^2 = {norm!r})")
        amps.flags.writeable = False
        self.n_qubits = n
        self.amplitudes = amps

    def __repr__(self):
        return f"StateVector(n_qubits={self.n_qubits})"

    @property
    def dim(self):
        return self.amplitudes.size

    def tensor(self):
        """Amplitudes reshaped into one axis per qubit."""
        return self.amplitudes.reshape((2,) * self.n_qubits)

    def to_density(self):
        """Promote to the density matrix :math:`|\\psi\\rangle\\langle\\psi|`."""
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()))


class DensityMatrix:
    """A mixed state of `n_qubits` qubits.

    Parameters
    ----------
    elements : array-like
        Complex 2^n x 2^n matrix in the same basis ordering as :class:`StateVector`.
    check : bool
        Verify Hermiticity and unit trace (within 1e-9). Positivity is only
        checked on request, see :meth:`is_physical`.
    """

    __slots__ = ("n_qubits", "elements")

    def __init__(self, elements, check=True):
        rho = np.array(elements, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise ValidationError(f"Density matrix must be square, got shape {rho.shape}")
        n = _qubits_from_dim(rho.shape[0])
        if check:
            if not is_hermitian(rho, NORM_ATOL):
                raise ValidationError("Density matrix is not Hermitian.")
            trace = np.trace(rho).real
            if abs(trace - 1) > NORM_ATOL:
                raise ValidationError(f"Density matrix trace is {trace!r}, expected 1.")
        rho.flags.writeable = False
        self.n_qubits = n
        self.elements = rho

    def __repr__(self):
        return f"DensityMatrix(n_qubits={self.n_qubits})"

    @classmethod
    def maximally_mixed(cls, n):
        """The state :math:`\\mathbb{I}/2^n`."""
        n = _check_qubit_count(n)
        return cls(np.eye(2**n) / 2**n)

    @property
    def dim(self):
        return self.elements.shape[0]

    def tensor(self):
        """Elements reshaped into ``2n`` axes: row qubits first, then column qubits."""
        return self.elements.reshape((2,) * (2 * self.n_qubits))

    def trace(self):
        return float(np.trace(self.elements).real)

    def purity(self):
        """:math:`\\mathrm{tr}(\\rho^2)`."""
        return float(np.vdot(self.elements, self.elements).real)

    def is_physical(self, atol=1e-9):
        """Check Hermiticity, unit trace and positivity (all eigenvalues >= -atol)."""
        if not is_hermitian(self.elements, atol) or abs(self.trace() - 1) > atol:
            return False
        return bool(np.linalg.eigvalsh(self.elements).min() >= -atol)


def ground_state(n):
    """The register state :math:`|0\\cdots0\\rangle`.

    Example
    -------
    >>> ground_state(2).amplitudes.real
    array([1., 0., 0., 0.])
    """
    n = _check_qubit_count(n)
    amps = np.zeros(2**n, dtype=complex)
    amps[0] = 1
    return StateVector(amps)


def _operator_for(u, targets, n_qubits):
    targets = check_targets(targets, n_qubits)
    if len(targets) not in (1, 2):
        raise ValidationError(f"Gates act on one or two qubits, got targets {targets}")
    u = np.asarray(u, dtype=complex)
    if u.shape != (2 ** len(targets),) * 2:
        raise ValidationError(f"Operator of shape {u.shape} does not match {len(targets)} target(s)")
    return check_unitary(u), targets


@singledispatch
def apply_unitary(state, u, targets):
    """Apply the unitary `u` on the qubits `targets`, identity elsewhere.

    For a :class:`DensityMatrix` the state is updated as :math:`U\\rho U^\\dagger`.

    Parameters
    ----------
    state : StateVector or DensityMatrix
    u : array-like
        Unitary of dimension 2^k (k = 1, 2); anything accepted by
        :func:`numpy.asarray`, including :class:`ion_ghz.gates.GateMatrix`.
    targets : sequence of int
        k distinct qubit indices; the first one is the most significant bit of `u`.

    Raises
    ------
    ValidationError
        If `u` is not unitary (within 1e-9) or has the wrong size.
    QubitIndexError
        On duplicate or out-of-range targets.

    Example
    -------
    >>> flip = np.array([[0, 1], [1, 0]])
    >>> probabilities(apply_unitary(ground_state(2), flip, [0]))    # |10>
    array([0., 0., 1., 0.])
    """
    raise NotImplementedError(f"Cannot apply a unitary to object of type {type(state)}")


@apply_unitary.register(StateVector)
def _(state, u, targets):
    u, targets = _operator_for(u, targets, state.n_qubits)
    out = apply_to_axes(state.tensor(), u, targets)
    return StateVector(out.ravel())


@apply_unitary.register(DensityMatrix)
def _(state, u, targets):
    u, targets = _operator_for(u, targets, state.n_qubits)
    n = state.n_qubits
    out = apply_to_axes(state.tensor(), u, targets)
    out = apply_to_axes(out, u.conj(), [n + q for q in targets])
    return DensityMatrix(out.reshape(state.dim, state.dim))


def apply_kraus(rho, channel, targets):
    """Apply a Kraus channel, :math:`\\rho \\to \\sum_k K_k \\rho K_k^\\dagger`.

    Parameters
    ----------
    rho : DensityMatrix or StateVector
        Pure states are promoted to density matrices.
    channel : KrausChannel or sequence of numpy.ndarray
        Anything with an ``operators`` attribute, or the operators themselves.
    targets : sequence of int
        The qubits the channel acts on.

    Raises
    ------
    ValidationError
        If the operators are not complete within 1e-9.
    """
    if isinstance(rho, StateVector):
        rho = rho.to_density()
    operators = check_completeness(getattr(channel, "operators", channel))
    targets = check_targets(targets, rho.n_qubits)
    if operators[0].shape != (2 ** len(targets),) * 2:
        raise ValidationError(f"Kraus operators of shape {operators[0].shape} do not match targets {targets}")
    n = rho.n_qubits
    column_axes = [n + q for q in targets]
    tensor = rho.tensor()
    out = np.zeros_like(tensor)
    for k in operators:
        out += apply_to_axes(apply_to_axes(tensor, k, targets), k.conj(), column_axes)
    return DensityMatrix(out.reshape(rho.dim, rho.dim))


def _clamp(probs):
    if probs.min(initial=0.0) < -CLAMP_ATOL:
        raise ValidationError(f"Negative probability {probs.min()!r} beyond round-off.")
    return np.clip(probs, 0.0, None)


@singledispatch
def probabilities(state):
    """Computational-basis outcome probabilities of `state`.

    Round-off negatives down to -1e-12 are clamped to zero.

    Example
    -------
    >>> probabilities(DensityMatrix.maximally_mixed(1))
    array([0.5, 0.5])
    """
    raise NotImplementedError(f"No probabilities for object of type {type(state)}")


@probabilities.register(StateVector)
def _(state):
    return _clamp(np.abs(state.amplitudes) ** 2)


@probabilities.register(DensityMatrix)
def _(state):
    return _clamp(np.diagonal(state.elements).real.copy())


@dataclass(frozen=True)
class Outcome:
    """Number of shots that produced the basis state `bitstring` (a basis index)."""
    bitstring: int
    count: int


def sample_shots(probs, shots, seed=None):
    """Draw `shots` measurement outcomes from the distribution `probs`.

    The draw is a single multinomial sample from :func:`numpy.random.default_rng`
    and therefore deterministic for a fixed `seed`.

    Parameters
    ----------
    probs : array-like
        Outcome probabilities, summing to 1 within 1e-6.
    shots : int
        Number of shots (>= 1).
    seed : int or numpy.random.SeedSequence, optional

    Returns
    -------
    list of Outcome
        The observed outcomes (non-zero counts only), ordered by basis index.

    Example
    -------
    >>> sample_shots([1, 0], 100, seed=1)
    [Outcome(bitstring=0, count=100)]
    """
    probs = np.asarray(probs, dtype=float)
    if shots < 1:
        raise ValidationError(f"Number of shots must be >= 1, got {shots}")
    if probs.min(initial=0.0) < -1e-9:
        raise ValidationError(f"Negative probability {probs.min()!r}")
    probs = np.clip(probs, 0.0, None)
    total = probs.sum()
    if abs(total - 1) > 1e-6:
        raise ValidationError(f"Probabilities sum to {total!r}, expected 1.")
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(int(shots), probs / total)
    return [Outcome(int(i), int(c)) for i, c in enumerate(counts) if c > 0]


def outcome_frequencies(outcomes, dim):
    """Turn a list of :class:`Outcome` into a relative-frequency vector of length `dim`."""
    counts = np.zeros(dim)
    for outcome in outcomes:
        counts[outcome.bitstring] += outcome.count
    return counts / counts.sum()
