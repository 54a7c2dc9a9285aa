# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
# Author: Markus Ritschel
# eMail:  git@markusritschel.de
# Date:   2024-09-04
# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
#
"""Kraus channels for gate errors, spontaneous decay and collective laser-phase noise.

The Kraus form (:class:`KrausChannel`) is the reference definition of every
channel. The simulator uses the equivalent in-place tensor updates
:func:`depolarize` and :func:`damp`, which avoid the sum over d² Pauli products.
"""
from functools import cached_property, reduce, singledispatch
from itertools import product
import logging
import math
import numpy as np

from ..core.exceptions import CalibrationError, ValidationError
from ..gates import IDENTITY, PAULIS
from ..linalg import check_completeness
from ..qstate import DensityMatrix, apply_kraus, basis_popcounts, check_targets


log = logging.getLogger(__name__)

FIDELITY_CONVENTION = "F_avg = (1 - p) + p/d for rho -> (1 - p) rho + p I/d"


class KrausChannel:
    """A completeness-checked set of Kraus operators acting on `arity` qubits.

    Parameters
    ----------
    operators : sequence of array-like
        Square matrices of dimension ``2**arity``.
    label : str, optional
        Free-text description used in log messages.

    Raises
    ------
    ValidationError
        If :math:`\\sum_k K_k^\\dagger K_k \\neq \\mathbb{I}` within 1e-9 or the
        dimension is not 2 or 4.
    """

    def __init__(self, operators, label=""):
        ops = check_completeness(operators)
        dim = ops[0].shape[0]
        if dim not in (2, 4):
            raise ValidationError(f"Kraus operators must act on 1 or 2 qubits, got dimension {dim}")
        for k in ops:
            k.flags.writeable = False
        self.operators = ops
        self.arity = 1 if dim == 2 else 2
        self.label = label

    def __repr__(self):
        return f"KrausChannel({self.label or 'custom'}, arity={self.arity}, rank={len(self.operators)})"

    def __len__(self):
        return len(self.operators)

    @property
    def dim(self):
        return 2**self.arity

    def average_gate_fidelity(self):
        """Average gate fidelity with respect to the identity,
        :math:`\\bar F = (\\sum_k |\\mathrm{tr} K_k|^2 + d) / (d(d+1))`."""
        d = self.dim
        overlap = sum(abs(np.trace(k)) ** 2 for k in self.operators)
        return float((overlap + d) / (d * (d + 1)))

    def apply(self, rho, targets):
        """Shortcut for :func:`ion_ghz.qstate.apply_kraus`."""
        return apply_kraus(rho, self, targets)


def _check_probability(p, name="p"):
    if not 0 <= p <= 1:
        raise ValidationError(f"{name} must be a probability in [0, 1], got {p!r}")
    return float(p)


def _check_arity(arity):
    if arity not in (1, 2):
        raise ValidationError(f"Channel arity must be 1 or 2, got {arity!r}")
    return arity


def pauli_products(arity):
    """All ``4**arity`` Pauli products, the identity first."""
    return [reduce(np.kron, ps) for ps in product(PAULIS, repeat=arity)]


def depolarizing(p, arity):
    """Depolarizing channel :math:`\\rho \\to (1-p)\\rho + p\\,\\mathbb{I}/d`.

    Kraus representation: :math:`\\sqrt{1 - p(d^2-1)/d^2}\\,\\mathbb{I}` and
    :math:`\\sqrt{p/d^2}\\,P` for the :math:`d^2 - 1` non-identity Pauli products.

    Example
    -------
    >>> depolarizing(0, 1)
    KrausChannel(depolarizing(p=0.0), arity=1, rank=1)
    >>> round(depolarizing(0.0493, 2).average_gate_fidelity(), 3)
    0.963
    """
    p = _check_probability(p)
    arity = _check_arity(arity)
    d = 2**arity
    label = f"depolarizing(p={p!r})"
    if p == 0:
        return KrausChannel([np.eye(d)], label)
    paulis = pauli_products(arity)
    ops = [math.sqrt(1 - p * (d**2 - 1) / d**2) * paulis[0]]
    ops += [math.sqrt(p / d**2) * m for m in paulis[1:]]
    return KrausChannel(ops, label)


def calibrate_depolarizing(f_avg, arity):
    """Depolarizing probability that produces the average gate fidelity `f_avg`.

    Inverts :math:`\\bar F = (1 - p) + p/d`, i.e. :math:`p = (1 - \\bar F)\\,d/(d-1)`.
    See :data:`FIDELITY_CONVENTION`.

    Raises
    ------
    CalibrationError
        If `f_avg` lies outside of ``[1/d, 1]``.

    Example
    -------
    >>> round(calibrate_depolarizing(0.963, 2), 5)
    0.04933
    >>> round(calibrate_depolarizing(0.99946, 1), 5)
    0.00108
    """
    arity = _check_arity(arity)
    d = 2**arity
    if not 1 / d <= f_avg <= 1:
        raise CalibrationError(f"Average fidelity {f_avg!r} outside of the depolarizing range [{1/d}, 1]")
    return float((1 - f_avg) * d / (d - 1))


def damping_gamma(duration, t1):
    """Decay probability :math:`\\gamma = 1 - e^{-t/T_1}` of the upper level after `duration`.

    ``t1 = inf`` disables decay.
    """
    if not t1 > 0:
        raise ValidationError(f"T1 must be positive, got {t1!r}")
    if not duration >= 0:
        raise ValidationError(f"Duration must be non-negative, got {duration!r}")
    return float(-math.expm1(-duration / t1))


def amplitude_damping(duration, t1):
    """Spontaneous decay :math:`|1\\rangle \\to |0\\rangle` during `duration` seconds.

    Example
    -------
    >>> ch = amplitude_damping(10e-6, 0.053)
    >>> float(round(1 - abs(ch.operators[0][1, 1])**2, 10))
    0.0001886614
    """
    gamma = damping_gamma(duration, t1)
    k0 = np.array([[1, 0], [0, math.sqrt(1 - gamma)]])
    k1 = np.array([[0, math.sqrt(gamma)], [0, 0]])
    return KrausChannel([k0, k1], f"amplitude_damping(gamma={gamma:.6g})")


class CollectiveDephasing:
    """Element-wise map :math:`\\rho_{ij} \\to \\rho_{ij}\\,e^{-\\sigma^2 (m_i - m_j)^2/2}`,
    where :math:`m_k` is the number of excited ions in basis state k.

    This is the Gaussian average of a common :math:`R_z(\\delta)^{\\otimes n}` rotation
    with :math:`\\delta \\sim N(0, \\sigma^2)`.
    """

    def __init__(self, sigma, n):
        if not sigma >= 0:
            raise ValidationError(f"Dephasing sigma must be non-negative, got {sigma!r}")
        self.sigma = float(sigma)
        self.n = int(n)

    def __repr__(self):
        return f"CollectiveDephasing(sigma={self.sigma!r}, n={self.n})"

    @cached_property
    def factors(self):
        m = basis_popcounts(self.n)
        diff = m[:, None] - m[None, :]
        f = np.exp(-0.5 * self.sigma**2 * diff**2)
        f.flags.writeable = False
        return f

    def __call__(self, rho):
        if rho.n_qubits != self.n:
            raise ValidationError(f"Dephasing map for {self.n} qubits applied to {rho.n_qubits}-qubit state")
        if self.sigma == 0:
            return rho
        return DensityMatrix(rho.elements * self.factors)


def collective_dephasing(sigma, n):
    """Collective dephasing map of an `n`-qubit register, see :class:`CollectiveDephasing`.

    Example
    -------
    >>> rho = DensityMatrix(np.full((2, 2), 0.5))
    >>> float(round(collective_dephasing(1.0, 1)(rho).elements[0, 1].real, 6))
    0.303265
    """
    return CollectiveDephasing(sigma, n)


def _block(ndim, axes, values):
    idx = [slice(None)] * ndim
    for axis, value in zip(axes, values):
        idx[axis] = value
    return tuple(idx)


@singledispatch
def depolarize(rho, p, targets):
    """Depolarize the qubits `targets` of `rho` with probability `p`.

    Same map as :func:`depolarizing` with Kraus operators, computed as
    :math:`(1-p)\\rho + p\\,\\mathbb{I}_T/d \\otimes \\mathrm{tr}_T\\rho`.

    Parameters
    ----------
    rho : DensityMatrix or numpy.ndarray
        A density matrix or its ``(2,)*2n`` tensor (row axes first).
    p : float
    targets : sequence of int
    """
    raise NotImplementedError(f"Cannot depolarize object of type {type(rho)}")


@depolarize.register(np.ndarray)
def _(rho, p, targets):
    if p == 0:
        return rho
    n = rho.ndim // 2
    traced = rho
    broadcast = 1.0
    for q in targets:
        traced = traced[_block(rho.ndim, (q, n + q), (slice(0, 1), slice(0, 1)))] \
            + traced[_block(rho.ndim, (q, n + q), (slice(1, 2), slice(1, 2)))]
        shape = [1] * rho.ndim
        shape[q] = shape[n + q] = 2
        broadcast = broadcast * (IDENTITY.reshape(shape) / 2)
    return (1 - p) * rho + p * traced * broadcast


@depolarize.register(DensityMatrix)
def _(rho, p, targets):
    targets = check_targets(targets, rho.n_qubits)
    out = depolarize(rho.tensor(), _check_probability(p), targets)
    return DensityMatrix(out.reshape(rho.dim, rho.dim))


@singledispatch
def damp(rho, gamma, qubit):
    """Amplitude-damp qubit `qubit` of `rho` with decay probability `gamma`.

    Equivalent to :func:`amplitude_damping` with :math:`\\gamma` from :func:`damping_gamma`.
    """
    raise NotImplementedError(f"Cannot damp object of type {type(rho)}")


@damp.register(np.ndarray)
def _(rho, gamma, qubit):
    if gamma == 0:
        return rho
    n = rho.ndim // 2
    axes = (qubit, n + qubit)
    out = rho.copy()
    out[_block(rho.ndim, axes, (0, 0))] += gamma * rho[_block(rho.ndim, axes, (1, 1))]
    out[_block(rho.ndim, axes, (0, 1))] *= math.sqrt(1 - gamma)
    out[_block(rho.ndim, axes, (1, 0))] *= math.sqrt(1 - gamma)
    out[_block(rho.ndim, axes, (1, 1))] *= 1 - gamma
    return out


@damp.register(DensityMatrix)
def _(rho, gamma, qubit):
    qubit, = check_targets([qubit], rho.n_qubits)
    out = damp(rho.tensor(), _check_probability(gamma, "gamma"), qubit)
    return DensityMatrix(out.reshape(rho.dim, rho.dim))
