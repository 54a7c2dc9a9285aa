# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
# Author: Markus Ritschel
# eMail:  git@markusritschel.de
# Date:   2024-04-04
# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
#
"""Small linear-algebra toolbox shared by the state, noise and circuit modules.

Operators on an N-qubit register are never materialized as 2^N x 2^N
matrices. States are reshaped into tensors with one axis of length 2 per
qubit (qubit 0 first, i.e. most significant bit) and local operators are
contracted into the axes they act on, see :func:`apply_to_axes`.
"""
from functools import singledispatch
import logging
import numpy as np

from ..core.exceptions import CalibrationError, ValidationError


log = logging.getLogger(__name__)

UNITARY_ATOL = 1e-9


@singledispatch
def inv(x):
    """Invert a quadratic-shape :class:`numpy.ndarray` object.

    Raises
    ------
    ValueError
        If `x` is not quadratic.
    CalibrationError
        If `x` is singular.

    Example
    -------
    >>> inv(np.array([[2., 0.], [0., 4.]])).diagonal()
    array([0.5 , 0.25])
    """
    x = np.asarray(x)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise ValueError("Cannot invert non-quadratic object.")
    try:
        return np.linalg.inv(x)
    except np.linalg.LinAlgError as err:
        raise CalibrationError(f"Cannot invert singular matrix {x.tolist()}") from err


def apply_to_axes(tensor, op, axes):
    """Contract the k-local operator `op` into the given `axes` of `tensor`.

    Parameters
    ----------
    tensor : numpy.ndarray
        Array with shape ``(2, 2, ..., 2)``.
    op : numpy.ndarray
        Matrix of shape ``(2**k, 2**k)`` whose row/column index is ordered like
        the `axes` (first axis = most significant bit).
    axes : sequence of int
        The k distinct axes `op` acts on.

    Returns
    -------
    numpy.ndarray
        New array of the same shape with ``op`` applied on `axes` and the
        identity everywhere else.

    Example
    -------
    >>> psi = np.array([1, 0, 0, 0]).reshape(2, 2)     # |00>
    >>> flip = np.array([[0, 1], [1, 0]])
    >>> apply_to_axes(psi, flip, [1]).ravel()          # |01>
    array([0, 1, 0, 0])
    """
    axes = list(axes)
    k = len(axes)
    op = np.asarray(op).reshape((2,) * (2 * k))
    out = np.tensordot(op, tensor, axes=(list(range(k, 2 * k)), axes))
    return np.moveaxis(out, list(range(k)), axes)


def is_unitary(u, atol=UNITARY_ATOL):
    """Check whether `u` is a square unitary matrix within `atol` (max-abs norm)."""
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    deviation = np.abs(u.conj().T @ u - np.eye(u.shape[0]))
    return bool(deviation.max(initial=0.0) <= atol)


def check_unitary(u, atol=UNITARY_ATOL):
    """Return `u` as complex array or raise :class:`ValidationError` if it is not unitary."""
    u = np.asarray(u, dtype=complex)
    if not is_unitary(u, atol):
        raise ValidationError(f"Matrix of shape {u.shape} is not unitary within {atol}")
    return u


def is_hermitian(m, atol=1e-9):
    """Check whether `m` equals its conjugate transpose within `atol`."""
    m = np.asarray(m)
    return bool(np.abs(m - m.conj().T).max(initial=0.0) <= atol)


def check_completeness(operators, atol=1e-9):
    """Verify the Kraus completeness relation :math:`\\sum_k K_k^\\dagger K_k = \\mathbb{I}`.

    Parameters
    ----------
    operators : sequence of numpy.ndarray
        The Kraus operators, all of the same square shape.
    atol : float
        Tolerance on the max-abs deviation from the identity.

    Returns
    -------
    tuple of numpy.ndarray
        The operators as complex arrays.

    Raises
    ------
    ValidationError
        If the set is empty, not square or incomplete.
    """
    ops = tuple(np.asarray(k, dtype=complex) for k in operators)
    if not ops:
        raise ValidationError("A Kraus channel needs at least one operator.")
    dim = ops[0].shape[0]
    if any(k.shape != (dim, dim) for k in ops):
        raise ValidationError("All Kraus operators must be square and of equal shape.")
    total = sum(k.conj().T @ k for k in ops)
    deviation = np.abs(total - np.eye(dim)).max()
    if deviation > atol:
        raise ValidationError(f"Kraus operators are incomplete (deviation {deviation:.3e}).")
    return ops


def hermitian_expm(h, t=1.0):
    """Compute :math:`\\exp(-i t H)` of a Hermitian matrix by eigendecomposition.

    This is the generic reference the closed-form gate matrices are checked
    against.

    Example
    -------
    >>> x = np.array([[0, 1], [1, 0]])
    >>> bool(np.allclose(hermitian_expm(x, np.pi / 2), -1j * x))
    True
    """
    h = np.asarray(h, dtype=complex)
    if not is_hermitian(h):
        raise ValidationError("Generator must be Hermitian.")
    evals, evecs = np.linalg.eigh(h)
    return (evecs * np.exp(-1j * t * evals)) @ evecs.conj().T
