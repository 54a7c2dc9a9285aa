# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
# Author: Markus Ritschel
# eMail:  git@markusritschel.de
# Date:   2024-09-12
# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
#
"""Parity experiment: a π/2 analysis pulse with phase φ on every ion, followed
by a parity measurement, and the fit :math:`P(\\phi) = B\\cos(N\\phi + \\phi_0)`.

For a GHZ state the parity oscillates with frequency N, and the amplitude
:math:`B = 2|\\rho_{0\\cdots0,1\\cdots1}|` measures its coherence.
"""
from dataclasses import dataclass
from functools import reduce
import logging
import math
import numpy as np
import pandas as pd
from tqdm import tqdm

from ..circuit import Circuit, rphi
from ..core.exceptions import FitError, ValidationError
from ..linalg import inv
from ..qstate import basis_popcounts
from ..simulator import simulate
from .readout import readout


log = logging.getLogger(__name__)

ANALYSIS_THETA = math.pi / 2


def parity_of_distribution(probs):
    """Even minus odd excitation-number population,
    :math:`\\sum_i (-1)^{m_i} p_i`.

    Example
    -------
    >>> parity_of_distribution([0, 1])
    -1.0
    >>> parity_of_distribution([0.25, 0.25, 0.25, 0.25])
    0.0
    """
    probs = np.asarray(probs, dtype=float)
    n = probs.size.bit_length() - 1
    signs = 1 - 2 * (basis_popcounts(n) % 2)
    return float(signs @ probs)


def parity_weights(n, confusion=None):
    """Weights `w` with corrected parity :math:`w \\cdot q` for observed frequencies `q`.

    Without readout errors these are the parity signs :math:`(-1)^{m_i}`. With
    per-qubit confusion matrices :math:`M_k` the linear SPAM inversion gives
    :math:`w = \\bigotimes_k z M_k^{-1}` with :math:`z = (1, -1)`.

    Example
    -------
    >>> from ..noise import ConfusionMatrix
    >>> parity_weights(2)
    array([ 1., -1., -1.,  1.])
    >>> w = parity_weights(1, [ConfusionMatrix(0.1, 0.1)])
    >>> bool(np.allclose(w, [1.25, -1.25]))
    True
    """
    z = np.array([1.0, -1.0])
    if confusion is None:
        return reduce(np.kron, [z] * n)
    return reduce(np.kron, [z @ inv(m) for m in confusion])


def parity_stderr(frequencies, shots, weights):
    """Binomial stderr of the (corrected) parity :math:`w \\cdot q` from `shots` repetitions.

    The plug-in multinomial variance is :math:`(q \\cdot w^2 - (q \\cdot w)^2)/N_{shots}`;
    for plain parity signs this is :math:`(1 - P^2)/N_{shots}`.
    """
    q = np.asarray(frequencies, dtype=float)
    mean = q @ weights
    return math.sqrt(max(q @ weights**2 - mean**2, 0.0) / shots)


def default_phases(n, points=None):
    """Uniform grid of `points` (default 4n+1) analysis phases in [0, 2π)."""
    points = 4 * n + 1 if points is None else int(points)
    if points < 1:
        raise ValidationError(f"Need at least one phase point, got {points}")
    return np.linspace(0, 2 * np.pi, points, endpoint=False)


def analysis_circuit(n, phi, qubits=None):
    """The analysis pulses :math:`R_\\phi(\\pi/2)` on `qubits` (default: all)."""
    qubits = range(n) if qubits is None else qubits
    return Circuit(n, [rphi(q, ANALYSIS_THETA, phi) for q in qubits])


@dataclass(frozen=True)
class ParityFit:
    """Fixed-frequency cosine fit.

    Attributes
    ----------
    b : float
        Amplitude, >= 0.
    phi0 : float
        Phase offset in (-π, π].
    rms_residual : float
    b_stderr : float
        Propagated standard error of `b`.
    """
    b: float
    phi0: float
    rms_residual: float
    b_stderr: float


def fit_parity(phases, parities, n, stderrs=None):
    """Least-squares fit of :math:`P(\\phi) = B\\cos(n\\phi + \\phi_0)`.

    The model is linear in ``a = B cos(phi0)`` and ``c = -B sin(phi0)``:
    ``P = a cos(n phi) + c sin(n phi)``.

    Parameters
    ----------
    phases, parities : array-like
        At least three samples.
    n : int
        The (fixed) oscillation frequency.
    stderrs : array-like, optional
        Per-point standard errors for the uncertainty of `b`. Without them the
        residual scatter is used.

    Raises
    ------
    FitError
        For fewer than three points or if all phases coincide modulo 2π/n.

    Example
    -------
    >>> phi = np.linspace(0, 2 * np.pi, 13, endpoint=False)
    >>> fit = fit_parity(phi, 0.8 * np.cos(3 * phi + 0.4), 3)
    >>> round(fit.b, 9), round(fit.phi0, 9)
    (0.8, 0.4)
    """
    phases = np.asarray(phases, dtype=float)
    y = np.asarray(parities, dtype=float)
    if phases.shape != y.shape or phases.ndim != 1:
        raise FitError("Phases and parities must be 1-d arrays of equal length")
    if phases.size < 3:
        raise FitError(f"Need at least 3 points for a parity fit, got {phases.size}")
    x = np.column_stack([np.cos(n * phases), np.sin(n * phases)])
    if np.linalg.matrix_rank(x) < 2:
        raise FitError(f"Degenerate phase grid: all phases coincide modulo 2pi/{n}")

    (a, c), *_ = np.linalg.lstsq(x, y, rcond=None)
    b = math.hypot(a, c)
    phi0 = math.atan2(-c, a)
    residuals = y - x @ np.array([a, c])
    rms = float(np.sqrt(np.mean(residuals**2)))

    xtx_inv = np.linalg.inv(x.T @ x)
    if stderrs is not None:
        s2 = np.asarray(stderrs, dtype=float) ** 2
        cov = xtx_inv @ (x.T * s2) @ x @ xtx_inv
    else:
        dof = max(phases.size - 2, 1)
        cov = xtx_inv * float(residuals @ residuals) / dof
    if b > 1e-12:
        grad = np.array([a, c]) / b
        b_var = grad @ cov @ grad
    else:
        b_var = np.trace(cov) / 2
    return ParityFit(b=float(b), phi0=float(phi0), rms_residual=rms, b_stderr=float(math.sqrt(max(b_var, 0.0))))


def frequency_residuals(phases, parities, max_frequency):
    """RMS residual of fixed-frequency fits for every frequency 1..`max_frequency`."""
    out = {}
    for f in range(1, max_frequency + 1):
        try:
            out[f] = fit_parity(phases, parities, f).rms_residual
        except FitError:
            out[f] = math.inf
    return out


def select_parity_frequency(phases, parities, max_frequency):
    """The oscillation frequency with the smallest fit residual.

    Example
    -------
    >>> phi = np.linspace(0, 2 * np.pi, 21, endpoint=False)
    >>> select_parity_frequency(phi, np.cos(5 * phi), 7)
    5
    """
    residuals = frequency_residuals(phases, parities, max_frequency)
    return min(residuals, key=residuals.get)


@dataclass(frozen=True)
class ParityScanResult:
    """Parity samples and their cosine fit."""
    n: int
    phases: np.ndarray
    parities: np.ndarray
    stderrs: np.ndarray
    fit: ParityFit
    shots: int = 0
    spam_corrected: bool = False

    @property
    def fitted_b(self):
        return self.fit.b

    @property
    def fitted_phi0(self):
        return self.fit.phi0

    @property
    def rms_residual(self):
        return self.fit.rms_residual

    @property
    def b_stderr(self):
        return self.fit.b_stderr

    @property
    def residuals(self):
        return self.parities - self.fit.b * np.cos(self.n * self.phases + self.fit.phi0)

    def to_frame(self):
        """``phi_radians, parity, stderr`` per phase point."""
        return pd.DataFrame({'phi_radians': self.phases, 'parity': self.parities, 'stderr': self.stderrs})


def parity_scan_from_state(rho, n, noise=None, phases=None, shots=0, seed=None, spam_correct=True,
                           progress=False):
    """Parity scan on an already prepared state.

    Parameters
    ----------
    rho : DensityMatrix
        State after preparation (including its collective dephasing).
    n : int
        Expected oscillation frequency (number of ions).
    noise : NoiseSpec, optional
        Gate errors of the analysis pulses and readout errors.
    phases : array-like, optional
        Defaults to :func:`default_phases`.
    shots : int
        Shots per phase point; 0 for exact parities.
    seed : int or numpy.random.SeedSequence, optional
        Root seed; every phase point gets its own spawned stream.
    spam_correct : bool
    progress : bool
        Show a :mod:`tqdm` progress bar.
    """
    phases = default_phases(n) if phases is None else np.asarray(phases, dtype=float)
    if phases.size == 0:
        raise ValidationError("Parity scan needs at least one phase")
    if isinstance(seed, np.random.SeedSequence):
        # fresh copy, spawn() advances the counter of the original
        root = np.random.SeedSequence(seed.entropy, spawn_key=seed.spawn_key)
    else:
        root = np.random.SeedSequence(seed)
    seeds = root.spawn(phases.size)
    parities = np.empty(phases.size)
    stderrs = np.zeros(phases.size)
    corrected = False
    confusion = noise.confusion(rho.n_qubits) if noise is not None and noise.has_readout_error else None
    weights = parity_weights(rho.n_qubits, confusion if spam_correct else None)
    for i, phi in enumerate(tqdm(phases, desc=f"parity scan N={n}", disable=not progress)):
        analysed = simulate(analysis_circuit(rho.n_qubits, phi), noise, initial=rho, dephase=False)
        result = readout(analysed, noise, shots, seeds[i], spam_correct)
        corrected = result.spam_corrected
        parities[i] = parity_of_distribution(result.probabilities)
        if shots:
            stderrs[i] = parity_stderr(result.raw, shots, weights)
        log.debug(f"phi = {phi:.4f}: parity {parities[i]:+.6f}")
    fit = fit_parity(phases, parities, n, stderrs if shots else None)
    return ParityScanResult(n, phases, parities, stderrs, fit, int(shots), corrected)


def parity_scan(circuit, n=None, noise=None, phases=None, shots=0, seed=None, spam_correct=True,
                progress=False):
    """Prepare `circuit` once and scan the analysis phase, see :func:`parity_scan_from_state`."""
    n = circuit.n_qubits if n is None else n
    rho = simulate(circuit, noise)
    result = parity_scan_from_state(rho, n, noise, phases, shots, seed, spam_correct, progress)
    log.info(f"Parity scan ({n} ions, {result.phases.size} phases, shots={shots or 'exact'}): "
             f"B = {result.fitted_b:.6f} +- {result.b_stderr:.2g}, phi0 = {result.fitted_phi0:.4f}")
    return result
