# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
# Author: Markus Ritschel
# eMail:  git@markusritschel.de
# Date:   2024-09-16
# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
#
"""Fit of the two-qubit depolarizing probability and the collective dephasing
strength to measured GHZ fidelities.

The single-qubit error and the upper-level lifetime stay fixed at their
measured values; only ``p2`` and ``sigma_collective`` are free.
"""
from dataclasses import dataclass, field
import logging
import math
import numpy as np
import pandas as pd
from scipy.optimize import minimize
from tqdm import tqdm

from ..core.exceptions import ValidationError
from ..ghz import GhzSpec, build_ghz_circuit
from ..noise import NoiseSpec
from ..simulator import simulate
from .fidelity import direct_fidelity
from .parity import default_phases, parity_scan_from_state
from .population import population_from_state


log = logging.getLogger(__name__)

# Measured GHZ fidelities (SPAM corrected) for N = 2..8 ions
TABLE1 = {2: 0.968, 3: 0.904, 4: 0.862, 5: 0.785, 6: 0.738, 7: 0.655, 8: 0.579}

ESTIMATORS = ("protocol", "elements", "direct")
P2_BOUNDS = (0.0, 0.1)
SIGMA_BOUNDS = (0.0, 0.3)


def simulated_fidelity(n, noise, estimator="protocol", include_dd=True):
    """Exact-mode GHZ fidelity of the `n`-ion preparation under `noise`.

    Parameters
    ----------
    n : int
    noise : NoiseSpec
    estimator : {'protocol', 'elements', 'direct'}
        ``protocol`` runs the population experiment and a parity scan on a
        2n+1 point grid (the smallest grid that resolves all harmonics up to n
        exactly), ``elements`` reads A and B off the density matrix
        (:math:`A = \\rho_{0,0} + \\rho_{1,1}`, :math:`B = 2|\\rho_{0,1}|`),
        ``direct`` is the overlap with the target state.
    include_dd : bool

    Example
    -------
    >>> round(simulated_fidelity(2, NoiseSpec.ideal(), "elements"), 9)
    1.0
    """
    if estimator not in ESTIMATORS:
        raise ValidationError(f"Unknown estimator {estimator!r}, choose from {ESTIMATORS}")
    rho = simulate(build_ghz_circuit(GhzSpec(n, include_dd=include_dd)), noise)
    if estimator == "direct":
        return direct_fidelity(rho, n)
    if estimator == "elements":
        a = rho.elements[0, 0].real + rho.elements[-1, -1].real
        b = 2 * abs(rho.elements[0, -1])
        return float((a + b) / 2)
    population = population_from_state(rho, noise, shots=0)
    scan = parity_scan_from_state(rho, n, noise, default_phases(n, 2 * n + 1), shots=0)
    return (population.a_value + scan.fitted_b) / 2


def simulated_fidelities(ns, noise, estimator="protocol", include_dd=True):
    """:func:`simulated_fidelity` for several sizes, as ``{n: F}``."""
    return {int(n): simulated_fidelity(int(n), noise, estimator, include_dd) for n in ns}


@dataclass(frozen=True)
class CalibrationResult:
    """Outcome of :func:`calibrate_noise_to_table1`."""
    noise: NoiseSpec
    targets: dict
    simulated: dict
    rms: float
    converged: bool
    n_evaluations: int
    message: str = ""
    history: list = field(default_factory=list, repr=False)

    @property
    def residuals(self):
        """``simulated - target`` per GHZ size."""
        return {n: self.simulated[n] - self.targets[n] for n in self.targets}

    @property
    def is_monotonic(self):
        values = [self.simulated[n] for n in sorted(self.simulated)]
        return all(later < earlier for earlier, later in zip(values, values[1:]))

    def to_frame(self):
        """``n, target, simulated, residual`` per GHZ size."""
        ns = sorted(self.targets)
        return pd.DataFrame({
            'n': ns,
            'target': [self.targets[n] for n in ns],
            'simulated': [self.simulated[n] for n in ns],
            'residual': [self.residuals[n] for n in ns],
        })


def _check_targets(targets):
    if not targets:
        raise ValidationError("Calibration needs at least one target fidelity")
    out = {}
    for n, f in dict(targets).items():
        if not 0 <= f <= 1:
            raise ValidationError(f"Target fidelity for N={n} must lie in [0, 1], got {f!r}")
        out[int(n)] = float(f)
    return out


def calibrate_noise_to_table1(targets=None, fixed=None, estimator="protocol", grid_points=4,
                              p2_bounds=P2_BOUNDS, sigma_bounds=SIGMA_BOUNDS, maxiter=150,
                              xatol=1e-4, fatol=1e-9, include_dd=True, progress=False):
    """Fit ``(p2, sigma_collective)`` so that the simulated fidelities match `targets`.

    A coarse grid over the bounds is followed by a bounded Nelder-Mead search
    (:func:`scipy.optimize.minimize`) on the mean squared deviation.

    Parameters
    ----------
    targets : dict, optional
        ``{n: fidelity}``; defaults to :data:`TABLE1`.
    fixed : NoiseSpec, optional
        All other noise parameters; defaults to ``NoiseSpec()`` (measured
        single-qubit fidelity and lifetime).
    estimator : str
        See :func:`simulated_fidelity`.
    grid_points : int
        Grid points per free parameter of the initial scan.
    maxiter, xatol, fatol
        Nelder-Mead settings.
    progress : bool
        Show a :mod:`tqdm` progress bar for the grid scan.

    Returns
    -------
    CalibrationResult
        The best parameters found; ``converged`` is False if the optimizer
        stopped without meeting its tolerances.
    """
    targets = _check_targets(TABLE1 if targets is None else targets)
    fixed = NoiseSpec() if fixed is None else fixed
    ns = sorted(targets)
    goal = np.array([targets[n] for n in ns])
    bounds = [p2_bounds, sigma_bounds]
    cache = {}

    def evaluate(x):
        p2 = float(np.clip(x[0], *p2_bounds))
        sigma = float(np.clip(x[1], *sigma_bounds))
        key = (p2, sigma)
        if key not in cache:
            noise = fixed.replace(p2=p2, sigma_collective=sigma)
            simulated = simulated_fidelities(ns, noise, estimator, include_dd)
            mse = float(np.mean((np.array([simulated[n] for n in ns]) - goal) ** 2))
            cache[key] = (mse, simulated)
            log.debug(f"p2 = {p2:.6f}, sigma = {sigma:.6f}: rms {math.sqrt(mse):.5f}")
        return cache[key][0]

    p2_grid = np.linspace(*p2_bounds, grid_points)
    sigma_grid = np.linspace(*sigma_bounds, grid_points)
    candidates = [(p2, sigma) for p2 in p2_grid for sigma in sigma_grid]
    for x in tqdm(candidates, desc="calibration grid", disable=not progress):
        evaluate(x)
    x0 = np.array(min(cache, key=lambda k: cache[k][0]))

    steps = np.array([np.diff(p2_bounds)[0], np.diff(sigma_bounds)[0]]) / max(2 * (grid_points - 1), 1)
    simplex = [x0]
    for axis in range(2):
        vertex = x0.copy()
        upper = bounds[axis][1]
        vertex[axis] += steps[axis] if x0[axis] + steps[axis] <= upper else -steps[axis]
        simplex.append(vertex)

    res = minimize(evaluate, x0, method="Nelder-Mead", bounds=bounds,
                   options={"xatol": xatol, "fatol": fatol, "maxiter": maxiter,
                            "initial_simplex": np.array(simplex)})
    if not res.success:
        log.warning(f"Calibration search did not converge: {res.message}")

    best = min(cache, key=lambda k: cache[k][0])
    mse, simulated = cache[best]
    noise = fixed.replace(p2=best[0], sigma_collective=best[1])
    result = CalibrationResult(noise=noise, targets=targets, simulated=simulated, rms=math.sqrt(mse),
                               converged=bool(res.success), n_evaluations=len(cache), message=str(res.message),
                               history=[(k[0], k[1], math.sqrt(v[0])) for k, v in cache.items()])
    log.info(f"Calibrated p2 = {noise.p2:.5f}, sigma_collective = {noise.sigma_collective:.5f} "
             f"(rms {result.rms:.4f}, {result.n_evaluations} evaluations)")
    return result
