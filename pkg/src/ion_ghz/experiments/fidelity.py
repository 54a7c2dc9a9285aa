# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
# Author: Markus Ritschel
# eMail:  git@markusritschel.de
# Date:   2024-09-13
# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
#
"""GHZ fidelity :math:`F = A/2 + B/2` and the witness
:math:`\\langle W\\rangle = 1 - 2F` of :math:`W = \\mathbb{I} - 2|GHZ\\rangle\\langle GHZ|`.

:math:`F > 1/2` certifies genuine multipartite entanglement.
"""
from dataclasses import asdict, dataclass
import logging
import math
import numpy as np
from multipledispatch import dispatch

from ..core.exceptions import ValidationError
from ..ghz import ideal_ghz_state
from ..qstate import DensityMatrix, StateVector


log = logging.getLogger(__name__)

ENTANGLEMENT_THRESHOLD = 0.5
RANGE_TOLERANCE = 1e-6


@dataclass(frozen=True)
class WitnessResult:
    fidelity: float
    witness: float
    entangled: bool

    @property
    def verdict(self):
        return "genuinely entangled" if self.entangled else "not certified"


def fidelity_and_witness(a, b):
    """Combine the two experiments.

    Example
    -------
    >>> fidelity_and_witness(1.0, 1.0)
    WitnessResult(fidelity=1.0, witness=-1.0, entangled=True)
    >>> fidelity_and_witness(0.5, 0.4).entangled
    False
    """
    for name, value in (("A", a), ("B", b)):
        if not -RANGE_TOLERANCE <= value <= 1 + RANGE_TOLERANCE:
            log.warning(f"{name} = {value:.6f} lies outside of [0, 1]; shot noise or SPAM over-correction?")
    fidelity = (a + b) / 2
    return WitnessResult(float(fidelity), float(1 - 2 * fidelity), bool(fidelity > ENTANGLEMENT_THRESHOLD))


@dataclass(frozen=True)
class FidelityReport:
    """Everything the protocol reports for one GHZ size."""
    n: int
    a_value: float
    b_value: float
    fidelity: float
    witness: float
    entangled: bool
    spam_corrected: bool
    shots: int
    seed: int | None
    a_stderr: float = 0.0
    b_stderr: float = 0.0
    raw_a_value: float | None = None
    direct_fidelity: float | None = None

    @classmethod
    def from_results(cls, population, scan, seed=None, direct=None):
        """Assemble the report from a :class:`PopulationResult` and a :class:`ParityScanResult`."""
        w = fidelity_and_witness(population.a_value, scan.fitted_b)
        return cls(n=scan.n, a_value=population.a_value, b_value=scan.fitted_b, fidelity=w.fidelity,
                   witness=w.witness, entangled=w.entangled,
                   spam_corrected=population.spam_corrected or scan.spam_corrected,
                   shots=population.shots, seed=seed, a_stderr=population.stderr, b_stderr=scan.b_stderr,
                   raw_a_value=population.raw_a_value, direct_fidelity=direct)

    @property
    def verdict(self):
        return "genuinely entangled" if self.entangled else "not certified"

    def to_dict(self):
        return {**asdict(self), "verdict": self.verdict}


def _check_size(state, n):
    if state.n_qubits != n:
        raise ValidationError(f"State has {state.n_qubits} qubits, GHZ target {n}")


@dispatch(DensityMatrix, (int, np.integer))
def direct_fidelity(rho, n):
    """Exact overlap :math:`\\langle GHZ_n|\\rho|GHZ_n\\rangle` with the target state.

    Example
    -------
    >>> round(direct_fidelity(DensityMatrix.maximally_mixed(2), 2), 12)
    0.25
    """
    _check_size(rho, n)
    psi = ideal_ghz_state(int(n)).amplitudes
    return float(np.vdot(psi, rho.elements @ psi).real)


@dispatch(StateVector, (int, np.integer))
def direct_fidelity(state, n):   # noqa: F811
    _check_size(state, n)
    psi = ideal_ghz_state(int(n)).amplitudes
    return float(abs(np.vdot(psi, state.amplitudes)) ** 2)


def ghz_coherence(rho):
    """The coherence :math:`\\rho_{0\\cdots0,1\\cdots1}` between the two extreme states."""
    return complex(rho.elements[0, -1])


def protocol_check(report, tolerance=None):
    """Compare the A/B estimate with the exact fidelity of the prepared state.

    Logs a warning when ``|F - F_direct|`` exceeds `tolerance`; by default
    three combined standard errors of A and B (at least 1e-6).

    Returns
    -------
    float
        The signed difference ``F - F_direct``.
    """
    if report.direct_fidelity is None:
        raise ValidationError("Report carries no direct fidelity to compare with")
    diff = report.fidelity - report.direct_fidelity
    if tolerance is None:
        tolerance = max(3 * math.hypot(report.a_stderr, report.b_stderr), 1e-6)
    if abs(diff) > tolerance:
        log.warning(f"GHZ-{report.n}: protocol fidelity {report.fidelity:.6f} deviates from the exact "
                    f"{report.direct_fidelity:.6f} by {diff:+.2e} (tolerance {tolerance:.1e})")
    return diff
