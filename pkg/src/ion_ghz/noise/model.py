# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
# Author: Markus Ritschel
# eMail:  git@markusritschel.de
# Date:   2024-09-05
# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
#
"""The noise configuration of a simulated run.

Noise insertion policy used by :func:`ion_ghz.simulator.simulate`:

* depolarizing with ``p1``/``p2`` after every native RPHI/MSXX on its targets,
* amplitude damping with ``t1_seconds`` on every qubit for the full wall-clock
  duration of the circuit (virtual RZ takes no time),
* collective dephasing once per circuit with
  ``sigma_collective * sqrt(T / t_ref_seconds)``,
* readout errors through the per-qubit confusion matrix.
"""
from dataclasses import asdict, dataclass, fields, replace
import logging
import math

from ..circuit.ir import DEFAULT_DUR_1Q, DEFAULT_DUR_2Q
from ..core.exceptions import ValidationError
from .channels import FIDELITY_CONVENTION, calibrate_depolarizing, collective_dephasing
from .spam import ConfusionMatrix


log = logging.getLogger(__name__)

REPORTED_F_1Q = 0.99946
REPORTED_F_2Q = 0.963
REPORTED_T1 = 0.053
DEFAULT_T_REF = 1e-3
DEFAULT_EPS = 0.005


@dataclass(frozen=True)
class NoiseSpec:
    """Per-gate-class noise parameters.

    Attributes
    ----------
    p1, p2 : float
        Depolarizing probability per single-/two-qubit gate.
    t1_seconds : float
        Lifetime of the upper (D) level; ``inf`` disables decay.
    sigma_collective : float
        Standard deviation (radians) of the common laser phase accrued over
        `t_ref_seconds`.
    eps_bright, eps_dark : float
        Readout error probabilities, see :class:`ConfusionMatrix`.
    dur_1q_seconds, dur_2q_seconds : float
        Duration of a π rotation and of an MS gate.
    t_ref_seconds : float
        Reference interval of `sigma_collective`.
    """
    p1: float = calibrate_depolarizing(REPORTED_F_1Q, 1)
    p2: float = calibrate_depolarizing(REPORTED_F_2Q, 2)
    t1_seconds: float = REPORTED_T1
    sigma_collective: float = 0.0
    eps_bright: float = DEFAULT_EPS
    eps_dark: float = DEFAULT_EPS
    dur_1q_seconds: float = DEFAULT_DUR_1Q
    dur_2q_seconds: float = DEFAULT_DUR_2Q
    t_ref_seconds: float = DEFAULT_T_REF

    def __post_init__(self):
        for name in ("p1", "p2", "eps_bright", "eps_dark"):
            value = getattr(self, name)
            if not 0 <= value <= 1:
                raise ValidationError(f"{name} must be a probability in [0, 1], got {value!r}")
        for name in ("t1_seconds", "dur_1q_seconds", "dur_2q_seconds", "t_ref_seconds"):
            value = getattr(self, name)
            if not value > 0:
                raise ValidationError(f"{name} must be positive, got {value!r}")
        if not (self.sigma_collective >= 0 and math.isfinite(self.sigma_collective)):
            raise ValidationError(f"sigma_collective must be finite and >= 0, got {self.sigma_collective!r}")

    @classmethod
    def ideal(cls):
        """No gate errors, no decay, no dephasing, perfect readout."""
        return cls(p1=0.0, p2=0.0, t1_seconds=math.inf, sigma_collective=0.0,
                   eps_bright=0.0, eps_dark=0.0)

    @classmethod
    def from_reported_fidelities(cls, f_1q=REPORTED_F_1Q, f_2q=REPORTED_F_2Q, t1=REPORTED_T1, **kwargs):
        """Build a spec from measured average gate fidelities.

        Example
        -------
        >>> spec = NoiseSpec.from_reported_fidelities()
        >>> round(spec.p1, 5), round(spec.p2, 5)
        (0.00108, 0.04933)
        """
        return cls(p1=calibrate_depolarizing(f_1q, 1), p2=calibrate_depolarizing(f_2q, 2),
                   t1_seconds=t1, **kwargs)

    @classmethod
    def from_mapping(cls, mapping):
        """Build a spec from a ``{field: value}`` mapping, ignoring absent fields."""
        names = {f.name for f in fields(cls)}
        unknown = set(mapping) - names
        if unknown:
            raise ValidationError(f"Unknown noise parameter(s): {sorted(unknown)}")
        return cls(**{k: float(v) for k, v in mapping.items()})

    def replace(self, **changes):
        return replace(self, **changes)

    def to_dict(self):
        return asdict(self)

    @property
    def is_noiseless(self):
        return (self.p1 == 0 and self.p2 == 0 and math.isinf(self.t1_seconds)
                and self.sigma_collective == 0)

    @property
    def has_readout_error(self):
        return self.eps_bright > 0 or self.eps_dark > 0

    def confusion(self, n):
        """Per-qubit confusion matrices of an `n`-qubit register."""
        return [ConfusionMatrix(self.eps_bright, self.eps_dark)] * n

    def sigma_effective(self, total_duration):
        """Collective phase spread accrued during `total_duration` seconds."""
        return self.sigma_collective * math.sqrt(max(total_duration, 0.0) / self.t_ref_seconds)

    def dephasing(self, total_duration, n):
        """The collective dephasing map of an `n`-qubit circuit lasting `total_duration`."""
        return collective_dephasing(self.sigma_effective(total_duration), n)

    def describe(self):
        """Parameters plus the fidelity convention, for reports."""
        return {**self.to_dict(), "fidelity_convention": FIDELITY_CONVENTION}
