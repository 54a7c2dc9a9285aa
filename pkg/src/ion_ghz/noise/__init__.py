# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
# Author: Markus Ritschel
# eMail:  git@markusritschel.de
# Date:   2024-09-04
# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
#
"""Noise channels, readout errors and the :class:`NoiseSpec` configuration."""
import logging


log = logging.getLogger(__name__)

from .channels import (FIDELITY_CONVENTION, CollectiveDephasing, KrausChannel, amplitude_damping,
                       calibrate_depolarizing, collective_dephasing, damp, damping_gamma, depolarize,
                       depolarizing, pauli_products)
from .spam import ConfusionMatrix, apply_spam, invert_spam
from .model import NoiseSpec
