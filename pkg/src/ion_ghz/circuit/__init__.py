# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
# Author: Markus Ritschel
# eMail:  git@markusritschel.de
# Date:   2024-09-06
# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
#
"""Circuit IR, transpilation into the native gate set and the unitary equivalence oracle.
"""
import logging


log = logging.getLogger(__name__)

from .ir import (DEFAULT_DUR_1Q, DEFAULT_DUR_2Q, NATIVE_KINDS, Circuit, GateKind, Instruction, barrier, cx,
                 gate_duration, h, msxx, rphi, rx, ry, rz)
from .unitary import gate_matrix, phase_insensitive_distance, unitary_of_circuit
from .transpile import check_equivalence, decompose_cx, decompose_h, fold_virtual_rz, transpile
from .textio import dumps, loads, read_circuit, write_circuit
