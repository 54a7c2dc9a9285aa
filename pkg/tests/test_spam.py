# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
# Author: Markus Ritschel
# eMail:  git@markusritschel.de
# Date:   2024-09-06
# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
#
import logging
import pytest
import numpy as np

from ion_ghz.core.exceptions import CalibrationError, ValidationError
from ion_ghz.linalg import inv
from ion_ghz.noise import ConfusionMatrix, apply_spam, invert_spam

log = logging.getLogger(__name__)


def test_confusion_matrix_columns_sum_to_one():
    m = ConfusionMatrix(0.013, 0.027).matrix
    assert np.allclose(m.sum(axis=0), 1)
    assert ConfusionMatrix().is_identity


def test_confusion_matrix_validation():
    with pytest.raises(ValidationError):
        ConfusionMatrix(-0.1, 0)


def test_apply_spam_example():
    observed = apply_spam([1, 0], ConfusionMatrix(0.01, 0.02))
    assert np.allclose(observed, [0.99, 0.01])


def test_apply_spam_matches_kron():
    rng = np.random.default_rng(0)
    probs = rng.dirichlet(np.ones(8))
    confusion = [ConfusionMatrix(0.01, 0.02), ConfusionMatrix(0.03, 0.0), ConfusionMatrix(0.05, 0.04)]
    full = np.kron(np.kron(confusion[0].matrix, confusion[1].matrix), confusion[2].matrix)
    assert np.abs(apply_spam(probs, confusion) - full @ probs).max() < 1e-14, "Qubit 0 must be the leading factor"


def test_invert_spam_round_trip():
    rng = np.random.default_rng(1)
    confusion = ConfusionMatrix(0.02, 0.03)
    for _ in range(20):
        probs = rng.dirichlet(np.ones(16))
        recovered = invert_spam(apply_spam(probs, confusion), confusion)
        assert np.abs(recovered - probs).max() < 1e-10


def test_invert_spam_singular():
    with pytest.raises(CalibrationError):
        inv(ConfusionMatrix(0.5, 0.5))
    with pytest.raises(CalibrationError):
        invert_spam([0.5, 0.5], ConfusionMatrix(0.3, 0.7))


def test_invert_spam_clamps_and_renormalizes():
    corrected, raw = invert_spam([1, 0], ConfusionMatrix(0.1, 0.1), return_raw=True)
    assert np.allclose(raw, [1.125, -0.125])
    assert np.allclose(corrected, [1, 0]), "Negative mass must be clamped and the rest renormalized"
    assert corrected.sum() == pytest.approx(1)


def test_wrong_vector_length():
    with pytest.raises(ValidationError):
        apply_spam([0.5, 0.25, 0.25], ConfusionMatrix())
    with pytest.raises(ValidationError):
        apply_spam([1, 0, 0, 0], [ConfusionMatrix()])
