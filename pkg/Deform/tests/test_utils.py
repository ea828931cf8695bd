import math

import numpy as np
import pytest

from Deform.engine.exception import DeformException, ErrorType
from Deform.engine.parts.utils import Utils


def test_relative_residual_normalizes_each_column():
    expected = np.diag([1.0, 1e200])
    actual = expected.copy()
    actual[0, 0] = 1.0 + 1e-3
    assert Utils.relativeResidual(actual, expected) == pytest.approx(1e-3, rel=1e-9)


def test_relative_residual_scale_and_columns():
    expected = np.array([[0.0, 1.0], [1e-20, 0.0]])
    actual = np.array([[0.0, 1.0], [2e-20, 5.0]])
    scale = np.array([[1.0, 1.0], [1.0, 1.0]])

    # 앞쪽 열만 비교
    assert Utils.relativeResidual(actual, expected, columns=1) == pytest.approx(1.0)
    assert Utils.relativeResidual(actual, expected, columns=1, scale=scale) == (
        pytest.approx(1e-20)
    )


def test_relative_residual_zero_column_uses_overall_scale():
    expected = np.array([[0.0, 4.0], [0.0, 0.0]])
    actual = np.array([[1e-3, 4.0], [0.0, 0.0]])
    assert Utils.relativeResidual(actual, expected) == pytest.approx(2.5e-4)

    assert Utils.relativeResidual(np.ones((2, 2)), np.zeros((2, 2))) == 1.0
    assert Utils.relativeResidual(np.ones((2, 2)), np.ones((2, 2)), columns=0) == 0.0


def test_relative_residual_vectors_use_global_scale():
    expected = np.array([1.0, 1e-8])
    actual = np.array([1.0, 2e-8])
    assert Utils.relativeResidual(actual, expected) == pytest.approx(1e-8)


def test_circular_distance():
    assert Utils.circularDistance(0.1, 0.1 + 2.0 * math.pi) == pytest.approx(0.0, abs=1e-15)
    assert Utils.circularDistance(3.0, -3.0) == pytest.approx(2.0 * math.pi - 6.0)


@pytest.mark.parametrize("tauMax, steps", [(-1.0, 5), (1.0, 0)])
def test_time_grid_errors(tauMax, steps):
    with pytest.raises(DeformException) as error:
        Utils.timeGrid(tauMax, steps)
    assert error.value.type == ErrorType.CONFIG_ERROR


def test_time_grid_single_point():
    assert Utils.timeGrid(3.0, 1).tolist() == [0.0]
    assert Utils.timeGrid(1.0, 3).tolist() == [0.0, 0.5, 1.0]
