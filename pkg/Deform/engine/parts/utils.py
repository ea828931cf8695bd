import math

import numpy as np

from Deform.engine.exception import DeformException, ErrorType


class Utils:
    @staticmethod
    def relativeResidual(
        actual: np.ndarray,
        expected: np.ndarray,
        columns: int | None = None,
        scale: np.ndarray | None = None,
    ) -> float:
        """
        두 행렬의 차이를 열마다 기준 크기로 나눈 잔차의 최댓값을 계산합니다.

        기준 열이 모두 0이면 전체 최댓값으로, 그것도 0이면 절대 잔차로 대신합니다.
        1차원 배열은 하나의 열로 취급합니다.

        Parameters:
            actual: 계산된 행렬
            expected: 기준 행렬
            columns: 비교할 앞쪽 열의 개수 (None이면 전체)
            scale: 열 크기를 정할 행렬 (None이면 expected)

        Returns:
            residual: 상대 잔차
        """
        actual = np.asarray(actual)
        expected = np.asarray(expected)
        scale = expected if scale is None else np.asarray(scale)
        if expected.ndim == 1:
            actual = actual.reshape(-1, 1)
            expected = expected.reshape(-1, 1)
            scale = scale.reshape(-1, 1)

        if columns is not None:
            actual = actual[:, :columns]
            expected = expected[:, :columns]
            scale = scale[:, :columns]
        if expected.shape[1] == 0:
            return 0.0

        differences = np.max(np.abs(actual - expected), axis=0, initial=0.0)
        magnitudes = np.max(np.abs(scale), axis=0, initial=0.0)
        overall = float(np.max(magnitudes, initial=0.0))
        if overall == 0.0:
            return float(np.max(differences))

        magnitudes = np.where(magnitudes > 0.0, magnitudes, overall)
        return float(np.max(differences / magnitudes))

    @staticmethod
    def circularDistance(first: float, second: float) -> float:
        """
        두 위상의 2π 주기 거리를 계산합니다.
        """
        difference = math.remainder(first - second, 2.0 * math.pi)
        return abs(difference)

    @staticmethod
    def timeGrid(tauMax: float, steps: int) -> np.ndarray:
        """
        [0, tauMax] 구간의 균일한 시간 격자를 만듭니다.

        Parameters:
            tauMax: 마지막 시각
            steps: 격자점 개수

        Returns:
            times: 시간 격자
        """
        if steps < 1 or tauMax < 0:
            raise DeformException(
                errorType=ErrorType.CONFIG_ERROR,
                message="시간 격자 설정이 올바르지 않습니다.",
                params={"tauMax": tauMax, "steps": steps},
            )
        if steps == 1:
            return np.zeros(1)
        return np.linspace(0.0, tauMax, steps)

    @staticmethod
    def checkIncreasing(times: np.ndarray):
        # 시간 격자는 엄격히 증가해야 함
        if times.ndim != 1 or np.any(np.diff(times) <= 0):
            raise DeformException(
                errorType=ErrorType.CONFIG_ERROR,
                message="시간 격자는 엄격히 증가해야 합니다.",
            )
