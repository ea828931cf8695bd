import asyncio
import logging
import math

import numpy as np

from Deform.engine.exception import DeformException, ErrorType
from Deform.engine.parts import (
    Anharmonic,
    CollapsedCurve,
    IsoMap,
    LambdaIndex,
    ModelParams,
    QOsc,
    TimeSeries,
    Utils,
    bandGrowth,
    collapseTransform,
    elementPhaseTrace,
    evolveAnharmonicClosed,
    evolveAnharmonicExpectation,
    evolveQExpectation,
    evolveQNormalOrdered,
    isomorphismResiduals,
    mapToQ,
    maxPairwiseDeviation,
    oracleExpectation,
    poissonWeights,
    qPoissonWeights,
    relationIdentityResidual,
    runSuites,
)
from Deform.engine.parts.constants import BAND_GROWTH_DIMS
from Deform.engine.parts.suites import CheckRecord


class Engine:
    """
    명령에서 사용하는 계산 진입점입니다.

    엔진 밖으로 나가는 예외는 모두 DeformException입니다.
    """

    METHODS = ("series", "closed", "normal-order", "oracle")
    SWEEP_TARGETS = ("isomorphism", "map", "oracle", "relation")

    def __init__(self):
        self.logger = logging.getLogger("deform")

    @staticmethod
    def buildModel(config: dict) -> ModelParams:
        """
        설정에서 모형 파라미터를 만듭니다.
        """
        if config["model"] == "qosc":
            return QOsc(q=config["q"], omegaQ=config["omega"])
        return Anharmonic(omega1=config["omega1"], omega2=config["omega2"])

    def evolve(
        self,
        params: ModelParams,
        alpha: complex,
        idx: LambdaIndex,
        times: np.ndarray,
        method: str,
        tol: float,
        dim: int | None = None,
    ) -> TimeSeries:
        """
        초기 결맞음 상태에서 <Λ^{n,m}> 시계열을 계산합니다.

        Parameters:
            params: 모형 파라미터
            alpha: 초기 고유값
            idx: (n, m)
            times: 시간 격자 (QOsc는 τ, Anharmonic은 t)
            method: "series", "closed", "normal-order", "oracle"
            tol: 급수 꼬리 허용치
            dim: oracle 계산에 사용할 Fock 차원

        Returns:
            series: 시계열
        """
        try:
            isQ = isinstance(params, QOsc)
            if method == "series":
                if isQ:
                    return evolveQExpectation(params, alpha, idx, times, tol)
                return evolveAnharmonicExpectation(params, alpha, idx, times, tol)

            if method == "closed" and not isQ:
                return evolveAnharmonicClosed(params, alpha, idx, times)

            if method == "normal-order" and isQ:
                return evolveQNormalOrdered(params, alpha, idx, times, tol)

            if method == "oracle":
                return oracleExpectation(params, alpha, idx, times, dim=dim)

            raise DeformException(
                errorType=ErrorType.CONFIG_ERROR,
                message="모형에서 지원하지 않는 계산 방식입니다.",
                params={"model": params.kind, "method": method},
            )

        except DeformException:
            raise

        except Exception as e:
            raise DeformException(errorType=ErrorType.SYSTEM_ERROR) from e

    def stateDiagnostics(
        self, params: ModelParams, alpha: complex, idx: LambdaIndex, tol: float
    ) -> dict:
        """
        초기 상태의 가중치 분포 통계와 Λ^{n,m} 띠 원소의 증가 경향을 요약합니다.

        띠 원소 최댓값은 절단 차원별로 보고하며, q < 1이면 유계 경향을 보입니다.

        Parameters:
            params: 모형 파라미터
            alpha: 초기 고유값
            idx: (n, m)
            tol: 급수 꼬리 허용치

        Returns:
            diagnostics: sidecar에 기록할 사전
        """
        try:
            alphaSq = abs(alpha) ** 2
            if isinstance(params, QOsc):
                distribution = qPoissonWeights(alphaSq, params.q, tol)
            else:
                distribution = poissonWeights(alphaSq, tol)

            dims = [dim for dim in BAND_GROWTH_DIMS if dim > idx.n]
            growth = bandGrowth(params, idx, dims)
            return {
                "weights": {
                    "kind": distribution.kind,
                    "terms": len(distribution.weights),
                    "mean": distribution.mean(),
                    "variance": distribution.variance(),
                    "tail_bound": distribution.tailBound,
                },
                # 유한하지 않은 값은 JSON에 null로 기록
                "band_growth": [
                    [dim, value if math.isfinite(value) else None]
                    for dim, value in growth
                ],
            }

        except DeformException:
            raise

        except Exception as e:
            raise DeformException(errorType=ErrorType.SYSTEM_ERROR) from e

    def verify(self, suite: str, dim: int) -> list[CheckRecord]:
        """
        검증 묶음을 실행합니다.
        """
        try:
            return runSuites(suite, dim)

        except DeformException:
            raise

        except Exception as e:
            raise DeformException(errorType=ErrorType.SYSTEM_ERROR) from e

    def mapParameters(
        self, omega1: float, omega2: float, n: int, jMax: int
    ) -> tuple[IsoMap, dict]:
        """
        비조화 파라미터를 q-진동자로 옮기고 동형 잔차를 함께 돌려줍니다.
        """
        try:
            isoMap = mapToQ(omega1, omega2, n)
            residuals = isomorphismResiduals(omega1, omega2, n, jMax)
            return isoMap, residuals.toDict()

        except DeformException:
            raise

        except Exception as e:
            raise DeformException(errorType=ErrorType.SYSTEM_ERROR) from e

    def collapse(
        self,
        params: QOsc,
        pairs: list[LambdaIndex],
        jCol: int,
        times: np.ndarray,
        dim: int,
    ) -> tuple[list[CollapsedCurve], float]:
        """
        (n, m) 곡선들의 정규화된 위상과 최대 쌍별 편차를 계산합니다.
        """
        try:
            if not isinstance(params, QOsc):
                raise DeformException(
                    errorType=ErrorType.CONFIG_ERROR,
                    message="붕괴 데이터는 q-진동자 모형에서만 만듭니다.",
                )
            traces = [
                elementPhaseTrace(params, idx, jCol, times, dim) for idx in pairs
            ]
            curves = collapseTransform(traces)
            return curves, maxPairwiseDeviation(curves)

        except DeformException:
            raise

        except Exception as e:
            raise DeformException(errorType=ErrorType.SYSTEM_ERROR) from e

    async def sweep(self, target: str, points: list[dict], config: dict) -> list:
        """
        격자점마다 지표를 계산합니다.

        격자점은 작업 스레드에서 동시에 계산하고, 결과는 입력 순서대로 돌려줍니다.
        격자점 하나의 오류는 해당 행에 기록되고 전체 실행을 멈추지 않습니다.

        Parameters:
            target: "isomorphism", "map", "oracle", "relation"
            points: 격자점 목록
            config: 공통 설정

        Returns:
            results: (격자점, 지표 목록 또는 예외) 목록
        """
        if target not in self.SWEEP_TARGETS:
            raise DeformException(
                errorType=ErrorType.CONFIG_ERROR,
                message="알 수 없는 스윕 대상입니다.",
                params={"target": target, "choices": list(self.SWEEP_TARGETS)},
            )

        tasks = [
            asyncio.to_thread(self._sweepPoint, target, point, config)
            for point in points
        ]
        results = await asyncio.gather(*tasks, return_exceptions=True)

        rows = []
        for point, result in zip(points, results):
            if isinstance(result, DeformException):
                rows.append((point, result))
            elif isinstance(result, Exception):
                error = DeformException(errorType=ErrorType.SYSTEM_ERROR)
                error.__cause__ = result
                error.logError()
                rows.append((point, error))
            else:
                rows.append((point, result))
        return rows

    def _sweepPoint(self, target: str, point: dict, config: dict) -> list:
        """
        격자점 하나의 지표 (이름, 값) 목록을 계산합니다.
        """
        if target == "isomorphism":
            residuals = isomorphismResiduals(
                point["ratio"] * config["omega2"],
                config["omega2"],
                point["n"],
                config["j_max"],
            )
            return list(residuals.toDict().items())

        if target == "map":
            isoMap = mapToQ(point["ratio"] * config["omega2"], config["omega2"], point["n"])
            return [
                ("q", isoMap.qOfN),
                ("omega_q", isoMap.omegaQ),
                ("p_n", isoMap.pN),
            ]

        if target == "relation":
            return [
                (f"m{m}", relationIdentityResidual(point["x"], point["q"], m))
                for m in range(config["m"] + 1)
            ]

        # oracle: 해석적 급수와 행렬 진화의 상대 차이
        params = QOsc(q=point["q"], omegaQ=config["omega"])
        idx = LambdaIndex(config["n"], config["m"])
        times = Utils.timeGrid(config["tau_max"], config["steps"])
        analytic = evolveQExpectation(params, point["alpha"], idx, times, config["tol"])
        oracle = oracleExpectation(params, point["alpha"], idx, times)
        return [
            ("oracle_residual", Utils.relativeResidual(analytic.values, oracle.values)),
            ("truncation_tail", analytic.truncationTail),
        ]
