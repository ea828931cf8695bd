import math
from dataclasses import asdict, dataclass

import numpy as np

from Deform.engine.exception import DeformException, ErrorType
from Deform.engine.parts.algebra import (
    closureCoeffs,
    expansionParameters,
    multicommutatorExpansion,
)
from Deform.engine.parts.constants import (
    ISO_TIME_MAX,
    ISO_TIME_STEPS,
    ISOMORPHISM_TOLERANCE,
)
from Deform.engine.parts.fock import Anharmonic, QOsc
from Deform.engine.parts.qcore import qNumber
from Deform.engine.parts.utils import Utils


@dataclass(frozen=True)
class IsoMap:
    """
    상위 인덱스 n에서 비조화 진동자와 대수적으로 같은 q-진동자 파라미터입니다.
    """

    n: int
    qOfN: float
    omegaQ: float
    pN: float
    source: Anharmonic

    def qParams(self) -> QOsc:
        return QOsc(q=self.qOfN, omegaQ=self.omegaQ)

    def toDict(self) -> dict:
        return {
            "n": self.n,
            "q": self.qOfN,
            "omega_q": self.omegaQ,
            "p_n": self.pN,
        }


@dataclass(frozen=True)
class IsoResiduals:
    """
    inverse: |q⁻¹ - p_n|
    zFactor: |Z_[n]q - Z_n| / |Z_n|
    table: 교환자 계수표 차이 (j별 최대 계수로 정규화)
    function: e^{ic₁t}(ic₂t)^r/r! 계수 함수 차이
    closure: 구조 계수 (c₁, c₂) 차이
    """

    inverse: float
    zFactor: float
    table: float
    function: float
    closure: float

    @property
    def maxResidual(self) -> float:
        return max(asdict(self).values())

    def toDict(self) -> dict:
        return asdict(self)


def _relative(first: float, second: float) -> float:
    return abs(first - second) / max(abs(second), 1.0)


def mapToQ(omega1: float, omega2: float, n: int) -> IsoMap:
    """
    비조화 파라미터를 n에 의존하는 q-진동자 파라미터로 옮깁니다.

    q(n) = (ω₁/ω₂ + n + 2)/(ω₁/ω₂ + n), ω_q [n]_q = nω₁ + n²ω₂

    Parameters:
        omega1: ω₁ > 0
        omega2: ω₂ > 0 (ω₂ = 0 이면 q = 1 로 퇴화)
        n: 상위 인덱스 (n >= 1)

    Returns:
        isoMap: 변환된 파라미터
    """
    if not (omega2 > 0 and n >= 1):
        raise DeformException(
            errorType=ErrorType.DOMAIN_ERROR,
            message="ω₂ > 0, n >= 1 이어야 합니다.",
            params={"omega1": omega1, "omega2": omega2, "n": n},
        )
    source = Anharmonic(omega1=omega1, omega2=omega2)

    ratio = omega1 / omega2
    q = (ratio + n + 2) / (ratio + n)
    pN = (ratio + n) / (ratio + n + 2)
    energy = n * omega1 + n * n * omega2
    omegaQ = energy / qNumber(n, q)

    # q > 1, q⁻¹ = p_n, ω_q[n]_q = nω₁ + n²ω₂ 확인
    checks = {
        "inverse": abs(1.0 / q - pN),
        "energy": _relative(omegaQ * qNumber(n, q), energy),
    }
    failed = {
        name: value for name, value in checks.items() if value > ISOMORPHISM_TOLERANCE
    }
    if q <= 1.0 or failed:
        raise DeformException(
            errorType=ErrorType.VERIFICATION_FAILURE,
            message="변환 불변량이 성립하지 않습니다.",
            params={"n": n, "q": q, **failed},
        )

    return IsoMap(n=n, qOfN=q, omegaQ=omegaQ, pN=pN, source=source)


def coefficientFunctions(
    cSame: float, cUp: float, order: int, times: np.ndarray
) -> np.ndarray:
    """
    r <= order 에 대해 e^{i c₁ t}(i c₂ t)^r/r! 를 (r, t) 배열로 만듭니다.
    """
    times = np.asarray(times, dtype=float)
    rows = np.empty((order + 1, len(times)), dtype=complex)
    rows[0] = np.exp(1j * cSame * times)
    for r in range(1, order + 1):
        rows[r] = rows[r - 1] * (1j * cUp * times) / r
    return rows


def isomorphismResiduals(
    omega1: float, omega2: float, n: int, jMax: int, times=None
) -> IsoResiduals:
    """
    두 모형의 대수 구조가 계수 수준에서 같은지 잔차로 보고합니다.

    Parameters:
        omega1, omega2, n: mapToQ 입력
        jMax: 계수표의 최대 교환자 깊이
        times: 계수 함수를 비교할 시간 격자 (기본 [0, 1], 101점)

    Returns:
        residuals: 잔차 모음
    """
    isoMap = mapToQ(omega1, omega2, n)
    qParams = isoMap.qParams()
    source = isoMap.source
    if times is None:
        times = Utils.timeGrid(ISO_TIME_MAX, ISO_TIME_STEPS)

    zQ, _ = expansionParameters(qParams, n)
    zN, _ = expansionParameters(source, n)

    # 계수표 비교는 j별 최대 계수로 정규화
    table = 0.0
    for j in range(jMax + 1):
        qTerms = multicommutatorExpansion(qParams, n, 0, j)
        aTerms = multicommutatorExpansion(source, n, 0, j)
        qCoeffs = np.array([term.coeff for term in qTerms])
        aCoeffs = np.array([term.coeff for term in aTerms])
        if qCoeffs.shape != aCoeffs.shape:
            table = math.inf
            break
        scale = max(float(np.max(np.abs(aCoeffs))), 1.0)
        table = max(table, float(np.max(np.abs(qCoeffs - aCoeffs))) / scale)

    qCoeffs = closureCoeffs(qParams, n)
    aCoeffs = closureCoeffs(source, n)
    closure = max(
        _relative(qCoeffs.cSame, aCoeffs.cSame), _relative(qCoeffs.cUp, aCoeffs.cUp)
    )

    qFunctions = coefficientFunctions(qCoeffs.cSame, qCoeffs.cUp, jMax, times)
    aFunctions = coefficientFunctions(aCoeffs.cSame, aCoeffs.cUp, jMax, times)
    function = float(
        np.max(np.abs(qFunctions - aFunctions) / np.maximum(np.abs(aFunctions), 1.0))
    )

    return IsoResiduals(
        inverse=abs(1.0 / isoMap.qOfN - isoMap.pN),
        zFactor=_relative(zQ, zN),
        table=table,
        function=function,
        closure=closure,
    )
