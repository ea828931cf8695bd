import cmath
import math
from dataclasses import dataclass

import numpy as np

from Deform.engine.decorator import widenOnTruncation
from Deform.engine.exception import DeformException, ErrorType
from Deform.engine.parts.algebra import closureCoeffs
from Deform.engine.parts.constants import DEFAULT_TOL, SERIES_TOL, STATE_TOL
from Deform.engine.parts.fock import (
    Anharmonic,
    FockOperator,
    LambdaIndex,
    ModelParams,
    QOsc,
    adaptiveDimension,
    buildHamiltonian,
    buildLambda,
    coherentState,
    expectation,
    heisenbergEvolve,
)
from Deform.engine.parts.qcore import (
    qExponential,
    qExponentialReciprocal,
    qFactorial,
    poissonWeights,
    qNumber,
    qPoissonWeights,
    qStirling2,
    seriesTerms,
    stirling2,
)
from Deform.engine.parts.utils import Utils


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """
    시간 격자와 기댓값 수열입니다.

    QOsc는 무차원 시간 τ, Anharmonic은 t를 사용합니다.
    """

    times: np.ndarray
    values: np.ndarray
    model: ModelParams
    idx: LambdaIndex
    alpha: complex
    truncationTail: float

    @property
    def timeLabel(self) -> str:
        return "tau" if isinstance(self.model, QOsc) else "t"


@dataclass(frozen=True, eq=False)
class PhaseTrace:
    n: int
    m: int
    q: float
    jCol: int
    times: np.ndarray
    ratios: np.ndarray

    @property
    def label(self) -> str:
        return f"n{self.n}m{self.m}"


@dataclass(frozen=True, eq=False)
class CollapsedCurve:
    n: int
    m: int
    q: float
    jCol: int
    times: np.ndarray
    phases: np.ndarray

    @property
    def label(self) -> str:
        return f"n{self.n}m{self.m}"


def _prepareTimes(grid) -> np.ndarray:
    times = np.asarray(grid, dtype=float)
    if times.ndim != 1 or len(times) == 0:
        raise DeformException(
            errorType=ErrorType.CONFIG_ERROR, message="시간 격자가 비어 있습니다."
        )
    if len(times) > 1:
        Utils.checkIncreasing(times)
    return times


def _weightedPhaseSum(
    times: np.ndarray, terms: np.ndarray, moments: np.ndarray, frequencies: np.ndarray
) -> np.ndarray:
    # Σ_k moment_k e^{iθ_k t} / Σ_k term_k
    phases = np.exp(1j * np.multiply.outer(times, frequencies))
    return np.sum(phases * moments, axis=1) / np.sum(terms)


def evolveQExpectation(
    params: QOsc,
    alpha: complex,
    idx: LambdaIndex,
    tauGrid,
    tol: float = DEFAULT_TOL,
) -> TimeSeries:
    """
    q-결맞음 상태에서 <Λ^{n,m}>_τ 를 q-포아송 가중 위상합으로 계산합니다.

    <Λ^{n,m}>_τ = (α*)^n e^{i[n]τ} Σ_k [k]^m P_q(α,k) e^{i[n](q-1)[k]τ}

    Parameters:
        params: q-진동자 파라미터
        alpha: 초기 결맞음 고유값
        idx: (n, m)
        tauGrid: 무차원 시간 격자
        tol: [k]^m 가중 꼬리 허용치

    Returns:
        series: 시간에 따른 기댓값
    """
    if not isinstance(params, QOsc):
        raise DeformException(
            errorType=ErrorType.DOMAIN_ERROR, message="q-진동자 파라미터가 필요합니다."
        )
    times = _prepareTimes(tauGrid)
    alpha = complex(alpha)

    distribution = qPoissonWeights(abs(alpha) ** 2, params.q, tol, moment=idx.m)
    levels = params.levels(np.arange(len(distribution.weights)))
    level = qNumber(idx.n, params.q)
    frequencies = level * (1.0 + (params.q - 1.0) * levels)
    moments = distribution.weights * np.power(levels, idx.m)

    values = alpha.conjugate() ** idx.n * _weightedPhaseSum(
        times, distribution.weights, moments, frequencies
    )
    return TimeSeries(
        times=times,
        values=values,
        model=params,
        idx=idx,
        alpha=alpha,
        truncationTail=distribution.tailBound,
    )


def evolveAnharmonicExpectation(
    params: Anharmonic,
    alpha: complex,
    idx: LambdaIndex,
    tGrid,
    tol: float = DEFAULT_TOL,
) -> TimeSeries:
    """
    결맞음 상태에서 <Λ^{n,m}>_t 를 포아송 가중 위상합으로 계산합니다.

    <Λ^{n,m}>_t = (α*)^n e^{i(nω₁+n²ω₂)t} Σ_k k^m P(α,k) e^{i2nω₂kt}
    """
    if not isinstance(params, Anharmonic):
        raise DeformException(
            errorType=ErrorType.DOMAIN_ERROR, message="비조화 진동자 파라미터가 필요합니다."
        )
    times = _prepareTimes(tGrid)
    alpha = complex(alpha)

    distribution = poissonWeights(abs(alpha) ** 2, tol, moment=idx.m)
    levels = params.levels(np.arange(len(distribution.weights)))
    coeffs = closureCoeffs(params, idx.n)
    frequencies = coeffs.cSame + coeffs.cUp * levels
    moments = distribution.weights * np.power(levels, idx.m)

    values = alpha.conjugate() ** idx.n * _weightedPhaseSum(
        times, distribution.weights, moments, frequencies
    )
    return TimeSeries(
        times=times,
        values=values,
        model=params,
        idx=idx,
        alpha=alpha,
        truncationTail=distribution.tailBound,
    )


def evolveAnharmonicClosed(
    params: Anharmonic, alpha: complex, idx: LambdaIndex, tGrid
) -> TimeSeries:
    """
    스털링 수를 이용한 닫힌 형태로 <Λ^{n,m}>_t 를 계산합니다. (급수 절단 없음)
    """
    if not isinstance(params, Anharmonic):
        raise DeformException(
            errorType=ErrorType.DOMAIN_ERROR, message="비조화 진동자 파라미터가 필요합니다."
        )
    times = _prepareTimes(tGrid)
    alpha = complex(alpha)
    alphaSq = abs(alpha) ** 2

    coeffs = closureCoeffs(params, idx.n)
    rotation = np.exp(1j * coeffs.cUp * times)
    stirlingSum = np.zeros(len(times), dtype=complex)
    for r in range(idx.m + 1):
        stirlingSum += stirling2(r, idx.m) * alphaSq**r * rotation**r

    values = (
        alpha.conjugate() ** idx.n
        * np.exp(1j * coeffs.cSame * times)
        * np.exp(alphaSq * (rotation - 1.0))
        * stirlingSum
    )
    return TimeSeries(
        times=times,
        values=values,
        model=params,
        idx=idx,
        alpha=alpha,
        truncationTail=0.0,
    )


def normalOrderedEvolutionCoefficient(
    k: int, r: int, idx: LambdaIndex, q: float, tau: float
) -> complex:
    """
    (a†)^{n+r+k} a^{r+k} 앞의 계수 (위상 e^{i[n]τ} 제외)

    (-1)^r q^{r(r-1)/2} [k]^m/([k]! [r]!) e^{i[n](q-1)[k]τ}
    """
    level = qNumber(k, q)
    logMagnitude = r * (r - 1) / 2.0 * math.log(q) - qFactorial(k, q) - qFactorial(r, q)
    power = 1.0 if idx.m == 0 else level**idx.m
    phase = cmath.exp(1j * qNumber(idx.n, q) * (q - 1.0) * level * tau)
    return (-1) ** r * power * math.exp(logMagnitude) * phase


def evolveQNormalOrdered(
    params: QOsc, alpha: complex, idx: LambdaIndex, tauGrid, tol: float = DEFAULT_TOL
) -> TimeSeries:
    """
    정규순서 이중합 (k, r) 에 q-결맞음 모멘트 (α*)^n |α|^{2(r+k)} 를 넣어 계산합니다.

    r 합은 τ와 무관하므로 Σ_r (-1)^r q^{r(r-1)/2} x^r/[r]_q! 로 한 번만 더합니다.
    """
    if not isinstance(params, QOsc):
        raise DeformException(
            errorType=ErrorType.DOMAIN_ERROR, message="q-진동자 파라미터가 필요합니다."
        )
    times = _prepareTimes(tauGrid)
    alpha = complex(alpha)
    alphaSq = abs(alpha) ** 2

    series = seriesTerms(alphaSq, params.q, tol, moment=idx.m)
    reciprocal = qExponentialReciprocal(alphaSq, params.q)
    level = qNumber(idx.n, params.q)
    frequencies = level * (1.0 + (params.q - 1.0) * series.levels)
    moments = series.terms * np.power(series.levels, idx.m)

    phases = np.exp(1j * np.multiply.outer(times, frequencies))
    values = alpha.conjugate() ** idx.n * reciprocal * np.sum(phases * moments, axis=1)
    return TimeSeries(
        times=times,
        values=values,
        model=params,
        idx=idx,
        alpha=alpha,
        truncationTail=series.tailBound,
    )


def relevantSeriesEvolve(
    params: ModelParams, idx: LambdaIndex, tau: float, dim: int, order: int
) -> FockOperator:
    """
    Λ^{n,m}(t) = e^{i c₁ t} Σ_r (i c₂ t)^r/r! Λ^{n,m+r} 를 order 차까지 더합니다.

    (c₁, c₂)는 구조 계수이며, tau는 모형의 고유 시간입니다.
    """
    coeffs = closureCoeffs(params, idx.n)
    rawTime = tau / params.timeScale
    total = np.zeros((dim, dim), dtype=complex)
    coefficient = 1.0 + 0.0j
    for r in range(order + 1):
        if r > 0:
            coefficient *= 1j * coeffs.cUp * rawTime / r
        total = total + coefficient * buildLambda(
            params, LambdaIndex(idx.n, idx.m + r), dim
        ).entries
    return FockOperator(
        np.exp(1j * coeffs.cSame * rawTime) * total, margin=idx.n
    )


def relationIdentityResidual(x: float, q: float, m: int) -> float:
    """
    Σ_k [k]^m x^k/[k]! 와 Σ_r S_q^{r,m} x^r exp_q(x) 의 상대 차이를 계산합니다.
    """
    series = seriesTerms(x, q, SERIES_TOL, moment=m)
    lhs = math.fsum(series.terms * np.power(series.levels, m))
    polynomial = math.fsum(qStirling2(r, m, q) * x**r for r in range(m + 1))
    rhs = polynomial * qExponential(x, q)
    if rhs == 0.0:
        return abs(lhs)
    return abs(lhs - rhs) / abs(rhs)


@widenOnTruncation()
def _oracleValues(
    params: ModelParams, alpha: complex, idx: LambdaIndex, times: np.ndarray, dim: int
) -> np.ndarray:
    state = coherentState(params, alpha, dim, STATE_TOL)
    operator = buildLambda(params, idx, dim)
    hamiltonian = buildHamiltonian(params, dim)
    return np.array(
        [
            expectation(
                state, heisenbergEvolve(operator, hamiltonian, tau, params)
            ).value
            for tau in times
        ]
    )


def oracleExpectation(
    params: ModelParams,
    alpha: complex,
    idx: LambdaIndex,
    timeGrid,
    dim: int | None = None,
) -> TimeSeries:
    """
    Fock 행렬 하이젠베르크 진화로 <α|Λ(τ)|α> 를 직접 계산합니다.

    dim을 주지 않으면 상태 꼬리가 1e-14보다 작도록 차원을 고릅니다.
    """
    times = _prepareTimes(timeGrid)
    alpha = complex(alpha)
    if dim is None:
        dim = adaptiveDimension(params, alpha, STATE_TOL, n=idx.n)

    values = _oracleValues(params, alpha, idx, times, dim=dim)
    return TimeSeries(
        times=times,
        values=values,
        model=params,
        idx=idx,
        alpha=alpha,
        truncationTail=STATE_TOL,
    )


def elementPhaseTrace(
    params: QOsc, idx: LambdaIndex, jCol: int, tauGrid, dim: int
) -> PhaseTrace:
    """
    (j+n, j) 원소의 비율 Λ(τ)/Λ(0) 곡선을 Fock 행렬 진화로 만듭니다.
    """
    times = _prepareTimes(tauGrid)
    if jCol + idx.n > dim - 1:
        raise DeformException(
            errorType=ErrorType.INDEX_ERROR,
            params={"jCol": jCol, "n": idx.n, "dim": dim},
        )

    operator = buildLambda(params, idx, dim)
    initial = operator.entries[jCol + idx.n, jCol]
    if initial == 0:
        raise DeformException(
            errorType=ErrorType.ZERO_ELEMENT_ERROR,
            params={"n": idx.n, "m": idx.m, "jCol": jCol},
        )

    hamiltonian = buildHamiltonian(params, dim)
    ratios = np.array(
        [
            heisenbergEvolve(operator, hamiltonian, tau, params).entries[
                jCol + idx.n, jCol
            ]
            / initial
            for tau in times
        ]
    )
    return PhaseTrace(
        n=idx.n, m=idx.m, q=params.q, jCol=jCol, times=times, ratios=ratios
    )


def collapseTransform(traces: list[PhaseTrace]) -> list[CollapsedCurve]:
    """
    각 위상 곡선을 펼친 뒤 [n]_q 로 나눕니다.

    격자 간격에서 예상 위상 증가량 [n]_q q^j Δτ 가 π 이상인 곡선은 펼치지 않고,
    그런 곡선들의 이름을 모아 하나의 오류로 보고합니다.

    Parameters:
        traces: (n, m, q, jCol) 태그가 붙은 위상 곡선

    Returns:
        curves: 정규화된 위상 곡선
    """
    curves = []
    failures = []
    for trace in traces:
        if trace.n == 0:
            raise DeformException(
                errorType=ErrorType.DOMAIN_ERROR,
                message="n = 0 곡선은 정규화할 수 없습니다.",
                params={"curve": trace.label},
            )

        level = qNumber(trace.n, trace.q)
        rate = level * trace.q**trace.jCol
        steps = np.diff(trace.times)
        if len(steps) and float(np.max(steps)) * rate >= math.pi:
            failures.append(
                {
                    "curve": trace.label,
                    "step": float(np.max(steps)),
                    "limit": math.pi / rate,
                }
            )
            continue

        phases = np.unwrap(np.angle(trace.ratios))
        curves.append(
            CollapsedCurve(
                n=trace.n,
                m=trace.m,
                q=trace.q,
                jCol=trace.jCol,
                times=trace.times,
                phases=phases / level,
            )
        )

    # 펼칠 수 없는 곡선은 모두 모아서 한 번에 보고
    if failures:
        raise DeformException(
            errorType=ErrorType.PHASE_UNWRAP_ERROR,
            params={
                "curves": [failure["curve"] for failure in failures],
                "failures": failures,
            },
        )
    return curves


def maxPairwiseDeviation(curves: list[CollapsedCurve]) -> float:
    """
    모든 곡선 쌍 사이의 최대 편차를 계산합니다.
    """
    if len(curves) < 2:
        return 0.0
    stacked = np.vstack([curve.phases for curve in curves])
    return float(np.max(stacked.max(axis=0) - stacked.min(axis=0)))
