import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy import special

from Deform.engine.exception import DeformException, ErrorType
from Deform.engine.parts.constants import (
    DEFAULT_TOL,
    MAX_SERIES_TERMS,
    Q_LIMIT_WIDTH,
    SERIES_TERMS_CEILING,
    SERIES_TOL,
)


@dataclass(frozen=True, eq=False)
class WeightDistribution:
    """
    정규화된 확률 가중치 수열입니다.

    kind는 "binomial", "poisson", "q-poisson" 중 하나입니다.
    """

    weights: np.ndarray
    tailBound: float
    kind: str

    def total(self) -> float:
        return math.fsum(self.weights)

    def mean(self) -> float:
        return math.fsum(np.arange(len(self.weights)) * self.weights)

    def variance(self) -> float:
        ks = np.arange(len(self.weights))
        mean = self.mean()
        return math.fsum((ks - mean) ** 2 * self.weights)


@dataclass(frozen=True, eq=False)
class StirlingTable:
    entries: np.ndarray
    q: float

    def entry(self, s: int, m: int) -> float:
        return float(self.entries[s, m])


class SeriesTerms(NamedTuple):
    terms: np.ndarray
    levels: np.ndarray
    tailBound: float


def _checkPositive(q: float):
    if not q > 0:
        raise DeformException(
            errorType=ErrorType.DOMAIN_ERROR,
            message="q는 0보다 커야 합니다.",
            params={"q": q},
        )


def _checkRadius(x: float, q: float):
    # q < 1 이면 수렴 반경 1/(1-q)
    if q < 1 and abs(x) >= 1.0 / (1.0 - q):
        raise DeformException(
            errorType=ErrorType.CONVERGENCE_ERROR,
            params={"x": x, "q": q, "radius": 1.0 / (1.0 - q)},
        )


def qNumbers(ns: np.ndarray, q: float) -> np.ndarray:
    """
    q-수 [n]_q = (q^n - 1)/(q - 1)를 배열로 계산합니다.

    q = 1 근방에서는 0/0을 피하기 위해 1차 전개를 사용합니다.

    Parameters:
        ns: 음이 아닌 정수 배열
        q: 변형 파라미터 (임의의 실수)

    Returns:
        levels: [n]_q 배열
    """
    ns = np.asarray(ns, dtype=float)
    if abs(q - 1.0) < Q_LIMIT_WIDTH:
        levels = ns + (q - 1.0) * ns * (ns - 1.0) / 2.0
    elif q <= 0:
        levels = (np.power(q, ns) - 1.0) / (q - 1.0)
    else:
        logQ = math.log(q)
        levels = np.expm1(ns * logQ) / math.expm1(logQ)

    # [0]_q = 0, [1]_q = 1 은 정확히 고정
    levels = np.where(ns == 0, 0.0, levels)
    levels = np.where(ns == 1, 1.0, levels)
    return levels


def qNumber(n: int, q: float) -> float:
    """
    q-수 [n]_q를 계산합니다.
    """
    if n < 0:
        raise DeformException(
            errorType=ErrorType.DOMAIN_ERROR,
            message="n은 음이 아닌 정수여야 합니다.",
            params={"n": n},
        )
    return float(qNumbers(np.array([n]), q)[0])


def qFactorial(n: int, q: float) -> float:
    """
    q-계승의 로그 ln([n]_q!)를 계산합니다.

    q > 1에서 [n]_q!는 q^{n^2/2}처럼 자라므로 곱 대신 로그 합을 사용합니다.

    Parameters:
        n: 음이 아닌 정수
        q: 변형 파라미터 (q > 0)

    Returns:
        logFactorial: ln([n]_q!)
    """
    _checkPositive(q)
    if n <= 1:
        return 0.0
    levels = qNumbers(np.arange(1, n + 1), q)
    return math.fsum(np.log(levels))


def seriesTerms(
    x: float, q: float, tol: float = SERIES_TOL, moment: int = 0
) -> SeriesTerms:
    """
    x^k/[k]_q! 항을 비율 점화식으로 생성하고, 기하 꼬리 한계로 절단합니다.

    moment > 0이면 [k]_q^moment 가중 급수의 꼬리도 함께 보증합니다.
    k >= 1에서 두 비율 모두 k에 대해 단조 감소하므로 기하 한계가 유효합니다.

    Parameters:
        x: 급수 변수
        q: 변형 파라미터 (q > 0)
        tol: 상대 꼬리 허용치
        moment: [k]_q 거듭제곱 차수

    Returns:
        series: 항, 해당 [k]_q, 보증된 상대 꼬리 한계
    """
    _checkPositive(q)
    _checkRadius(x, q)
    if not tol > 0:
        raise DeformException(
            errorType=ErrorType.CONFIG_ERROR,
            message="허용치는 0보다 커야 합니다.",
            params={"tol": tol},
        )

    terms = [1.0]
    levels = [0.0]
    baseSum = 1.0
    momentSum = 1.0 if moment == 0 else 0.0
    maxTerms = _termLimit(x, q, tol)
    k = 0

    while True:
        # [k+1]_q = 1 + q [k]_q
        nextLevel = 1.0 + q * levels[-1]
        ratio = abs(x) / nextLevel
        lastTerm = abs(terms[-1])

        # 기본 급수 꼬리
        baseTail = _geometricTail(lastTerm, ratio)

        # 모멘트 가중 급수 꼬리
        if moment == 0:
            momentTail = baseTail
        elif k == 0:
            momentTail = 0.0 if x == 0 else math.inf
        else:
            level = levels[-1]
            momentRatio = abs(x) * nextLevel ** (moment - 1) / level**moment
            momentTail = _geometricTail(lastTerm * level**moment, momentRatio)

        baseBound = baseTail / baseSum
        momentBound = momentTail / momentSum if momentSum > 0 else momentTail
        if baseBound <= tol and momentBound <= tol:
            break

        k += 1
        if k > maxTerms:
            raise DeformException(
                errorType=ErrorType.CONVERGENCE_ERROR,
                message="급수 항 개수가 한계를 넘었습니다.",
                params={"x": x, "q": q, "moment": moment},
            )

        term = terms[-1] * x / nextLevel
        terms.append(term)
        levels.append(nextLevel)
        baseSum += abs(term)
        momentSum += abs(term) * nextLevel**moment

    return SeriesTerms(
        terms=np.array(terms),
        levels=np.array(levels),
        tailBound=max(baseBound, momentBound),
    )


def _termLimit(x: float, q: float, tol: float) -> int:
    # q < 1 이면 항 비율이 |x|(1-q) 로 수렴하므로 필요한 항 수를 그 비율로 잡음
    if q >= 1 or x == 0:
        return MAX_SERIES_TERMS
    limit = abs(x) * (1.0 - q)
    needed = (math.log(tol) + math.log1p(-limit)) / math.log(limit)
    return min(MAX_SERIES_TERMS + math.ceil(needed), SERIES_TERMS_CEILING)


def _geometricTail(lastTerm: float, ratio: float) -> float:
    if lastTerm == 0.0:
        return 0.0
    if ratio >= 1.0:
        return math.inf
    return lastTerm * ratio / (1.0 - ratio)


def qExponential(x: float, q: float) -> float:
    """
    q-지수함수 exp_q(x) = Σ x^k/[k]_q! 를 계산합니다.

    q < 1 이면 같은 값을 갖는 곱 1/∏_k (1 - (1-q) q^k x) 로 계산합니다.
    곱의 인수 개수는 x가 수렴 반경에 가까워져도 늘지 않습니다.

    Parameters:
        x: 실수 인자
        q: 변형 파라미터 (q > 0, q < 1이면 |x| < 1/(1-q))

    Returns:
        value: exp_q(x)
    """
    _checkPositive(q)
    _checkRadius(x, q)
    if q < 1 and x != 0:
        # 남은 인수들의 로그 합은 |x| q^count 이하
        floor = SERIES_TOL * 1e-2 / max(abs(x), 1.0)
        count = math.ceil(math.log(floor) / math.log(q))
        if count <= MAX_SERIES_TERMS:
            factors = (1.0 - q) * x * np.power(q, np.arange(count + 1))
            return math.exp(-math.fsum(np.log1p(-factors)))

    series = seriesTerms(x, q, SERIES_TOL)
    return math.fsum(series.terms)


@lru_cache(maxsize=4096)
def qStirling2(s: int, m: int, q: float) -> float:
    """
    q-변형 제2종 스털링 수 S_q^{s,m}을 계산합니다.

    교대합 정의 대신 양수 항만 쓰는 점화식
    S_q^{s,m+1} = q^{s-1} S_q^{s-1,m} + [s]_q S_q^{s,m} 을 사용해 상쇄를 없앱니다.

    Parameters:
        s: 정규순서 차수
        m: Δ 거듭제곱 차수
        q: 변형 파라미터 (q > 0)

    Returns:
        value: S_q^{s,m}
    """
    _checkPositive(q)
    if s < 0 or m < 0:
        raise DeformException(
            errorType=ErrorType.DOMAIN_ERROR, params={"s": s, "m": m}
        )
    if s > m:
        return 0.0
    if m == 0:
        return 1.0
    if s == 0:
        return 0.0
    return q ** (s - 1) * qStirling2(s - 1, m - 1, q) + qNumber(s, q) * qStirling2(
        s, m - 1, q
    )


def qStirling2Sum(s: int, m: int, q: float) -> float:
    """
    교대합 정의식으로 S_q^{s,m}을 계산합니다. (보상 합산, 0^0 = 1)
    """
    _checkPositive(q)
    terms = []
    for k in range(s + 1):
        level = qNumber(k, q)
        power = 1.0 if m == 0 else level**m
        if power == 0.0:
            continue
        shift = s - k
        logMagnitude = (
            (shift * shift - shift) / 2.0 * math.log(q)
            + math.log(power)
            - qFactorial(k, q)
            - qFactorial(shift, q)
        )
        terms.append((-1) ** shift * math.exp(logMagnitude))
    return math.fsum(terms)


def stirling2(r: int, m: int) -> float:
    """
    고전적인 제2종 스털링 수 S^{r,m}을 계산합니다.
    """
    if r < 0 or m < 0:
        raise DeformException(
            errorType=ErrorType.DOMAIN_ERROR, params={"r": r, "m": m}
        )
    return float(special.stirling2(m, r, exact=True))


def stirlingTable(maxS: int, maxM: int, q: float) -> StirlingTable:
    """
    (s, m) 격자에 대한 q-스털링 수 표를 만듭니다.
    """
    _checkPositive(q)
    entries = np.zeros((maxS + 1, maxM + 1))
    for s in range(maxS + 1):
        for m in range(s, maxM + 1):
            entries[s, m] = qStirling2(s, m, q)
    entries.setflags(write=False)
    return StirlingTable(entries=entries, q=q)


def binomialWeights(j: int, p: float) -> WeightDistribution:
    """
    이항 가중치 B(j,k,p) = C(j,k) p^{j-k} (1-p)^k 를 만듭니다.

    p는 (j-k) 거듭제곱에 붙으므로 k 인덱스의 평균은 j(1-p)입니다.

    Parameters:
        j: 시행 횟수
        p: 확률 (0 <= p <= 1)

    Returns:
        distribution: 이항 분포
    """
    if not 0.0 <= p <= 1.0 or j < 0:
        raise DeformException(
            errorType=ErrorType.DOMAIN_ERROR,
            message="p는 [0, 1] 구간에 있어야 합니다.",
            params={"j": j, "p": p},
        )

    ks = np.arange(j + 1)
    if j <= 1000:
        coefficients = special.comb(j, ks, exact=False)
        weights = coefficients * np.power(p, j - ks) * np.power(1.0 - p, ks)
    else:
        # 큰 j는 로그 공간에서 계산
        logWeights = (
            special.gammaln(j + 1)
            - special.gammaln(ks + 1)
            - special.gammaln(j - ks + 1)
            + special.xlogy(j - ks, p)
            + special.xlog1py(ks, -p)
        )
        weights = np.exp(logWeights)

    weights.setflags(write=False)
    return WeightDistribution(weights=weights, tailBound=0.0, kind="binomial")


def qPoissonWeights(
    alphaSq: float, q: float, tol: float = DEFAULT_TOL, moment: int = 0
) -> WeightDistribution:
    """
    q-포아송 분포 P_q(α,k) = |α|^{2k} / ([k]_q! exp_q(|α|^2)) 를 만듭니다.

    moment > 0이면 [k]_q^moment 가중 합의 꼬리까지 tol 아래로 자릅니다.

    Parameters:
        alphaSq: |α|^2
        q: 변형 파라미터 (q > 0)
        tol: 꼬리 허용치
        moment: [k]_q 거듭제곱 차수

    Returns:
        distribution: 절단된 q-포아송 분포
    """
    return _poissonFamily(alphaSq, q, tol, moment, kind="q-poisson")


def poissonWeights(
    alphaSq: float, tol: float = DEFAULT_TOL, moment: int = 0
) -> WeightDistribution:
    """
    고전 포아송 분포를 같은 비율 점화식으로 만듭니다.
    """
    return _poissonFamily(alphaSq, 1.0, tol, moment, kind="poisson")


def _poissonFamily(alphaSq: float, q: float, tol: float, moment: int, kind: str):
    if alphaSq < 0:
        raise DeformException(
            errorType=ErrorType.DOMAIN_ERROR,
            message="|α|^2는 음수일 수 없습니다.",
            params={"alphaSq": alphaSq},
        )

    series = seriesTerms(alphaSq, q, tol, moment=moment)
    weights = series.terms / math.fsum(series.terms)
    weights.setflags(write=False)
    return WeightDistribution(weights=weights, tailBound=series.tailBound, kind=kind)


def qExponentialReciprocal(x: float, q: float, tol: float = SERIES_TOL) -> float:
    """
    Σ_r (-1)^r q^{r(r-1)/2} x^r/[r]_q! 를 계산합니다. 값은 1/exp_q(x)와 같습니다.

    항 비율의 크기 x q^r/[r+1]_q 는 r에 대해 단조 감소하며,
    q > 1이면 x(q-1)/q 로 수렴하므로 그 값이 1보다 작아야 합니다.
    """
    _checkPositive(q)
    _checkRadius(x, q)
    if q > 1 and abs(x) * (q - 1.0) / q >= 1.0:
        raise DeformException(
            errorType=ErrorType.CONVERGENCE_ERROR,
            params={"x": x, "q": q},
        )

    terms = [1.0]
    total = 1.0
    level = 0.0
    r = 0
    while True:
        level = 1.0 + q * level
        ratio = -(q**r) * x / level
        tail = _geometricTail(abs(terms[-1]), abs(ratio))
        if tail <= tol * abs(total):
            break
        r += 1
        if r > MAX_SERIES_TERMS:
            raise DeformException(
                errorType=ErrorType.CONVERGENCE_ERROR,
                params={"x": x, "q": q},
            )
        terms.append(terms[-1] * ratio)
        total += terms[-1]
    return math.fsum(terms)
