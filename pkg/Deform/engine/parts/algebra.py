import cmath
from dataclasses import dataclass

import numpy as np

from Deform.engine.exception import DeformException, ErrorType
from Deform.engine.parts.fock import (
    Anharmonic,
    FockOperator,
    LambdaIndex,
    ModelParams,
    QOsc,
    buildHamiltonian,
    buildLadder,
    buildLambda,
    commutator,
    heisenbergEvolve,
    multicommutatorScale,
)
from Deform.engine.parts.qcore import binomialWeights, qNumber, qStirling2
from Deform.engine.parts.utils import Utils


@dataclass(frozen=True)
class ClosureCoeffs:
    """
    [H, Λ^{n,m}] = cSame Λ^{n,m} + cUp Λ^{n,m+1} 의 계수입니다.
    """

    cSame: float
    cUp: float


@dataclass(frozen=True)
class ExpansionTerm:
    k: int
    coeff: complex


def closureCoeffs(params: ModelParams, n: int) -> ClosureCoeffs:
    """
    부분 리 대수의 구조 계수를 돌려줍니다.

    QOsc: (E_q(n), E_q(n)(q-1)), Anharmonic: (nω₁ + n²ω₂, 2nω₂)

    Parameters:
        params: 모형 파라미터
        n: 상위 인덱스

    Returns:
        coeffs: 구조 계수
    """
    if n == 0:
        return ClosureCoeffs(cSame=0.0, cUp=0.0)

    if isinstance(params, QOsc):
        energy = params.omegaQ * qNumber(n, params.q)
        return ClosureCoeffs(cSame=energy, cUp=energy * (params.q - 1.0))

    return ClosureCoeffs(
        cSame=n * params.omega1 + n * n * params.omega2,
        cUp=2.0 * n * params.omega2,
    )


def expansionParameters(params: ModelParams, n: int) -> tuple[float, float]:
    """
    이항 전개의 (Z, p)를 돌려줍니다.

    QOsc: Z = E_q(n) q, p = 1/q (q > 1 필요)
    Anharmonic: Z = n[ω₁ + (n+2)ω₂], p = (ω₁/ω₂ + n)/(ω₁/ω₂ + n + 2)
    """
    if isinstance(params, QOsc):
        if params.q <= 1.0:
            raise DeformException(
                errorType=ErrorType.DOMAIN_ERROR,
                message="이항 전개는 q > 1에서만 정의됩니다. 거듭제곱 형태를 사용하세요.",
                params={"q": params.q},
            )
        z = params.omegaQ * qNumber(n, params.q) * params.q
        return z, 1.0 / params.q

    z = n * (params.omega1 + (n + 2) * params.omega2)
    if params.omega2 == 0:
        return z, 1.0
    ratio = params.omega1 / params.omega2
    return z, (ratio + n) / (ratio + n + 2)


def multicommutatorExpansion(
    params: ModelParams, n: int, m: int, j: int
) -> list[ExpansionTerm]:
    """
    j겹 교환자를 Z^j Σ_k B(j,k,p) Λ^{n,m+k} 로 전개한 항들을 돌려줍니다.

    ω₂ = 0 인 비조화 모형은 k = 0 단일 항으로 퇴화합니다.

    Parameters:
        params: 모형 파라미터
        n, m: 관련 연산자 인덱스
        j: 교환자 깊이

    Returns:
        terms: (k, 계수) 목록, Λ^{n,m+k}에 곱해짐
    """
    z, p = expansionParameters(params, n)
    if isinstance(params, Anharmonic) and params.omega2 == 0:
        return [ExpansionTerm(k=0, coeff=complex(z**j))]

    weights = binomialWeights(j, p).weights
    scale = z**j
    return [
        ExpansionTerm(k=k, coeff=complex(scale * weight))
        for k, weight in enumerate(weights)
    ]


def expansionMatrix(
    params: ModelParams, idx: LambdaIndex, j: int, dim: int
) -> FockOperator:
    """
    전개 항들을 Λ^{n,m+k} 행렬에 적용해 더합니다.
    """
    total = np.zeros((dim, dim), dtype=complex)
    for term in multicommutatorExpansion(params, idx.n, idx.m, j):
        shifted = buildLambda(params, LambdaIndex(idx.n, idx.m + term.k), dim)
        total = total + term.coeff * shifted.entries
    return FockOperator(total, margin=idx.n)


def powerLawMulticommutator(
    params: QOsc, idx: LambdaIndex, j: int, dim: int
) -> FockOperator:
    """
    Λ^{n,m} (E_q(n) [a_q, a_q†])^j 를 만듭니다. 모든 q > 0에서 성립하는 형태입니다.
    """
    if not isinstance(params, QOsc):
        raise DeformException(
            errorType=ErrorType.DOMAIN_ERROR,
            message="거듭제곱 형태는 q-진동자 전용입니다.",
        )
    annihilator, creator = buildLadder(params, dim)
    energy = closureCoeffs(params, idx.n).cSame
    generator = commutator(annihilator, creator).scaled(energy)

    power = np.linalg.matrix_power(generator.entries, j)
    operator = buildLambda(params, idx, dim)
    return FockOperator(operator.entries @ power, margin=operator.margin + generator.margin)


def scalingPhaseCheck(
    params: QOsc, idx: LambdaIndex, tau: float, jCol: int, dim: int
) -> float:
    """
    스케일링 공식을 원소별로 확인합니다.

    (j+n, j) 원소의 위상 arg(Λ(τ)/Λ(0))는 [n]_q τ q^j 와 같아야 합니다.
    2π 주기 거리를 [n]_q로 나눈 값을 잔차로 돌려줍니다.

    Parameters:
        params: q-진동자 파라미터
        idx: (n, m), n >= 1
        tau: 고유 시간 τ = ω_q t
        jCol: 확인할 열
        dim: Fock 공간 차원

    Returns:
        residual: 위상 잔차
    """
    if idx.n == 0:
        raise DeformException(
            errorType=ErrorType.DOMAIN_ERROR,
            message="스케일링 확인에는 n >= 1 이 필요합니다.",
            params={"n": idx.n},
        )
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
    evolved = heisenbergEvolve(operator, hamiltonian, tau, params)
    phase = cmath.phase(evolved.entries[jCol + idx.n, jCol] / initial)

    level = qNumber(idx.n, params.q)
    target = level * tau * params.q**jCol
    return Utils.circularDistance(phase, target) / level


def normalOrderExpansion(n: int, order: int, q: float) -> list[tuple[int, float]]:
    """
    Λ^{n,M} = Σ_s S_q^{s,M} (a†)^{n+s} a^s 의 계수를 돌려줍니다.
    """
    return [(s, qStirling2(s, order, q)) for s in range(order + 1)]


def normalOrderedMatrix(
    params: ModelParams, n: int, order: int, dim: int
) -> FockOperator:
    """
    정규순서 전개를 사다리 연산자 거듭제곱으로 다시 조립합니다.
    """
    annihilator, creator = buildLadder(params, dim)
    total = np.zeros((dim, dim), dtype=complex)
    for s, coeff in normalOrderExpansion(n, order, params.deformation):
        if coeff == 0.0:
            continue
        raising = np.linalg.matrix_power(creator.entries, n + s)
        lowering = np.linalg.matrix_power(annihilator.entries, s)
        total = total + coeff * (raising @ lowering)
    return FockOperator(total, margin=n)


def closureResidual(params: ModelParams, idx: LambdaIndex, dim: int) -> float:
    """
    [H, Λ^{n,m}] - cSame Λ^{n,m} - cUp Λ^{n,m+1} 의 내부 열 상대 잔차
    """
    hamiltonian = buildHamiltonian(params, dim)
    operator = buildLambda(params, idx, dim)
    raised = buildLambda(params, LambdaIndex(idx.n, idx.m + 1), dim)
    coeffs = closureCoeffs(params, idx.n)

    actual = commutator(hamiltonian, operator)
    expected = coeffs.cSame * operator.entries + coeffs.cUp * raised.entries
    scale = multicommutatorScale(hamiltonian, operator, 1)
    return Utils.relativeResidual(
        actual.entries, expected, columns=dim - idx.n, scale=scale.entries
    )


def hermitianConjugateClosureResidual(
    params: ModelParams, idx: LambdaIndex, dim: int
) -> float:
    """
    [H, Λ†] = -cSame Λ† - cUp (Λ^{n,m+1})† 의 잔차 (내부 행)
    """
    hamiltonian = buildHamiltonian(params, dim)
    adjoint = buildLambda(params, idx, dim).dagger()
    raisedAdjoint = buildLambda(params, LambdaIndex(idx.n, idx.m + 1), dim).dagger()
    coeffs = closureCoeffs(params, idx.n)

    actual = commutator(hamiltonian, adjoint).entries
    expected = -coeffs.cSame * adjoint.entries - coeffs.cUp * raisedAdjoint.entries
    scale = multicommutatorScale(hamiltonian, adjoint, 1).entries
    rows = dim - idx.n
    return Utils.relativeResidual(
        actual[:rows, :], expected[:rows, :], scale=scale[:rows, :]
    )
