import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from Deform.engine.exception import DeformException, ErrorType
from Deform.engine.parts.constants import (
    DIMENSION_PADDING,
    EIGENVALUE_TOL,
    STATE_TOL,
)
from Deform.engine.parts.qcore import qNumbers, seriesTerms


@dataclass(frozen=True)
class QOsc:
    """
    Arik-Coon 진동자 파라미터입니다. (ħ = 1, 고유 시간 τ = ω_q t)
    """

    q: float
    omegaQ: float

    def __post_init__(self):
        if not (self.q > 0 and self.omegaQ > 0):
            raise DeformException(
                errorType=ErrorType.DOMAIN_ERROR,
                message="q와 ω_q는 0보다 커야 합니다.",
                params={"q": self.q, "omegaQ": self.omegaQ},
            )

    @property
    def kind(self) -> str:
        return "qosc"

    @property
    def deformation(self) -> float:
        return self.q

    @property
    def timeScale(self) -> float:
        return self.omegaQ

    def levels(self, ns: np.ndarray) -> np.ndarray:
        return qNumbers(ns, self.q)

    def energies(self, ns: np.ndarray) -> np.ndarray:
        return self.omegaQ * self.levels(ns)

    def toDict(self) -> dict:
        return {"model": self.kind, "q": self.q, "omega": self.omegaQ}


@dataclass(frozen=True)
class Anharmonic:
    """
    2차 비조화 진동자 파라미터입니다. (H = ω₁Δ + ω₂Δ², 시간은 t 그대로)
    """

    omega1: float
    omega2: float

    def __post_init__(self):
        if not (self.omega1 > 0 and self.omega2 >= 0):
            raise DeformException(
                errorType=ErrorType.DOMAIN_ERROR,
                message="ω₁ > 0, ω₂ >= 0 이어야 합니다.",
                params={"omega1": self.omega1, "omega2": self.omega2},
            )

    @property
    def kind(self) -> str:
        return "anharmonic"

    @property
    def deformation(self) -> float:
        return 1.0

    @property
    def timeScale(self) -> float:
        return 1.0

    def levels(self, ns: np.ndarray) -> np.ndarray:
        return np.asarray(ns, dtype=float)

    def energies(self, ns: np.ndarray) -> np.ndarray:
        ns = self.levels(ns)
        return self.omega1 * ns + self.omega2 * ns * ns

    def toDict(self) -> dict:
        return {"model": self.kind, "omega1": self.omega1, "omega2": self.omega2}


ModelParams = QOsc | Anharmonic


@dataclass(frozen=True)
class LambdaIndex:
    n: int
    m: int

    def __post_init__(self):
        if self.n < 0 or self.m < 0:
            raise DeformException(
                errorType=ErrorType.DOMAIN_ERROR,
                message="(n, m)은 음이 아닌 정수여야 합니다.",
                params={"n": self.n, "m": self.m},
            )


@dataclass(frozen=True, eq=False)
class FockOperator:
    """
    절단된 Fock 공간의 조밀 복소 행렬입니다.

    margin은 절단으로 오염될 수 있는 최상위 준위의 개수입니다.
    """

    entries: np.ndarray
    margin: int = 0

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise DeformException(
                errorType=ErrorType.DIMENSION_ERROR,
                message="연산자는 정사각 행렬이어야 합니다.",
                params={"shape": list(entries.shape)},
            )
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def interior(self) -> int:
        """절단 영향이 없는 앞쪽 열의 개수"""
        return max(self.dim - self.margin, 0)

    def dagger(self) -> "FockOperator":
        return FockOperator(self.entries.conj().T, self.margin)

    def __matmul__(self, other: "FockOperator") -> "FockOperator":
        _checkDims(self, other)
        return FockOperator(self.entries @ other.entries, self.margin + other.margin)

    def __add__(self, other: "FockOperator") -> "FockOperator":
        _checkDims(self, other)
        return FockOperator(
            self.entries + other.entries, max(self.margin, other.margin)
        )

    def __sub__(self, other: "FockOperator") -> "FockOperator":
        _checkDims(self, other)
        return FockOperator(
            self.entries - other.entries, max(self.margin, other.margin)
        )

    def scaled(self, factor: complex) -> "FockOperator":
        return FockOperator(factor * self.entries, self.margin)

    def isDiagonal(self) -> bool:
        return not np.any(self.entries - np.diag(np.diag(self.entries)))


@dataclass(frozen=True, eq=False)
class FockState:
    amplitudes: np.ndarray
    tailBound: float

    @property
    def dim(self) -> int:
        return len(self.amplitudes)


class Expectation(NamedTuple):
    value: complex
    tailError: float


def _checkDims(first: FockOperator, second: FockOperator):
    if first.dim != second.dim:
        raise DeformException(
            errorType=ErrorType.DIMENSION_ERROR,
            message="연산자 차원이 일치하지 않습니다.",
            params={"first": first.dim, "second": second.dim},
        )


def _checkDimension(dim: int):
    if dim < 2:
        raise DeformException(
            errorType=ErrorType.DIMENSION_ERROR,
            message="Fock 공간 차원은 2 이상이어야 합니다.",
            params={"dim": dim},
        )


def buildLadder(params: ModelParams, dim: int) -> tuple[FockOperator, FockOperator]:
    """
    소멸 연산자 a와 생성 연산자 a†를 만듭니다.

    a는 (n-1, n) 위치에 √[n]_q를 갖습니다. (비조화 모형은 √n)

    Parameters:
        params: 모형 파라미터
        dim: Fock 공간 차원 D

    Returns:
        annihilator: a
        creator: a†
    """
    _checkDimension(dim)
    levels = params.levels(np.arange(1, dim))
    annihilator = FockOperator(np.diag(np.sqrt(levels), k=1), margin=1)
    return annihilator, annihilator.dagger()


def buildHamiltonian(params: ModelParams, dim: int) -> FockOperator:
    """
    대각 해밀토니안을 만듭니다. 대각 연산자는 절단에 영향을 받지 않습니다.
    """
    _checkDimension(dim)
    return FockOperator(np.diag(params.energies(np.arange(dim))), margin=0)


def buildNumber(params: ModelParams, dim: int) -> FockOperator:
    """Δ = a†a"""
    _checkDimension(dim)
    return FockOperator(np.diag(params.levels(np.arange(dim))), margin=0)


def buildLambda(params: ModelParams, idx: LambdaIndex, dim: int) -> FockOperator:
    """
    관련 연산자 Λ^{n,m} = (a†)^n Δ^m 을 띠 공식으로 직접 만듭니다.

    (j+n, j) 원소 = (∏_{i=1}^{n} √[j+i]_q) · [j]_q^m

    Parameters:
        params: 모형 파라미터
        idx: (n, m) 인덱스
        dim: Fock 공간 차원 D

    Returns:
        operator: Λ^{n,m}
    """
    _checkDimension(dim)
    if idx.n >= dim:
        raise DeformException(
            errorType=ErrorType.INDEX_ERROR,
            message="n은 차원보다 작아야 합니다.",
            params={"n": idx.n, "dim": dim},
        )

    levels = params.levels(np.arange(dim))
    columns = np.arange(dim - idx.n)
    band = np.ones(len(columns))
    for i in range(1, idx.n + 1):
        band = band * np.sqrt(levels[columns + i])
    band = band * np.power(levels[columns], idx.m)

    entries = np.zeros((dim, dim), dtype=complex)
    entries[columns + idx.n, columns] = band
    return FockOperator(entries, margin=idx.n)


def hermitianPair(op: FockOperator) -> tuple[FockOperator, FockOperator]:
    """
    Λ₊ = Λ + Λ†, Λ₋ = i(Λ - Λ†) 를 만듭니다.
    """
    adjoint = op.dagger()
    plus = op + adjoint
    minus = (op - adjoint).scaled(1j)
    return plus, minus


def fromHermitianPair(plus: FockOperator, minus: FockOperator) -> FockOperator:
    """(Λ₊ - iΛ₋)/2"""
    return (plus - minus.scaled(1j)).scaled(0.5)


def commutator(first: FockOperator, second: FockOperator) -> FockOperator:
    """
    [A, B] = AB - BA
    """
    _checkDims(first, second)
    entries = first.entries @ second.entries - second.entries @ first.entries
    return FockOperator(entries, margin=first.margin + second.margin)


def multicommutatorMatrix(
    hamiltonian: FockOperator, op: FockOperator, j: int
) -> FockOperator:
    """
    j겹 중첩 교환자 [H, ..., [H, O]...] 를 문자 그대로 계산합니다.
    """
    _checkDims(hamiltonian, op)
    result = op
    for _ in range(j):
        result = commutator(hamiltonian, result)
    return result


def multicommutatorScale(
    hamiltonian: FockOperator, op: FockOperator, j: int
) -> FockOperator:
    """
    j겹 교환자를 계산할 때 원소별 반올림 오차의 크기를 줍니다.

    교환자 대신 |H||O| + |O||H| 를 j번 적용합니다.
    q < 1 의 높은 준위처럼 에너지 차가 상쇄되는 열에서 잔차의 기준 크기로 씁니다.
    """
    _checkDims(hamiltonian, op)
    magnitude = np.abs(hamiltonian.entries)
    result = np.abs(op.entries)
    for _ in range(j):
        result = magnitude @ result + result @ magnitude
    return FockOperator(result, margin=op.margin)


def heisenbergEvolve(
    op: FockOperator,
    hamiltonian: FockOperator,
    tau: float,
    params: ModelParams | None = None,
) -> FockOperator:
    """
    대각 H에 대해 e^{iHt} O e^{-iHt} 를 정확히 계산합니다.

    (r, c) 원소에 e^{i(E_r - E_c)t} 위상이 곱해집니다.
    params가 주어지면 tau를 모형의 고유 시간으로 보고 t = τ/ω_q로 바꿉니다.

    Parameters:
        op: 연산자 O
        hamiltonian: 대각 해밀토니안
        tau: 시각
        params: 모형 파라미터

    Returns:
        evolved: O(t)
    """
    _checkDims(hamiltonian, op)
    if not hamiltonian.isDiagonal():
        raise DeformException(
            errorType=ErrorType.DOMAIN_ERROR,
            message="대각 해밀토니안만 지원합니다.",
        )

    rawTime = tau / params.timeScale if params is not None else tau
    energies = np.diag(hamiltonian.entries).real
    phases = np.exp(1j * np.subtract.outer(energies, energies) * rawTime)
    return FockOperator(phases * op.entries, margin=op.margin)


def seriesEvolve(
    hamiltonian: FockOperator, op: FockOperator, time: float, order: int
) -> FockOperator:
    """
    Σ_{j<=order} (it)^j/j! [H, ..., [H, O]...] 급수를 잘라서 더합니다.
    """
    _checkDims(hamiltonian, op)
    total = np.zeros_like(op.entries)
    nested = op
    coefficient = 1.0 + 0.0j
    for j in range(order + 1):
        if j > 0:
            nested = commutator(hamiltonian, nested)
            coefficient *= 1j * time / j
        total = total + coefficient * nested.entries
    return FockOperator(total, margin=op.margin)


def coherentState(
    params: ModelParams, alpha: complex, dim: int, tol: float = STATE_TOL
) -> FockState:
    """
    (q-)결맞음 상태 c_k ∝ α^k/√([k]_q!) 를 만듭니다.

    진폭은 차원 전체에 대해 점화식으로 채우고, D 너머의 꼬리를 기하 한계로 보증합니다.

    Parameters:
        params: 모형 파라미터 (비조화 모형은 고전 결맞음 상태)
        alpha: 고유값 α
        dim: Fock 공간 차원 D
        tol: 꼬리 확률 허용치

    Returns:
        state: 정규화된 상태
    """
    _checkDimension(dim)
    alphaSq = abs(alpha) ** 2
    q = params.deformation
    if q < 1 and alphaSq >= 1.0 / (1.0 - q):
        raise DeformException(
            errorType=ErrorType.CONVERGENCE_ERROR,
            params={"alphaSq": alphaSq, "q": q},
        )

    levels = params.levels(np.arange(dim + 1))
    amplitudes = np.zeros(dim, dtype=complex)
    amplitudes[0] = 1.0
    for k in range(1, dim):
        amplitudes[k] = amplitudes[k - 1] * alpha / math.sqrt(levels[k])

    # D 너머의 꼬리 확률
    probabilities = np.abs(amplitudes) ** 2
    norm = math.fsum(probabilities)
    ratio = alphaSq / levels[dim]
    lastProbability = probabilities[-1]
    if lastProbability == 0.0:
        tail = 0.0
    elif ratio >= 1.0:
        tail = math.inf
    else:
        tail = lastProbability * ratio / (1.0 - ratio)
    tailBound = tail / (norm + tail)

    if tailBound >= tol:
        raise DeformException(
            errorType=ErrorType.TRUNCATION_ERROR,
            params={"dim": dim, "tailBound": tailBound, "tol": tol},
        )

    amplitudes = amplitudes / math.sqrt(norm)
    amplitudes.setflags(write=False)
    state = FockState(amplitudes=amplitudes, tailBound=tailBound)

    # 고유값 관계 a|α> = α|α> 확인
    annihilator, _ = buildLadder(params, dim)
    lowered = annihilator.entries @ state.amplitudes
    residual = np.max(np.abs(lowered[:-1] - alpha * state.amplitudes[:-1]))
    if residual > EIGENVALUE_TOL:
        raise DeformException(
            errorType=ErrorType.VERIFICATION_FAILURE,
            message="결맞음 상태의 고유값 관계가 성립하지 않습니다.",
            params={"residual": float(residual)},
        )
    return state


def adaptiveDimension(
    params: ModelParams, alpha: complex, tol: float = STATE_TOL, n: int = 0
) -> int:
    """
    꼬리 확률이 tol보다 작도록 하는 차원을 고릅니다. (Λ^{n,m} 띠 여유 포함)
    """
    series = seriesTerms(abs(alpha) ** 2, params.deformation, tol)
    return len(series.terms) + n + DIMENSION_PADDING


def expectation(state: FockState, op: FockOperator) -> Expectation:
    """
    <ψ|O|ψ> 와 상태 꼬리에 의한 오차 한계를 계산합니다.
    """
    if state.dim != op.dim:
        raise DeformException(
            errorType=ErrorType.DIMENSION_ERROR,
            params={"state": state.dim, "operator": op.dim},
        )
    value = np.vdot(state.amplitudes, op.entries @ state.amplitudes)
    tailError = 2.0 * math.sqrt(state.tailBound) * float(np.linalg.norm(op.entries, 2))
    return Expectation(value=complex(value), tailError=tailError)


def bandGrowth(
    params: ModelParams, idx: LambdaIndex, dims: list[int]
) -> list[tuple[int, float]]:
    """
    여러 절단 차원에서 Λ^{n,m} 띠 원소의 최댓값을 보고합니다.

    q < 1이면 유계 경향, q > 1이면 증가 경향을 보입니다.
    """
    report = []
    for dim in dims:
        op = buildLambda(params, idx, dim)
        report.append((dim, float(np.max(np.abs(op.entries), initial=0.0))))
    return report
