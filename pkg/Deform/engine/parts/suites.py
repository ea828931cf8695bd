import logging
import math
from dataclasses import dataclass

import numpy as np

from Deform.engine.exception import DeformException, ErrorType
from Deform.engine.parts.algebra import (
    closureResidual,
    expansionMatrix,
    hermitianConjugateClosureResidual,
    normalOrderedMatrix,
    powerLawMulticommutator,
)
from Deform.engine.parts.constants import (
    BINOMIAL_QS,
    BRIDGE_OMEGA,
    BRIDGE_Q_OFFSET,
    BRIDGE_TOLERANCE,
    CLOSED_FORM_TOLERANCE,
    CLOSURE_INDEX_MAX,
    CLOSURE_QS,
    CLOSURE_TOLERANCE,
    COLLAPSE_TOLERANCE,
    CONSISTENCY_TOLERANCE,
    DEFAULT_ALPHA,
    DEFAULT_STEPS,
    DEFAULT_TAU_MAX,
    HERMITIAN_TOL,
    ISO_DEPTH,
    ISO_NS,
    ISO_RATIOS,
    ISOMORPHISM_TOLERANCE,
    MULTICOMMUTATOR_DEPTH,
    MULTICOMMUTATOR_INDEX_MAX,
    MULTICOMMUTATOR_TOLERANCE,
    NORMAL_ORDER_M_MAX,
    NORMAL_ORDER_N_MAX,
    NORMAL_ORDER_QS,
    NORMAL_ORDER_TOLERANCE,
    ORACLE_INDEX_MAX,
    ORACLE_OMEGA1,
    ORACLE_OMEGA2,
    ORACLE_Q,
    ORACLE_TOLERANCE,
    POWER_LAW_QS,
    RELATION_M_MAX,
    RELATION_QS,
    RELATION_TOLERANCE,
    RELATION_XS,
    SCALING_COLUMNS,
    SCALING_INDICES,
    SCALING_QS,
    SCALING_TOLERANCE,
)
from Deform.engine.parts.dynamics import (
    collapseTransform,
    elementPhaseTrace,
    evolveAnharmonicClosed,
    evolveAnharmonicExpectation,
    evolveQExpectation,
    maxPairwiseDeviation,
    oracleExpectation,
    relationIdentityResidual,
)
from Deform.engine.parts.fock import (
    Anharmonic,
    LambdaIndex,
    ModelParams,
    QOsc,
    buildHamiltonian,
    buildLambda,
    fromHermitianPair,
    hermitianPair,
    multicommutatorMatrix,
    multicommutatorScale,
)
from Deform.engine.parts.isomap import isomorphismResiduals
from Deform.engine.parts.qcore import qNumber, qStirling2Sum, stirlingTable
from Deform.engine.parts.utils import Utils


@dataclass(frozen=True)
class CheckRecord:
    """
    검증 항목 하나의 결과입니다.
    """

    checkId: str
    params: dict
    maxResidual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return math.isfinite(self.maxResidual) and self.maxResidual < self.tolerance

    def toDict(self) -> dict:
        return {
            "check_id": self.checkId,
            "params": self.params,
            "max_residual": self.maxResidual,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


def _models(qs) -> list[ModelParams]:
    return [QOsc(q=q, omegaQ=1.0) for q in qs] + [
        Anharmonic(omega1=ORACLE_OMEGA1, omega2=ORACLE_OMEGA2)
    ]


def _indices(nMax: int, mMax: int) -> list[LambdaIndex]:
    return [LambdaIndex(n, m) for n in range(nMax + 1) for m in range(mMax + 1)]


def _record(checkId: str, params: dict, residuals, tolerance: float) -> CheckRecord:
    residuals = list(residuals)
    maxResidual = max(residuals) if residuals else 0.0
    return CheckRecord(
        checkId=checkId,
        params=params,
        maxResidual=float(maxResidual),
        tolerance=tolerance,
    )


def closureSuite(dim: int) -> list[CheckRecord]:
    """
    [H, Λ^{n,m}] 닫힘 관계를 모형별로 확인합니다.
    """
    records = []
    for params in _models(CLOSURE_QS):
        residuals = [
            closureResidual(params, idx, dim)
            for idx in _indices(CLOSURE_INDEX_MAX, CLOSURE_INDEX_MAX)
        ]
        records.append(
            _record(
                "closure",
                {**params.toDict(), "index_max": CLOSURE_INDEX_MAX, "dim": dim},
                residuals,
                CLOSURE_TOLERANCE,
            )
        )
    return records


def multicommutatorSuite(dim: int) -> list[CheckRecord]:
    """
    이항 전개와 거듭제곱 형태를 문자 그대로의 중첩 교환자와 비교합니다.
    """
    records = []
    indices = _indices(MULTICOMMUTATOR_INDEX_MAX, MULTICOMMUTATOR_INDEX_MAX)
    depths = range(MULTICOMMUTATOR_DEPTH + 1)

    binomialModels = [QOsc(q=q, omegaQ=1.0) for q in BINOMIAL_QS] + [
        Anharmonic(omega1=ORACLE_OMEGA1, omega2=ORACLE_OMEGA2)
    ]
    for params in binomialModels:
        hamiltonian = buildHamiltonian(params, dim)
        residuals = []
        for idx in indices:
            operator = buildLambda(params, idx, dim)
            for j in depths:
                literal = multicommutatorMatrix(hamiltonian, operator, j)
                expanded = expansionMatrix(params, idx, j, dim)
                residuals.append(
                    Utils.relativeResidual(
                        expanded.entries,
                        literal.entries,
                        columns=expanded.interior,
                        scale=multicommutatorScale(hamiltonian, operator, j).entries,
                    )
                )
        records.append(
            _record(
                "multicommutator.binomial",
                {**params.toDict(), "depth": MULTICOMMUTATOR_DEPTH, "dim": dim},
                residuals,
                MULTICOMMUTATOR_TOLERANCE,
            )
        )

    for q in POWER_LAW_QS:
        params = QOsc(q=q, omegaQ=1.0)
        hamiltonian = buildHamiltonian(params, dim)
        residuals = []
        consistency = []
        for idx in indices:
            operator = buildLambda(params, idx, dim)
            for j in depths:
                literal = multicommutatorMatrix(hamiltonian, operator, j)
                power = powerLawMulticommutator(params, idx, j, dim)
                residuals.append(
                    Utils.relativeResidual(
                        power.entries,
                        literal.entries,
                        columns=power.interior,
                        scale=multicommutatorScale(hamiltonian, operator, j).entries,
                    )
                )
                if q > 1:
                    expanded = expansionMatrix(params, idx, j, dim)
                    consistency.append(
                        Utils.relativeResidual(
                            expanded.entries, power.entries, columns=power.interior
                        )
                    )
        records.append(
            _record(
                "multicommutator.power_law",
                {**params.toDict(), "depth": MULTICOMMUTATOR_DEPTH, "dim": dim},
                residuals,
                MULTICOMMUTATOR_TOLERANCE,
            )
        )
        if consistency:
            records.append(
                _record(
                    "multicommutator.consistency",
                    {**params.toDict(), "depth": MULTICOMMUTATOR_DEPTH, "dim": dim},
                    consistency,
                    CONSISTENCY_TOLERANCE,
                )
            )
    return records


def scalingSuite(dim: int) -> list[CheckRecord]:
    """
    원소별 위상 스케일링과 (n, m) 곡선 붕괴를 확인합니다.
    """
    records = []
    times = Utils.timeGrid(DEFAULT_TAU_MAX, DEFAULT_STEPS)
    for q in SCALING_QS:
        params = QOsc(q=q, omegaQ=1.0)
        for jCol in SCALING_COLUMNS:
            # j = 0 열은 m >= 1 이면 [0]^m = 0 이므로 제외
            traces = [
                elementPhaseTrace(params, LambdaIndex(n, m), jCol, times, dim)
                for n, m in SCALING_INDICES
                if jCol > 0 or m == 0
            ]

            # 원소별 위상: arg(Λ(τ)/Λ(0)) = [n]_q τ q^j
            phaseResiduals = []
            for trace in traces:
                level = qNumber(trace.n, q)
                targets = level * times * q**jCol
                phases = np.angle(trace.ratios)
                phaseResiduals.append(
                    max(
                        Utils.circularDistance(phase, target) / level
                        for phase, target in zip(phases, targets)
                    )
                )

            curves = collapseTransform(traces)
            reference = times * q**jCol
            collapse = [maxPairwiseDeviation(curves)] + [
                float(np.max(np.abs(curve.phases - reference))) for curve in curves
            ]

            records.append(
                _record(
                    "scaling.phase",
                    {"q": q, "j_col": jCol, "tau_max": DEFAULT_TAU_MAX, "dim": dim},
                    phaseResiduals,
                    SCALING_TOLERANCE,
                )
            )
            records.append(
                _record(
                    "scaling.collapse",
                    {"q": q, "j_col": jCol, "tau_max": DEFAULT_TAU_MAX, "dim": dim},
                    collapse,
                    COLLAPSE_TOLERANCE,
                )
            )
    return records


def normalOrderSuite(dim: int) -> list[CheckRecord]:
    """
    Λ^{n,M} 의 정규순서 전개와 q-스털링 수 두 계산법을 확인합니다.
    """
    records = []
    for q in NORMAL_ORDER_QS:
        params = QOsc(q=q, omegaQ=1.0)
        residuals = []
        for n in range(NORMAL_ORDER_N_MAX + 1):
            for order in range(NORMAL_ORDER_M_MAX + 1):
                idx = LambdaIndex(n, order)
                rebuilt = normalOrderedMatrix(params, n, order, dim)
                residuals.append(
                    Utils.relativeResidual(
                        rebuilt.entries,
                        buildLambda(params, idx, dim).entries,
                        columns=rebuilt.interior,
                    )
                )
        records.append(
            _record(
                "normal_order.matrix",
                {
                    "q": q,
                    "n_max": NORMAL_ORDER_N_MAX,
                    "m_max": NORMAL_ORDER_M_MAX,
                    "dim": dim,
                },
                residuals,
                NORMAL_ORDER_TOLERANCE,
            )
        )

        table = stirlingTable(NORMAL_ORDER_M_MAX, NORMAL_ORDER_M_MAX, q)
        stirling = [
            abs(table.entry(s, order) - qStirling2Sum(s, order, q))
            / max(abs(table.entry(s, order)), 1.0)
            for order in range(NORMAL_ORDER_M_MAX + 1)
            for s in range(order + 1)
        ]
        records.append(
            _record(
                "normal_order.stirling",
                {"q": q, "m_max": NORMAL_ORDER_M_MAX},
                stirling,
                NORMAL_ORDER_TOLERANCE,
            )
        )
    return records


def relationSuite(dim: int) -> list[CheckRecord]:
    """
    Σ_k [k]^m x^k/[k]! = Σ_r S_q^{r,m} x^r exp_q(x) 를 확인합니다.
    """
    records = []
    for q in RELATION_QS:
        for x in RELATION_XS:
            if q < 1 and x >= 1.0 / (1.0 - q):
                continue
            residuals = [
                relationIdentityResidual(x, q, m) for m in range(RELATION_M_MAX + 1)
            ]
            records.append(
                _record(
                    "relation",
                    {"q": q, "x": x, "m_max": RELATION_M_MAX},
                    residuals,
                    RELATION_TOLERANCE,
                )
            )
    return records


def isomorphismSuite(dim: int) -> list[CheckRecord]:
    """
    비조화 진동자와 q-진동자 사이 계수 동형을 확인합니다.
    """
    records = []
    for ratio in ISO_RATIOS:
        for n in ISO_NS:
            residuals = isomorphismResiduals(ratio, 1.0, n, ISO_DEPTH)
            records.append(
                _record(
                    "isomorphism",
                    {
                        "omega1": ratio,
                        "omega2": 1.0,
                        "n": n,
                        "j_max": ISO_DEPTH,
                        **residuals.toDict(),
                    },
                    [residuals.maxResidual],
                    ISOMORPHISM_TOLERANCE,
                )
            )
    return records


def dynamicsOracleSuite(dim: int) -> list[CheckRecord]:
    """
    해석적 기댓값을 Fock 행렬 하이젠베르크 진화와 비교합니다.

    오라클 차원은 상태 꼬리에 맞춰 따로 고릅니다.
    """
    records = []
    times = Utils.timeGrid(DEFAULT_TAU_MAX, DEFAULT_STEPS)
    indices = _indices(ORACLE_INDEX_MAX, ORACLE_INDEX_MAX)

    qParams = QOsc(q=ORACLE_Q, omegaQ=1.0)
    residuals = []
    for idx in indices:
        analytic = evolveQExpectation(qParams, DEFAULT_ALPHA, idx, times)
        oracle = oracleExpectation(qParams, DEFAULT_ALPHA, idx, times)
        residuals.append(Utils.relativeResidual(analytic.values, oracle.values))
    records.append(
        _record(
            "dynamics_oracle.qosc",
            {**qParams.toDict(), "alpha": DEFAULT_ALPHA, "tau_max": DEFAULT_TAU_MAX},
            residuals,
            ORACLE_TOLERANCE,
        )
    )

    aParams = Anharmonic(omega1=ORACLE_OMEGA1, omega2=ORACLE_OMEGA2)
    residuals = []
    closedResiduals = []
    for idx in indices:
        analytic = evolveAnharmonicExpectation(aParams, DEFAULT_ALPHA, idx, times)
        closed = evolveAnharmonicClosed(aParams, DEFAULT_ALPHA, idx, times)
        oracle = oracleExpectation(aParams, DEFAULT_ALPHA, idx, times)
        residuals.append(Utils.relativeResidual(analytic.values, oracle.values))
        closedResiduals.append(
            float(np.max(np.abs(closed.values - analytic.values)))
        )
    records.append(
        _record(
            "dynamics_oracle.anharmonic",
            {**aParams.toDict(), "alpha": DEFAULT_ALPHA, "t_max": DEFAULT_TAU_MAX},
            residuals,
            ORACLE_TOLERANCE,
        )
    )
    records.append(
        _record(
            "dynamics_oracle.closed_form",
            {**aParams.toDict(), "alpha": DEFAULT_ALPHA, "t_max": DEFAULT_TAU_MAX},
            closedResiduals,
            CLOSED_FORM_TOLERANCE,
        )
    )
    return records


def hermitianSuite(dim: int) -> list[CheckRecord]:
    """
    Λ± 에르미트 쌍의 왕복과 켤레 닫힘 관계를 확인합니다.
    """
    records = []
    for params in _models(CLOSURE_QS):
        roundTrip = []
        hermiticity = []
        conjugate = []
        for idx in _indices(ORACLE_INDEX_MAX, ORACLE_INDEX_MAX):
            operator = buildLambda(params, idx, dim)
            plus, minus = hermitianPair(operator)
            hermiticity.append(
                Utils.relativeResidual(plus.entries, plus.dagger().entries)
            )
            hermiticity.append(
                Utils.relativeResidual(minus.entries, minus.dagger().entries)
            )
            roundTrip.append(
                Utils.relativeResidual(
                    fromHermitianPair(plus, minus).entries, operator.entries
                )
            )
            conjugate.append(hermitianConjugateClosureResidual(params, idx, dim))

        records.append(
            _record(
                "hermitian.round_trip",
                {**params.toDict(), "dim": dim},
                roundTrip + hermiticity,
                HERMITIAN_TOL,
            )
        )
        records.append(
            _record(
                "hermitian.conjugate_closure",
                {**params.toDict(), "dim": dim},
                conjugate,
                CLOSURE_TOLERANCE,
            )
        )
    return records


def bridgeSuite(dim: int) -> list[CheckRecord]:
    """
    q = 1 근방의 q-진동자와 ω₂ = 0 비조화 진동자(조화 진동자)를 비교합니다.

    τ = ω_q t 이므로 같은 물리 시간에서 비교합니다.
    """
    qParams = QOsc(q=1.0 + BRIDGE_Q_OFFSET, omegaQ=BRIDGE_OMEGA)
    aParams = Anharmonic(omega1=BRIDGE_OMEGA, omega2=0.0)
    times = Utils.timeGrid(DEFAULT_TAU_MAX, DEFAULT_STEPS)

    residuals = []
    for idx in _indices(ORACLE_INDEX_MAX, ORACLE_INDEX_MAX):
        qSeries = evolveQExpectation(qParams, DEFAULT_ALPHA, idx, BRIDGE_OMEGA * times)
        aSeries = evolveAnharmonicExpectation(aParams, DEFAULT_ALPHA, idx, times)
        residuals.append(Utils.relativeResidual(qSeries.values, aSeries.values))
    return [
        _record(
            "bridge",
            {
                "q": qParams.q,
                "omega": BRIDGE_OMEGA,
                "alpha": DEFAULT_ALPHA,
                "t_max": DEFAULT_TAU_MAX,
            },
            residuals,
            BRIDGE_TOLERANCE,
        )
    ]


SUITES = {
    "closure": closureSuite,
    "multicommutator": multicommutatorSuite,
    "scaling": scalingSuite,
    "normal-order": normalOrderSuite,
    "relation": relationSuite,
    "isomorphism": isomorphismSuite,
    "dynamics-oracle": dynamicsOracleSuite,
    "hermitian": hermitianSuite,
    "bridge": bridgeSuite,
}


def runSuites(selector: str, dim: int) -> list[CheckRecord]:
    """
    선택한 검증 묶음을 실행합니다.

    Parameters:
        selector: 묶음 이름 또는 "all"
        dim: Fock 공간 차원

    Returns:
        records: 검증 결과 목록
    """
    if selector == "all":
        names = list(SUITES)
    elif selector in SUITES:
        names = [selector]
    else:
        raise DeformException(
            errorType=ErrorType.CONFIG_ERROR,
            message="알 수 없는 검증 묶음입니다.",
            params={"suite": selector, "choices": [*SUITES, "all"]},
        )

    logger = logging.getLogger("deform")
    records = []
    for name in names:
        suiteRecords = SUITES[name](dim)
        failed = sum(not record.passed for record in suiteRecords)
        logger.info(
            f"{name} 검증 완료",
            extra={"checks": len(suiteRecords), "failed": failed},
        )
        records.extend(suiteRecords)
    return records
