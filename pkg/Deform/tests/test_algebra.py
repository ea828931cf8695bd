import numpy as np
import pytest
from numpy.testing import assert_allclose

from Deform.engine.exception import DeformException, ErrorType
from Deform.engine.parts.algebra import (
    closureCoeffs,
    closureResidual,
    expansionMatrix,
    expansionParameters,
    hermitianConjugateClosureResidual,
    multicommutatorExpansion,
    normalOrderExpansion,
    normalOrderedMatrix,
    powerLawMulticommutator,
    scalingPhaseCheck,
)
from Deform.engine.parts.fock import (
    Anharmonic,
    LambdaIndex,
    QOsc,
    buildHamiltonian,
    buildLambda,
    multicommutatorMatrix,
    multicommutatorScale,
)
from Deform.engine.parts.qcore import qNumber
from Deform.engine.parts.utils import Utils

MODELS = [
    QOsc(q=0.5, omegaQ=1.0),
    QOsc(q=1.0, omegaQ=1.0),
    QOsc(q=1.2, omegaQ=2.0),
    QOsc(q=2.0, omegaQ=1.0),
    Anharmonic(omega1=10.0, omega2=1.0),
    Anharmonic(omega1=3.0, omega2=0.0),
]


def modelId(params):
    return "-".join(f"{key}={value}" for key, value in params.toDict().items())


@pytest.mark.parametrize("params", MODELS, ids=modelId)
def test_closure_relation(params):
    for n in range(4):
        for m in range(4):
            idx = LambdaIndex(n, m)
            assert closureResidual(params, idx, 24) < 1e-10
            assert hermitianConjugateClosureResidual(params, idx, 24) < 1e-10


def test_closure_coefficients():
    coeffs = closureCoeffs(QOsc(q=1.2, omegaQ=2.0), 2)
    assert coeffs.cSame == pytest.approx(2.0 * 2.2, rel=1e-14)
    assert coeffs.cUp == pytest.approx(2.0 * 2.2 * 0.2, rel=1e-12)

    coeffs = closureCoeffs(Anharmonic(omega1=10.0, omega2=1.0), 2)
    assert coeffs.cSame == 24.0
    assert coeffs.cUp == 4.0

    assert closureCoeffs(QOsc(q=2.0, omegaQ=1.0), 0).cSame == 0.0


def test_expansion_parameters():
    z, p = expansionParameters(Anharmonic(omega1=10.0, omega2=1.0), 2)
    assert z == 28.0
    assert p == pytest.approx(12.0 / 14.0, rel=1e-15)

    z, p = expansionParameters(QOsc(q=2.0, omegaQ=1.0), 3)
    assert z == pytest.approx(14.0, rel=1e-15)
    assert p == 0.5


@pytest.mark.parametrize("q", [0.5, 1.0])
def test_expansion_parameters_need_q_above_one(q):
    with pytest.raises(DeformException) as error:
        expansionParameters(QOsc(q=q, omegaQ=1.0), 1)
    assert error.value.type == ErrorType.DOMAIN_ERROR


def test_expansion_zero_depth():
    terms = multicommutatorExpansion(QOsc(q=1.5, omegaQ=1.0), 2, 1, 0)
    assert [(term.k, term.coeff) for term in terms] == [(0, 1.0)]


def test_expansion_degenerates_without_anharmonicity():
    terms = multicommutatorExpansion(Anharmonic(omega1=3.0, omega2=0.0), 2, 0, 4)
    assert len(terms) == 1
    assert terms[0].k == 0
    assert terms[0].coeff == pytest.approx(6.0**4)


@pytest.mark.parametrize("params", MODELS[2:], ids=modelId)
def test_expansion_matches_literal_commutator(params):
    dim = 20
    hamiltonian = buildHamiltonian(params, dim)
    for n in range(1, 4):
        for m in range(3):
            idx = LambdaIndex(n, m)
            operator = buildLambda(params, idx, dim)
            for j in range(6):
                literal = multicommutatorMatrix(hamiltonian, operator, j)
                expanded = expansionMatrix(params, idx, j, dim)
                residual = Utils.relativeResidual(
                    expanded.entries,
                    literal.entries,
                    columns=expanded.interior,
                    scale=multicommutatorScale(hamiltonian, operator, j).entries,
                )
                assert residual < 1e-9


@pytest.mark.parametrize("q", [0.5, 1.0, 1.2, 2.0])
def test_power_law_matches_literal_commutator(q):
    dim = 20
    params = QOsc(q=q, omegaQ=1.0)
    hamiltonian = buildHamiltonian(params, dim)
    for n in range(1, 4):
        idx = LambdaIndex(n, 1)
        operator = buildLambda(params, idx, dim)
        for j in range(5):
            literal = multicommutatorMatrix(hamiltonian, operator, j)
            power = powerLawMulticommutator(params, idx, j, dim)
            assert power.margin == n + 2
            residual = Utils.relativeResidual(
                power.entries,
                literal.entries,
                columns=power.interior,
                scale=multicommutatorScale(hamiltonian, operator, j).entries,
            )
            assert residual < 1e-9


def test_power_law_rejects_anharmonic():
    with pytest.raises(DeformException) as error:
        powerLawMulticommutator(
            Anharmonic(omega1=10.0, omega2=1.0), LambdaIndex(1, 0), 2, 10
        )
    assert error.value.type == ErrorType.DOMAIN_ERROR


@pytest.mark.parametrize("q", [1.2, 2.0])
@pytest.mark.parametrize("jCol", [0, 1, 3])
def test_scaling_phase(q, jCol):
    params = QOsc(q=q, omegaQ=1.0)
    for tau in (0.0, 0.3, 2.5, 9.0):
        for n in (1, 2, 3):
            residual = scalingPhaseCheck(params, LambdaIndex(n, 0), tau, jCol, 16)
            assert residual < 1e-9


def test_scaling_phase_errors():
    params = QOsc(q=1.2, omegaQ=1.0)
    with pytest.raises(DeformException) as error:
        scalingPhaseCheck(params, LambdaIndex(0, 1), 1.0, 1, 16)
    assert error.value.type == ErrorType.DOMAIN_ERROR

    with pytest.raises(DeformException) as error:
        scalingPhaseCheck(params, LambdaIndex(2, 0), 1.0, 14, 16)
    assert error.value.type == ErrorType.INDEX_ERROR

    with pytest.raises(DeformException) as error:
        scalingPhaseCheck(params, LambdaIndex(1, 1), 1.0, 0, 16)
    assert error.value.type == ErrorType.ZERO_ELEMENT_ERROR


def test_normal_order_expansion_quadratic():
    q = 1.7
    expansion = normalOrderExpansion(1, 2, q)
    assert [s for s, _ in expansion] == [0, 1, 2]
    coefficients = [coeff for _, coeff in expansion]
    assert_allclose(coefficients, [0.0, 1.0, q], rtol=1e-14)


@pytest.mark.parametrize("q", [0.5, 1.0, 1.2, 2.0])
def test_normal_ordered_matrix(q):
    params = QOsc(q=q, omegaQ=1.0)
    dim = 16
    for n in range(3):
        for order in range(5):
            rebuilt = normalOrderedMatrix(params, n, order, dim)
            expected = buildLambda(params, LambdaIndex(n, order), dim)
            residual = Utils.relativeResidual(
                rebuilt.entries, expected.entries, columns=rebuilt.interior
            )
            assert residual < 1e-9


def test_scaling_rate_matches_q_number():
    # [n]_q q^j = [n+j]_q - [j]_q
    q = 1.3
    for n in range(1, 4):
        for j in range(5):
            assert qNumber(n, q) * q**j == pytest.approx(
                qNumber(n + j, q) - qNumber(j, q), rel=1e-12
            )


@pytest.mark.parametrize("q", [1.2, 2.0])
def test_residual_detects_low_level_error(q):
    dim = 64
    depth = 3
    params = QOsc(q=q, omegaQ=1.0)
    idx = LambdaIndex(1, 1)
    hamiltonian = buildHamiltonian(params, dim)
    operator = buildLambda(params, idx, dim)
    literal = multicommutatorMatrix(hamiltonian, operator, depth)
    expanded = expansionMatrix(params, idx, depth, dim)
    scale = multicommutatorScale(hamiltonian, operator, depth).entries

    def residual(entries):
        return Utils.relativeResidual(
            entries, literal.entries, columns=expanded.interior, scale=scale
        )

    assert residual(expanded.entries) < 1e-9

    doubled = np.array(expanded.entries)
    doubled[:, :20] *= 2.0
    assert residual(doubled) > 1e-3

    # 한 열만 조금 어긋나도 허용치를 넘어야 함
    nudged = np.array(expanded.entries)
    nudged[:, 1] *= 1.0 + 1e-6
    assert residual(nudged) > 1e-8


def test_closure_residual_with_cancelling_levels():
    # q < 1 이면 높은 준위의 에너지 차가 상쇄됨
    params = QOsc(q=0.5, omegaQ=1.0)
    for n in range(1, 4):
        assert closureResidual(params, LambdaIndex(n, 2), 64) < 1e-10
