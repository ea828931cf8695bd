import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from Deform.engine.exception import DeformException, ErrorType
from Deform.engine.parts.algebra import closureCoeffs
from Deform.engine.parts.fock import QOsc
from Deform.engine.parts.isomap import (
    coefficientFunctions,
    isomorphismResiduals,
    mapToQ,
)
from Deform.engine.parts.qcore import qNumber


def test_map_first_quantum():
    isoMap = mapToQ(10.0, 1.0, 1)
    assert isoMap.qOfN == pytest.approx(13.0 / 11.0, rel=1e-15)
    assert isoMap.omegaQ == pytest.approx(11.0, rel=1e-14)
    assert isoMap.pN == pytest.approx(11.0 / 13.0, rel=1e-15)
    assert isoMap.toDict() == {
        "n": 1,
        "q": isoMap.qOfN,
        "omega_q": isoMap.omegaQ,
        "p_n": isoMap.pN,
    }


def test_map_second_quantum():
    isoMap = mapToQ(10.0, 1.0, 2)
    assert isoMap.qOfN == pytest.approx(7.0 / 6.0, rel=1e-15)
    assert isoMap.omegaQ == pytest.approx(144.0 / 13.0, rel=1e-14)
    assert isinstance(isoMap.qParams(), QOsc)


@pytest.mark.parametrize(
    "omega1, omega2, n", [(10.0, 0.0, 1), (10.0, -1.0, 1), (10.0, 1.0, 0)]
)
def test_map_domain(omega1, omega2, n):
    with pytest.raises(DeformException) as error:
        mapToQ(omega1, omega2, n)
    assert error.value.type == ErrorType.DOMAIN_ERROR


@settings(max_examples=80, deadline=None)
@given(
    omega1=st.floats(min_value=0.01, max_value=1000.0),
    omega2=st.floats(min_value=0.01, max_value=100.0),
    n=st.integers(min_value=1, max_value=12),
)
def test_map_invariants(omega1, omega2, n):
    isoMap = mapToQ(omega1, omega2, n)
    assert isoMap.qOfN > 1.0
    assert 1.0 / isoMap.qOfN == pytest.approx(isoMap.pN, rel=1e-12)

    energy = n * omega1 + n * n * omega2
    assert isoMap.omegaQ * qNumber(n, isoMap.qOfN) == pytest.approx(energy, rel=1e-12)


def test_map_q_decreases_with_n():
    qs = [mapToQ(5.0, 1.0, n).qOfN for n in range(1, 10)]
    assert all(later < earlier for earlier, later in zip(qs, qs[1:]))
    assert qs[-1] > 1.0


def test_map_matches_closure_coefficients():
    isoMap = mapToQ(10.0, 1.0, 3)
    qCoeffs = closureCoeffs(isoMap.qParams(), 3)
    aCoeffs = closureCoeffs(isoMap.source, 3)
    assert qCoeffs.cSame == pytest.approx(aCoeffs.cSame, rel=1e-12)
    assert qCoeffs.cUp == pytest.approx(aCoeffs.cUp, rel=1e-12)


@pytest.mark.parametrize("ratio", [1.0, 5.0, 10.0, 100.0])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_isomorphism_residuals(ratio, n):
    residuals = isomorphismResiduals(ratio, 1.0, n, 6)
    assert residuals.maxResidual < 1e-12
    assert set(residuals.toDict()) == {
        "inverse",
        "zFactor",
        "table",
        "function",
        "closure",
    }


def test_coefficient_functions():
    times = np.linspace(0.0, 1.0, 11)
    rows = coefficientFunctions(2.0, 0.5, 3, times)
    assert rows.shape == (4, 11)
    np.testing.assert_allclose(rows[0], np.exp(2j * times))
    np.testing.assert_allclose(
        rows[2], np.exp(2j * times) * (0.5j * times) ** 2 / 2.0, atol=1e-15
    )
