import math

import pytest
from hypothesis import given, strategies as st
from numpy.testing import assert_allclose

from boxwell.errors import InvalidParameterError
from boxwell.params import PhysicalParams, ReducedParams, coupling_for, reduce, to_physical_energy

positive = st.floats(min_value=1e-3, max_value=1e3, allow_nan=False, allow_infinity=False)
coupling = st.floats(min_value=0.0, max_value=1e3, allow_nan=False, allow_infinity=False)


def test_free_box_reduction():
    rp = reduce(PhysicalParams(1, 1, 1, 0))
    assert rp.epsilon == pytest.approx(1.2337005501361697, rel=1e-15)
    assert rp.g == 0.0


def test_unit_coupling():
    rp = reduce(PhysicalParams(1, 1, 1, 1))
    assert_allclose(rp.epsilon, math.pi**2 / 8, rtol=1e-15)
    assert_allclose(rp.g, 0.8105694691387022, rtol=1e-15)


def test_scaled_parameters():
    rp = reduce(PhysicalParams(mass=2, hbar=1, half_width=2, coupling=0.5))
    assert_allclose(rp.epsilon, math.pi**2 / 64, rtol=1e-15)
    assert_allclose(rp.g, 512 / math.pi**2, rtol=1e-15)


@pytest.mark.parametrize("field", ["mass", "hbar", "half_width"])
@pytest.mark.parametrize("bad", [0.0, -1.0, math.nan, math.inf])
def test_rejects_nonpositive(field, bad):
    kwargs = {"mass": 1.0, "hbar": 1.0, "half_width": 1.0, "coupling": 1.0, field: bad}
    with pytest.raises(InvalidParameterError):
        PhysicalParams(**kwargs)


def test_coupling_may_be_zero_but_not_negative():
    PhysicalParams(coupling=0.0)
    with pytest.raises(InvalidParameterError):
        PhysicalParams(coupling=-1e-9)
    with pytest.raises(InvalidParameterError):
        ReducedParams(epsilon=1.0, g=-1.0)
    with pytest.raises(InvalidParameterError):
        ReducedParams(epsilon=0.0, g=1.0)


def test_to_physical_energy():
    p = PhysicalParams(1, 1, 1, 1)
    assert_allclose(to_physical_energy(1.0, p), math.pi**2 / 8, rtol=1e-15)
    assert_allclose(to_physical_energy(4.0, p), math.pi**2 / 2, rtol=1e-15)


@given(positive, positive, positive, coupling)
def test_g_explicit_formula(m, hbar, a, lam):
    p = PhysicalParams(m, hbar, a, lam)
    expected = lam * a**4 * 8 * m * a**2 / (math.pi**2 * hbar**2)
    assert_allclose(reduce(p).g, expected, rtol=1e-13)
    assert reduce(p).epsilon > 0


@given(positive, positive, positive, coupling, st.floats(-1e6, 1e6))
def test_round_trip(m, hbar, a, lam, e):
    p = PhysicalParams(m, hbar, a, lam)
    assert_allclose(to_physical_energy(e, p) / reduce(p).epsilon, e, rtol=1e-15)


@given(positive, positive, positive, coupling)
def test_coupling_for_inverts_reduce(m, hbar, a, lam):
    g = reduce(PhysicalParams(m, hbar, a, lam)).g
    assert_allclose(coupling_for(g, m, hbar, a), lam, rtol=1e-14, atol=0)
