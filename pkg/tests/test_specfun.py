import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dkp_s3.errors import ConvergenceError, PoleError
from dkp_s3.jets import Jet
from dkp_s3.specfun import (HypParams, horner, hyp2f1, hyp2f1_derivative, hyp2f1_jet, pochhammer,
                            polynomial_coefficients)


def mp_hyp(a, b, c, x):
    return complex(mpmath.hyp2f1(a, b, c, x))


@pytest.mark.parametrize("params", [HypParams(0.3, -1.7, 2.2), HypParams(-3, 4, 1.5), HypParams(1j, 2, 3)])
def test_value_at_zero_is_one(params):
    assert hyp2f1(params, 0.0) == 1


def test_one_term_series():
    x = np.linspace(-3, 3, 7)
    assert np.allclose(hyp2f1(HypParams(-1, 2, 1), x), 1 - 2 * x, rtol=0, atol=1e-15)


def test_degree_two_series_at_one():
    assert hyp2f1(HypParams(-2, 3, 1), 1.0) == pytest.approx(1.0, abs=1e-15)


def test_derivative_of_linear_case_is_constant():
    x = np.array([-5.0, 0.0, 0.3, 7.0])
    assert np.allclose(hyp2f1_derivative(HypParams(-1, 2, 1), x), -2)


def test_derivative_at_zero():
    p = HypParams(0.7, -0.4, 1.9)
    assert hyp2f1_derivative(p, 0.0) == pytest.approx(0.7 * -0.4 / 1.9)


def test_pochhammer_examples():
    assert pochhammer(3.3, 0) == 1
    assert pochhammer(-2, 3) == 0
    assert pochhammer(1, 5) == 120
    assert pochhammer(0.5, 3) == pytest.approx(0.5 * 1.5 * 2.5)
    with pytest.raises(ValueError):
        pochhammer(1, -1)


def test_matches_mpmath_inside_disk():
    rng = np.random.default_rng(1)
    for _ in range(20):
        a, b = rng.uniform(-2.5, 2.5, 2)
        c = rng.uniform(0.3, 3.0)
        x = rng.uniform(-0.8, 0.8)
        assert hyp2f1(HypParams(a, b, c), x) == pytest.approx(mp_hyp(a, b, c, x), rel=1e-12)


def test_complex_argument_terminating_matches_mpmath():
    # the axial variable (1 + i tan z) / 2 sits far outside the unit disk near the ends
    y = 0.5 + 0.5j * np.tan(1.4)
    p = HypParams(-3, -8, -4.5)
    assert complex(hyp2f1(p, y)) == pytest.approx(mp_hyp(-3, -8, -4.5, y), rel=1e-12)


def test_nonterminating_outside_disk_raises():
    with pytest.raises(ConvergenceError):
        hyp2f1(HypParams(0.5, 0.5, 1.5), 1.2)


def test_pole_before_termination_raises():
    with pytest.raises(PoleError):
        hyp2f1(HypParams(-3, 1, -1), 0.2)
    with pytest.raises(PoleError):
        hyp2f1(HypParams(0.5, 1, -2), 0.2)
    # termination first is fine: F(-1, 4, -2; x) = 1 + 2 x
    assert hyp2f1(HypParams(-1, 4, -2), 0.5) == pytest.approx(2.0)


def test_finite_difference_derivative_agreement():
    rng = np.random.default_rng(7)
    p = HypParams(0.4, -1.3, 2.1)
    h = 1e-6
    for x in rng.uniform(-0.5, 0.5, 20):
        fd = (hyp2f1(p, x + h) - hyp2f1(p, x - h)) / (2 * h)
        assert hyp2f1_derivative(p, x) == pytest.approx(fd, abs=1e-8)


def test_jet_composition_matches_chain_rule():
    p = HypParams(-4, 5, 1.5)
    t = Jet.variable(np.array([0.2, 0.9]), 2)
    x = t * t  # x = t^2
    j = hyp2f1_jet(p, x)
    tv = t.value
    d1 = hyp2f1_derivative(p, tv ** 2) * 2 * tv
    d2 = hyp2f1_derivative(p, tv ** 2, order=2) * 4 * tv ** 2 + hyp2f1_derivative(p, tv ** 2) * 2
    assert np.allclose(j.derivative(1), d1)
    assert np.allclose(j.derivative(2), d2)


degree = st.integers(min_value=0, max_value=12)
real = st.floats(min_value=-6, max_value=6, allow_nan=False)


@given(n=degree, b=real, c=st.floats(min_value=0.2, max_value=8), x=st.floats(min_value=-20, max_value=20))
def test_terminating_series_equals_horner(n, b, c, x):
    p = HypParams(-n, b, c)
    direct = hyp2f1(p, x)
    ref = horner(polynomial_coefficients(p), x)
    assert direct == pytest.approx(ref, rel=1e-13, abs=1e-13 * max(1.0, float(np.max(np.abs(
        [abs(cf) * abs(x) ** k for k, cf in enumerate(polynomial_coefficients(p))])))))


@given(a=real, b=real, c=st.floats(min_value=0.2, max_value=6), x=st.floats(min_value=-0.9, max_value=0.9))
def test_parameter_symmetry_is_exact(a, b, c, x):
    p = HypParams(a, b, c)
    assert hyp2f1(p, x) == hyp2f1(p.swapped(), x) or np.isclose(hyp2f1(p, x), hyp2f1(p.swapped(), x),
                                                                  rtol=1e-15, atol=0)


@settings(max_examples=60)
@given(a=st.floats(min_value=-3, max_value=3), b=st.floats(min_value=-3, max_value=3),
       c=st.floats(min_value=0.3, max_value=5), x=st.floats(min_value=-0.9, max_value=0.9))
def test_hypergeometric_ode_residual(a, b, c, x):
    p = HypParams(a, b, c)
    f = hyp2f1(p, x)
    f1 = hyp2f1_derivative(p, x)
    f2 = hyp2f1_derivative(p, x, order=2)
    terms = [x * (1 - x) * f2, (c - (a + b + 1) * x) * f1, -a * b * f]
    scale = max(abs(t) for t in terms)
    assert abs(sum(terms)) <= 1e-10 * scale + 1e-14
