"""Tests for the special-function layer.

Expected values come from independent constructions: brute-force sums with
Euler-Maclaurin tails, trapezoidal quadrature of integral representations
(exponentially accurate for the smooth decaying integrands used), classical
closed forms, and the math-module gamma as a cross-implementation oracle.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from heattrace.specfun import (
    ConvergenceError,
    DEFAULT_POLICY,
    EvalResult,
    Method,
    SeriesPolicy,
    alt_sum_closed,
    alternating_sum,
    bessel_i,
    bessel_k_half,
    digamma,
    digamma_beta,
    dirichlet_eta,
    gamma_abs_sq,
    gamma_real,
    integrate_finite,
    integrate_semiinf,
    riemann_zeta,
)

EULER_GAMMA = 0.5772156649015328606


def zeta3_brute() -> float:
    # direct sum to N plus the Euler-Maclaurin tail
    #   sum_{n>=N} n^-3 = 1/(2N^2) + 1/(2N^3) + 1/(4N^4) + O(N^-6)
    N = 1000
    head = math.fsum(n ** -3.0 for n in range(1, N))
    return head + 0.5 / N**2 + 0.5 / N**3 + 0.25 / N**4


# --- series machinery -------------------------------------------------------

def test_policy_validation():
    with pytest.raises(ValueError):
        SeriesPolicy(abs_tol=0.0)
    with pytest.raises(ValueError):
        SeriesPolicy(abs_tol=-1e-10)
    with pytest.raises(ValueError):
        SeriesPolicy(max_terms=0)


def test_eval_result_rejects_nonfinite():
    with pytest.raises(ValueError):
        EvalResult(math.nan, Method.SERIES, 1, 0.0)
    with pytest.raises(ValueError):
        EvalResult(math.inf, Method.SERIES, 1, 0.0)
    with pytest.raises(ValueError):
        EvalResult(1.0, Method.SERIES, 1, -1.0)


def test_method_enum_values():
    assert Method.SERIES.value == "series"
    assert Method.QUADRATURE.value == "quadrature"
    assert Method.CLOSED_FORM.value == "closed_form"


def test_alternating_sum_log2():
    # 1 - 1/2 + 1/3 - ... = ln 2; tail decays like 1/j so this exercises the
    # averaging accelerator, not the remainder-bound exit
    value, err, n = alternating_sum(lambda j: 1.0 / j)
    assert abs(value - math.log(2.0)) < 1e-13
    assert err < DEFAULT_POLICY.abs_tol
    assert n <= 512


def test_alternating_sum_fast_tail_exits_early():
    value, err, n = alternating_sum(lambda j: 0.5**j)
    assert abs(value - 1.0 / 3.0) < 1e-13
    assert n < 60


def test_alternating_sum_start_offset():
    # sum_{j>=3} (-1)^(j-3)/j^2 = eta(2) - 1 + 1/4
    expect = math.pi**2 / 12.0 - 0.75
    value, _, _ = alternating_sum(lambda j: 1.0 / j**2, start=3)
    assert abs(value - expect) < 1e-13


def test_alternating_sum_exhaustion_raises():
    policy = SeriesPolicy(abs_tol=1e-30, max_terms=10)
    with pytest.raises(ConvergenceError):
        alternating_sum(lambda j: 1.0 / j, policy)


# --- eta / zeta -------------------------------------------------------------

def test_eta_one_is_log_two():
    assert abs(dirichlet_eta(1.0) - math.log(2.0)) < 1e-15


def test_eta_rejects_below_one():
    with pytest.raises(ValueError):
        dirichlet_eta(0.5)


def test_zeta_rejects_at_one():
    with pytest.raises(ValueError):
        riemann_zeta(1.0)


def test_zeta_two_closed_form():
    assert riemann_zeta(2.0) == pytest.approx(math.pi**2 / 6.0, rel=1e-14)


def test_zeta_three_against_brute_sum():
    assert riemann_zeta(3.0) == pytest.approx(zeta3_brute(), rel=1e-14)


def test_zeta_four_closed_form():
    assert riemann_zeta(4.0) == pytest.approx(math.pi**4 / 90.0, rel=1e-14)


@settings(max_examples=50, deadline=None, derandomize=True)
@given(st.floats(min_value=2.0, max_value=12.0))
def test_eta_zeta_relation(s):
    # eta(s) = (1 - 2^(1-s)) zeta(s)
    lhs = dirichlet_eta(s)
    rhs = -math.expm1((1.0 - s) * math.log(2.0)) * riemann_zeta(s)
    assert abs(lhs - rhs) < 1e-12


# --- Bessel -----------------------------------------------------------------

@pytest.mark.parametrize("theta", [0.0, math.pi / 3.0, math.pi / 2.0, math.pi])
@pytest.mark.parametrize("z", [0.5, 2.0, 5.0])
def test_bessel_generating_identity(theta, z):
    # e^{z cos(theta)} = I_0(z) + 2 sum_{n>=1} I_n(z) cos(n theta)
    s = bessel_i(0, z) + 2.0 * math.fsum(
        bessel_i(n, z) * math.cos(n * theta) for n in range(1, 64)
    )
    assert abs(s - math.exp(z * math.cos(theta))) < 1e-10


def test_bessel_i_at_zero_argument():
    assert bessel_i(0, 0.0) == 1.0
    assert bessel_i(3, 0.0) == 0.0


def test_bessel_i_rejects_bad_inputs():
    with pytest.raises(ValueError):
        bessel_i(-1, 1.0)
    with pytest.raises(ValueError):
        bessel_i(0, -0.5)


def test_bessel_i_overflow_guard():
    with pytest.raises(OverflowError):
        bessel_i(100, 1.0e6)
    with pytest.raises(OverflowError):
        bessel_i(0, 1.0e4)


@pytest.mark.parametrize("two_nu", [1, 3, 5])
@pytest.mark.parametrize("z", [0.5, 2.0, 7.0])
def test_bessel_k_half_integral_oracle(two_nu, z):
    # K_nu(z) = int_0^inf e^{-z cosh(u)} cosh(nu u) du; even integrand with
    # doubly-exponential decay, so the trapezoid rule is spectrally accurate
    nu = 0.5 * two_nu
    u = np.linspace(0.0, 12.0, 24001)
    f = np.exp(-z * np.cosh(u)) * np.cosh(nu * u)
    oracle = float(np.trapezoid(f, u))
    assert bessel_k_half(two_nu, z) == pytest.approx(oracle, rel=1e-12)


def test_bessel_k_half_rejects_bad_order():
    with pytest.raises(ValueError):
        bessel_k_half(2, 1.0)
    with pytest.raises(ValueError):
        bessel_k_half(1, 0.0)


# --- alternating partial-fraction closed form -------------------------------

@pytest.mark.parametrize("a", [0.05, 0.1, 0.3, 0.45])
def test_alt_partial_fraction_closed_form(a):
    # 2 a^2 sum_{q>=1} (-1)^q / (q^2 - a^2) = 1 - pi a / sin(pi a)
    s_plus, _, _ = alternating_sum(lambda q: 1.0 / (q * q - a * a))
    assert abs(-2.0 * a * a * s_plus - alt_sum_closed(a)) < 1e-9


def test_alt_sum_closed_domain():
    assert alt_sum_closed(0.0) == 0.0
    with pytest.raises(ValueError):
        alt_sum_closed(1.0)


# --- Poisson summation ------------------------------------------------------

@pytest.mark.parametrize("t", [0.1, 1.0, 10.0])
def test_gaussian_poisson_summation(t):
    # sum_n e^{-t n^2} = sqrt(pi/t) sum_k e^{-pi^2 k^2 / t}
    lhs = 1.0 + 2.0 * math.fsum(math.exp(-t * n * n) for n in range(1, 400))
    rhs = math.sqrt(math.pi / t) * (
        1.0 + 2.0 * math.fsum(math.exp(-math.pi**2 * k * k / t) for k in range(1, 400))
    )
    assert abs(lhs - rhs) < 1e-12


# --- gamma family -----------------------------------------------------------

@pytest.mark.parametrize("x", [0.1, 0.25, 0.5, 1.0, 1.5, 3.7, 10.0, 20.5, 40.0])
def test_gamma_real_against_stdlib(x):
    assert gamma_real(x) == pytest.approx(math.gamma(x), rel=5e-13)


@settings(max_examples=50, deadline=None, derandomize=True)
@given(st.floats(min_value=0.6, max_value=30.0))
def test_gamma_recurrence(x):
    assert gamma_real(x + 1.0) == pytest.approx(x * gamma_real(x), rel=1e-11)


def test_gamma_real_rejects_nonpositive():
    with pytest.raises(ValueError):
        gamma_real(0.0)
    with pytest.raises(ValueError):
        gamma_real(-1.3)


def test_gamma_abs_sq_closed_form_order_one():
    # |Gamma(1 + i tau)|^2 = pi tau / sinh(pi tau)
    for tau in (0.5, 2.0):
        expect = math.pi * tau / math.sinh(math.pi * tau)
        assert gamma_abs_sq(1, tau) == pytest.approx(expect, rel=1e-13)


@pytest.mark.parametrize("v", [1, 2, 3])
@pytest.mark.parametrize("tau", [0.5, 2.0])
def test_gamma_abs_sq_recurrence(v, tau):
    # |Gamma(v+1+i tau)|^2 = (v^2 + tau^2) |Gamma(v+i tau)|^2
    lhs = gamma_abs_sq(v + 1, tau)
    rhs = (v * v + tau * tau) * gamma_abs_sq(v, tau)
    assert lhs == pytest.approx(rhs, rel=1e-13)


@pytest.mark.parametrize("v,tau", [(2, 0.5), (3, 2.0)])
def test_gamma_abs_sq_euler_integral_oracle(v, tau):
    # Gamma(v + i tau) = int e^{(v + i tau) u - e^u} du over the real line
    # (t = e^u); decays exponentially left and doubly right, so the
    # trapezoid rule on a wide grid gives machine accuracy
    u = np.linspace(-50.0, 6.0, 14001)
    g = np.trapezoid(np.exp((v + 1j * tau) * u - np.exp(u)), u)
    assert gamma_abs_sq(v, tau) == pytest.approx(abs(g) ** 2, rel=1e-12)


def test_gamma_abs_sq_at_zero():
    assert gamma_abs_sq(3, 0.0) == 4.0
    assert gamma_abs_sq(1, 0.0) == 1.0


def test_digamma_classical_values():
    assert digamma(1.0) == pytest.approx(-EULER_GAMMA, abs=1e-13)
    assert digamma(0.5) == pytest.approx(-EULER_GAMMA - 2.0 * math.log(2.0), abs=1e-13)
    assert digamma(2.0) == pytest.approx(1.0 - EULER_GAMMA, abs=1e-13)


@settings(max_examples=50, deadline=None, derandomize=True)
@given(st.floats(min_value=0.05, max_value=25.0))
def test_digamma_recurrence(x):
    assert digamma(x + 1.0) - digamma(x) == pytest.approx(1.0 / x, rel=1e-10)


def test_digamma_beta_values():
    # beta(1) = ln 2, beta(1/2) = pi/2
    assert digamma_beta(1.0) == pytest.approx(math.log(2.0), abs=1e-13)
    assert digamma_beta(0.5) == pytest.approx(math.pi / 2.0, abs=1e-13)


def test_digamma_beta_negative_argument():
    # beta(z) - beta(z + 1) = ... check via the defining series instead:
    # beta(z) = sum_{j>=0} (-1)^j / (j + z), valid by Abel summation for
    # negative non-integer z after splitting off the negative-pole terms.
    # Simplest independent check: beta(z) + beta(1 - z) = pi / sin(pi z).
    z = -0.25
    lhs = digamma_beta(z) + digamma_beta(1.0 - z)
    assert lhs == pytest.approx(math.pi / math.sin(math.pi * z), rel=1e-12)


# --- quadrature -------------------------------------------------------------

def test_integrate_finite_gaussian():
    r = integrate_finite(lambda x: math.exp(-x * x), 0.0, 10.0, 1e-12)
    assert r.method is Method.QUADRATURE
    assert r.value == pytest.approx(0.5 * math.sqrt(math.pi), abs=1e-12)
    assert r.err_estimate <= 1e-12


def test_integrate_finite_polynomial_is_one_panel():
    r = integrate_finite(lambda x: x**3 - 2.0 * x, 0.0, 2.0, 1e-10)
    assert r.value == pytest.approx(0.0, abs=1e-12)


def test_integrate_finite_rejects_bad_tol():
    with pytest.raises(ValueError):
        integrate_finite(lambda x: x, 0.0, 1.0, 0.0)


def test_integrate_finite_singularity_stalls():
    # inverse-sqrt endpoint singularity: each bisection reduces the local
    # error only geometrically while the budget halves, so refinement hits
    # the depth cap and must report failure rather than a wrong value
    with pytest.raises(ConvergenceError):
        integrate_finite(lambda x: 1.0 / math.sqrt(x), 1e-300, 1.0, 1e-13)


def test_integrate_semiinf_exponential():
    # int_0^inf e^{-2t} cos(t) dt = 2/5
    r = integrate_semiinf(lambda t: math.exp(-2.0 * t) * math.cos(t), 2.0, 1e-12)
    assert r.value == pytest.approx(0.4, abs=1e-12)


def test_integrate_semiinf_tail_bound_failure():
    with pytest.raises(ConvergenceError):
        integrate_semiinf(lambda t: 1.0, 1.0, 1e-8)


def test_integrate_semiinf_rejects_bad_args():
    with pytest.raises(ValueError):
        integrate_semiinf(lambda t: math.exp(-t), 0.0, 1e-8)
    with pytest.raises(ValueError):
        integrate_semiinf(lambda t: math.exp(-t), 1.0, -1e-8)
