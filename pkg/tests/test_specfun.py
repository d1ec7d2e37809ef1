import math

import numpy as np
import pytest
from scipy.integrate import quad

from twrelay.specfun import (
    SeriesControl,
    bessel_k,
    gamma_fn,
    int_powexp,
    lower_inc_gamma,
    power_exp_integral,
    sum_alternating,
    upper_inc_gamma,
)


def test_gamma_basic_values():
    assert gamma_fn(5) == pytest.approx(24.0, rel=1e-13)
    assert gamma_fn(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-13)
    assert gamma_fn(0.5) == pytest.approx(1.7724539, abs=1e-7)


def test_gamma_against_quadrature_oracle():
    # independent route: Gamma(3.7) = 2.7*1.7*0.7*Gamma(0.7), with Gamma(0.7)
    # evaluated by direct quadrature of its defining integral
    g07, err = quad(lambda t: t**-0.3 * math.exp(-t), 0, np.inf)
    assert err < 1e-10
    assert gamma_fn(3.7) == pytest.approx(2.7 * 1.7 * 0.7 * g07, rel=1e-10)


def test_gamma_domain():
    with pytest.raises(ValueError):
        gamma_fn(0.0)
    with pytest.raises(ValueError):
        gamma_fn(-2.5)


def test_lower_inc_gamma_values():
    assert lower_inc_gamma(1.0, 1.0) == pytest.approx(1 - math.exp(-1), rel=1e-13)
    assert lower_inc_gamma(1.0, 1.0) == pytest.approx(0.6321206, abs=1e-7)
    for s in (0.3, 1.0, 4.0, 17.0):
        assert lower_inc_gamma(s, 0.0) == 0.0
    # finite-sum identity with n = 2: gamma(3, x) = 2!(1 - e^-x (1+x+x^2/2))
    x = 2.5
    rhs = 2.0 * (1 - math.exp(-x) * (1 + x + x**2 / 2))
    assert lower_inc_gamma(3, x) == pytest.approx(rhs, rel=1e-13)


def test_lower_inc_gamma_monotone_and_limits():
    xs = np.linspace(0, 30, 100)
    vals = [lower_inc_gamma(2.5, float(x)) for x in xs]
    assert all(b >= a for a, b in zip(vals, vals[1:]))
    assert vals[-1] == pytest.approx(gamma_fn(2.5), rel=1e-9)


def test_upper_inc_gamma_values():
    for x in (0.1, 1.0, 7.0):
        assert upper_inc_gamma(1.0, x) == pytest.approx(math.exp(-x), rel=1e-13)
    assert upper_inc_gamma(4.0, 0.0) == pytest.approx(6.0, rel=1e-13)
    assert upper_inc_gamma(2.0, 3.0) == pytest.approx(4 * math.exp(-3), rel=1e-13)
    assert upper_inc_gamma(2.0, 3.0) == pytest.approx(0.1991483, abs=1e-7)


def test_inc_gamma_domains():
    for fn in (lower_inc_gamma, upper_inc_gamma):
        with pytest.raises(ValueError):
            fn(0.0, 1.0)
        with pytest.raises(ValueError):
            fn(2.0, -0.5)


def test_lower_plus_upper_is_gamma():
    rng = np.random.default_rng(2)
    for _ in range(200):
        s = float(rng.uniform(1e-2, 50.0))
        x = float(rng.uniform(0.0, 100.0))
        total = lower_inc_gamma(s, x) + upper_inc_gamma(s, x)
        assert total == pytest.approx(gamma_fn(s), rel=1e-12)


def test_integer_finite_sum_identities():
    # gamma(1+n, x) = n! [1 - e^-x sum_{r<=n} x^r/r!]  (x >= n keeps the
    # bracket well conditioned); Gamma(1+n, x) = n! e^-x sum is stable always
    for s in range(1, 21):
        n = s - 1
        for x in (float(max(n, 1)), 2.0 * n + 1.0, 40.0):
            partial = sum(x**r / math.factorial(r) for r in range(n + 1))
            lhs_low = lower_inc_gamma(s, x)
            rhs_low = math.factorial(n) * (1 - math.exp(-x) * partial)
            assert lhs_low == pytest.approx(rhs_low, rel=1e-12)
        for x in (0.3, 0.5 * s, 3.0 * s):
            partial = sum(x**r / math.factorial(r) for r in range(n + 1))
            rhs_up = math.factorial(n) * math.exp(-x) * partial
            assert upper_inc_gamma(s, x) == pytest.approx(rhs_up, rel=1e-12)


def test_bessel_half_order_closed_form():
    for x in (0.3, 1.0, 2.0, 9.0):
        closed = math.sqrt(math.pi / (2 * x)) * math.exp(-x)
        assert bessel_k(0.5, x) == pytest.approx(closed, rel=1e-12)
    assert bessel_k(0.5, 2.0) == pytest.approx(0.1199377, abs=1e-7)


def test_bessel_order_symmetry():
    assert bessel_k(-3.0, 1.0) == pytest.approx(bessel_k(3.0, 1.0), rel=1e-14)
    assert bessel_k(-1.5, 2.7) == pytest.approx(bessel_k(1.5, 2.7), rel=1e-14)


def test_bessel_integral_representation():
    # K_v(x) = integral_0^inf exp(-x cosh t) cosh(v t) dt; truncated at t=30
    # where the integrand is ~exp(-x cosh 30), far below double precision
    def oracle(v, x):
        val, err = quad(lambda t: math.exp(-x * math.cosh(t) + math.log(math.cosh(v * t))
                                           if v else -x * math.cosh(t)),
                        0, 30.0, limit=200)
        assert err < 1e-8
        return val

    assert bessel_k(2.0, 1.5) == pytest.approx(oracle(2.0, 1.5), rel=1e-10)
    assert bessel_k(0.0, 0.8) == pytest.approx(oracle(0.0, 0.8), rel=1e-10)


def test_bessel_domain():
    with pytest.raises(ValueError):
        bessel_k(1.0, 0.0)
    with pytest.raises(ValueError):
        bessel_k(1.0, -2.0)


def test_bessel_positivity_and_logconvexity_in_order():
    for x in (0.4, 1.3, 5.0):
        orders = np.arange(0.0, 6.5, 0.5)
        vals = np.array([bessel_k(float(v), x) for v in orders])
        assert (vals > 0).all()
        logs = np.log(vals)
        assert (logs[2:] + logs[:-2] - 2 * logs[1:-1] >= -1e-9).all()


def test_power_exp_bessel_identity():
    # integral_0^inf x^(v-1) exp(-b/x - g x) dx = 2 (b/g)^(v/2) K_v(2 sqrt(bg))
    rng = np.random.default_rng(3)
    for _ in range(10):
        v = float(rng.uniform(0.3, 5.0))
        b = float(rng.uniform(0.1, 4.0))
        g = float(rng.uniform(0.1, 4.0))
        val, err = quad(lambda x: x ** (v - 1) * math.exp(-b / x - g * x),
                        0, np.inf, limit=300)
        closed = 2 * (b / g) ** (v / 2) * bessel_k(v, 2 * math.sqrt(b * g))
        assert val == pytest.approx(closed, rel=1e-8)


def test_polynomial_exponential_moment():
    # integral_0^inf x^N e^(-mu x) dx = N! mu^-(N+1)
    for n_pow, mu in ((0, 1.0), (2, 0.7), (5, 3.1), (8, 1.9)):
        val, _ = quad(lambda x: x**n_pow * math.exp(-mu * x), 0, np.inf, limit=200)
        assert val == pytest.approx(math.factorial(n_pow) * mu ** (-n_pow - 1),
                                    rel=1e-10)


def test_sum_alternating_exponential():
    res = sum_alternating(lambda k: (-1.0) ** k / math.factorial(k))
    assert res.converged
    assert res.value == pytest.approx(math.exp(-1), rel=1e-12)


def test_sum_alternating_zero_terms():
    res = sum_alternating(lambda k: 0.0)
    assert res.converged
    assert res.value == 0.0
    assert res.n_terms == 2


def test_sum_alternating_cap_reported():
    res = sum_alternating(lambda k: 1.0, SeriesControl(rel_tol=1e-12, max_terms=25))
    assert not res.converged
    assert res.n_terms == 25
    assert res.value == pytest.approx(25.0)


def test_series_control_validation():
    with pytest.raises(ValueError):
        SeriesControl(rel_tol=0.0)
    with pytest.raises(ValueError):
        SeriesControl(max_terms=0)


def test_power_exp_integral_against_quadrature():
    rng = np.random.default_rng(4)
    for _ in range(40):
        nu = int(rng.integers(-2, 5))
        a = float(10.0 ** rng.uniform(-5, 0.7))
        b = float(rng.uniform(-3.0, 6.0))
        upper = float(rng.uniform(0.05, 4.0))
        # breakpoints at the e^(-a/x) boundary layer keep the reference honest
        pts = [p for p in (a, 10 * a) if p < upper]
        ref, err = quad(lambda x: x ** (nu - 1) * math.exp(-a / x - b * x),
                        0, upper, limit=300, points=pts)
        res = power_exp_integral(nu, a, b, upper)
        assert res.converged
        assert res.value == pytest.approx(ref, rel=3e-9, abs=1e-14)


def test_int_powexp_against_quadrature():
    rng = np.random.default_rng(5)
    for _ in range(40):
        s = int(rng.integers(1, 7))
        mu = float(rng.uniform(-4.0, 6.0))
        t0 = float(rng.uniform(0.0, 1.0))
        t1 = t0 + float(rng.uniform(0.0, 3.0))
        ref, _ = quad(lambda x: x ** (s - 1) * math.exp(-mu * x), t0, t1, limit=200)
        assert int_powexp(s, mu, t0, t1) == pytest.approx(ref, rel=1e-10, abs=1e-15)
    assert int_powexp(3, 0.0, 0.0, 2.0) == pytest.approx(8.0 / 3.0, rel=1e-14)
    with pytest.raises(OverflowError):
        int_powexp(2, -300.0, 0.0, 1.0)
