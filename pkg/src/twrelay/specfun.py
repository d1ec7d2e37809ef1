"""Special functions and guarded series machinery used by the closed forms.

Gamma, incomplete gamma and the modified Bessel function of the second kind
are delegated to scipy.special; this module adds the domain checking the
closed forms rely on, a truncated-series evaluator with an explicit
convergence flag, and the two power/exponential integrals that the broadcast
phase analysis keeps producing:

    int_powexp(s, mu, t0, t1)      = integral_{t0}^{t1} x^(s-1) exp(-mu x) dx
    power_exp_integral(nu, a, b, U) = integral_0^U x^(nu-1) exp(-a/x - b x) dx

The second one is evaluated as the alternating series over Taylor terms of
exp(-b x), each term integrating exactly to a^(nu+k) Gamma(-(nu+k), a/U);
that series converges absolutely for every real b, unlike a joint expansion
of the full exponent, which is not term-wise integrable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

from scipy import special as sp


@dataclass(frozen=True)
class SeriesControl:
    rel_tol: float = 1e-12
    max_terms: int = 500

    def __post_init__(self):
        if self.rel_tol <= 0:
            raise ValueError("rel_tol must be > 0")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")


DEFAULT_SERIES = SeriesControl()


class SeriesResult(NamedTuple):
    value: float
    converged: bool
    n_terms: int


class SeriesNonConvergence(ArithmeticError):
    """Raised when a guarded series hits its term cap; carries the partial sum."""

    def __init__(self, partial: float, n_terms: int):
        super().__init__(f"series did not converge after {n_terms} terms "
                         f"(partial sum {partial!r})")
        self.partial = partial
        self.n_terms = n_terms


def gamma_fn(s: float) -> float:
    """Gamma(s) for s > 0."""
    if s <= 0:
        raise ValueError(f"gamma_fn requires s > 0, got {s}")
    return float(sp.gamma(s))


def lower_inc_gamma(s: float, x: float) -> float:
    """Unregularized lower incomplete gamma, integral_0^x t^(s-1) e^-t dt."""
    if s <= 0:
        raise ValueError(f"lower_inc_gamma requires s > 0, got s={s}")
    if x < 0:
        raise ValueError(f"lower_inc_gamma requires x >= 0, got x={x}")
    return float(sp.gammainc(s, x) * sp.gamma(s))


def upper_inc_gamma(s: float, x: float) -> float:
    """Unregularized upper incomplete gamma, integral_x^inf t^(s-1) e^-t dt."""
    if s <= 0:
        raise ValueError(f"upper_inc_gamma requires s > 0, got s={s}")
    if x < 0:
        raise ValueError(f"upper_inc_gamma requires x >= 0, got x={x}")
    return float(sp.gammaincc(s, x) * sp.gamma(s))


def reg_lower(s: float, x: float) -> float:
    """Regularized lower incomplete gamma P(s, x) (the Gamma CDF)."""
    return float(sp.gammainc(s, x))


def reg_upper(s: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(s, x) (the Gamma tail)."""
    return float(sp.gammaincc(s, x))


def bessel_k(v: float, x: float) -> float:
    """Modified Bessel function of the second kind, any real order, x > 0."""
    if x <= 0:
        raise ValueError(f"bessel_k requires x > 0, got x={x}")
    return float(sp.kv(v, x))


def sum_alternating(term_fn: Callable[[int], float],
                    ctrl: SeriesControl = DEFAULT_SERIES) -> SeriesResult:
    """Sum term_fn(0) + term_fn(1) + ... with a two-consecutive-terms stop rule.

    Truncates once |term| <= rel_tol * |partial sum| for two terms in a row;
    if max_terms is reached first, the partial sum is returned with
    converged=False instead of raising, so callers can decide.
    """
    total = 0.0
    small_run = 0
    k = 0
    while k < ctrl.max_terms:
        t = term_fn(k)
        total += t
        if abs(t) <= ctrl.rel_tol * abs(total):
            small_run += 1
            if small_run >= 2:
                return SeriesResult(total, True, k + 1)
        else:
            small_run = 0
        k += 1
    return SeriesResult(total, False, k)


def int_powexp(s: int, mu: float, t0: float, t1: float,
               ctrl: SeriesControl = DEFAULT_SERIES) -> float:
    """integral_{t0}^{t1} x^(s-1) exp(-mu x) dx for integer s >= 1, any real mu.

    mu > 0 uses the incomplete-gamma difference; small |mu t1| and mu < 0 use
    the power series sum_k (-mu)^k (t1^(s+k) - t0^(s+k)) / (k! (s+k)), whose
    terms are all positive for mu < 0 (no cancellation).  |mu| t1 > 200 with
    mu < 0 is refused (the result scale exceeds float range headroom); callers
    treat that as a cue to integrate the parent expression numerically.
    """
    if s < 1 or t0 < 0 or t1 < t0:
        raise ValueError(f"invalid int_powexp arguments s={s} t0={t0} t1={t1}")
    if t1 == t0:
        return 0.0
    z1 = mu * t1
    if mu > 0 and z1 >= 1e-3:
        # stable difference: tail form when both args sit in the tail
        z0 = mu * t0
        if z0 > s:
            d = sp.gammaincc(s, z0) - sp.gammaincc(s, z1)
        else:
            d = sp.gammainc(s, z1) - sp.gammainc(s, z0)
        return float(sp.gamma(s) * d / mu**s)
    if mu < 0 and -z1 > 200.0:
        raise OverflowError(f"int_powexp: |mu|*t1 = {-z1:.3g} exceeds the "
                            "safe range for the series form")
    total = 0.0
    k = 0
    while k < max(ctrl.max_terms, 60 + int(4 * abs(z1))):
        term = (-mu) ** k * (t1 ** (s + k) - t0 ** (s + k)) / (
            math.factorial(k) * (s + k))
        total += term
        if abs(term) <= 1e-16 * abs(total) and k > abs(z1):
            return total
        k += 1
    return total


def power_exp_integral(nu: int, a: float, b: float, upper: float,
                       ctrl: SeriesControl = DEFAULT_SERIES) -> SeriesResult:
    """integral_0^upper x^(nu-1) exp(-a/x - b x) dx, integer nu, a > 0.

    Exact term k: (-b)^k/k! * a^(nu+k) Gamma(-(nu+k), a/upper).  Terms decay
    factorially once k exceeds |b|*upper, so the default series controls are
    generous.  nu may be zero or negative (the a-exponential regularizes the
    origin).
    """
    if a <= 0 or upper <= 0:
        raise ValueError(f"power_exp_integral requires a > 0, upper > 0 "
                         f"(got a={a}, upper={upper})")
    if b > 0 and b * upper > 8.0:
        # the direct series alternates with ~e^(b*upper) cancellation there;
        # go through the complete integral minus the exponentially small tail
        return _power_exp_integral_complement(nu, a, b, upper, ctrl)
    w = a / upper

    def base(s: int) -> float:
        # integral_0^upper x^(s-1) exp(-a/x) dx = a^s Gamma(-s, a/upper),
        # which for s >= 0 is the stable form upper^s E_{s+1}(a/upper)
        if s >= 0:
            return upper**s * float(sp.expn(s + 1, w))
        n = -s
        return a**s * float(sp.gammaincc(n, w) * sp.gamma(n))

    log_coef = 0.0  # log |b^k / k!|, tracked to dodge premature overflow
    sign = 1.0
    logb = math.log(abs(b)) if b != 0.0 else None

    def term(k: int) -> float:
        nonlocal log_coef, sign
        if k > 0:
            if logb is None:
                return 0.0
            log_coef += logb - math.log(k)
            sign = -sign if b > 0 else sign
        g = base(nu + k)
        if g == 0.0:
            return 0.0
        return sign * math.exp(log_coef + math.log(abs(g))) * math.copysign(1.0, g)

    return sum_alternating(term, ctrl)


def _power_exp_integral_complement(nu: int, a: float, b: float, upper: float,
                                   ctrl: SeriesControl) -> SeriesResult:
    """Same integral as power_exp_integral, as (0, inf) minus (upper, inf).

    The complete integral is 2 (a/b)^(nu/2) K_nu(2 sqrt(ab)); the tail
    expands exp(-a/x) about x >= upper into an alternating series of upper
    incomplete gammas, each term carrying the e^(-b*upper) smallness.
    """
    complete = 2.0 * (a / b) ** (nu / 2.0) * float(sp.kv(nu, 2.0 * math.sqrt(a * b)))
    z = b * upper

    def tail_base(s: int) -> float:
        # integral_upper^inf x^(s-1) exp(-b x) dx = b^-s Gamma(s, b*upper);
        # for s <= 0 that is upper^s E_{1-s}(b*upper)
        if s >= 1:
            return b ** (-s) * float(sp.gammaincc(s, z) * sp.gamma(s))
        return upper**s * float(sp.expn(1 - s, z))

    log_coef = 0.0
    sign = 1.0

    def term(k: int) -> float:
        nonlocal log_coef, sign
        if k > 0:
            log_coef += math.log(a) - math.log(k)
            sign = -sign
        g = tail_base(nu - k)
        if g == 0.0:
            return 0.0
        return sign * math.exp(log_coef + math.log(abs(g))) * math.copysign(1.0, g)

    tail = sum_alternating(term, ctrl)
    return SeriesResult(complete - tail.value, tail.converged, tail.n_terms)
