"""Closed-form DF success and outage probabilities.

Components:
  prob_q1        both primary messages decode at the relay (MAC phase)
  prob_q2        both primary messages decode at the secondary receiver
  prob_bc_pu     relay broadcast reaches primary terminal 1 or 2
  prob_bc_su2_df relay's own message reaches the secondary receiver

and their composition df_outage.  Every component is also defined by a region
integral (see oracle.py); the closed forms here must agree with those
integrals to 1e-5 absolute.  Denominator-degenerate parameter sets (antenna
count colliding with a coefficient ratio) are delegated to the oracle rather
than resolved by limit algebra, and flagged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import oracle
from .params import SystemParams, derive_df_coeffs, derive_thresholds
from .specfun import (
    DEFAULT_SERIES,
    SeriesControl,
    SeriesNonConvergence,
    bessel_k,
    int_powexp,
    power_exp_integral,
    reg_lower,
    reg_upper,
)

DEGENERACY_TOL = 1e-9     # relative, on na - (coefficient ratio) * nb
CLAMP_SLACK = 1e-9        # tolerated [0,1] overshoot before declaring a bug
_EXP_GUARD = 200.0        # exponent magnitude beyond which we integrate instead


class FormulaError(ArithmeticError):
    """A closed form produced a value outside [0,1] beyond floating dust."""


def _clamp(x: float, what: str) -> float:
    if not (-CLAMP_SLACK <= x <= 1.0 + CLAMP_SLACK):
        raise FormulaError(f"{what} evaluated to {x!r}, outside [0, 1]")
    return min(max(x, 0.0), 1.0)


@dataclass(frozen=True)
class DfOutageBreakdown:
    p_q1: float
    p_q2: float
    p_bc_pu1: float
    p_bc_pu2: float
    p_bc_su2: float
    pu_outage: float
    su_outage: float
    fallbacks: tuple[str, ...] = ()


# --- MAC phase ---------------------------------------------------------------

def _mac_prob(s1: float, s2: float, na: int, nb: int,
              u1: float, u2: float, u3: float) -> tuple[float, bool]:
    """P{s1 X >= u1, s2 Y >= u2, s1 X + s2 Y >= u3}; bool = quadrature used."""
    if max(u1, u2, u3) <= 0.0:
        return 1.0, False
    if s1 <= 0.0 or s2 <= 0.0:
        return 0.0, False
    d = na - s1 * nb / s2
    t_lo = u1 / s1
    t_hi = (u3 - u1) / s1
    if abs(d) < DEGENERACY_TOL * na or (d < 0 and -d * t_hi > _EXP_GUARD):
        return oracle.mac_success(s1, s2, na, nb, u1, u2, u3).value, True

    term1 = reg_upper(na, na * u1 / s1) * reg_upper(nb, nb * u2 / s2)
    term2 = reg_upper(nb, nb * u2 / s2) * (
        reg_lower(na, na * t_hi) - reg_lower(na, na * t_lo))
    term3 = 0.0
    pref = math.exp(-nb * u3 / s2) * na**na / math.gamma(na)
    for qa in range(nb):
        qa_pref = pref * nb**qa / (math.factorial(qa) * s2**qa)
        for q in range(qa + 1):
            coef = (qa_pref * (-1) ** q * math.comb(qa, q)
                    * u3 ** (qa - q) * s1**q)
            term3 += coef * int_powexp(na + q, d, t_lo, t_hi)
    return _clamp(term1 - term2 + term3, "MAC success"), False


def prob_q1(p: SystemParams) -> float:
    """Probability both primary signals decode at the relay in the MAC phase."""
    th = derive_thresholds(p)
    dc = derive_df_coeffs(p)
    return _mac_prob(dc.a1_cap, dc.a2_cap, p.na, p.nb, th.u1, th.u2, th.u3)[0]


def prob_q2(p: SystemParams) -> float:
    """Probability both primary signals decode at the secondary receiver."""
    th = derive_thresholds(p)
    dc = derive_df_coeffs(p)
    return _mac_prob(dc.b1_cap, dc.b2_cap, p.na, p.nb, th.u1, th.u2, th.u3)[0]


# --- broadcast phase, primary side -------------------------------------------

def _bc_fail_prob(k: float, aa: float, bb: float, nx: int, ny: int,
                  ctrl: SeriesControl = DEFAULT_SERIES) -> float:
    """P{X (aa X + bb Y) <= k} with X ~ Gamma(nx, 1/nx), Y ~ Gamma(ny, 1/ny).

    Outer finite sums expand the Y tail; the inner integral over X is the
    guarded series power_exp_integral (exact for any sign of the linear
    coefficient, including the degenerate zero).
    """
    upper = math.sqrt(k / aa)
    a_inv = k * ny / bb
    b_lin = nx - aa * ny / bb
    total = reg_lower(nx, nx * upper)
    for pa in range(ny):
        pa_pref = nx**nx * ny**pa / (math.factorial(pa) * math.gamma(nx))
        for r in range(pa + 1):
            coef = (pa_pref * (-1) ** r * math.comb(pa, r)
                    * (k / bb) ** (pa - r) * (aa / bb) ** r)
            res = power_exp_integral(nx + 2 * r - pa, a_inv, b_lin, upper, ctrl)
            if not res.converged:
                raise SeriesNonConvergence(total - coef * res.value, res.n_terms)
            total -= coef * res.value
    return total


def prob_bc_pu(p: SystemParams, side: int) -> float:
    """Success of the relay broadcast at primary terminal `side` (1 or 2).

    Exactly zero (not merely small) whenever the power-sharing factor cannot
    beat the self-interference ceiling, i.e. u1 >= alpha/(1-alpha).
    """
    if side not in (1, 2):
        raise ValueError(f"side must be 1 or 2, got {side}")
    th = derive_thresholds(p)
    if th.u1 <= 0.0:
        return 1.0
    if not th.gate_open:
        return 0.0
    dc = derive_df_coeffs(p)
    if dc.a1 <= 0.0 or dc.b1 <= 0.0:
        return 0.0
    if side == 1:
        fail = _bc_fail_prob(th.kp, dc.a1, dc.b1, p.na, p.nb)
    else:
        fail = _bc_fail_prob(th.kpp, dc.b1, dc.a1, p.nb, p.na)
    return _clamp(1.0 - fail, "broadcast success")


# --- broadcast phase, secondary side -----------------------------------------

def _df_su_prob(p: SystemParams) -> tuple[float, bool]:
    th = derive_thresholds(p)
    dc = derive_df_coeffs(p)
    u4 = th.u4
    if u4 <= 0.0:
        return 1.0, False
    if dc.a1 <= 0.0 or dc.b1 <= 0.0:
        return 0.0, False
    na, nb, mk = p.na, p.nb, p.m_k
    a1, b1, c = dc.a1, dc.b1, dc.c
    b_den = na - a1 * nb / b1
    beta_b = u4 * nb / (c * b1)
    beta_a = u4 * na / (c * a1)       # combined 1/z coefficient; always > 0
    w0 = u4 * b_den / (c * a1)
    if abs(b_den) < DEGENERACY_TOL * na or abs(w0) > 30.0:
        ov = oracle.df_su_success(u4, c, a1, b1, na, nb, mk)
        return ov.value, True

    mk_norm = mk**mk / math.gamma(mk)
    arg_b = 2.0 * math.sqrt(beta_b * mk)
    arg_a = 2.0 * math.sqrt(beta_a * mk)

    term_a = 0.0
    for pa in range(nb):
        pa_pref = ((nb / b1) ** pa * na**na
                   / (math.factorial(pa) * math.gamma(na)))
        for r in range(pa + 1):
            coef = (pa_pref * (-1) ** r * math.comb(pa, r)
                    * (u4 / c) ** (pa - r) * a1**r
                    * math.gamma(na + r) / b_den ** (na + r) * mk_norm)
            nu = mk - pa + r
            k_direct = 2.0 * (beta_b / mk) ** (nu / 2.0) * bessel_k(nu, arg_b)
            j_sum = 0.0
            for j in range(na + r):
                j_sum += (w0**j / math.factorial(j)
                          * 2.0 * (beta_a / mk) ** ((nu - j) / 2.0)
                          * bessel_k(nu - j, arg_a))
            term_a += coef * (k_direct - j_sum)

    term_i = 0.0
    for pa in range(na):
        term_i += (beta_a**pa * mk_norm / math.factorial(pa)
                   * 2.0 * (beta_a / mk) ** ((mk - pa) / 2.0)
                   * bessel_k(mk - pa, arg_a))
    return _clamp(term_a + term_i, "secondary-link success"), False


def prob_bc_su2_df(p: SystemParams) -> float:
    """Success of the relay's own transmission to the secondary receiver."""
    return _df_su_prob(p)[0]


# --- composition -------------------------------------------------------------

def df_outage(p: SystemParams) -> DfOutageBreakdown:
    """Compose the component probabilities into PU and SU outage.

    pu_outage = 1 - p_q1 * p_bc_pu1 * p_bc_pu2
    su_outage = 1 - p_q1 * p_q2 * p_bc_su2
    """
    th = derive_thresholds(p)
    dc = derive_df_coeffs(p)
    fallbacks: list[str] = []

    q1, fb = _mac_prob(dc.a1_cap, dc.a2_cap, p.na, p.nb, th.u1, th.u2, th.u3)
    if fb:
        fallbacks.append("q1")
    q2, fb = _mac_prob(dc.b1_cap, dc.b2_cap, p.na, p.nb, th.u1, th.u2, th.u3)
    if fb:
        fallbacks.append("q2")
    try:
        bc1 = prob_bc_pu(p, 1)
        bc2 = prob_bc_pu(p, 2)
    except SeriesNonConvergence as exc:
        raise FormulaError(f"broadcast series failed to converge: {exc}") from exc
    su2, fb = _df_su_prob(p)
    if fb:
        fallbacks.append("bc_su2_df")

    return DfOutageBreakdown(
        p_q1=q1, p_q2=q2, p_bc_pu1=bc1, p_bc_pu2=bc2, p_bc_su2=su2,
        pu_outage=_clamp(1.0 - q1 * bc1 * bc2, "PU outage"),
        su_outage=_clamp(1.0 - q1 * q2 * su2, "SU outage"),
        fallbacks=tuple(fallbacks),
    )
