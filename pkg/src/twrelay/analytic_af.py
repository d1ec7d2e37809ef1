"""Closed-form AF success and outage probabilities.

Components:
  prob_bc_pu_af  amplified broadcast decodes at primary terminal 1 or 2
  prob_su2_af    relay's own message decodes at the secondary receiver
  prob_spu_af    the relayed primary signal decodes at the secondary receiver
                 in the presence of the secondary's own interference

Composition (af_outage):
  pu_outage = 1 - p_bc_pu1 * p_bc_pu2
  su_outage = 1 - p_su_given * p_spu,

where p_su_given is the exact conditional success of the secondary decode
given the primary decode.  Those two decode events are nested scalings of the
same random quantity, so their joint success is the prob_su2_af closed form
evaluated at the stricter threshold max(u4, us*(1-alpha)); the composition is
therefore exact, not an independence approximation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import oracle
from .analytic_df import CLAMP_SLACK, DEGENERACY_TOL, FormulaError, _clamp, _EXP_GUARD
from .params import SystemParams, derive_af_coeffs, derive_thresholds
from .specfun import bessel_k


@dataclass(frozen=True)
class AfOutageBreakdown:
    p_bc_pu1: float
    p_bc_pu2: float
    p_spu: float
    p_su_given: float
    pu_outage: float
    su_outage: float
    fallbacks: tuple[str, ...] = ()


# --- broadcast phase, primary side -------------------------------------------

_BESSEL_ARG_LIMIT = 700.0   # K_v(x) underflows float64 near e^-x past this


def _af_bc_success(u1: float, cc: float, hh: float, ee: float, ff: float,
                   nx: int, ny: int) -> tuple[float, bool]:
    """P{cc X Y >= u1 (hh X^2 + ee X Y + ff X + 1)}; zero when cc <= ee u1.

    X is the receiving terminal's channel-power sum (shape nx), Y the other
    terminal's (shape ny).  Finite triple sum of Bessel-K terms; every term
    carries the same Bessel argument, so an argument past the float64
    underflow point means an exponentially small success, returned as 0 with
    the underflow flag set.
    """
    if u1 <= 0.0:
        return 1.0, False
    d = cc - ee * u1
    if d <= 0.0:
        return 0.0, False
    gf = ff * u1 / d
    gh = hh * u1 / d
    g1 = u1 / d
    ghat = nx + ny * gh
    beta = ny * g1
    arg = 2.0 * math.sqrt(beta * ghat)
    if arg > _BESSEL_ARG_LIMIT:
        return 0.0, True
    dens = nx**nx / math.gamma(nx)
    total = 0.0
    for qa in range(ny):
        qa_pref = ny**qa * math.exp(-ny * gf) / math.factorial(qa) * dens
        for q in range(qa + 1):
            for li in range(q + 1):
                nu = nx + q - 2 * li
                total += (qa_pref * math.comb(qa, q) * math.comb(q, li)
                          * gf ** (qa - q) * gh ** (q - li) * g1**li
                          * 2.0 * (beta / ghat) ** (nu / 2.0) * bessel_k(nu, arg))
    return _clamp(total, "AF broadcast success"), False


def prob_bc_pu_af(p: SystemParams, side: int) -> float:
    """Success of the amplified broadcast at primary terminal `side` (1 or 2)."""
    if side not in (1, 2):
        raise ValueError(f"side must be 1 or 2, got {side}")
    th = derive_thresholds(p)
    ac = derive_af_coeffs(p)
    if side == 1:
        return _af_bc_success(th.u1, ac.c1, ac.h1, ac.e1, ac.f1, p.na, p.nb)[0]
    return _af_bc_success(th.u1, ac.c2, ac.h2, ac.e2, ac.f2, p.nb, p.na)[0]


# --- secondary receiver --------------------------------------------------------

def _af_z_success(theta: float, uu1: float, vv1: float, uu2: float,
                  na: int, nb: int, mk: int) -> tuple[float, bool]:
    """P{Z (uu1 X + vv1 Y) >= theta (uu2 Z + 1)}; bool = quadrature used."""
    if theta <= 0.0:
        return 1.0, False
    if uu1 <= 0.0 or vv1 <= 0.0:
        return 0.0, False
    b_den = na - uu1 * nb / vv1
    beta_b = theta * nb / vv1
    beta_a = theta * na / uu1          # combined 1/z coefficient; always > 0
    w2 = theta * uu2 * nb / vv1
    exp_j = theta * uu2 / uu1 * b_den  # j-sum prefactor exponent
    if abs(b_den) < DEGENERACY_TOL * na or -exp_j > _EXP_GUARD or abs(
            theta * b_den / uu1) > 30.0:
        ov = oracle.af_su_success(theta, uu1, vv1, uu2, na, nb, mk)
        return ov.value, True

    mk_norm = mk**mk / math.gamma(mk)
    arg_b = 2.0 * math.sqrt(beta_b * mk)
    arg_a = 2.0 * math.sqrt(beta_a * mk)
    dens = na**na / math.gamma(na)

    term_main = 0.0
    for pa in range(nb):
        for r in range(pa + 1):
            for li in range(r + 1):
                coef = (math.comb(pa, r) * math.comb(r, li) * (-1) ** li
                        * w2 ** (pa - r) * math.exp(-w2)
                        * beta_b ** (r - li) * (uu1 * nb / vv1) ** li
                        * math.gamma(na + li) * dens
                        / (math.factorial(pa) * b_den ** (na + li)))
                nu = mk + li - r
                k_direct = (2.0 * (beta_b / mk) ** (nu / 2.0)
                            * bessel_k(nu, arg_b) * mk_norm)
                j_sum = 0.0
                for j in range(na + li):
                    t_sum = 0.0
                    for t in range(j + 1):
                        t_sum += (math.comb(j, t)
                                  * (theta * uu2 / uu1) ** (j - t)
                                  * (theta / uu1) ** t
                                  * 2.0 * (beta_a / mk) ** ((nu - t) / 2.0)
                                  * bessel_k(nu - t, arg_a) * mk_norm)
                    j_sum += (math.exp(-exp_j) * b_den**j
                              / math.factorial(j) * t_sum)
                term_main += coef * (k_direct - j_sum)

    term_i = 0.0
    for pa in range(na):
        r_sum = 0.0
        for r in range(pa + 1):
            r_sum += (math.comb(pa, r) * uu2 ** (pa - r)
                      * 2.0 * (beta_a / mk) ** ((mk - r) / 2.0)
                      * bessel_k(mk - r, arg_a))
        term_i += (beta_a**pa * mk_norm * math.exp(-beta_a * uu2)
                   / math.factorial(pa) * r_sum)
    return _clamp(term_main + term_i, "AF secondary success"), False


def prob_su2_af(p: SystemParams) -> float:
    """Success of the secondary's own decode (unconditional)."""
    th = derive_thresholds(p)
    ac = derive_af_coeffs(p)
    return _af_z_success(th.u4, ac.u1c, ac.v1c, ac.u2c, p.na, p.nb, p.m_k)[0]


def prob_spu_af(p: SystemParams) -> float:
    """Success of primary-signal decoding at the secondary receiver.

    Exactly zero when the power-sharing gate fails (u1 >= alpha/(1-alpha)),
    because the relayed primary SINR is then capped below threshold.
    """
    th = derive_thresholds(p)
    if th.us is None:
        return 0.0
    ac = derive_af_coeffs(p)
    return _af_z_success(th.us, ac.s1, ac.s2, ac.u2c, p.na, p.nb, p.m_k)[0]


def _su_joint_success(p: SystemParams) -> tuple[float, bool]:
    """Joint success of both secondary-receiver decode steps.

    The primary-decode event rescales to Z(u1c X + v1c Y) >= us(1-alpha)
    (u2c Z + 1), the own-decode event to the same with threshold u4, so the
    joint is the stricter of the two thresholds.
    """
    th = derive_thresholds(p)
    if th.us is None:
        return 0.0, False
    ac = derive_af_coeffs(p)
    theta = max(th.u4, th.us * (1.0 - p.alpha))
    return _af_z_success(theta, ac.u1c, ac.v1c, ac.u2c, p.na, p.nb, p.m_k)


# --- composition -------------------------------------------------------------

def af_outage(p: SystemParams) -> AfOutageBreakdown:
    th = derive_thresholds(p)
    ac = derive_af_coeffs(p)
    fallbacks: list[str] = []

    bc1, uf1 = _af_bc_success(th.u1, ac.c1, ac.h1, ac.e1, ac.f1, p.na, p.nb)
    bc2, uf2 = _af_bc_success(th.u1, ac.c2, ac.h2, ac.e2, ac.f2, p.nb, p.na)
    if uf1:
        fallbacks.append("bc_pu1_af:underflow")
    if uf2:
        fallbacks.append("bc_pu2_af:underflow")

    if th.us is None:
        p_spu, joint = 0.0, 0.0
    else:
        p_spu, fb = _af_z_success(th.us, ac.s1, ac.s2, ac.u2c,
                                  p.na, p.nb, p.m_k)
        if fb:
            fallbacks.append("spu_af")
        joint, fb = _su_joint_success(p)
        if fb:
            fallbacks.append("su2_af")
    p_su_given = min(joint / p_spu, 1.0) if p_spu > 0.0 else 0.0

    return AfOutageBreakdown(
        p_bc_pu1=bc1, p_bc_pu2=bc2, p_spu=p_spu, p_su_given=p_su_given,
        pu_outage=_clamp(1.0 - bc1 * bc2, "AF PU outage"),
        su_outage=_clamp(1.0 - joint, "AF SU outage"),
        fallbacks=tuple(fallbacks),
    )
