"""System parameters and derived coefficients for the two-way SWIPT relay link.

Two multi-antenna primary terminals exchange data through a single-antenna
relay that powers itself by splitting the received RF signal (fraction rho
harvested, 1-rho decoded) and spends a fraction alpha of the harvested power
on relaying, the rest on its own transmission to a second secondary node.

Everything in this module is a pure function of the physical constants.  The
core works strictly in linear units (watts, meters); dB/dBm conversion happens
only at the CLI/config boundary via the helpers at the bottom.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass


@dataclass(frozen=True)
class SystemParams:
    """Physical and protocol constants of one link configuration.

    pp1, pp2   transmit power of the two primary terminals (W)
    na, nb     antenna counts at the primary terminals
    d1, d2     distance from each primary terminal to the relay (m)
    d4, d5     distance from each primary terminal to the secondary receiver (m)
    d3         relay to secondary-receiver distance (m)
    l          distance between the primary terminals (m)
    m          path-loss exponent
    eta        energy-conversion efficiency of the harvester
    rho        power-splitting factor (harvested fraction)
    alpha      power-sharing factor (relaying fraction of harvested power)
    sigma2     noise power at every receiver (W)
    r_pu, r_su target rates of the primary and secondary links (bps/Hz)
    m_k        Nakagami shape of the relay -> secondary-receiver link
    t          block duration (s); cancels in all rate expressions
    """

    pp1: float
    pp2: float
    na: int
    nb: int
    d1: float
    d2: float
    d3: float
    d4: float
    d5: float
    l: float
    m: float
    eta: float
    rho: float
    alpha: float
    sigma2: float
    r_pu: float
    r_su: float
    m_k: int = 1
    t: float = 1.0

    def __post_init__(self):
        if not (0.0 <= self.rho < 1.0):
            raise ValueError(f"rho must be in [0, 1), got {self.rho}")
        if not (0.0 < self.alpha < 1.0):
            raise ValueError(f"alpha must be in (0, 1), got {self.alpha}")
        if not (0.0 <= self.eta <= 1.0):
            raise ValueError(f"eta must be in [0, 1], got {self.eta}")
        for name in ("na", "nb", "m_k"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")
        for name in ("pp1", "pp2", "d1", "d2", "d3", "d4", "d5", "l", "sigma2", "t"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)}")
        if self.m < 2.0:
            raise ValueError(f"path-loss exponent m must be >= 2, got {self.m}")
        for name in ("r_pu", "r_su"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0, got {getattr(self, name)}")

    def replace(self, **changes) -> "SystemParams":
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class Thresholds:
    """SNR thresholds implied by the target rates.

    u1/u2 gate the two single-stream MAC conditions, u3 the sum condition,
    u4 the secondary link.  us, kp, kpp exist only while the relaying power
    share can beat the self-interference floor (alpha > u1/(1+u1)); outside
    that region they are None, never NaN, because downstream code must branch
    on the gate rather than propagate garbage.
    """

    u1: float
    u2: float
    u3: float
    u4: float
    us: float | None
    kp: float | None
    kpp: float | None

    @property
    def gate_open(self) -> bool:
        return self.us is not None


@dataclass(frozen=True)
class DfCoefficients:
    """Dimensionless scales entering the DF success probabilities.

    a1_cap/a2_cap: MAC-phase SNR scales at the relay (post power split);
    b1_cap/b2_cap: MAC-phase SNR scales at the secondary receiver (no split);
    a1/b1: harvested-power scales (relay transmit power = sigma2*(a1*X+b1*Y));
    a1p/a2p, b1p/b2p: broadcast-phase signal/interference geometry scales;
    c: secondary-link scale.
    """

    a1_cap: float
    a2_cap: float
    b1_cap: float
    b2_cap: float
    a1: float
    b1: float
    a1p: float
    a2p: float
    b1p: float
    b2p: float
    c: float


@dataclass(frozen=True)
class AfCoefficients:
    """Dimensionless scales entering the AF success probabilities."""

    c1: float
    c2: float
    h1: float
    h2: float
    e1: float
    e2: float
    f1: float
    f2: float
    u1c: float
    v1c: float
    u2c: float
    u3c: float
    v3c: float
    s1: float
    s2: float


def derive_thresholds(p: SystemParams) -> Thresholds:
    """Rate targets -> SNR thresholds, with the gated quantities made explicit.

    u1 = u2 = 2^(2 r_pu) - 1, u3 = 2^(4 r_pu) - 1 (so u3 = u1^2 + 2 u1),
    u4 = 2^(2 r_su) - 1.  us = u1/(alpha - u1 (1-alpha)) and the broadcast
    thresholds kp = u1 d1^m/(alpha - u1(1-alpha)), kpp likewise with d2,
    are defined only when alpha - u1 (1-alpha) > 0.
    """
    u1 = 2.0 ** (2.0 * p.r_pu) - 1.0
    u3 = 2.0 ** (4.0 * p.r_pu) - 1.0
    u4 = 2.0 ** (2.0 * p.r_su) - 1.0
    margin = p.alpha - u1 * (1.0 - p.alpha)
    if margin > 0.0:
        us = u1 / margin
        kp = u1 * p.d1**p.m / margin
        kpp = u1 * p.d2**p.m / margin
    else:
        us = kp = kpp = None
    return Thresholds(u1=u1, u2=u1, u3=u3, u4=u4, us=us, kp=kp, kpp=kpp)


def derive_df_coeffs(p: SystemParams) -> DfCoefficients:
    """Coefficient set for the DF analysis; each field is a closed formula."""
    g1 = p.pp1 / (p.na * p.d1**p.m * p.sigma2)   # per-link SNR scale at the relay
    g2 = p.pp2 / (p.nb * p.d2**p.m * p.sigma2)
    return DfCoefficients(
        a1_cap=(1.0 - p.rho) * g1,
        a2_cap=(1.0 - p.rho) * g2,
        b1_cap=p.pp1 / (p.na * p.d4**p.m * p.sigma2),
        b2_cap=p.pp2 / (p.nb * p.d5**p.m * p.sigma2),
        a1=p.eta * p.rho * g1,
        b1=p.eta * p.rho * g2,
        a1p=p.alpha / p.d1**p.m,
        a2p=p.alpha / p.d2**p.m,
        b1p=(1.0 - p.alpha) / p.d1**p.m,
        b2p=(1.0 - p.alpha) / p.d2**p.m,
        c=(1.0 - p.alpha) / p.d3**p.m,
    )


def derive_af_coeffs(p: SystemParams) -> AfCoefficients:
    """Coefficient set for the AF analysis (relay gain already folded in)."""
    er = p.eta * p.rho
    d12 = (p.d1 * p.d2) ** p.m
    d3 = p.d3**p.m
    s1 = er * p.pp1 / (d3 * p.sigma2 * p.na * p.d1**p.m)
    s2 = er * p.pp2 / (d3 * p.sigma2 * p.nb * p.d2**p.m)
    return AfCoefficients(
        c1=er * p.pp2 * p.alpha / (p.nb * p.sigma2 * d12),
        c2=er * p.pp1 * p.alpha / (p.na * p.sigma2 * d12),
        h1=(1.0 - p.alpha) * er * p.pp1 / (p.na * p.sigma2 * p.d1 ** (2 * p.m)),
        h2=(1.0 - p.alpha) * er * p.pp2 / (p.nb * p.sigma2 * p.d2 ** (2 * p.m)),
        e1=(1.0 - p.alpha) * er * p.pp2 / (p.nb * p.sigma2 * d12),
        e2=(1.0 - p.alpha) * er * p.pp1 / (p.na * p.sigma2 * d12),
        f1=p.rho * p.alpha * p.eta / ((1.0 - p.rho) * p.d1**p.m),
        f2=p.rho * p.alpha * p.eta / ((1.0 - p.rho) * p.d2**p.m),
        u1c=(1.0 - p.alpha) * s1,
        v1c=(1.0 - p.alpha) * s2,
        u2c=p.alpha * er / (d3 * (1.0 - p.rho)),
        u3c=p.alpha * s1,
        v3c=p.alpha * s2,
        s1=s1,
        s2=s2,
    )


# --- reference configuration and unit helpers -------------------------------

def dbm_to_watts(dbm: float) -> float:
    return 10.0 ** ((dbm - 30.0) / 10.0)


def watts_to_dbm(w: float) -> float:
    import math

    return 10.0 * math.log10(w) + 30.0


def db_over_noise_to_watts(db: float, sigma2: float) -> float:
    """Power given as dB above the noise floor -> watts."""
    return sigma2 * 10.0 ** (db / 10.0)


def default_params(**overrides) -> SystemParams:
    """Reference configuration used throughout the demos and tests.

    Primary power -23 dBm, noise -100 dBm, 20 m between the primary
    terminals with the relay at the midpoint (d1=d2=d4=d5=l/2), 10 m
    secondary hop, path loss 2.7, eta=rho=0.9, alpha=0.81, rates
    0.2 / 1 bps/Hz, two antennas at the first terminal and one at the
    second, Rayleigh secondary hop (m_k=1).
    """
    values = dict(
        pp1=dbm_to_watts(-23.0),
        pp2=dbm_to_watts(-23.0),
        na=2,
        nb=1,
        l=20.0,
        d3=10.0,
        m=2.7,
        eta=0.9,
        rho=0.9,
        alpha=0.81,
        sigma2=dbm_to_watts(-100.0),
        r_pu=0.2,
        r_su=1.0,
        m_k=1,
        t=1.0,
    )
    values.update(overrides)
    half = values["l"] / 2.0
    for d in ("d1", "d2", "d4", "d5"):
        values.setdefault(d, half)
    return SystemParams(**values)
