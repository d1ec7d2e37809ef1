"""Spectrum and energy efficiency derived from outage probabilities.

The two-way exchange delivers the primary rate in each direction during half
the block, the secondary message during the other half, so at outages
(p_pu, p_su):

    se = (1 - p_pu) * r_pu + (1 - p_su) * r_su / 2        [bps/Hz]
    ee = se / (pp1 + pp2)                                  [bps/Hz per watt]

The energy denominator is primary transmit power only; the relay runs
entirely on harvested energy and costs nothing.
"""

from __future__ import annotations

from dataclasses import dataclass

from .params import SystemParams


@dataclass(frozen=True)
class EfficiencyPoint:
    se: float
    ee: float
    pu_outage: float
    su_outage: float
    total_power: float


def efficiency(p: SystemParams, pu_outage: float, su_outage: float) -> EfficiencyPoint:
    for name, v in (("pu_outage", pu_outage), ("su_outage", su_outage)):
        if not (0.0 <= v <= 1.0):
            raise ValueError(f"{name} must be in [0, 1], got {v}")
    se = 2.0 * (1.0 - pu_outage) * p.r_pu * 0.5 + (1.0 - su_outage) * p.r_su * 0.5
    total = p.pp1 + p.pp2
    return EfficiencyPoint(se=se, ee=se / total, pu_outage=pu_outage,
                           su_outage=su_outage, total_power=total)
