"""Outage and efficiency analysis for a SWIPT-powered two-way relay link.

Three independent evaluation routes for every link probability: closed forms
(analytic_df / analytic_af), Monte Carlo simulation (simulate), and direct
quadrature of the defining region integrals (oracle), plus spectrum/energy
efficiency metrics and parameter-sweep tooling.
"""

__version__ = "0.1.0"

from .analytic_af import AfOutageBreakdown, af_outage, prob_bc_pu_af, prob_spu_af, prob_su2_af
from .analytic_df import (
    DfOutageBreakdown,
    df_outage,
    prob_bc_pu,
    prob_bc_su2_df,
    prob_q1,
    prob_q2,
)
from .metrics import EfficiencyPoint, efficiency
from .oracle import QuadratureControl, integrate_region, oracle_suite
from .params import (
    AfCoefficients,
    DfCoefficients,
    SystemParams,
    Thresholds,
    db_over_noise_to_watts,
    dbm_to_watts,
    default_params,
    derive_af_coeffs,
    derive_df_coeffs,
    derive_thresholds,
)
from .simulate import (
    ChannelSample,
    McEstimate,
    af_sample_outcome,
    df_sample_outcome,
    estimate_outage,
    sample_channels,
)
from .specfun import (
    SeriesControl,
    bessel_k,
    gamma_fn,
    lower_inc_gamma,
    sum_alternating,
    upper_inc_gamma,
)
from .sweep import SweepRow, SweepSpec, preset, run_sweep

__all__ = [
    "AfCoefficients", "AfOutageBreakdown", "ChannelSample", "DfCoefficients",
    "DfOutageBreakdown", "EfficiencyPoint", "McEstimate", "QuadratureControl",
    "SeriesControl", "SweepRow", "SweepSpec", "SystemParams", "Thresholds",
    "af_outage", "af_sample_outcome", "bessel_k", "db_over_noise_to_watts",
    "dbm_to_watts", "default_params", "derive_af_coeffs", "derive_df_coeffs",
    "derive_thresholds", "df_outage", "df_sample_outcome", "efficiency",
    "estimate_outage", "gamma_fn", "integrate_region", "lower_inc_gamma",
    "oracle_suite", "preset", "prob_bc_pu", "prob_bc_pu_af", "prob_bc_su2_df",
    "prob_q1", "prob_q2", "prob_spu_af", "prob_su2_af", "run_sweep",
    "sample_channels", "sum_alternating", "upper_inc_gamma",
]
