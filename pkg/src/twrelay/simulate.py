"""Monte Carlo engine: channel sampling, per-sample rate events, outage estimates.

The estimator is reproducible and parallelism-invariant: the sample index
space is cut into fixed-size chunks, each chunk gets its own counter-based
Philox stream derived from (master seed, chunk index), and the per-chunk
failure counts are integers merged in chunk order.  Identical (seed, n)
therefore give bit-identical estimates for any worker count.

Two channel conventions are supported.  "analysis" draws each multi-antenna
power sum as Gamma(N, 1/N) (unit total mean, the normalization every closed
form in this package uses); "paper-literal" draws Gamma(N, 1) (unit variance
per antenna, so the total mean grows with N).  The two differ only for N > 1;
the discrepancy is a documented model-level sensitivity, not a bug.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .params import SystemParams, derive_df_coeffs, derive_thresholds

CONVENTIONS = ("analysis", "paper-literal")
XI_MODES = ("approx", "exact")


@dataclass(frozen=True)
class ChannelSample:
    """One joint draw (or a vector of draws) of every fading quantity.

    x1, y1: channel-power sums of the two primary->relay links;
    x2, y2: the same toward the secondary receiver; z: relay->secondary
    power; xi2_exact / xi2_approx: the squared amplification normalizer with
    and without the noise term in its denominator.
    """

    x1: np.ndarray
    y1: np.ndarray
    x2: np.ndarray
    y2: np.ndarray
    z: np.ndarray
    xi2_exact: np.ndarray
    xi2_approx: np.ndarray


@dataclass(frozen=True)
class McEstimate:
    p_hat: float
    stderr: float
    n: int
    seed: int


def _received_power(p: SystemParams, x1, y1):
    return (p.pp1 * x1 / (p.na * p.d1**p.m)
            + p.pp2 * y1 / (p.nb * p.d2**p.m))


def sample_channels(p: SystemParams, rng: np.random.Generator,
                    size: int | None = None,
                    convention: str = "analysis") -> ChannelSample:
    """Draw the five independent channel-power variables (plus relay gain)."""
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    unit = convention == "analysis"

    def gam(shape):
        scale = 1.0 / shape if unit else 1.0
        return rng.gamma(shape, scale, size)

    x1, y1 = gam(p.na), gam(p.nb)
    x2, y2 = gam(p.na), gam(p.nb)
    z = rng.gamma(p.m_k, 1.0 / p.m_k, size)
    w = _received_power(p, x1, y1)
    xi2_approx = 1.0 / ((1.0 - p.rho) * w)
    xi2_exact = 1.0 / ((1.0 - p.rho) * w + p.sigma2)
    return ChannelSample(x1=x1, y1=y1, x2=x2, y2=y2, z=z,
                         xi2_exact=xi2_exact, xi2_approx=xi2_approx)


def df_sample_outcome(p: SystemParams, s: ChannelSample):
    """(pu_fail, su_fail) flags for DF relaying, per sample.

    MAC-phase decode at the relay and at the secondary receiver, then the
    broadcast-phase SINRs fed by the harvested power.
    """
    th = derive_thresholds(p)
    dc = derive_df_coeffs(p)
    q1 = ((dc.a1_cap * s.x1 >= th.u1)
          & (dc.a2_cap * s.y1 >= th.u2)
          & (dc.a1_cap * s.x1 + dc.a2_cap * s.y1 >= th.u3))
    q2 = ((dc.b1_cap * s.x2 >= th.u1)
          & (dc.b2_cap * s.y2 >= th.u2)
          & (dc.b1_cap * s.x2 + dc.b2_cap * s.y2 >= th.u3))
    ps_over_noise = dc.a1 * s.x1 + dc.b1 * s.y1
    g1 = dc.a1p * ps_over_noise * s.x1 / (dc.b1p * ps_over_noise * s.x1 + 1.0)
    g2 = dc.a2p * ps_over_noise * s.y1 / (dc.b2p * ps_over_noise * s.y1 + 1.0)
    g_su = dc.c * ps_over_noise * s.z
    pu_fail = ~(q1 & (g1 >= th.u1) & (g2 >= th.u1))
    su_fail = ~(q1 & q2 & (g_su >= th.u4))
    return pu_fail, su_fail


def af_sample_outcome(p: SystemParams, s: ChannelSample,
                      xi_mode: str = "approx"):
    """(pu_fail, su_fail) flags for AF relaying, per sample.

    Built from the physical signal components: harvested power, the
    amplification gain (exact or noise-neglected), forwarded noise, and the
    secondary's superposed transmission.
    """
    if xi_mode not in XI_MODES:
        raise ValueError(f"unknown xi_mode {xi_mode!r}")
    th = derive_thresholds(p)
    xi2 = s.xi2_exact if xi_mode == "exact" else s.xi2_approx
    w1 = p.pp1 * s.x1 / (p.na * p.d1**p.m)
    w2 = p.pp2 * s.y1 / (p.nb * p.d2**p.m)
    w = w1 + w2
    ps = p.eta * p.rho * w
    s2 = p.sigma2

    def pu_sinr(w_other, gain, dist):
        path = gain / dist**p.m
        desired = p.alpha * ps * xi2 * (1.0 - p.rho) * w_other * path
        interf = (1.0 - p.alpha) * ps * path
        fwd_noise = p.alpha * ps * xi2 * s2 * path
        return desired / (interf + fwd_noise + s2)

    g1 = pu_sinr(w2, s.x1, p.d1)
    g2 = pu_sinr(w1, s.y1, p.d2)

    path3 = s.z / p.d3**p.m
    su_signal = (1.0 - p.alpha) * ps * path3
    fwd_noise3 = p.alpha * ps * xi2 * s2 * path3
    g_spu = (p.alpha * ps * xi2 * (1.0 - p.rho) * w * path3
             / (su_signal + fwd_noise3 + s2))
    g_su = su_signal / (fwd_noise3 + s2)

    pu_fail = ~((g1 >= th.u1) & (g2 >= th.u1))
    su_fail = ~((g_su >= th.u4) & (g_spu >= th.u1))
    return pu_fail, su_fail


def estimate_outage(p: SystemParams, mode: str, n: int, seed: int,
                    workers: int = 1, chunk_size: int = 1 << 16,
                    convention: str = "analysis",
                    xi_mode: str = "approx") -> tuple[McEstimate, McEstimate]:
    """(pu, su) outage estimates from n i.i.d. channel draws.

    Deterministic in (seed, n, chunk_size) for any `workers`; see module
    docstring for how.
    """
    if mode not in ("DF", "AF"):
        raise ValueError(f"mode must be 'DF' or 'AF', got {mode!r}")
    if n < 1:
        raise ValueError("n must be >= 1")
    n_chunks = (n + chunk_size - 1) // chunk_size
    seeds = np.random.SeedSequence(seed).spawn(n_chunks)

    def run_chunk(i: int) -> tuple[int, int]:
        size = min(chunk_size, n - i * chunk_size)
        rng = np.random.Generator(np.random.Philox(seeds[i]))
        s = sample_channels(p, rng, size, convention)
        if mode == "DF":
            pu_fail, su_fail = df_sample_outcome(p, s)
        else:
            pu_fail, su_fail = af_sample_outcome(p, s, xi_mode)
        return int(pu_fail.sum()), int(su_fail.sum())

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(run_chunk, range(n_chunks)))
    else:
        counts = [run_chunk(i) for i in range(n_chunks)]

    pu_count = sum(c[0] for c in counts)
    su_count = sum(c[1] for c in counts)

    def est(count: int) -> McEstimate:
        p_hat = count / n
        return McEstimate(p_hat=p_hat,
                          stderr=math.sqrt(p_hat * (1.0 - p_hat) / n),
                          n=n, seed=seed)

    return est(pu_count), est(su_count)


def component_estimates(p: SystemParams, n: int, seed: int,
                        convention: str = "analysis") -> dict[str, McEstimate]:
    """Per-component success-probability estimates (the validate() MC column).

    Estimates each defining event's probability from the same sampled
    channels: the MAC decodes, both broadcast successes per relaying mode,
    and the secondary-receiver decodes.
    """
    from .params import derive_af_coeffs

    th = derive_thresholds(p)
    dc = derive_df_coeffs(p)
    ac = derive_af_coeffs(p)
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    s = sample_channels(p, rng, n, convention)

    ps_over_noise = dc.a1 * s.x1 + dc.b1 * s.y1
    g1df = dc.a1p * ps_over_noise * s.x1 / (dc.b1p * ps_over_noise * s.x1 + 1.0)
    g2df = dc.a2p * ps_over_noise * s.y1 / (dc.b2p * ps_over_noise * s.y1 + 1.0)
    xi2 = s.xi2_approx
    events = {
        "q1": ((dc.a1_cap * s.x1 >= th.u1) & (dc.a2_cap * s.y1 >= th.u2)
               & (dc.a1_cap * s.x1 + dc.a2_cap * s.y1 >= th.u3)),
        "q2": ((dc.b1_cap * s.x2 >= th.u1) & (dc.b2_cap * s.y2 >= th.u2)
               & (dc.b1_cap * s.x2 + dc.b2_cap * s.y2 >= th.u3)),
        "bc_pu1_df": g1df >= th.u1,
        "bc_pu2_df": g2df >= th.u1,
        "bc_su2_df": dc.c * ps_over_noise * s.z >= th.u4,
        "bc_pu1_af": (ac.c1 * s.x1 * s.y1
                      >= th.u1 * (ac.h1 * s.x1**2 + ac.e1 * s.x1 * s.y1
                                  + ac.f1 * s.x1 + 1.0)),
        "bc_pu2_af": (ac.c2 * s.x1 * s.y1
                      >= th.u1 * (ac.h2 * s.y1**2 + ac.e2 * s.x1 * s.y1
                                  + ac.f2 * s.y1 + 1.0)),
        "su2_af": (s.z * (ac.u1c * s.x1 + ac.v1c * s.y1)
                   >= th.u4 * (ac.u2c * s.z + 1.0)),
        "spu_af": (s.z * (ac.u3c * s.x1 + ac.v3c * s.y1)
                   >= th.u1 * (s.z * (ac.u1c * s.x1 + ac.v1c * s.y1)
                               + ac.u2c * s.z + 1.0)),
    }
    out = {}
    for name, flags in events.items():
        p_hat = float(np.mean(flags))
        out[name] = McEstimate(p_hat=p_hat,
                               stderr=math.sqrt(p_hat * (1 - p_hat) / n),
                               n=n, seed=seed)
    return out
