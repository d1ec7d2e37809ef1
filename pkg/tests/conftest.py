import numpy as np
import pytest

from twrelay.params import SystemParams, default_params, derive_df_coeffs, derive_thresholds


@pytest.fixture
def table_params() -> SystemParams:
    return default_params()


def random_params(rng: np.random.Generator, require_gate: bool = True,
                  degen_margin: float = 0.1) -> SystemParams:
    """One random valid parameter set near the reference scales.

    Rejects sets whose gate is closed (when required), whose antenna count
    collides with a coefficient ratio (the degenerate denominators the closed
    forms refuse), or whose conditioning exponents would be extreme.
    """
    while True:
        na, nb = int(rng.integers(1, 4)), int(rng.integers(1, 4))
        p = SystemParams(
            pp1=10.0 ** rng.uniform(-6.0, -4.5),
            pp2=10.0 ** rng.uniform(-6.0, -4.5),
            na=na, nb=nb,
            d1=rng.uniform(6, 14), d2=rng.uniform(6, 14),
            d3=rng.uniform(6, 14), d4=rng.uniform(6, 14),
            d5=rng.uniform(6, 14), l=20.0,
            m=rng.uniform(2.2, 3.2), eta=rng.uniform(0.5, 1.0),
            rho=rng.uniform(0.3, 0.95), alpha=rng.uniform(0.3, 0.95),
            sigma2=1e-13, r_pu=rng.uniform(0.1, 0.4),
            r_su=rng.uniform(0.4, 1.2), m_k=int(rng.integers(1, 4)),
        )
        th = derive_thresholds(p)
        if require_gate and not th.gate_open:
            continue
        dc = derive_df_coeffs(p)
        if abs(na - dc.a1 * nb / dc.b1) < degen_margin * na:
            continue
        if abs(na - dc.b1_cap * nb / dc.b2_cap) < degen_margin * na:
            continue
        if th.gate_open and th.us * (1.0 - p.alpha) > 30.0:
            continue
        return p
