"""Spectrum efficiency vs energy efficiency along a transmit-power sweep.

Raising primary transmit power drives every outage down, so spectrum
efficiency climbs toward its ceiling r_pu + r_su/2; but the energy
denominator grows linearly, so energy efficiency peaks early and then decays.
DF relaying dominates AF in spectrum efficiency at every power on this
sweep.

Run:  python demos/efficiency_vs_power.py
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from twrelay import default_params
from twrelay.sweep import SweepSpec, run_sweep

base = default_params()
spec = SweepSpec("power_db", tuple(np.arange(-50.0, -14.9, 2.5)),
                 modes=("DF", "AF"), methods=("analytic",))
rows = run_sweep(spec, base)

fig, (ax_se, ax_ee) = plt.subplots(1, 2, figsize=(11, 4.5))
for mode, color in (("DF", "tab:blue"), ("AF", "tab:orange")):
    rs = [r for r in rows if r.mode == mode]
    xs = [r.value for r in rs]
    ax_se.plot(xs, [r.se for r in rs], "-o", ms=3, color=color, label=mode)
    ax_ee.semilogy(xs, [r.ee for r in rs], "-o", ms=3, color=color, label=mode)
    peak = max(rs, key=lambda r: r.ee)
    print(f"{mode}: se {rs[0].se:.4f} -> {rs[-1].se:.4f} bps/Hz, "
          f"ee peaks at {peak.value} dBm ({peak.ee:.3e} bps/Hz/W)")

ax_se.set_xlabel("primary transmit power (dBm)")
ax_se.set_ylabel("spectrum efficiency (bps/Hz)")
ax_se.axhline(base.r_pu + base.r_su / 2, ls=":", c="gray",
              label="zero-outage ceiling")
ax_ee.set_xlabel("primary transmit power (dBm)")
ax_ee.set_ylabel("energy efficiency (bps/Hz per W)")
for ax in (ax_se, ax_ee):
    ax.grid(True, ls=":")
    ax.legend()
fig.tight_layout()
fig.savefig("efficiency_vs_power.svg")
print("wrote efficiency_vs_power.svg")
