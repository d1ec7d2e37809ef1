"""Parameter sweeps: grid evaluation, figure presets, CSV and SVG emission.

A sweep varies one quantity (alpha, rho, power_db, na) over a sorted grid and
evaluates the selected methods (analytic closed forms, Monte Carlo,
quadrature oracle) for the selected relaying modes, one row per grid point
per mode.  Rows are deterministic for a fixed seed and never abort the run:
a failing evaluation lands in the row's error column.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field, replace

from . import analytic_af, analytic_df, oracle
from .metrics import efficiency
from .params import SystemParams, db_over_noise_to_watts, dbm_to_watts, derive_thresholds
from .simulate import estimate_outage

VARIABLES = ("alpha", "rho", "power_db", "na")
MODES = ("DF", "AF")
METHODS = ("analytic", "mc", "oracle")

CSV_COLUMNS = (
    "variable", "value", "mode",
    "analytic_pu", "analytic_su",
    "mc_pu", "mc_pu_se", "mc_su", "mc_su_se",
    "oracle_pu", "oracle_su",
    "se", "ee", "fallbacks", "error",
)


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    grid: tuple[float, ...]
    modes: tuple[str, ...] = MODES
    methods: tuple[str, ...] = ("analytic",)
    mc_samples: int = 10**6
    seed: int = 1234
    power_unit: str = "dbm"   # or "db_over_noise", for variable == power_db

    def __post_init__(self):
        if self.variable not in VARIABLES:
            raise ValueError(f"unknown sweep variable {self.variable!r}")
        if not self.grid:
            raise ValueError("grid must be nonempty")
        if tuple(sorted(self.grid)) != tuple(self.grid):
            raise ValueError("grid must be sorted ascending")
        for m in self.modes:
            if m not in MODES:
                raise ValueError(f"unknown mode {m!r}")
        for m in self.methods:
            if m not in METHODS:
                raise ValueError(f"unknown method {m!r}")
        if self.mc_samples < 1:
            raise ValueError("mc_samples must be >= 1")


@dataclass
class SweepRow:
    variable: str
    value: float
    mode: str
    analytic_pu: float | None = None
    analytic_su: float | None = None
    mc_pu: float | None = None
    mc_pu_se: float | None = None
    mc_su: float | None = None
    mc_su_se: float | None = None
    oracle_pu: float | None = None
    oracle_su: float | None = None
    se: float | None = None
    ee: float | None = None
    fallbacks: tuple[str, ...] = field(default_factory=tuple)
    error: str = ""


def apply_variable(base: SystemParams, variable: str, value: float,
                   power_unit: str = "dbm") -> SystemParams:
    """One grid point -> a concrete parameter set derived from `base`."""
    if variable == "alpha":
        return replace(base, alpha=float(value))
    if variable == "rho":
        return replace(base, rho=float(value))
    if variable == "na":
        return replace(base, na=int(value))
    if variable == "power_db":
        if power_unit == "dbm":
            w = dbm_to_watts(float(value))
        elif power_unit == "db_over_noise":
            w = db_over_noise_to_watts(float(value), base.sigma2)
        else:
            raise ValueError(f"unknown power_unit {power_unit!r}")
        return replace(base, pp1=w, pp2=w)
    raise ValueError(f"unknown sweep variable {variable!r}")


def _oracle_outage(p: SystemParams, mode: str) -> tuple[float, float]:
    """Outage from quadrature components, composed like the analytic stack."""
    suite = oracle.oracle_suite(p)
    v = {k: ov.value for k, ov in suite.items()}
    if mode == "DF":
        pu = 1.0 - v["q1"] * v["bc_pu1_df"] * v["bc_pu2_df"]
        su = 1.0 - v["q1"] * v["q2"] * v["bc_su2_df"]
        return pu, su
    pu = 1.0 - v["bc_pu1_af"] * v["bc_pu2_af"]
    th = derive_thresholds(p)
    if th.us is None:
        return pu, 1.0
    from .params import derive_af_coeffs

    ac = derive_af_coeffs(p)
    theta = max(th.u4, th.us * (1.0 - p.alpha))
    joint = oracle.af_su_success(theta, ac.u1c, ac.v1c, ac.u2c,
                                 p.na, p.nb, p.m_k).value
    return pu, 1.0 - joint


def run_sweep(spec: SweepSpec, base: SystemParams) -> list[SweepRow]:
    rows: list[SweepRow] = []
    for value in spec.grid:
        try:
            p = apply_variable(base, spec.variable, value, spec.power_unit)
        except (ValueError, TypeError) as exc:
            for mode in spec.modes:
                rows.append(SweepRow(spec.variable, float(value), mode,
                                     error=str(exc)))
            continue
        for mode in spec.modes:
            row = SweepRow(spec.variable, float(value), mode)
            try:
                if "analytic" in spec.methods:
                    if mode == "DF":
                        b = analytic_df.df_outage(p)
                    else:
                        b = analytic_af.af_outage(p)
                    row.analytic_pu, row.analytic_su = b.pu_outage, b.su_outage
                    row.fallbacks = b.fallbacks
                if "mc" in spec.methods:
                    pu, su = estimate_outage(p, mode, spec.mc_samples, spec.seed)
                    row.mc_pu, row.mc_pu_se = pu.p_hat, pu.stderr
                    row.mc_su, row.mc_su_se = su.p_hat, su.stderr
                if "oracle" in spec.methods:
                    row.oracle_pu, row.oracle_su = _oracle_outage(p, mode)
                pu_o = (row.analytic_pu if row.analytic_pu is not None
                        else row.mc_pu if row.mc_pu is not None
                        else row.oracle_pu)
                su_o = (row.analytic_su if row.analytic_su is not None
                        else row.mc_su if row.mc_su is not None
                        else row.oracle_su)
                if pu_o is not None and su_o is not None:
                    eff = efficiency(p, pu_o, su_o)
                    row.se, row.ee = eff.se, eff.ee
            except Exception as exc:  # a bad row must not kill the sweep
                row.error = f"{type(exc).__name__}: {exc}"
            rows.append(row)
    return rows


# --- presets reproducing the reference figures --------------------------------

def _grid(start: float, stop: float, step: float) -> tuple[float, ...]:
    n = int(round((stop - start) / step))
    return tuple(round(start + i * step, 10) for i in range(n + 1))


def preset(name: str, mc_samples: int = 10**6, seed: int = 1234) -> SweepSpec:
    """Named sweep configurations mirroring the reference result figures."""
    if name == "fig3a":
        return SweepSpec("alpha", _grid(0.05, 0.95, 0.02), modes=("DF",),
                         methods=("analytic", "mc"), mc_samples=mc_samples,
                         seed=seed)
    if name == "fig3b":
        return SweepSpec("alpha", _grid(0.05, 0.95, 0.02), modes=("AF",),
                         methods=("analytic", "mc"), mc_samples=mc_samples,
                         seed=seed)
    if name in ("fig4", "fig5"):
        return SweepSpec("rho", _grid(0.05, 0.95, 0.05), modes=MODES,
                         methods=("analytic",), mc_samples=mc_samples,
                         seed=seed)
    if name == "fig6":
        return SweepSpec("power_db", _grid(-50.0, -15.0, 2.5), modes=MODES,
                         methods=("analytic",), mc_samples=mc_samples,
                         seed=seed, power_unit="dbm")
    raise ValueError(f"unknown preset {name!r}; have fig3a fig3b fig4 fig5 fig6")


PRESET_NAMES = ("fig3a", "fig3b", "fig4", "fig5", "fig6")


# --- CSV and SVG ---------------------------------------------------------------

def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return f"{x:.9g}"
    return str(x)


def rows_to_csv(rows: list[SweepRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow([
            r.variable, _fmt(r.value), r.mode,
            _fmt(r.analytic_pu), _fmt(r.analytic_su),
            _fmt(r.mc_pu), _fmt(r.mc_pu_se), _fmt(r.mc_su), _fmt(r.mc_su_se),
            _fmt(r.oracle_pu), _fmt(r.oracle_su),
            _fmt(r.se), _fmt(r.ee),
            "+".join(r.fallbacks), r.error,
        ])
    return buf.getvalue()


def write_csv(path: str, rows: list[SweepRow]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(rows_to_csv(rows))


def parse_csv(text: str) -> list[SweepRow]:
    rdr = csv.reader(io.StringIO(text))
    header = next(rdr)
    if tuple(header) != CSV_COLUMNS:
        raise ValueError("unexpected sweep CSV header")
    out = []
    for rec in rdr:
        d = dict(zip(CSV_COLUMNS, rec))
        out.append(SweepRow(
            variable=d["variable"], value=float(d["value"]), mode=d["mode"],
            analytic_pu=float(d["analytic_pu"]) if d["analytic_pu"] else None,
            analytic_su=float(d["analytic_su"]) if d["analytic_su"] else None,
            mc_pu=float(d["mc_pu"]) if d["mc_pu"] else None,
            mc_pu_se=float(d["mc_pu_se"]) if d["mc_pu_se"] else None,
            mc_su=float(d["mc_su"]) if d["mc_su"] else None,
            mc_su_se=float(d["mc_su_se"]) if d["mc_su_se"] else None,
            oracle_pu=float(d["oracle_pu"]) if d["oracle_pu"] else None,
            oracle_su=float(d["oracle_su"]) if d["oracle_su"] else None,
            se=float(d["se"]) if d["se"] else None,
            ee=float(d["ee"]) if d["ee"] else None,
            fallbacks=tuple(d["fallbacks"].split("+")) if d["fallbacks"] else (),
            error=d["error"],
        ))
    return out


def write_svg(path: str, rows: list[SweepRow], title: str = "") -> None:
    """One line plot per (mode, method, link) series, outage vs grid value."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    series: dict[str, tuple[list[float], list[float]]] = {}
    for r in rows:
        for method in ("analytic", "mc", "oracle"):
            for link in ("pu", "su"):
                v = getattr(r, f"{method}_{link}")
                if v is None:
                    continue
                key = f"{r.mode} {method} {link}"
                xs, ys = series.setdefault(key, ([], []))
                xs.append(r.value)
                ys.append(v)
    fig, ax = plt.subplots(figsize=(7, 5))
    for key in sorted(series):
        xs, ys = series[key]
        style = "--" if " mc " in f" {key} " else "-"
        ax.plot(xs, ys, style, marker=".", label=key)
    variable = rows[0].variable if rows else ""
    ax.set_xlabel(variable)
    ax.set_ylabel("outage probability")
    if any(y > 0 for _, ys in series.values() for y in ys):
        ax.set_yscale("log")
    ax.grid(True, which="both", linestyle=":", linewidth=0.6)
    ax.legend(fontsize=8)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
