"""Command-line surface: config parsing, sweeps, validation, CSV/SVG output.

Configuration is a flat key=value text file ('#' starts a comment), with
keys named exactly after SystemParams fields plus the sweep keys; command
line --set pairs override file values.  Powers may be given in watts (pp1,
pp2, sigma2), in dBm (pp_dbm / pp1_dbm / pp2_dbm / sigma2_dbm), or in dB
above the noise floor (pp_db_over_noise); everything is converted to watts
here, at the boundary, and nowhere else.

Subcommands: analytic, simulate, oracle, validate, sweep.  `validate` exits
nonzero when any three-way component check fails.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .analytic_af import af_outage, prob_bc_pu_af, prob_spu_af, prob_su2_af
from .analytic_df import df_outage, prob_bc_pu, prob_bc_su2_df, prob_q1, prob_q2
from .metrics import efficiency
from .oracle import COMPONENT_NAMES, oracle_suite
from .params import (
    SystemParams,
    db_over_noise_to_watts,
    dbm_to_watts,
    default_params,
)
from .simulate import component_estimates, estimate_outage
from .sweep import (
    PRESET_NAMES,
    SweepSpec,
    preset,
    run_sweep,
    rows_to_csv,
    write_csv,
    write_svg,
)

_PARAM_FIELDS = ("pp1", "pp2", "na", "nb", "d1", "d2", "d3", "d4", "d5", "l",
                 "m", "eta", "rho", "alpha", "sigma2", "r_pu", "r_su", "m_k", "t")
_INT_FIELDS = ("na", "nb", "m_k")
_SWEEP_KEYS = ("variable", "grid", "modes", "methods", "mc_samples", "seed",
               "power_unit")


def load_config(path: str) -> dict[str, str]:
    """Flat key=value file -> string mapping; '#' comments, blank lines ok."""
    out: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
            key, value = line.split("=", 1)
            out[key.strip()] = value.strip()
    return out


def build_params(mapping: dict[str, str]) -> SystemParams:
    """Config mapping -> SystemParams, converting power units to watts."""
    values: dict[str, object] = {}
    m = dict(mapping)

    if "sigma2_dbm" in m:
        values["sigma2"] = dbm_to_watts(float(m.pop("sigma2_dbm")))
    if "pp_dbm" in m:
        w = dbm_to_watts(float(m.pop("pp_dbm")))
        values["pp1"] = values["pp2"] = w
    for key in ("pp1_dbm", "pp2_dbm"):
        if key in m:
            values[key[:3]] = dbm_to_watts(float(m.pop(key)))
    if "pp_db_over_noise" in m:
        sigma2 = float(values.get("sigma2", m.get("sigma2",
                       default_params().sigma2)))
        w = db_over_noise_to_watts(float(m.pop("pp_db_over_noise")), sigma2)
        values["pp1"] = values["pp2"] = w

    for key in _PARAM_FIELDS:
        if key in m:
            raw = m.pop(key)
            values[key] = int(raw) if key in _INT_FIELDS else float(raw)
    unknown = set(m) - set(_SWEEP_KEYS)
    if unknown:
        raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return default_params(**values)


def _parse_grid(text: str) -> tuple[float, ...]:
    """Either comma-separated values or start:stop:step."""
    if ":" in text:
        start, stop, step = (float(t) for t in text.split(":"))
        n = int(round((stop - start) / step))
        return tuple(round(start + i * step, 10) for i in range(n + 1))
    return tuple(float(t) for t in text.split(","))


def build_sweep_spec(mapping: dict[str, str], mc_samples: int,
                     seed: int) -> SweepSpec:
    if "variable" not in mapping or "grid" not in mapping:
        raise ValueError("sweep spec needs at least 'variable' and 'grid'")
    return SweepSpec(
        variable=mapping["variable"],
        grid=_parse_grid(mapping["grid"]),
        modes=tuple(mapping.get("modes", "DF,AF").split(",")),
        methods=tuple(mapping.get("methods", "analytic").split(",")),
        mc_samples=int(mapping.get("mc_samples", mc_samples)),
        seed=int(mapping.get("seed", seed)),
        power_unit=mapping.get("power_unit", "dbm"),
    )


def _params_from_args(args) -> SystemParams:
    mapping: dict[str, str] = {}
    if args.config:
        mapping.update(load_config(args.config))
    for pair in args.set or []:
        if "=" not in pair:
            raise SystemExit(f"--set expects key=value, got {pair!r}")
        key, value = pair.split("=", 1)
        mapping[key.strip()] = value.strip()
    sweep_part = {k: v for k, v in mapping.items() if k in _SWEEP_KEYS}
    param_part = {k: v for k, v in mapping.items() if k not in _SWEEP_KEYS}
    args._sweep_mapping = sweep_part
    return build_params(param_part)


def _cmd_analytic(args) -> int:
    p = _params_from_args(args)
    d = df_outage(p)
    a = af_outage(p)
    print("component probabilities (closed form)")
    print(f"  q1 (MAC at relay)        {prob_q1(p):.9g}")
    print(f"  q2 (MAC at SU2)          {prob_q2(p):.9g}")
    print(f"  DF broadcast -> PU1      {prob_bc_pu(p, 1):.9g}")
    print(f"  DF broadcast -> PU2      {prob_bc_pu(p, 2):.9g}")
    print(f"  DF relay -> SU2          {prob_bc_su2_df(p):.9g}")
    print(f"  AF broadcast -> PU1      {prob_bc_pu_af(p, 1):.9g}")
    print(f"  AF broadcast -> PU2      {prob_bc_pu_af(p, 2):.9g}")
    print(f"  AF own signal at SU2     {prob_su2_af(p):.9g}")
    print(f"  AF PU decode at SU2      {prob_spu_af(p):.9g}")
    for name, b in (("DF", d), ("AF", a)):
        eff = efficiency(p, b.pu_outage, b.su_outage)
        fb = f" fallbacks={'+'.join(b.fallbacks)}" if b.fallbacks else ""
        print(f"{name}: pu_outage={b.pu_outage:.9g} su_outage={b.su_outage:.9g} "
              f"se={eff.se:.9g} ee={eff.ee:.9g}{fb}")
    return 0


def _cmd_simulate(args) -> int:
    p = _params_from_args(args)
    modes = ("DF", "AF") if args.mode == "both" else (args.mode,)
    for mode in modes:
        pu, su = estimate_outage(p, mode, args.samples, args.seed,
                                 workers=args.workers,
                                 convention=args.convention,
                                 xi_mode=args.xi)
        print(f"{mode}: pu_outage={pu.p_hat:.9g} (se={pu.stderr:.3g}) "
              f"su_outage={su.p_hat:.9g} (se={su.stderr:.3g}) "
              f"n={pu.n} seed={pu.seed}")
    return 0


def _cmd_oracle(args) -> int:
    p = _params_from_args(args)
    suite = oracle_suite(p)
    for name in COMPONENT_NAMES:
        ov = suite[name]
        flag = "" if ov.converged else "  NOT-CONVERGED"
        print(f"{name:12s} {ov.value:.9g}  (est. err {ov.error:.2g}){flag}")
    return 0


def _cmd_validate(args) -> int:
    p = _params_from_args(args)
    analytic = {
        "q1": prob_q1(p), "q2": prob_q2(p),
        "bc_pu1_df": prob_bc_pu(p, 1), "bc_pu2_df": prob_bc_pu(p, 2),
        "bc_su2_df": prob_bc_su2_df(p),
        "bc_pu1_af": prob_bc_pu_af(p, 1), "bc_pu2_af": prob_bc_pu_af(p, 2),
        "su2_af": prob_su2_af(p), "spu_af": prob_spu_af(p),
    }
    suite = oracle_suite(p)
    mc = component_estimates(p, args.samples, args.seed)
    d = df_outage(p)
    af = af_outage(p)
    fell_back = set(d.fallbacks) | set(af.fallbacks)
    print(f"{'component':13s} {'analytic':>12s} {'oracle':>12s} {'mc':>12s} "
          f"{'|a-o|':>9s} {'|a-mc|/se':>9s}  status")
    failures = 0
    for name in COMPONENT_NAMES:
        a = analytic[name]
        o = suite[name].value
        m = mc[name]
        d_oracle = abs(a - o)
        n_sigma = abs(a - m.p_hat) / m.stderr if m.stderr > 0 else (
            0.0 if a == m.p_hat else float("inf"))
        ok = d_oracle <= 1e-5 and n_sigma <= 4.0
        failures += 0 if ok else 1
        tag = name + ("*" if name in fell_back else "")
        print(f"{tag:13s} {a:12.9f} {o:12.9f} {m.p_hat:12.9f} "
              f"{d_oracle:9.2e} {n_sigma:9.2f}  {'pass' if ok else 'FAIL'}")
    if fell_back:
        print("(* closed form delegated to the quadrature oracle-fallback)")
    print(f"composed (informational): DF pu={d.pu_outage:.6g} su={d.su_outage:.6g}  "
          f"AF pu={af.pu_outage:.6g} su={af.su_outage:.6g}")
    print(f"{9 - failures}/9 component checks passed")
    return 0 if failures == 0 else 1


def _cmd_sweep(args) -> int:
    p = _params_from_args(args)
    if args.preset:
        spec = preset(args.preset, mc_samples=args.samples, seed=args.seed)
    else:
        mapping = dict(getattr(args, "_sweep_mapping", {}))
        if args.spec:
            mapping.update(load_config(args.spec))
        spec = build_sweep_spec(mapping, args.samples, args.seed)
    rows = run_sweep(spec, p)
    if args.out:
        write_csv(args.out, rows)
        print(f"wrote {len(rows)} rows to {args.out}")
    else:
        sys.stdout.write(rows_to_csv(rows))
    if args.svg:
        write_svg(args.svg, rows, title=args.preset or spec.variable)
        print(f"wrote plot to {args.svg}")
    bad = [r for r in rows if r.error]
    if bad:
        print(f"{len(bad)} rows carried errors", file=sys.stderr)
        return 1
    return 0


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(
        prog="twrelay",
        description="Outage and efficiency analysis of a SWIPT-powered "
                    "two-way relay spectrum-sharing link.")
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("--config", help="key=value parameter file")
    ap.add_argument("--set", action="append", metavar="KEY=VALUE",
                    help="override a config/parameter value (repeatable)")
    ap.add_argument("--seed", type=int, default=1234)
    ap.add_argument("--samples", type=int, default=10**6,
                    help="Monte Carlo samples per estimate")
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("analytic", help="closed-form outage breakdown")

    sim = sub.add_parser("simulate", help="Monte Carlo outage estimate")
    sim.add_argument("--mode", choices=("DF", "AF", "both"), default="both")
    sim.add_argument("--workers", type=int, default=1)
    sim.add_argument("--convention", choices=("analysis", "paper-literal"),
                     default="analysis")
    sim.add_argument("--xi", choices=("approx", "exact"), default="approx")

    sub.add_parser("oracle", help="quadrature values of the defining integrals")

    sub.add_parser("validate",
                   help="three-way analytic/oracle/MC component check")

    sw = sub.add_parser("sweep", help="evaluate a parameter sweep")
    sw.add_argument("--preset", choices=PRESET_NAMES)
    sw.add_argument("--spec", help="sweep spec file (key=value)")
    sw.add_argument("--out", help="CSV output path (default: stdout)")
    sw.add_argument("--svg", help="also write an SVG line plot")

    args = ap.parse_args(argv)
    handlers = {
        "analytic": _cmd_analytic,
        "simulate": _cmd_simulate,
        "oracle": _cmd_oracle,
        "validate": _cmd_validate,
        "sweep": _cmd_sweep,
    }
    try:
        return handlers[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
