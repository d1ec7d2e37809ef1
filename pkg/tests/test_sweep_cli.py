import os

import pytest

from twrelay.cli import build_params, load_config, main
from twrelay.params import default_params, dbm_to_watts
from twrelay.sweep import (
    CSV_COLUMNS,
    PRESET_NAMES,
    SweepSpec,
    apply_variable,
    parse_csv,
    preset,
    rows_to_csv,
    run_sweep,
    write_csv,
    write_svg,
)


def test_sweep_spec_validation():
    with pytest.raises(ValueError):
        SweepSpec("bogus", (0.1,))
    with pytest.raises(ValueError):
        SweepSpec("alpha", ())
    with pytest.raises(ValueError):
        SweepSpec("alpha", (0.5, 0.3))
    with pytest.raises(ValueError):
        SweepSpec("alpha", (0.3,), modes=("XY",))
    with pytest.raises(ValueError):
        SweepSpec("alpha", (0.3,), methods=("guess",))


def test_apply_variable():
    base = default_params()
    assert apply_variable(base, "alpha", 0.5).alpha == 0.5
    assert apply_variable(base, "rho", 0.4).rho == 0.4
    assert apply_variable(base, "na", 3).na == 3
    p = apply_variable(base, "power_db", -30.0)
    assert p.pp1 == pytest.approx(dbm_to_watts(-30.0), rel=1e-12)
    q = apply_variable(base, "power_db", 50.0, power_unit="db_over_noise")
    assert q.pp1 == pytest.approx(base.sigma2 * 1e5, rel=1e-12)


def test_gated_grid_point_gives_unit_outage():
    spec = SweepSpec("alpha", (0.2,), modes=("DF", "AF"))
    rows = run_sweep(spec, default_params())
    assert len(rows) == 2
    for r in rows:
        assert r.analytic_pu == 1.0
        assert not r.error


def test_rows_survive_bad_grid_values():
    spec = SweepSpec("na", (0.0, 2.0), modes=("DF",))
    rows = run_sweep(spec, default_params())
    assert len(rows) == 2
    assert rows[0].error
    assert not rows[1].error and rows[1].analytic_pu is not None


def test_csv_round_trip(tmp_path):
    spec = SweepSpec("alpha", (0.3, 0.5, 0.81), modes=("DF", "AF"),
                     methods=("analytic", "mc"), mc_samples=20_000, seed=3)
    rows = run_sweep(spec, default_params())
    text = rows_to_csv(rows)
    assert text.splitlines()[0] == ",".join(CSV_COLUMNS)
    parsed = parse_csv(text)
    assert rows_to_csv(parsed) == text
    path = tmp_path / "sweep.csv"
    write_csv(str(path), rows)
    assert parse_csv(path.read_text())[0].mode == "DF"


def test_presets_exist_and_run(tmp_path):
    base = default_params()
    for name in PRESET_NAMES:
        spec = preset(name, mc_samples=5_000, seed=11)
        rows = run_sweep(spec, base)
        assert rows, name
        assert not any(r.error for r in rows), name
        assert all(r.se is not None for r in rows), name
    with pytest.raises(ValueError):
        preset("fig9")


def test_mc_and_analytic_columns_coexist():
    spec = SweepSpec("alpha", (0.81,), modes=("DF",),
                     methods=("analytic", "mc", "oracle"),
                     mc_samples=50_000, seed=4)
    (row,) = run_sweep(spec, default_params())
    assert row.analytic_pu is not None and row.mc_pu is not None
    assert row.mc_pu_se is not None and row.oracle_pu is not None
    assert abs(row.analytic_pu - row.oracle_pu) < 1e-5


def test_svg_emission(tmp_path):
    spec = SweepSpec("rho", (0.3, 0.5, 0.7), modes=("DF",))
    rows = run_sweep(spec, default_params())
    path = tmp_path / "plot.svg"
    write_svg(str(path), rows, title="check")
    head = path.read_text()[:300]
    assert "<svg" in head


# --- CLI ----------------------------------------------------------------------

def test_config_parsing(tmp_path):
    cfg = tmp_path / "link.cfg"
    cfg.write_text(
        "# reference setup\n"
        "pp_dbm = -23\n"
        "sigma2_dbm = -100\n"
        "alpha = 0.7   # overridden below\n"
        "na = 2\n"
        "m_k = 1\n")
    mapping = load_config(str(cfg))
    p = build_params(mapping)
    assert p.pp1 == pytest.approx(dbm_to_watts(-23.0), rel=1e-12)
    assert p.alpha == 0.7 and p.na == 2
    with pytest.raises(ValueError):
        build_params({"bogus_key": "1"})
    bad = tmp_path / "bad.cfg"
    bad.write_text("just words\n")
    with pytest.raises(ValueError):
        load_config(str(bad))


def test_cli_analytic_and_validate(capsys):
    assert main(["analytic"]) == 0
    out = capsys.readouterr().out
    assert "DF: pu_outage=" in out and "AF: pu_outage=" in out

    assert main(["--samples", "200000", "validate"]) == 0
    out = capsys.readouterr().out
    assert "9/9 component checks passed" in out


def test_cli_simulate_and_set_overrides(capsys):
    rc = main(["--samples", "50000", "--seed", "9", "--set", "alpha=0.2",
               "simulate", "--mode", "DF"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "pu_outage=1 " in out


def test_cli_oracle(capsys):
    assert main(["oracle"]) == 0
    out = capsys.readouterr().out
    assert "spu_af" in out


def test_cli_sweep_preset_and_files(tmp_path, capsys):
    out_csv = tmp_path / "rows.csv"
    out_svg = tmp_path / "rows.svg"
    rc = main(["--samples", "5000", "sweep", "--preset", "fig4",
               "--out", str(out_csv), "--svg", str(out_svg)])
    assert rc == 0
    assert out_csv.exists() and out_svg.exists()
    rows = parse_csv(out_csv.read_text())
    assert {r.mode for r in rows} == {"DF", "AF"}


def test_cli_sweep_spec_file(tmp_path, capsys):
    spec_file = tmp_path / "sweep.cfg"
    spec_file.write_text("variable = alpha\ngrid = 0.3,0.6,0.9\nmodes = DF\n"
                         "methods = analytic\n")
    rc = main(["sweep", "--spec", str(spec_file)])
    assert rc == 0
    out = capsys.readouterr().out
    assert out.count("\n") == 4  # header + three rows


def test_cli_config_plus_flags(tmp_path, capsys):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("alpha = 0.81\nna = 1\n")
    rc = main(["--config", str(cfg), "--set", "na=2", "analytic"])
    assert rc == 0


def test_cli_bad_input_returns_error(capsys):
    rc = main(["--set", "alpha=1.5", "analytic"])
    assert rc == 2
    assert "error:" in capsys.readouterr().err
