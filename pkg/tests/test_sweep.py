import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qlinkmodel import ConfigError, DomainError, SystemConfig
from qlinkmodel.sweep import SweepSpec, coded_crossover, format_rows, load_config, parse_config, read_csv, run_sweep, write_rows


def test_empty_config_is_default(tmp_path):
    p = tmp_path / "empty.ini"
    p.write_text("")
    assert load_config(p) == SystemConfig()
    assert load_config(None) == SystemConfig()


def test_pump_power_key():
    cfg = parse_config("# operating point\npump_power_normalized = 0.01\n")
    assert cfg.pump_amplitude == pytest.approx(0.1)


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("pump_power_normalized=1.5", "pump_power_normalized"),
        ("bogus = 1", "unknown key 'bogus'"),
        ("excess_loss_db = 1\nnot a pair", "line 2"),
        ("cycle_rate_hz = fast", "not a number"),
        ("linewidth_ratio = -1", "linewidth"),
        ("pump_amplitude = 0.1\npump_power_normalized = 0.01", "twice"),
    ],
)
def test_config_errors(text, fragment):
    with pytest.raises(ConfigError, match=fragment):
        parse_config(text)


def test_config_keys_roundtrip():
    cfg = parse_config("excess_loss_db = 3\nfiber_loss_db_per_km=0.25\ncycle_rate_hz = 1e6  # faster\n")
    assert (cfg.excess_loss_db, cfg.fiber_loss_db_per_km, cfg.cycle_rate_hz) == (3.0, 0.25, 1e6)


def test_spec_validation():
    with pytest.raises(DomainError):
        SweepSpec(step_km=0)
    with pytest.raises(DomainError):
        SweepSpec(start_km=10, end_km=5)
    with pytest.raises(DomainError):
        SweepSpec(system="ghz-dual", coded=True)
    with pytest.raises(DomainError):
        SweepSpec(system="nope")


def test_teleport_sweep_rows():
    rows = run_sweep(SweepSpec(), SystemConfig())
    assert len(rows) == 51
    assert rows[0]["path_km_end_to_end"] == 0 and rows[-1]["path_km_end_to_end"] == 100
    f = [r["F_uncoded"] for r in rows]
    assert np.all(np.diff(f) <= 0)
    assert all(r["status"] == "ok" for r in rows)


@given(st.floats(0.1, 10.0), st.floats(0.0, 50.0))
def test_grid_includes_end(step, span):
    spec = SweepSpec(start_km=0.0, end_km=span, step_km=step)
    g = spec.grid()
    assert g[0] == 0.0 and g[-1] <= span + 1e-9 and span - g[-1] < step


def test_coded_and_epp_columns():
    rows = run_sweep(SweepSpec(system="epp", coded=True, start_km=50, end_km=50), SystemConfig())
    r = rows[0]
    assert r["throughput_normalized"] == r["throughput"] / 5
    assert r["F_purified"] == 1.0
    assert r["throughput_purified"] <= r["throughput"]


def test_ghz_sweep_uses_source_to_memory_length():
    rows = run_sweep(SweepSpec(system="ghz-dual", start_km=10, end_km=10), SystemConfig())
    assert "path_km_source_to_memory" in rows[0]
    assert rows[0]["F_uncoded"] == pytest.approx(rows[0]["F_closed_form"], abs=1e-12)


def test_invalid_points_become_error_rows(monkeypatch):
    from qlinkmodel import ModelValidityError, sweep

    real = sweep.pair_moments

    def fake(cfg, km):
        if km == 1.0:
            raise ModelValidityError("forced")
        return real(cfg, km)

    monkeypatch.setattr(sweep, "pair_moments", fake)
    rows = run_sweep(SweepSpec(start_km=0, end_km=4), SystemConfig())
    assert len(rows) == 3
    assert rows[1]["status"] == "error: ModelValidityError"
    assert math.isnan(rows[1]["Ps"])
    assert rows[0]["status"] == rows[2]["status"] == "ok"


def test_csv_roundtrip(tmp_path):
    rows = run_sweep(SweepSpec(system="teleport-qecc", end_km=20), SystemConfig())
    p = tmp_path / "t.csv"
    write_rows(rows, p)
    raw = p.read_bytes()
    assert b"\r" not in raw and raw.endswith(b"\n")
    back = read_csv(p)
    for a, b in zip(rows, back):
        for k, v in a.items():
            if k != "status":
                assert b[k] == float(f"{v:.12g}")


def test_json_output():
    import json

    rows = run_sweep(SweepSpec(end_km=4), SystemConfig())
    data = json.loads(format_rows(rows, "json"))
    assert len(data) == 3 and data[1]["path_km_end_to_end"] == 2.0


def test_ghz_mc_sweep_deterministic():
    spec = SweepSpec(system="ghz-dual", coded=True, trials=2000, seed=5, end_km=6, step_km=3)
    a = format_rows(run_sweep(spec, SystemConfig()))
    b = format_rows(run_sweep(spec, SystemConfig()))
    assert a == b


def test_crossover_fit():
    rows = [
        {"path_km_source_to_memory": x, "F_coded": 1 - 0.01 * x, "F_uncoded": 1 - 0.005 * x - 0.04, "status": "ok"}
        for x in np.arange(0, 20.0)
    ]
    assert coded_crossover(rows) == pytest.approx(8.0)
