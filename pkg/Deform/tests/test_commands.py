import json
from io import StringIO

import pandas as pd
import pytest
from django.core.management import call_command
from django.core.management.base import CommandError


def run(name, **options):
    stdout = StringIO()
    stderr = StringIO()
    call_command(name, stdout=stdout, stderr=stderr, **options)
    return stdout.getvalue()


def runFailing(name, **options):
    stderr = StringIO()
    with pytest.raises(CommandError) as error:
        call_command(name, stdout=StringIO(), stderr=stderr, **options)
    record = json.loads(stderr.getvalue().strip().splitlines()[-1])
    return error.value, record


def test_evolve_identity_csv():
    text = run("evolve", n=0, m=0, tau_max=1.0, steps=5)
    lines = text.splitlines()
    assert lines[0] == "tau,re,im,abs,arg"
    assert len(lines) == 6

    frame = pd.read_csv(StringIO(text))
    assert frame["re"].tolist() == pytest.approx([1.0] * 5, rel=1e-14)
    assert frame["im"].abs().max() < 1e-14


def test_evolve_anharmonic_uses_t_column():
    text = run("evolve", model="anharmonic", n=1, m=0, tau_max=1.0, steps=3)
    assert text.splitlines()[0] == "t,re,im,abs,arg"

    frame = pd.read_csv(StringIO(text))
    assert frame.loc[0, "abs"] == pytest.approx(0.8, rel=1e-12)


def test_evolve_closed_matches_series(tmp_path):
    common = {"model": "anharmonic", "n": 2, "m": 1, "tau_max": 3.0, "steps": 31}
    run("evolve", method="series", out=str(tmp_path / "series.csv"), **common)
    run("evolve", method="closed", out=str(tmp_path / "closed.csv"), **common)

    series = pd.read_csv(tmp_path / "series.csv")
    closed = pd.read_csv(tmp_path / "closed.csv")
    assert (series["re"] - closed["re"]).abs().max() < 1e-10
    assert (series["im"] - closed["im"]).abs().max() < 1e-10


def test_evolve_json_format():
    rows = json.loads(run("evolve", n=1, m=1, tau_max=1.0, steps=3, format="json"))
    assert len(rows) == 3
    assert set(rows[0]) == {"tau", "re", "im", "abs", "arg"}


def test_evolve_sidecar_round_trip(tmp_path):
    first = tmp_path / "first.csv"
    run("evolve", q=1.5, n=2, m=1, tau_max=2.0, steps=21, out=str(first))

    sidecar = json.loads((tmp_path / "first.csv.meta.json").read_text())
    assert sidecar["command"] == "evolve"
    assert sidecar["config"]["q"] == 1.5
    assert sidecar["config"]["method"] == "series"
    assert sidecar["diagnostics"]["points"] == 21
    assert sidecar["diagnostics"]["weights"]["kind"] == "q-poisson"
    assert sidecar["diagnostics"]["weights"]["tail_bound"] <= 1e-12
    growth = sidecar["diagnostics"]["band_growth"]
    assert [dim for dim, _ in growth] == [16, 32, 64]
    assert growth[0][1] < growth[1][1] < growth[2][1]

    second = tmp_path / "second.csv"
    run("evolve", config=str(tmp_path / "first.csv.meta.json"), out=str(second))
    assert second.read_bytes() == first.read_bytes()


def test_evolve_flags_override_config_file(tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"n": 0, "m": 0, "steps": 4, "tau_max": 1.0}))
    text = run("evolve", config=str(config), steps=2)
    assert len(text.splitlines()) == 3


def test_evolve_config_errors(tmp_path):
    error, record = runFailing("evolve", model="qosc", method="closed")
    assert error.returncode == 2
    assert record["error"] == "CONFIG_ERROR"

    error, record = runFailing("evolve", tol=-1.0)
    assert error.returncode == 2

    error, record = runFailing("evolve", config=str(tmp_path / "missing.json"))
    assert error.returncode == 2
    assert record["error"] == "CONFIG_ERROR"


def test_evolve_convergence_error():
    error, record = runFailing("evolve", q=0.5, alpha_re=1.5, steps=3)
    assert error.returncode == 2
    assert record["error"] == "CONVERGENCE_ERROR"


def test_verify_closure_passes(tmp_path):
    out = tmp_path / "verify.json"
    run("verify", suite="closure", dim=16, out=str(out))

    report = json.loads(out.read_text())
    assert len(report) == 5
    assert all(item["pass"] for item in report)
    assert set(report[0]) == {"check_id", "params", "max_residual", "tolerance", "pass"}

    sidecar = json.loads((tmp_path / "verify.json.meta.json").read_text())
    assert sidecar["diagnostics"] == {"checks": 5, "failed": []}


def test_verify_unknown_suite():
    error, record = runFailing("verify", suite="unknown")
    assert error.returncode == 2
    assert record["error"] == "CONFIG_ERROR"


def test_map_json():
    record = json.loads(run("map", omega1=10.0, omega2=1.0, n=2))
    assert record["n"] == 2
    assert record["q"] == pytest.approx(7.0 / 6.0, rel=1e-15)
    assert record["omega_q"] == pytest.approx(144.0 / 13.0, rel=1e-14)
    assert record["p_n"] == pytest.approx(6.0 / 7.0, rel=1e-15)
    assert max(record["residuals"].values()) < 1e-12


def test_map_csv_row():
    frame = pd.read_csv(StringIO(run("map", n=1, format="csv")))
    assert len(frame) == 1
    assert frame.loc[0, "q"] == pytest.approx(13.0 / 11.0, rel=1e-14)
    assert "residual_zFactor" in frame.columns


def test_map_large_quantum_approaches_one():
    record = json.loads(run("map", omega1=10.0, omega2=1.0, n=100))
    assert 1.0 < record["q"] < 1.02


def test_map_rejects_zero_anharmonicity():
    error, record = runFailing("map", omega2=0.0)
    assert error.returncode == 2
    assert record["error"] == "DOMAIN_ERROR"


def test_collapse_summary_row(tmp_path):
    out = tmp_path / "collapse.csv"
    run("collapse", q=1.5, pairs="1:0,2:0,3:0", tau_max=5.0, steps=201, dim=16, out=str(out))

    frame = pd.read_csv(out)
    assert list(frame.columns) == ["tau", "n1m0", "n2m0", "n3m0"]
    assert frame["tau"].iloc[-1] == "max_pairwise_deviation"
    assert float(frame["n1m0"].iloc[-1]) < 1e-9

    sidecar = json.loads((tmp_path / "collapse.csv.meta.json").read_text())
    assert sidecar["config"]["pairs"] == ["1:0", "2:0", "3:0"]
    assert sidecar["diagnostics"]["reference_slope"] == 1.0
    assert sidecar["diagnostics"]["max_reference_deviation"] < 1e-9


def test_collapse_rejects_coarse_grid():
    error, record = runFailing("collapse", q=1.5, tau_max=10.0, steps=5, dim=16)
    assert error.returncode == 1
    assert record["error"] == "PHASE_UNWRAP_ERROR"
    assert record["params"]["curves"] == ["n2m0", "n3m0"]


def test_collapse_rejects_malformed_pairs():
    error, _ = runFailing("collapse", pairs="1-0")
    assert error.returncode == 2


def test_sweep_is_deterministic():
    options = {"target": "map", "ratios": "1,10", "ns": "1,2"}
    first = run("sweep", **options)
    second = run("sweep", **options)
    assert first == second

    frame = pd.read_csv(StringIO(first))
    assert frame["point"].drop_duplicates().tolist() == [
        "ratio=1.0;n=1",
        "ratio=1.0;n=2",
        "ratio=10.0;n=1",
        "ratio=10.0;n=2",
    ]
    assert set(frame["metric"]) == {"q", "omega_q", "p_n"}


def test_sweep_records_point_errors():
    frame = pd.read_csv(
        StringIO(run("sweep", target="relation", qs="0.5", xs="1.0,2.0", m=2))
    )
    failed = frame[frame["metric"] == "error"]
    assert failed["point"].tolist() == ["q=0.5;x=2.0"]
    assert failed["error"].tolist() == ["CONVERGENCE_ERROR"]
    assert (frame[frame["metric"] != "error"]["value"] < 1e-10).all()


def test_sweep_config_error():
    error, record = runFailing("sweep", target="unknown")
    assert error.returncode == 2
    assert record["error"] == "CONFIG_ERROR"


def test_evolve_sidecar_state_diagnostics(tmp_path):
    out = tmp_path / "anharmonic.csv"
    run("evolve", model="anharmonic", n=1, m=0, tau_max=1.0, steps=3, out=str(out))
    weights = json.loads((tmp_path / "anharmonic.csv.meta.json").read_text())[
        "diagnostics"
    ]["weights"]
    assert weights["kind"] == "poisson"
    assert weights["mean"] == pytest.approx(0.64, rel=1e-10)
    assert weights["variance"] == pytest.approx(0.64, rel=1e-10)

    out = tmp_path / "bounded.csv"
    run("evolve", q=0.5, n=1, m=0, tau_max=1.0, steps=3, out=str(out))
    growth = json.loads((tmp_path / "bounded.csv.meta.json").read_text())[
        "diagnostics"
    ]["band_growth"]
    assert all(value < 2.0**0.5 for _, value in growth)
