import csv
import io
import json
import math

import numpy as np
import pytest

from lgbound import exact_qho_correlator, three_term_correlator
from lgbound.cli import RunConfig, build_parser, main


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def read_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    header, body = rows[0], rows[1:]
    return header, body


def test_correlator_columns_and_values(capsys):
    code, out, _ = run_cli(
        ["correlator", "--system", "qho", "--state", "n=1", "--tau-count", "9"], capsys)
    assert code == 0
    header, body = read_csv(out)
    assert header == ["tau", "C", "C_classical", "q(+,+)"]
    assert len(body) == 9
    taus = np.array([float(r[0]) for r in body])
    cs = np.array([float(r[1]) for r in body])
    assert np.allclose(cs, exact_qho_correlator(1, taus), atol=1e-12)
    assert float(body[0][1]) == 1.0  # tau = 0 row


def test_correlator_three_term(capsys):
    code, out, _ = run_cli(
        ["correlator", "--system", "qho", "--state", "n=1",
         "--approx", "three-term", "--tau-count", "8"], capsys)
    assert code == 0
    _, body = read_csv(out)
    taus = np.array([float(r[0]) for r in body])
    cs = np.array([float(r[1]) for r in body])
    assert np.allclose(cs, three_term_correlator(taus), atol=1e-12)


def test_correlator_csv_digits(capsys):
    code, out, _ = run_cli(
        ["correlator", "--system", "qho", "--state", "n=0", "--tau-count", "3"], capsys)
    _, body = read_csv(out)
    assert body[1][0] == f"{math.pi:.15g}"


def test_lg_ground_state_no_flags(capsys):
    code, out, _ = run_cli(
        ["lg", "--system", "qho", "--state", "n=0", "--tau-count", "65",
         "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"config", "records", "summary"}
    assert doc["summary"]["lg2_violated"] is False
    assert doc["summary"]["lg3_violated"] is False
    assert doc["summary"]["lg4_violated"] is False
    assert doc["summary"]["regime"] == "I"


def test_lg_first_excited_summary(capsys):
    code, out, _ = run_cli(
        ["lg", "--system", "qho", "--state", "n=1", "--tau-count", "1025",
         "--format", "json"], capsys)
    doc = json.loads(out)
    assert doc["summary"]["min_lg3"] == pytest.approx(-0.365, abs=0.01)
    assert doc["summary"]["max_lg4"] == pytest.approx(2.615, abs=0.01)
    rec = doc["records"][0]
    for col in ("tau", "L1", "L4", "lg2_12_pp", "lg2_13_mm", "lg4_m1p", "lg4_m4n",
                "lg2_viol", "lg3_viol", "lg4_viol"):
        assert col in rec


def test_lg_superposition_state(capsys):
    code, out, _ = run_cli(
        ["lg", "--system", "qho", "--state", "superposition", "--theta", "1.4",
         "--phi", str(math.pi), "--tau-count", "513", "--format", "json"], capsys)
    doc = json.loads(out)
    assert doc["summary"]["regime"] == "III"


def test_morse_lg_commands_agree(capsys):
    code1, out1, _ = run_cli(
        ["lg", "--system", "morse", "--lambda", "50", "--state", "n=1",
         "--tau-count", "257", "--format", "json"], capsys)
    code2, out2, _ = run_cli(
        ["morse-lg", "--lambda", "50", "--state", "n=1",
         "--tau-count", "257", "--format", "json"], capsys)
    assert code1 == code2 == 0
    d1, d2 = json.loads(out1), json.loads(out2)
    assert d1["summary"]["min_lg3"] == pytest.approx(d2["summary"]["min_lg3"], abs=1e-12)
    assert d1["summary"]["min_lg3"] == pytest.approx(-0.35, abs=0.02)


def test_scan_region_summary(capsys):
    code, out, _ = run_cli(
        ["scan-region", "--tau", "2.77", "--c-count", "81", "--d-count", "81",
         "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["summary"]["min_q_pp"] <= -0.02


def test_scan_eigenstates(capsys):
    code, out, _ = run_cli(
        ["scan-eigenstates", "--max-n", "6", "--format", "json"], capsys)
    doc = json.loads(out)
    fractions = {r["n"]: r["luders_fraction"] for r in doc["records"]}
    assert fractions[1] > fractions[0]
    assert fractions[1] > fractions[2]


def test_parity_command(capsys):
    code, out, _ = run_cli(["parity", "--format", "json"], capsys)
    doc = json.loads(out)
    assert doc["summary"]["argmin_q_over_sigma"] == pytest.approx(
        math.sqrt(2 / math.pi), abs=1e-4)
    assert doc["summary"]["min_lg2"] == pytest.approx(-0.3024, abs=1e-3)


def test_config_file_layering(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"system": "qho", "state": "n=1", "tau_count": 5}))
    code, out, _ = run_cli(["correlator", "--config", str(cfg)], capsys)
    assert code == 0
    assert len(read_csv(out)[1]) == 5
    # command line wins over the file
    code, out, _ = run_cli(
        ["correlator", "--config", str(cfg), "--tau-count", "7"], capsys)
    assert len(read_csv(out)[1]) == 7


def test_config_round_trip():
    cfg = RunConfig(command="correlator", system="qho", state="n=2", tau_count=17,
                    format="json", theta=0.3)
    doc = json.loads(json.dumps(cfg.to_dict()))
    again = RunConfig.resolve("correlator", doc, {})
    assert again == cfg


def test_byte_identical_output(tmp_path, capsys):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (out1, out2):
        code = main(["correlator", "--system", "qho", "--state", "n=3",
                     "--tau-count", "33", "--output", str(path)])
        assert code == 0
    assert out1.read_bytes() == out2.read_bytes()
    assert b"\r\n" in out1.read_bytes()  # RFC-4180 line endings


def test_exit_code_on_config_errors(capsys, tmp_path):
    assert run_cli(["correlator", "--state", "n=x"], capsys)[0] == 2
    assert run_cli(["correlator", "--system", "morse", "--state", "n=1"], capsys)[0] == 2
    assert run_cli(["lg", "--system", "morse", "--lambda", "50",
                    "--state", "superposition", "--theta", "1.0"], capsys)[0] == 2
    assert run_cli(["correlator", "--system", "qho", "--state", "superposition"],
                   capsys)[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"no_such_key": 1}))
    assert run_cli(["parity", "--config", str(bad)], capsys)[0] == 2
    bad.write_text("[]")
    assert run_cli(["parity", "--config", str(bad)], capsys)[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_exit_code_on_unmet_truncation(capsys):
    code, _, err = run_cli(
        ["lg", "--system", "morse", "--lambda", "50", "--state", "n=1",
         "--truncation", "1e-5", "--tau-count", "17"], capsys)
    assert code == 3
    assert "truncation" in err


def test_threads_env_fallback(monkeypatch, capsys):
    monkeypatch.setenv("LGBOUND_THREADS", "2")
    code, out, _ = run_cli(
        ["scan-eigenstates", "--max-n", "4", "--format", "json"], capsys)
    assert code == 0
    monkeypatch.setenv("LGBOUND_THREADS", "junk")
    assert run_cli(["scan-eigenstates", "--max-n", "4"], capsys)[0] == 2


def test_figure_rendering(tmp_path, capsys):
    fig = tmp_path / "corr.png"
    code, _, _ = run_cli(
        ["correlator", "--system", "qho", "--state", "n=0", "--tau-count", "33",
         "--output", str(tmp_path / "c.csv"), "--figure", str(fig)], capsys)
    assert code == 0
    assert fig.stat().st_size > 0
    fig2 = tmp_path / "lg.png"
    code, _, _ = run_cli(
        ["lg", "--system", "qho", "--state", "n=1", "--tau-count", "65",
         "--output", str(tmp_path / "lg.csv"), "--figure", str(fig2)], capsys)
    assert code == 0 and fig2.stat().st_size > 0
    fig3 = tmp_path / "parity.pdf"
    code, _, _ = run_cli(
        ["parity", "--output", str(tmp_path / "p.csv"), "--figure", str(fig3)], capsys)
    assert code == 0 and fig3.stat().st_size > 0
    fig4 = tmp_path / "region.png"
    code, _, _ = run_cli(
        ["scan-region", "--c-count", "21", "--d-count", "21",
         "--output", str(tmp_path / "r.csv"), "--figure", str(fig4)], capsys)
    assert code == 0 and fig4.stat().st_size > 0


def test_scan_smoothing_command(capsys):
    code, out, _ = run_cli(
        ["scan-smoothing", "--a-min", "1e-3", "--a-max", "1.0", "--a-count", "4",
         "--tau-count", "257", "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["records"][0]["min_lg3"] == pytest.approx(-0.366, abs=2e-3)
    assert doc["records"][-1]["min_lg3"] >= -1e-3


def test_classicalization_command(capsys):
    code, out, _ = run_cli(["classicalization", "--max-n", "3", "--format", "json"],
                           capsys)
    assert code == 0
    doc = json.loads(out)
    assert [r["n"] for r in doc["records"]] == [0, 1, 2, 3]
    assert doc["records"][0]["delta"] > doc["records"][2]["delta"]


def test_scan_superposition_command(capsys, tmp_path):
    fig = tmp_path / "map.png"
    code, out, _ = run_cli(
        ["scan-superposition", "--theta-count", "13", "--phi-count", "7",
         "--tau-count", "128", "--format", "json", "--figure", str(fig)], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["summary"]["regimes_present"] == ["I", "II", "III", "IV"]
    assert fig.stat().st_size > 0


def test_lg_series_backed_state(capsys):
    # states beyond the closed-form table route through the series
    code, out, _ = run_cli(
        ["lg", "--system", "qho", "--state", "n=12", "--tau-count", "129",
         "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["summary"]["min_lg3"] < 0.0  # weak violation persists at n=12
    assert doc["summary"]["min_lg2"] >= -1e-9


def test_parser_registers_all_commands():
    parser = build_parser()
    sub = next(a for a in parser._actions if a.dest == "command")
    assert set(sub.choices) == {
        "correlator", "lg", "scan-superposition", "scan-eigenstates", "scan-region",
        "scan-smoothing", "classicalization", "parity", "morse-lg",
    }
