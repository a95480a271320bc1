import csv
import json

import numpy as np
import pytest

from qphom.cli import main

SINE_TEXT = "0\n1\n0\n-1\n0\n"


@pytest.fixture
def sine_csv(tmp_path):
    path = tmp_path / "sine.csv"
    path.write_text(SINE_TEXT, encoding="utf-8")
    return str(path)


@pytest.fixture
def walk_csv(tmp_path):
    rng = np.random.default_rng(5)
    values = np.cumsum(rng.normal(0, 1, 50))
    path = tmp_path / "walk.csv"
    path.write_text("\n".join(str(v) for v in values), encoding="utf-8")
    return str(path)


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_embed_sine(sine_csv, tmp_path):
    out = tmp_path / "points.csv"
    assert main(["embed", "--input", sine_csv, "--dim", "2", "--tau", "1",
                 "--output", str(out)]) == 0
    rows = read_rows(out)
    assert len(rows) == 4
    assert [len(r) for r in rows] == [2] * 4
    assert [float(v) for v in rows[0]] == [0.0, 1.0]


def test_embed_tau_eight_on_fifty_rows(walk_csv, tmp_path):
    out = tmp_path / "points.csv"
    assert main(["embed", "--input", walk_csv, "--dim", "2", "--tau", "8",
                 "--output", str(out)]) == 0
    assert len(read_rows(out)) == 42


def test_embed_dim_one_reproduces_input(sine_csv, tmp_path):
    out = tmp_path / "points.csv"
    assert main(["embed", "--input", sine_csv, "--dim", "1", "--tau", "1",
                 "--output", str(out)]) == 0
    rows = read_rows(out)
    assert [float(r[0]) for r in rows] == [0.0, 1.0, 0.0, -1.0, 0.0]


def test_embed_missing_file_is_data_error(tmp_path):
    out = tmp_path / "points.csv"
    assert main(["embed", "--input", str(tmp_path / "nope.csv"),
                 "--output", str(out)]) == 3


def test_embed_params_too_large_is_data_error(sine_csv, tmp_path):
    out = tmp_path / "points.csv"
    assert main(["embed", "--input", sine_csv, "--dim", "3", "--tau", "4",
                 "--output", str(out)]) == 3


def test_diagram_periodic_profile(tmp_path):
    out = tmp_path / "diagram.json"
    svg = tmp_path / "diagram.svg"
    tables = tmp_path / "tables.json"
    assert main(["diagram", "--profile", "periodic", "--output", str(out),
                 "--svg", str(svg), "--tables", str(tables)]) == 0
    records = json.loads(out.read_text())
    assert {"dimension": 1, "birth": 1.0, "death": 2.0, "multiplicity": 1} in records
    assert svg.read_text().startswith("<svg")
    payload = json.loads(tables.read_text())
    assert [t["k"] for t in payload] == [0, 1]
    assert len(payload[0]["grid"]) == 25


def test_diagram_mode_both(tmp_path, sine_csv):
    out = tmp_path / "d.json"
    assert main(["diagram", "--input", sine_csv, "--scales", "0:2.4:0.1",
                 "--mode", "both", "--output", str(out)]) == 0
    records = json.loads(out.read_text())
    assert {"dimension": 1, "birth": 1.0, "death": 2.0, "multiplicity": 1} in records


def test_diagram_is_idempotent(tmp_path, sine_csv):
    args = ["diagram", "--input", sine_csv, "--scales", "0:2.4:0.1",
            "--output", str(tmp_path / "d.json"), "--svg", str(tmp_path / "d.svg")]
    assert main(args) == 0
    first = (tmp_path / "d.json").read_bytes(), (tmp_path / "d.svg").read_bytes()
    assert main(args) == 0
    second = (tmp_path / "d.json").read_bytes(), (tmp_path / "d.svg").read_bytes()
    assert first == second


def test_diagram_empty_scales_is_usage_error(sine_csv, tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["diagram", "--input", sine_csv, "--scales", "",
              "--output", str(tmp_path / "d.json")])
    assert exc.value.code == 2


def test_diagram_missing_scales_is_usage_error(sine_csv, tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["diagram", "--input", sine_csv, "--output", str(tmp_path / "d.json")])
    assert exc.value.code == 2


def test_verify_periodic_profile_passes():
    assert main(["verify", "--profile", "periodic"]) == 0


def test_verify_injected_fault_fails(capsys):
    assert main(["verify", "--profile", "periodic", "--inject-fault", "1,10,20"]) == 1
    err = capsys.readouterr().err
    assert "k=1 (10,20)" in err


def test_verify_report_file(tmp_path):
    report = tmp_path / "report.txt"
    assert main(["verify", "--profile", "periodic", "--inject-fault", "0,0,0",
                 "--report", str(report)]) == 1
    assert "quantum=" in report.read_text()


def test_verify_rejects_single_mode():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--profile", "periodic", "--mode", "classical"])
    assert exc.value.code == 2


def test_resources_text_output(sine_csv, capsys):
    assert main(["resources", "--input", sine_csv, "--scales", "0:2.4:0.1",
                 "--dims", "0,1"]) == 0
    out = capsys.readouterr().out
    assert "membership queries:" in out
    assert "bound 6" in out  # triangle queries at dim 2, tau irrelevant


def test_resources_json_delta_scaling(sine_csv, capsys):
    assert main(["resources", "--input", sine_csv, "--scales", "0,1,2",
                 "--delta", "0.01", "--json"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["estimated_qram_cost"] == 100 * body["comparator_calls"]
    assert body["per_dimension"]["1"]["bound_per_query"] == 2


def test_config_file_supplies_defaults(tmp_path, sine_csv):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("scales=0:2.4:0.1\ndims=0,1\nxi=1\n", encoding="utf-8")
    out = tmp_path / "d.json"
    assert main(["diagram", "--input", sine_csv, "--config", str(cfg),
                 "--output", str(out)]) == 0
    assert json.loads(out.read_text())


def test_cli_flag_overrides_config(tmp_path, sine_csv):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("scales=0,99\n", encoding="utf-8")
    out = tmp_path / "d.json"
    assert main(["diagram", "--input", sine_csv, "--config", str(cfg),
                 "--scales", "0:2.4:0.1", "--output", str(out)]) == 0
    records = json.loads(out.read_text())
    assert {"dimension": 1, "birth": 1.0, "death": 2.0, "multiplicity": 1} in records


def test_config_unknown_key_is_data_error(tmp_path, sine_csv):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("wibble=1\n", encoding="utf-8")
    assert main(["diagram", "--input", sine_csv, "--config", str(cfg),
                 "--output", str(tmp_path / "d.json")]) == 3


def test_column_selection(tmp_path):
    path = tmp_path / "two.csv"
    path.write_text("t,v\n0,0\n1,1\n2,0\n3,-1\n4,0\n", encoding="utf-8")
    out = tmp_path / "points.csv"
    assert main(["embed", "--input", str(path), "--column", "v",
                 "--output", str(out)]) == 0
    assert len(read_rows(out)) == 4


def test_server_dispatch_posts_request(monkeypatch, sine_csv, tmp_path):
    import httpx

    captured = {}

    def fake_post(url, json=None, timeout=None):
        captured["url"] = url
        captured["json"] = json
        return httpx.Response(
            200,
            json={"points": [], "count": 4, "dim": 2, "tau": 1,
                  "points": [[0.0, 1.0]]},
            request=httpx.Request("POST", url),
        )

    monkeypatch.setattr(httpx, "post", fake_post)
    out = tmp_path / "points.csv"
    assert main(["embed", "--input", sine_csv, "--server", "http://svc:8000",
                 "--output", str(out)]) == 0
    assert captured["url"] == "http://svc:8000/embed"
    assert captured["json"]["values"] == [0.0, 1.0, 0.0, -1.0, 0.0]
