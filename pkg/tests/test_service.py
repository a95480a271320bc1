import math

import numpy as np
import pytest
from fastapi.testclient import TestClient

from qphom.service.app import app

from _support import random_series

client = TestClient(app, raise_server_exceptions=False)

SINE = [0.0, 1.0, 0.0, -1.0, 0.0]
GRID_24 = [round(0.1 * i, 10) for i in range(25)]


def test_health():
    resp = client.get("/health")
    assert resp.status_code == 200
    assert resp.json()["status"] == "ok"


def test_embed_sine():
    resp = client.post("/embed", json={"values": SINE, "dim": 2, "tau": 1})
    assert resp.status_code == 200
    body = resp.json()
    assert body["count"] == 4
    assert body["points"] == [[0.0, 1.0], [1.0, 0.0], [0.0, -1.0], [-1.0, 0.0]]


def test_embed_fifty_samples_tau_eight():
    values = np.random.default_rng(0).normal(size=50).tolist()
    resp = client.post("/embed", json={"values": values, "dim": 2, "tau": 8})
    assert resp.status_code == 200
    assert resp.json()["count"] == 42


def test_embed_rejects_bad_dim():
    resp = client.post("/embed", json={"values": SINE, "dim": 0, "tau": 1})
    assert resp.status_code == 422


def test_embed_rejects_too_short_series():
    resp = client.post("/embed", json={"values": [1.0, 2.0], "dim": 2, "tau": 5})
    assert resp.status_code == 400
    assert "no embedded points" in resp.json()["detail"]


def _diagram_request(**overrides):
    req = {
        "values": SINE,
        "dim": 2,
        "tau": 1,
        "scales": GRID_24,
        "dims": [0, 1],
        "xi": 1,
        "mode": "quantum-sim",
    }
    req.update(overrides)
    return req


def test_diagram_sine():
    resp = client.post("/diagram", json=_diagram_request(include_svg=True))
    assert resp.status_code == 200
    body = resp.json()
    assert {
        "dimension": 1, "birth": 1.0, "death": 2.0, "multiplicity": 1
    } in body["points"]
    assert {
        "dimension": 0, "birth": 0.0, "death": "inf", "multiplicity": 1
    } in body["points"]
    assert len(body["tables"]) == 2
    assert body["tables"][0]["rows"][0][0] == 4  # beta_0 at the origin cell
    assert body["tables"][0]["rows"][1][0] is None  # below-diagonal padding
    assert body["resources"]["membership_calls"] > 0
    assert body["svg"].startswith("<svg")


def test_diagram_mode_both_agrees():
    resp = client.post("/diagram", json=_diagram_request(mode="both"))
    assert resp.status_code == 200


def test_diagram_classical_mode_matches():
    quantum = client.post("/diagram", json=_diagram_request()).json()
    classical = client.post("/diagram", json=_diagram_request(mode="classical")).json()
    assert quantum["points"] == classical["points"]
    assert quantum["tables"] == classical["tables"]
    # the classical route never touches the oracle
    assert classical["resources"]["membership_calls"] == 0


def test_diagram_rejects_bad_grid():
    resp = client.post("/diagram", json=_diagram_request(scales=[0.5, 0.5]))
    assert resp.status_code == 400


def test_diagram_rejects_non_finite_values():
    # standard JSON cannot even carry NaN; the handler still guards against
    # non-finite values arriving through the in-process client path
    from qphom import DataError
    from qphom.service import handlers, schemas

    req = schemas.DiagramRequest(**_diagram_request(values=[0.0, math.nan, 1.0]))
    with pytest.raises(DataError, match="sample 2"):
        handlers.run_diagram(req)


def test_verify_clean():
    resp = client.post("/verify", json=_diagram_request())
    assert resp.status_code == 200
    body = resp.json()
    assert body["match"] is True
    assert body["discrepancies"] == []


def test_verify_injected_fault():
    resp = client.post("/verify", json={**_diagram_request(), "inject_fault": [1, 10, 20]})
    assert resp.status_code == 200
    body = resp.json()
    assert body["match"] is False
    assert len(body["discrepancies"]) == 1
    d = body["discrepancies"][0]
    assert (d["k"], d["i"], d["j"]) == (1, 10, 20)
    assert d["quantum"] == d["classical"] + 1


def test_verify_fault_outside_table():
    resp = client.post("/verify", json={**_diagram_request(), "inject_fault": [1, 30, 2]})
    assert resp.status_code == 400


def test_verify_random_instances():
    for idx in (11, 42):
        values = [float(v) for v in random_series(idx).values]
        resp = client.post(
            "/verify",
            json=_diagram_request(values=values, scales=[0.0, 0.2, 0.5, 0.8, 1.05]),
        )
        assert resp.status_code == 200
        assert resp.json()["match"] is True


def test_diagram_without_tables():
    resp = client.post("/diagram", json=_diagram_request(include_tables=False))
    assert resp.status_code == 200
    body = resp.json()
    assert body["tables"] == []
    assert body["svg"] is None
    assert len(body["points"]) == 3


def test_negligible_oracle_noise_changes_nothing():
    # random values keep every distance far from the grid scales, so a
    # tiny perturbation cannot flip any comparison
    values = [float(v) for v in random_series(8).values]
    base = _diagram_request(values=values, scales=[0.0, 0.2, 0.5, 0.8, 1.05])
    clean = client.post("/diagram", json=base).json()
    noisy = client.post("/diagram", json={**base, "oracle_noise": 1e-12, "seed": 3}).json()
    assert clean["points"] == noisy["points"]


def test_noise_at_exact_thresholds_reports_closure_break():
    # the sine cloud has distances exactly on grid scales; noise then flips
    # comparisons inconsistently between queries and the build must say so
    resp = client.post("/diagram", json=_diagram_request(oracle_noise=1e-12, seed=3))
    assert resp.status_code == 400
    assert "non-closed" in resp.json()["detail"]


def test_resources_report():
    resp = client.post("/resources", json=_diagram_request(delta=0.01))
    assert resp.status_code == 200
    body = resp.json()
    assert body["membership_calls"] == 25 * (4 + 6 + 4)  # every candidate, every scale
    assert body["comparator_calls"] > 0
    assert body["qram_reads"] == 2 * body["comparator_calls"]
    assert body["estimated_qram_cost"] == 100 * body["comparator_calls"]
    per_dim = body["per_dimension"]
    assert per_dim["1"]["bound_per_query"] == 2
    assert per_dim["2"]["bound_per_query"] == 6
    assert per_dim["2"]["max_calls_per_query"] <= 6
