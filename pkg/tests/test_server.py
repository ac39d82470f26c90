"""HTTP service: endpoint contracts, error payloads, and response purity."""

import pytest
from fastapi.testclient import TestClient

from conftest import C1_DSL, C2_DSL, C3_DSL, CAR_CSV
from prefq.server import create_app

CAR_SCHEMA = [{"name": "make", "sort": "str"}, {"name": "year", "sort": "rat"}]


@pytest.fixture
def client():
    return TestClient(create_app())


@pytest.fixture
def seeded(client):
    assert (
        client.post(
            "/relations", json={"name": "car", "schema": CAR_SCHEMA, "csv": CAR_CSV}
        ).status_code
        == 200
    )
    for name, dsl in (("c1", C1_DSL), ("c2", C2_DSL), ("c3", C3_DSL)):
        assert (
            client.post("/preferences", json={"name": name, "dsl": dsl}).status_code
            == 200
        )
    return client


class TestEndpoints:
    def test_winnow_fig1(self, seeded):
        body = seeded.post("/winnow", json={"pref": "c1", "relation": "car"}).json()
        assert body["rows"] == [["VW", "2002"], ["Kia", "1997"]]

    def test_revise_reports_spo(self, seeded):
        body = seeded.post(
            "/revise",
            json={
                "base": "c1",
                "revising": "c2",
                "operator": "union",
                "tc": True,
                "name": "cstar",
            },
        ).json()
        assert body["properties"]["spo"] is True
        assert body["compatibility"]["0"]["compatible"] is True
        rows = seeded.post(
            "/winnow", json={"pref": "cstar", "relation": "car"}
        ).json()["rows"]
        assert rows == [["VW", "2002"]]

    def test_check_wo_false(self, seeded):
        body = seeded.post("/check", json={"pref": "c3", "property": "wo"}).json()
        assert body["holds"] is False

    def test_compat_witness_payload(self, seeded):
        body = seeded.post(
            "/compat", json={"pref": "c1", "base": "c2", "level": 0}
        ).json()
        assert body["compatible"] is True
        assert body["witness"] is None

    def test_update_returns_incremental_winnows(self, seeded):
        seeded.post("/winnow", json={"pref": "c1", "relation": "car"})
        body = seeded.post(
            "/update",
            json={"relation": "car", "insert": [["Kia", "2000"]], "delete": []},
        ).json()
        assert body["version"] == 2
        (w,) = body["winnows"]
        assert w["pref"] == "c1" and w["reused"] is True and w["law"] == "insert"
        assert ["Kia", "2000"] in w["rows"]

    def test_rank(self, seeded):
        body = seeded.post("/rank", json={"pref": "c1", "relation": "car"}).json()
        ranks = {tuple(e["row"]): e["rank"] for e in body["ranks"]}
        assert ranks[("VW", "2002")] == 1 and ranks[("VW", "1997")] == 2

    def test_extend_wo_and_trace(self, client):
        client.post(
            "/relations",
            json={
                "name": "vals",
                "schema": [{"name": "v", "sort": "rat"}],
                "csv": "v\n1\n2\n",
            },
        )
        client.post(
            "/preferences",
            json={"name": "hole", "dsl": "x.v > y.v AND x.v != 0 AND y.v != 0"},
        )
        trace = client.post("/trace", json={"pref": "hole", "expression": "e2"}).json()
        assert trace["stages"][-1]["is_wo"] is True
        ext = client.post("/extend-wo", json={"pref": "hole", "name": "hole_wo"}).json()
        assert ext["properties"]["wo"] is True

    def test_parse_endpoint_flags_type_errors(self, seeded):
        ok = seeded.post("/preferences/parse", json={"dsl": C1_DSL}).json()
        assert ok["ok"] is True
        bad = seeded.post("/preferences/parse", json={"dsl": "x.make > y.make"}).json()
        assert bad["ok"] is False and "order comparator" in bad["error"]

    def test_get_relation_round_trip(self, seeded):
        body = seeded.get("/relations/car").json()
        assert body["schema"] == CAR_SCHEMA
        assert body["rows"][0] == ["VW", "2002"]

    def test_session_save_load(self, seeded, tmp_path):
        target = str(tmp_path / "s.prefq")
        assert seeded.post("/session/save", json={"path": target}).status_code == 200
        fresh = TestClient(create_app())
        assert fresh.post("/session/load", json={"path": target}).status_code == 200
        body = fresh.get("/session").json()
        assert [p["name"] for p in body["preferences"]] == ["c1", "c2", "c3"]


class TestErrors:
    def test_unknown_relation_400(self, client):
        r = client.post("/winnow", json={"pref": "c1", "relation": "nope"})
        assert r.status_code == 400
        assert "unknown" in r.json()["detail"]

    def test_bad_formula_400(self, seeded):
        r = seeded.post("/preferences", json={"name": "bad", "dsl": "x.make >"})
        assert r.status_code == 400

    def test_get_missing_relation(self, client):
        assert client.get("/relations/none").status_code == 400


class TestPurity:
    def test_repeated_get_identical(self, seeded):
        seeded.post("/winnow", json={"pref": "c1", "relation": "car"})
        first = seeded.get("/session").text
        second = seeded.get("/session").text
        assert first == second

    def test_repeated_winnow_identical(self, seeded):
        ra = seeded.post("/winnow", json={"pref": "c1", "relation": "car"}).json()
        rb = seeded.post("/winnow", json={"pref": "c1", "relation": "car"}).json()
        assert ra["rows"] == rb["rows"]
        assert rb["reused"] is True  # second call is a cache hit
