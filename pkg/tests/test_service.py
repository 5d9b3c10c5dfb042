import json

import pytest
from fastapi.testclient import TestClient

from itskit import (
    AnalysisConfig,
    REPORT_SCHEMA,
    TimeSeries,
    emit_report,
    generate,
    run_pipeline,
)
from itskit.service import MAX_BODY_BYTES, create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


@pytest.fixture
def payload(unit_break_spec):
    series = generate(unit_break_spec)
    return {
        "values": list(series.values),
        "config": {
            "tet": 31,
            "before": 6,
            "after": 6,
            "start_month": 1,
            "start_year": 2008,
        },
    }


class TestMeta:
    def test_health(self, client):
        resp = client.get("/v1/health")
        assert resp.status_code == 200
        body = resp.json()
        assert body["status"] == "ok"
        assert body["version"] == "1.0.0"
        assert body["schema_version"] == "1.0.0"

    def test_schema_endpoint_serves_report_schema(self, client):
        resp = client.get("/v1/schema")
        assert resp.status_code == 200
        assert resp.json() == json.loads(json.dumps(REPORT_SCHEMA))

    def test_unknown_path_is_404(self, client):
        assert client.get("/v1/nope").status_code == 404


class TestAnalyze:
    def test_response_is_exactly_the_canonical_report(self, client, payload):
        resp = client.post("/v1/analyze", json=payload)
        assert resp.status_code == 200, resp.text
        assert resp.headers["content-type"].startswith("application/json")

        series = TimeSeries(values=payload["values"], start_month=1, start_year=2008)
        config = AnalysisConfig(intervention=31, before=6, after=6)
        expected = emit_report(run_pipeline(series, config), "json")
        assert resp.content == expected.encode()

    def test_repeated_requests_are_byte_identical(self, client, payload):
        first = client.post("/v1/analyze", json=payload)
        second = client.post("/v1/analyze", json=payload)
        assert first.content == second.content

    def test_csv_body(self, client, unit_break_spec):
        from itskit import series_to_csv

        csv_text = series_to_csv(generate(unit_break_spec))
        resp = client.post(
            "/v1/analyze",
            json={
                "csv": csv_text,
                "date_column": "date",
                "config": {"tet": 31, "before": 6, "after": 6},
            },
        )
        assert resp.status_code == 200
        doc = resp.json()
        assert doc["input"]["start"] == "2008-01"
        assert doc["change_point"]["intervention"] == 31

    def test_gls_pass_round_trips(self, client, payload):
        payload["config"]["gls_pass"] = True
        doc = client.post("/v1/analyze", json=payload).json()
        assert doc["gls"]["applicable"] is True
        assert doc["provenance"]["config"]["gls_pass"] is True

    def test_margin_violation_is_400_with_named_rule(self, client, payload):
        payload["config"]["tet"] = 58
        payload["config"]["before"] = 0
        payload["config"]["after"] = 0
        resp = client.post("/v1/analyze", json=payload)
        assert resp.status_code == 400
        body = resp.json()
        assert body["error"] == "validation"
        assert any("margin" in issue and "at least 5" in issue for issue in body["issues"])

    def test_values_and_csv_together_is_400(self, client, payload):
        payload["csv"] = "outcome\n1\n"
        resp = client.post("/v1/analyze", json=payload)
        assert resp.status_code == 400
        assert "exactly one" in resp.json()["issues"][0]

    def test_neither_values_nor_csv_is_400(self, client):
        resp = client.post("/v1/analyze", json={"config": {"tet": 31}})
        assert resp.status_code == 400

    def test_missing_anchor_for_raw_values_is_400(self, client, payload):
        del payload["config"]["start_month"]
        resp = client.post("/v1/analyze", json=payload)
        assert resp.status_code == 400
        assert any("start_month" in issue for issue in resp.json()["issues"])

    def test_malformed_body_is_400_not_422(self, client):
        resp = client.post("/v1/analyze", json={"values": "not-a-list"})
        assert resp.status_code == 400
        body = resp.json()
        assert body["error"] == "validation"
        assert any("config" in issue for issue in body["issues"])

    def test_non_json_body_is_400(self, client):
        resp = client.post(
            "/v1/analyze",
            content=b"plainly not json",
            headers={"content-type": "application/json"},
        )
        assert resp.status_code == 400

    def test_constant_series_is_422(self, client):
        resp = client.post(
            "/v1/analyze",
            json={
                "values": [5.0] * 60,
                "config": {"tet": 31, "start_month": 1, "start_year": 2008},
            },
        )
        assert resp.status_code == 422
        assert resp.json()["error"] == "numerical"

    def test_oversized_body_is_413(self, payload):
        small = TestClient(create_app(max_body_bytes=512))
        resp = small.post("/v1/analyze", json=payload)
        assert resp.status_code == 413
        assert resp.json()["error"] == "payload_too_large"

    def test_default_limit_accepts_normal_payloads(self, client, payload):
        assert len(json.dumps(payload)) < MAX_BODY_BYTES
        assert client.post("/v1/analyze", json=payload).status_code == 200


class TestCors:
    def test_configured_origin_is_allowed(self, payload):
        app = create_app(cors_origins=["http://localhost:5173"])
        client = TestClient(app)
        resp = client.get("/v1/health", headers={"origin": "http://localhost:5173"})
        assert resp.headers.get("access-control-allow-origin") == "http://localhost:5173"

    def test_env_variable_configures_origins(self, monkeypatch):
        monkeypatch.setenv("ITSKIT_CORS_ORIGINS", "http://a.example, http://b.example")
        client = TestClient(create_app())
        resp = client.get("/v1/health", headers={"origin": "http://b.example"})
        assert resp.headers.get("access-control-allow-origin") == "http://b.example"

    def test_no_origins_by_default(self, monkeypatch):
        monkeypatch.delenv("ITSKIT_CORS_ORIGINS", raising=False)
        client = TestClient(create_app())
        resp = client.get("/v1/health", headers={"origin": "http://evil.example"})
        assert "access-control-allow-origin" not in resp.headers
