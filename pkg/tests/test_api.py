import json

from sqlmodel import Session

from app.models import EvalRecord, LogCreate
from app.services import log_service
from app.services.series_service import format_ucr_text


def test_root(client):
    body = client.get("/").json()
    assert body["service"] == "tsaug-bench"


def test_list_methods(client):
    response = client.get("/api/methods/")
    assert response.status_code == 200
    data = response.json()
    assert len(data) == 19
    assert data[0]["name"] == "none"
    assert {"name", "display_name", "category", "branch", "pool"} <= set(data[0])


def test_read_method(client):
    assert client.get("/api/methods/RGWs").json()["category"] == "pattern"
    missing = client.get("/api/methods/gan")
    assert missing.status_code == 404
    assert "Supported methods" in missing.json()["detail"]


def test_describe_upload(client, cbf_train):
    files = {"file": ("CBF_TRAIN.tsv", format_ucr_text(cbf_train), "text/tab-separated-values")}
    response = client.post("/api/datasets/describe", files=files, data={"split": "train"})
    assert response.status_code == 200
    data = response.json()
    assert (data["items"], data["classes"], data["length"]) == (30, 3, 128)
    assert data["class_histogram"] == {"1": 10, "2": 10, "3": 10}
    assert data["catalog"]["name"] == "CBF"
    assert data["catalog_mismatches"] == []


def test_describe_rejects_malformed_upload(client):
    files = {"file": ("Bad_TRAIN.tsv", "1\tabc\t2\n", "text/plain")}
    assert client.post("/api/datasets/describe", files=files).status_code == 400


def test_augment_upload_is_deterministic(client, cbf_train):
    def call():
        files = {"file": ("CBF_TRAIN.tsv", format_ucr_text(cbf_train), "text/plain")}
        data = {"method": "window_warp", "factor": "4", "seed": "42",
                "params": json.dumps({"window_warp.ratio": 0.2})}
        return client.post("/api/augment", files=files, data=data)

    first, second = call(), call()
    assert first.status_code == 200
    body = first.json()
    assert len(body["tsv"].splitlines()) == 120
    assert body["meta"]["seed"] == 42
    assert body["meta"]["params"]["window_warp.ratio"] == 0.2
    assert len(body["runlog"]) == 90
    assert body["tsv"] == second.json()["tsv"]


def test_augment_errors(client, cbf_train):
    text = format_ucr_text(cbf_train)
    unknown = client.post("/api/augment", files={"file": ("CBF_TRAIN.tsv", text, "text/plain")},
                          data={"method": "gan"})
    assert unknown.status_code == 400
    bad = client.post("/api/augment", files={"file": ("CBF_TRAIN.tsv", text, "text/plain")},
                      data={"method": "sfcc", "params": '{"sfcc.strata": 0}'})
    assert bad.status_code == 400
    not_json = client.post("/api/augment", files={"file": ("CBF_TRAIN.tsv", text, "text/plain")},
                           data={"method": "sfcc", "params": "strata=2"})
    assert not_json.status_code == 400


def test_results(client, session: Session):
    session.add(EvalRecord(dataset="CBF", method="none", accuracy=0.9, run_id="r1",
                           classifier="dtw", seed=0, factor=4))
    session.add(EvalRecord(dataset="CBF", method="rgw", accuracy=0.95, run_id="r1",
                           classifier="dtw", seed=0, factor=4))
    session.commit()

    rows = client.get("/api/results/", params={"method": "RGW"}).json()
    assert [r["accuracy"] for r in rows] == [0.95]
    assert len(client.get("/api/results/", params={"run_id": "r1"}).json()) == 2
    first = rows[0]["id"]
    assert client.get(f"/api/results/{first}").json()["method"] == "rgw"
    assert client.get("/api/results/9999").status_code == 404


def test_logs(client, session: Session):
    log_service.create_log(session, LogCreate(level="WARNING", message="copied", run_id="r2"))
    created = client.post("/api/logs/", json={"level": "INFO", "message": "started", "run_id": "r2"})
    assert created.status_code == 201
    assert len(client.get("/api/logs/", params={"run_id": "r2"}).json()) == 2
    warnings = client.get("/api/logs/", params={"run_id": "r2", "level": "warning"}).json()
    assert [w["message"] for w in warnings] == ["copied"]


def test_logs_filter_by_method_and_normalize_level(client):
    client.post("/api/logs/", json={"level": "info", "message": "a", "dataset": "CBF", "method": "rgw"})
    client.post("/api/logs/", json={"level": "INFO", "message": "b", "dataset": "CBF", "method": "none"})
    rows = client.get("/api/logs/", params={"method": "RGW"}).json()
    assert [(r["message"], r["level"]) for r in rows] == [("a", "INFO")]
    assert client.post("/api/logs/", json={"level": "loud", "message": "c"}).status_code == 422
