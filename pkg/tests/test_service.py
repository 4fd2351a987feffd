import json
import threading

import pytest
from fastapi.testclient import TestClient

from fuzzydx import EngineConfig
from fuzzydx.service import SessionStore, create_app, session_from_doc, session_to_doc

from conftest import GOLDEN, GOLDEN_RANKS


@pytest.fixture()
def client(chest_kb):
    with TestClient(create_app(chest_kb)) as c:
        yield c


GOLDEN_STEPS = [
    ("area", "chest"),
    ("symptoms", ["cough", "fever", "chest_pain", "wheezing", "short_breath"]),
    ("level:cough", "non-productive"),
    ("level:fever", "low"),
    ("level:chest_pain", "always"),
    ("level:wheezing", "while breathing in"),
    ("level:short_breath", "yes"),
    ("history:asthma_family_history", "yes"),
    ("history:asthma_allergy_history", "yes"),
]


def drive_golden_session(client):
    created = client.post("/api/v1/sessions")
    assert created.status_code == 201
    sid = created.json()["session_id"]
    envelope = created.json()
    for prompt_id, selection in GOLDEN_STEPS:
        reply = client.post(
            f"/api/v1/sessions/{sid}/answers",
            json={"prompt_id": prompt_id, "selection": selection},
        )
        assert reply.status_code == 200, reply.text
        envelope = reply.json()
    return sid, envelope


class TestAreas:
    def test_lists_sample_area(self, client):
        reply = client.get("/api/v1/areas")
        assert reply.status_code == 200
        assert reply.json() == [{"area_id": "chest", "display_name": "Chest"}]

    def test_preserves_kb_order(self, chest_doc_copy):
        extra = dict(chest_doc_copy["areas"][0])
        chest_doc_copy["areas"] = [
            {**extra, "area_id": "zz", "display_name": "ZZ"},
            {**extra, "area_id": "aa", "display_name": "AA"},
            chest_doc_copy["areas"][0],
        ]
        from fuzzydx import load_kb

        with TestClient(create_app(load_kb(chest_doc_copy))) as c:
            ids = [a["area_id"] for a in c.get("/api/v1/areas").json()]
        assert ids == ["zz", "aa", "chest"]

    def test_wrong_method(self, client):
        assert client.post("/api/v1/areas").status_code == 405


class TestCreateSession:
    def test_initial_envelope(self, client):
        reply = client.post("/api/v1/sessions")
        assert reply.status_code == 201
        body = reply.json()
        assert body["phase"] == "AREA_SELECTION"
        assert len(body["prompts"]) == 1
        assert body["prompts"][0]["kind"] == "AREA"
        assert body["prompts"][0]["options"] == [
            {"option_id": "chest", "label": "Chest"}]
        assert "results_url" not in body

    def test_distinct_ids(self, client):
        first = client.post("/api/v1/sessions").json()["session_id"]
        second = client.post("/api/v1/sessions").json()["session_id"]
        assert first != second

    def test_accepts_empty_object_body(self, client):
        assert client.post("/api/v1/sessions", json={}).status_code == 201

    def test_malformed_body(self, client):
        reply = client.post(
            "/api/v1/sessions",
            content=b"{nope",
            headers={"content-type": "application/json"},
        )
        assert reply.status_code == 400
        assert reply.json()["code"] == "BAD_REQUEST"

    def test_non_object_body(self, client):
        reply = client.post("/api/v1/sessions", json=[1, 2])
        assert reply.status_code == 400
        assert reply.json()["code"] == "BAD_REQUEST"


class TestSubmitAnswer:
    def test_valid_area_answer(self, client):
        sid = client.post("/api/v1/sessions").json()["session_id"]
        reply = client.post(
            f"/api/v1/sessions/{sid}/answers",
            json={"prompt_id": "area", "selection": "chest"},
        )
        assert reply.status_code == 200
        assert reply.json()["phase"] == "SYMPTOM_SELECTION"

    def test_unknown_session(self, client):
        reply = client.post(
            "/api/v1/sessions/missing/answers",
            json={"prompt_id": "area", "selection": "chest"},
        )
        assert reply.status_code == 404
        assert reply.json()["code"] == "NOT_FOUND"

    def test_stale_prompt(self, client):
        sid = client.post("/api/v1/sessions").json()["session_id"]
        reply = client.post(
            f"/api/v1/sessions/{sid}/answers",
            json={"prompt_id": "symptoms", "selection": ["cough"]},
        )
        assert reply.status_code == 409
        assert reply.json()["code"] == "STALE_PROMPT"

    def test_invalid_option(self, client):
        sid = client.post("/api/v1/sessions").json()["session_id"]
        reply = client.post(
            f"/api/v1/sessions/{sid}/answers",
            json={"prompt_id": "area", "selection": "abdomen"},
        )
        assert reply.status_code == 422
        assert reply.json()["code"] == "INVALID_OPTION"

    def test_submit_to_complete_session(self, client):
        sid, _ = drive_golden_session(client)
        reply = client.post(
            f"/api/v1/sessions/{sid}/answers",
            json={"prompt_id": "area", "selection": "chest"},
        )
        assert reply.status_code == 409
        assert reply.json()["code"] == "SESSION_COMPLETE"

    def test_missing_fields(self, client):
        sid = client.post("/api/v1/sessions").json()["session_id"]
        reply = client.post(f"/api/v1/sessions/{sid}/answers", json={"selection": "x"})
        assert reply.status_code == 400
        reply = client.post(f"/api/v1/sessions/{sid}/answers", json={"prompt_id": "area"})
        assert reply.status_code == 400

    def test_golden_flow_completes(self, client):
        _, envelope = drive_golden_session(client)
        assert envelope["phase"] == "COMPLETE"
        assert envelope["prompts"] == []
        assert envelope["results_url"].endswith("/results")


class TestResults:
    def test_golden_numbers_serialized_to_three_decimals(self, client):
        sid, _ = drive_golden_session(client)
        reply = client.get(f"/api/v1/sessions/{sid}/results")
        assert reply.status_code == 200
        results = reply.json()["results"]
        assert [r["disease_id"] for r in results] == GOLDEN_RANKS
        assert [r["rank"] for r in results] == [1, 2, 3]
        for r in results:
            expected = GOLDEN[r["disease_id"]]
            assert abs(r["final_probability"] - expected) <= 1e-3 + 1e-9
            # serialized with exactly three decimals
            assert round(r["final_probability"], 3) == r["final_probability"]
        by_id = {r["disease_id"]: r for r in results}
        assert by_id["asthma"]["label"] == "very likely"
        assert by_id["asthma"]["confidence"] == 70.0
        assert by_id["asthma"]["display_name"] == "Asthma"

    def test_results_before_complete(self, client):
        sid = client.post("/api/v1/sessions").json()["session_id"]
        reply = client.get(f"/api/v1/sessions/{sid}/results")
        assert reply.status_code == 409
        assert reply.json()["code"] == "SESSION_COMPLETE"

    def test_unknown_session(self, client):
        assert client.get("/api/v1/sessions/missing/results").status_code == 404

    def test_results_recomputed_from_answers(self, chest_kb):
        # dropping the cached results must not change what the API serves
        app = create_app(chest_kb)
        with TestClient(app) as client:
            sid, _ = drive_golden_session(client)
            first = client.get(f"/api/v1/sessions/{sid}/results").json()
            session = app.state.store.get(sid)
            session.results = None
            second = client.get(f"/api/v1/sessions/{sid}/results").json()
        assert first == second


class TestSessionEnvelope:
    def test_mid_session_rehydration(self, client):
        sid = client.post("/api/v1/sessions").json()["session_id"]
        client.post(f"/api/v1/sessions/{sid}/answers",
                    json={"prompt_id": "area", "selection": "chest"})
        client.post(f"/api/v1/sessions/{sid}/answers",
                    json={"prompt_id": "symptoms", "selection": ["cough"]})
        reply = client.get(f"/api/v1/sessions/{sid}")
        assert reply.status_code == 200
        body = reply.json()
        assert body["phase"] == "LEVEL_QUESTIONS"
        assert body["area_id"] == "chest"
        assert body["answers"]["selected_symptom_ids"] == ["cough"]
        assert [p["prompt_id"] for p in body["prompts"]] == ["level:cough"]

    def test_unknown_session(self, client):
        assert client.get("/api/v1/sessions/missing").status_code == 404


class TestJournal:
    def test_replay_restores_sessions(self, chest_kb, tmp_path):
        journal = tmp_path / "sessions.journal"
        store = SessionStore(str(journal))
        with TestClient(create_app(chest_kb, store=store)) as client:
            sid, _ = drive_golden_session(client)
            partial_sid = client.post("/api/v1/sessions").json()["session_id"]
            original = client.get(f"/api/v1/sessions/{sid}/results").json()
        store.close()

        revived = SessionStore(str(journal))
        assert set(revived.session_ids()) == {sid, partial_sid}
        with TestClient(create_app(chest_kb, store=revived)) as client:
            replayed = client.get(f"/api/v1/sessions/{sid}/results").json()
            assert replayed == original
            assert client.get(f"/api/v1/sessions/{partial_sid}").json()["phase"] \
                == "AREA_SELECTION"
        revived.close()

    def test_replay_is_exact_snapshot(self, chest_kb, tmp_path):
        journal = tmp_path / "sessions.journal"
        store = SessionStore(str(journal))
        with TestClient(create_app(chest_kb, store=store)) as client:
            sid, _ = drive_golden_session(client)
        before = session_to_doc(store.get(sid))
        store.close()

        revived = SessionStore(str(journal))
        assert session_to_doc(revived.get(sid)) == before
        revived.close()

    def test_snapshot_roundtrip(self, chest_kb):
        store = SessionStore()
        app = create_app(chest_kb, store=store)
        with TestClient(app) as client:
            sid, _ = drive_golden_session(client)
        doc = session_to_doc(store.get(sid))
        assert session_to_doc(session_from_doc(json.loads(json.dumps(doc)))) == doc


class TestConcurrency:
    def test_one_winner_per_prompt(self, chest_kb):
        app = create_app(chest_kb)
        with TestClient(app) as client:
            sid = client.post("/api/v1/sessions").json()["session_id"]

        statuses = []
        lock = threading.Lock()

        def fire():
            with TestClient(app) as c:
                reply = c.post(
                    f"/api/v1/sessions/{sid}/answers",
                    json={"prompt_id": "area", "selection": "chest"},
                )
            with lock:
                statuses.append(reply.status_code)

        threads = [threading.Thread(target=fire) for _ in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()

        assert statuses.count(200) == 1
        assert statuses.count(409) == 7
        assert app.state.store.get(sid).phase.value == "SYMPTOM_SELECTION"

    def test_independent_sessions_in_parallel(self, chest_kb):
        app = create_app(chest_kb)
        outcomes = []
        lock = threading.Lock()

        def full_run():
            with TestClient(app) as client:
                sid, envelope = drive_golden_session(client)
                results = client.get(f"/api/v1/sessions/{sid}/results").json()
            with lock:
                outcomes.append((envelope["phase"], tuple(
                    (r["disease_id"], r["final_probability"])
                    for r in results["results"])))

        threads = [threading.Thread(target=full_run) for _ in range(6)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()

        assert len(set(outcomes)) == 1
        assert outcomes[0][0] == "COMPLETE"
