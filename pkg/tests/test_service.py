import json

import pytest
from fastapi.testclient import TestClient

from vidmod import corpus
from vidmod.config import ServiceConfig, load_config
from vidmod.service import create_app
from vidmod.store import ReviewStore

DEVIANT_EVIDENCE = {"frame_times": [0.0], "tags": [], "words": []}


@pytest.fixture
def workdir(tmp_path, taxonomy):
    records = corpus.synthesize_corpus(30, 0.4, taxonomy, seed=77)
    corpus.write_corpus(records, tmp_path / "corpus.jsonl")
    config = {
        "corpus_path": "corpus.jsonl",
        "threshold": 0.5,
        "train": {"epochs": 200, "auto_n": 0},
    }
    (tmp_path / "config.json").write_text(json.dumps(config))
    return tmp_path, records


def make_client(tmp_path):
    return TestClient(create_app(load_config(tmp_path / "config.json")))


def review_body(label, moderator="mod1", evidence=None):
    body = {"label": label, "moderator_id": moderator}
    if evidence is not None:
        body["evidence"] = evidence
    return body


class TestQueue:
    def test_queue_is_exactly_the_deviant_set(self, workdir):
        tmp_path, records = workdir
        client = make_client(tmp_path)
        queue = client.get("/queue").json()
        expected = {r.video_id for r in records if r.ground_truth != "normal"}
        assert {item["video_id"] for item in queue} == expected
        scores = [item["risk_value"] for item in queue]
        assert scores == sorted(scores, reverse=True)

    def test_threshold_one_empties_queue(self, workdir):
        tmp_path, _ = workdir
        client = make_client(tmp_path)
        assert client.get("/queue", params={"threshold": 1.0}).json() == []

    def test_reviewed_videos_leave_queue(self, workdir):
        tmp_path, _ = workdir
        client = make_client(tmp_path)
        first = client.get("/queue").json()[0]["video_id"]
        response = client.post(
            f"/videos/{first}/review",
            json=review_body(corpus.CATEGORIES[0], evidence=DEVIANT_EVIDENCE),
        )
        assert response.status_code == 200
        assert first not in {item["video_id"] for item in client.get("/queue").json()}

    def test_no_corpus_gives_409(self, tmp_path):
        (tmp_path / "config.json").write_text(json.dumps({"corpus_path": "missing.jsonl"}))
        client = make_client(tmp_path)
        assert client.get("/queue").status_code == 409

    def test_queue_ordering_matches_recomputation(self, workdir):
        tmp_path, _ = workdir
        client = make_client(tmp_path)
        engine = client.app.state.engine
        served = [item["video_id"] for item in client.get("/queue").json()]
        scores = engine.scores()
        recomputed = sorted(
            (vid for vid, s in scores.items() if s > 0.5), key=lambda v: (-scores[v], v)
        )
        assert served == recomputed


class TestVideoEndpoints:
    def test_detail_has_metadata_timeline_risk(self, workdir):
        tmp_path, records = workdir
        client = make_client(tmp_path)
        vid = records[0].video_id
        obj = client.get(f"/videos/{vid}").json()
        assert set(obj) == {"metadata", "timeline", "risk"}
        assert obj["metadata"]["video_id"] == vid
        assert obj["timeline"][0]["t0"] == 0.0
        assert obj["timeline"][-1]["t1"] == records[0].duration

    def test_unknown_video_404(self, workdir):
        tmp_path, _ = workdir
        client = make_client(tmp_path)
        assert client.get("/videos/ghost").status_code == 404

    def test_frames_layout_satisfies_partition(self, workdir):
        tmp_path, records = workdir
        client = make_client(tmp_path)
        vid = records[0].video_id
        layout = client.get(f"/videos/{vid}/frames").json()
        frame_ids = sorted(
            f["idx"] for scene in layout["scenes"] for shot in scene["shots"] for f in shot["frames"]
        )
        assert frame_ids == list(range(len(records[0].frames)))
        rows = sorted(scene["row"] for scene in layout["scenes"])
        assert rows == list(range(len(layout["scenes"])))

    def test_audio_layout_empty_for_silent_video(self, tmp_path, taxonomy):
        video = corpus.VideoRecord("quiet", 20.0, (), (), None)
        corpus.write_corpus([video], tmp_path / "corpus.jsonl")
        (tmp_path / "config.json").write_text(json.dumps({"corpus_path": "corpus.jsonl"}))
        client = make_client(tmp_path)
        layout = client.get("/videos/quiet/audio").json()
        assert layout["histogram"] == []

    def test_repeated_get_identical_bytes(self, workdir):
        tmp_path, records = workdir
        client = make_client(tmp_path)
        vid = records[0].video_id
        first = client.get(f"/videos/{vid}/frames").content
        second = client.get(f"/videos/{vid}/frames").content
        assert first == second

    def test_thumb_placeholder_and_404(self, workdir):
        tmp_path, records = workdir
        client = make_client(tmp_path)
        vid = records[0].video_id
        ok = client.get(f"/videos/{vid}/thumb/0")
        assert ok.status_code == 200
        assert ok.headers["content-type"] == "image/png"
        assert ok.content.startswith(b"\x89PNG")
        assert client.get(f"/videos/{vid}/thumb/99999").status_code == 404

    def test_thumb_serves_real_file(self, workdir):
        tmp_path, records = workdir
        (tmp_path / "thumb0.png").write_bytes(b"\x89PNGfake")
        video = records[0]
        frames = (corpus.FrameAnnotation(0.0, {}, thumbnail="thumb0.png"),)
        patched = corpus.VideoRecord(video.video_id, video.duration, frames, video.audio, video.ground_truth)
        corpus.write_corpus([patched], tmp_path / "corpus.jsonl")
        client = make_client(tmp_path)
        got = client.get(f"/videos/{video.video_id}/thumb/0")
        assert got.content == b"\x89PNGfake"


class TestReviews:
    def test_deviant_without_evidence_is_422(self, workdir):
        tmp_path, records = workdir
        client = make_client(tmp_path)
        vid = records[0].video_id
        response = client.post(f"/videos/{vid}/review", json=review_body(corpus.CATEGORIES[1]))
        assert response.status_code == 422

    def test_normal_without_evidence_accepted(self, workdir):
        tmp_path, records = workdir
        client = make_client(tmp_path)
        vid = records[0].video_id
        response = client.post(f"/videos/{vid}/review", json=review_body("normal"))
        assert response.status_code == 200
        assert response.json() == {"accepted": True, "review_count": 1}

    def test_duplicate_review_409(self, workdir):
        tmp_path, records = workdir
        client = make_client(tmp_path)
        vid = records[0].video_id
        assert client.post(f"/videos/{vid}/review", json=review_body("normal")).status_code == 200
        assert client.post(f"/videos/{vid}/review", json=review_body("normal")).status_code == 409
        other = review_body("normal", moderator="mod2")
        assert client.post(f"/videos/{vid}/review", json=other).status_code == 200

    def test_unknown_video_404(self, workdir):
        tmp_path, _ = workdir
        client = make_client(tmp_path)
        assert client.post("/videos/ghost/review", json=review_body("normal")).status_code == 404

    def test_unknown_label_422(self, workdir):
        tmp_path, records = workdir
        client = make_client(tmp_path)
        vid = records[0].video_id
        response = client.post(f"/videos/{vid}/review", json=review_body("spam", evidence=DEVIANT_EVIDENCE))
        assert response.status_code == 422


def submit_mixed_reviews(client, records, n_deviant=2, n_normal=2):
    deviant = [r.video_id for r in records if r.ground_truth != "normal"][:n_deviant]
    normal = [r.video_id for r in records if r.ground_truth == "normal"][:n_normal]
    for vid in deviant:
        client.post(
            f"/videos/{vid}/review",
            json=review_body(corpus.CATEGORIES[0], evidence=DEVIANT_EVIDENCE),
        ).raise_for_status()
    for vid in normal:
        client.post(f"/videos/{vid}/review", json=review_body("normal")).raise_for_status()


class TestTraining:
    def test_single_class_store_409(self, workdir):
        tmp_path, records = workdir
        client = make_client(tmp_path)
        assert client.post("/train").status_code == 409
        client.post(f"/videos/{records[0].video_id}/review", json=review_body("normal"))
        assert client.post("/train").status_code == 409

    def test_train_increments_version_and_switches_stage(self, workdir):
        tmp_path, records = workdir
        client = make_client(tmp_path)
        assert client.get("/model").json() == {"version": 0, "stage": "linear", "training_meta": {}}
        submit_mixed_reviews(client, records)
        response = client.post("/train")
        assert response.status_code == 200
        assert response.json()["version"] == 1
        assert client.get("/model").json()["stage"] == "learned"

    def test_train_twice_same_store_same_weights(self, workdir):
        tmp_path, records = workdir
        client = make_client(tmp_path)
        submit_mixed_reviews(client, records)
        assert client.post("/train").json()["version"] == 1
        assert client.post("/train").json()["version"] == 2
        v1 = json.loads((tmp_path / "models" / "model_v00001.json").read_text())
        v2 = json.loads((tmp_path / "models" / "model_v00002.json").read_text())
        assert v1["weights"] == v2["weights"]

    def test_queue_reflects_new_model(self, workdir):
        tmp_path, records = workdir
        client = make_client(tmp_path)
        submit_mixed_reviews(client, records, n_deviant=6, n_normal=6)
        linear_scores = dict(client.app.state.engine.scores())
        client.post("/train").raise_for_status()
        engine = client.app.state.engine
        assert engine.model.version == 1
        served = [item["video_id"] for item in client.get("/queue").json()]
        scores = engine.scores()
        assert scores != linear_scores
        reviewed = engine.store.reviewed_video_ids()
        recomputed = sorted(
            (v for v, s in scores.items() if s > 0.5 and v not in reviewed),
            key=lambda v: (-scores[v], v),
        )
        assert served == recomputed

    def test_auto_retrain_every_n_reviews(self, tmp_path, taxonomy):
        records = corpus.synthesize_corpus(12, 0.5, taxonomy, seed=5)
        corpus.write_corpus(records, tmp_path / "corpus.jsonl")
        config = {"corpus_path": "corpus.jsonl", "train": {"epochs": 100, "auto_n": 4}}
        (tmp_path / "config.json").write_text(json.dumps(config))
        client = make_client(tmp_path)
        submit_mixed_reviews(client, records, n_deviant=2, n_normal=2)
        assert client.get("/model").json()["version"] == 1


class TestDurability:
    def test_restart_replays_to_identical_state(self, workdir):
        tmp_path, records = workdir
        client = make_client(tmp_path)
        submit_mixed_reviews(client, records, n_deviant=3, n_normal=2)
        client.post("/train").raise_for_status()
        before_queue = client.get("/queue").content
        before_model = client.get("/model").content
        before_reviews = client.app.state.engine.store.reviews

        restarted = make_client(tmp_path)
        assert restarted.get("/queue").content == before_queue
        assert restarted.get("/model").content == before_model
        assert restarted.app.state.engine.store.reviews == before_reviews

    def test_review_log_is_append_only_jsonl(self, workdir):
        tmp_path, records = workdir
        client = make_client(tmp_path)
        submit_mixed_reviews(client, records)
        lines = (tmp_path / "reviews.jsonl").read_text().strip().splitlines()
        assert len(lines) == 4
        timestamps = [json.loads(line)["timestamp"] for line in lines]
        assert timestamps == sorted(timestamps)


class TestMetricsAndMeta:
    def test_metrics_from_ground_truth(self, workdir):
        tmp_path, records = workdir
        client = make_client(tmp_path)
        deviant = [r.video_id for r in records if r.ground_truth != "normal"][:2]
        client.post(f"/videos/{deviant[0]}/review", json=review_body("normal"))
        client.post(
            f"/videos/{deviant[1]}/review",
            json=review_body(corpus.CATEGORIES[0], evidence=DEVIANT_EVIDENCE),
        )
        metrics = client.get("/metrics", params={"hours": 0.5}).json()
        assert metrics["time_efficiency"] == 4.0
        assert metrics["missing_rate"] == 0.5

    def test_meta_exposes_palette_and_taxonomy(self, workdir):
        tmp_path, _ = workdir
        client = make_client(tmp_path)
        meta = client.get("/meta").json()
        assert meta["categories"] == list(corpus.CATEGORIES)
        assert meta["palette"]["neutral"] == "#999999"
        assert meta["threshold"] == 0.5
        assert set(meta["tags"].values()) <= set(corpus.CATEGORIES)


class TestConfig:
    def test_env_override(self, workdir, monkeypatch):
        tmp_path, _ = workdir
        monkeypatch.setenv("VIDMOD_THRESHOLD", "0.9")
        config = load_config(tmp_path / "config.json")
        assert config.threshold == 0.9

    def test_nested_env_override(self, workdir, monkeypatch):
        tmp_path, _ = workdir
        monkeypatch.setenv("VIDMOD_TIMELINE_WINDOW", "25")
        config = load_config(tmp_path / "config.json")
        assert config.timeline.window == 25.0

    def test_paths_resolve_against_config_dir(self, workdir):
        tmp_path, _ = workdir
        config = load_config(tmp_path / "config.json")
        assert config.corpus_path == tmp_path / "corpus.jsonl"
        assert config.review_log == tmp_path / "reviews.jsonl"
