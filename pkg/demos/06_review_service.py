"""The review service: the whole loop over HTTP, in a temp directory.

Walks the moderator workflow against an in-process instance: read the queue,
fetch the three per-video layouts, submit a review with evidence (and watch
an evidence-less one bounce), retrain, and restart to prove the review log
replays to identical state.

Requires the test extra (httpx) for the in-process client.
"""

import json
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from vidmod import corpus
from vidmod.config import load_config
from vidmod.service import create_app

workdir = Path(tempfile.mkdtemp(prefix="vidmod-demo-"))
taxonomy = corpus.default_taxonomy()
corpus.write_corpus(corpus.synthesize_corpus(30, 0.4, taxonomy, seed=99), workdir / "corpus.jsonl")
(workdir / "config.json").write_text(json.dumps({
    "corpus_path": "corpus.jsonl",
    "threshold": 0.5,
    "train": {"epochs": 200},
}))
print(f"working directory: {workdir}\n")

client = TestClient(create_app(load_config(workdir / "config.json")))

queue = client.get("/queue").json()
print(f"GET /queue -> {len(queue)} high-risk videos; top: "
      + ", ".join(f"{q['video_id']}({q['risk_value']:.2f})" for q in queue[:3]))

target = queue[0]["video_id"]
detail = client.get(f"/videos/{target}").json()
frames = client.get(f"/videos/{target}/frames").json()
audio = client.get(f"/videos/{target}/audio").json()
print(f"GET /videos/{target} -> risk {detail['risk']['risk_value']:.3f}, "
      f"{len(detail['timeline'])} timeline blocks, "
      f"{len(frames['scenes'])} scenes, {len(audio['histogram'])} risk words")

bad = client.post(f"/videos/{target}/review",
                  json={"label": "protected_products", "moderator_id": "alice"})
print(f"POST review without evidence -> {bad.status_code} (evidence is mandatory)")

good = client.post(f"/videos/{target}/review", json={
    "label": "protected_products",
    "moderator_id": "alice",
    "evidence": {"frame_times": [detail['risk']['per_frame'][0][0]], "tags": [], "words": []},
})
print(f"POST review with a frame screenshot -> {good.status_code} {good.json()}")

normal_id = next(v for v, s in client.app.state.engine.scores().items() if s <= 0.5)
client.post(f"/videos/{normal_id}/review", json={"label": "normal", "moderator_id": "alice"})
print(f"POST normal review for {normal_id} -> both classes now present")

trained = client.post("/train").json()
print(f"POST /train -> model v{trained['version']} "
      f"(loss {trained['metrics']['final_loss']:.4f})")

metrics = client.get("/metrics", params={"hours": 0.1}).json()
print(f"GET /metrics -> {metrics['time_efficiency']:.0f} reviews/h, "
      f"missing rate {metrics['missing_rate']:.2f}")

restarted = TestClient(create_app(load_config(workdir / "config.json")))
same_queue = restarted.get("/queue").content == client.get("/queue").content
same_model = restarted.get("/model").content == client.get("/model").content
print(f"\nrestart replay: queue identical={same_queue}, model identical={same_model}")
