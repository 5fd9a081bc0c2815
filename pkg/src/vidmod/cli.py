"""Operator command line: batch wrappers around the library plus `serve`.

Every command is a thin wrapper whose output equals the corresponding
library call. Scalars print as plain text, structures as JSON, and --json
forces JSON everywhere. Exit codes: 0 success, 1 validation error, 2 I/O
error; errors go to stderr as ``vidmod: error[<code>] <message>``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import classifier, risk
from .audiosum import build_audio_layout
from .config import load_config
from .corpus import (
    default_taxonomy,
    load_corpus,
    load_taxonomy,
    synthesize_corpus,
    write_corpus,
)
from .errors import VidmodError
from .framesum import build_scene_layout, scene_layout_to_obj
from .store import load_reviews, snapshot_path
from .timeline import build_timeline, timeline_to_obj

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2


def _taxonomy(args):
    return load_taxonomy(args.taxonomy) if args.taxonomy else default_taxonomy()


def _emit(obj) -> None:
    print(json.dumps(obj, separators=(",", ":"), ensure_ascii=False))


def cmd_synth(args) -> int:
    records = synthesize_corpus(
        num_videos=args.videos,
        deviant_fraction=args.deviant,
        taxonomy=_taxonomy(args),
        seed=args.seed,
    )
    write_corpus(records, args.out)
    deviant = sum(1 for r in records if r.ground_truth != "normal")
    if args.json:
        _emit({"videos": len(records), "deviant": deviant, "path": str(args.out)})
    else:
        print(f"wrote {len(records)} records ({deviant} deviant) to {args.out}")
    return EXIT_OK


def cmd_risk(args) -> int:
    taxonomy = _taxonomy(args)
    records = load_corpus(args.corpus)
    if args.video is not None:
        records = [r for r in records if r.video_id == args.video]
        if not records:
            raise VidmodError(f"unknown video {args.video!r}")
    results = [risk.video_risk(r, taxonomy) for r in records]
    if args.json:
        _emit([{"video_id": r.video_id, "risk_value": r.risk_value} for r in results])
    elif args.video is not None:
        print(f"{results[0].risk_value:.6f}")
    else:
        for r in results:
            print(f"{r.video_id}\t{r.risk_value:.6f}")
    return EXIT_OK


def cmd_filter(args) -> int:
    taxonomy = _taxonomy(args)
    records = load_corpus(args.corpus)
    risks = [risk.video_risk(r, taxonomy) for r in records]
    high, low = risk.filter_high_risk(risks, args.threshold)
    if args.json:
        _emit(
            {
                "high": [{"video_id": r.video_id, "risk_value": r.risk_value} for r in high],
                "low": [{"video_id": r.video_id, "risk_value": r.risk_value} for r in low],
            }
        )
    else:
        for r in high:
            print(r.video_id)
    return EXIT_OK


def cmd_layout(args) -> int:
    taxonomy = _taxonomy(args)
    records = {r.video_id: r for r in load_corpus(args.corpus)}
    video = records.get(args.video)
    if video is None:
        raise VidmodError(f"unknown video {args.video!r}")

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    layouts = {
        "timeline.json": timeline_to_obj(build_timeline(video, taxonomy)),
        "frames.json": scene_layout_to_obj(build_scene_layout(video, taxonomy), taxonomy),
        "audio.json": build_audio_layout(video, taxonomy),
    }
    for name, obj in layouts.items():
        (out / name).write_text(
            json.dumps(obj, separators=(",", ":"), ensure_ascii=False) + "\n",
            encoding="utf-8",
        )
    if args.json:
        _emit({"written": sorted(layouts), "dir": str(out)})
    else:
        print(f"wrote {len(layouts)} layout files to {out}")
    return EXIT_OK


def cmd_train(args) -> int:
    taxonomy = _taxonomy(args)
    records = load_corpus(args.corpus)
    reviews = load_reviews(args.reviews)

    out = Path(args.out)
    base_version = classifier.load_model(out).version if out.is_file() else 0
    model = classifier.retrain(
        reviews,
        records,
        taxonomy,
        classifier.TrainConfig(
            epochs=args.epochs,
            learning_rate=args.lr,
            seed=args.seed,
            hidden_width=args.hidden,
        ),
        base_version=base_version,
    )
    classifier.save_model(model, out)
    _emit(
        {
            "version": model.version,
            "stage": model.stage,
            "final_loss": model.training_meta["final_loss"],
            "train_accuracy": model.training_meta["train_accuracy"],
            "num_reviews": model.training_meta["num_reviews"],
        }
    )
    return EXIT_OK


def cmd_eval(args) -> int:
    reviews = load_reviews(args.reviews)
    truth = json.loads(Path(args.truth).read_text(encoding="utf-8"))
    metrics = risk.moderation_metrics(reviews, truth, args.hours)
    _emit(
        {
            "time_efficiency": metrics.time_efficiency,
            "missing_rate": metrics.missing_rate,
        }
    )
    return EXIT_OK


def cmd_serve(args) -> int:
    from .service import serve

    serve(load_config(args.config), host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vidmod", description="Risk-aware video moderation engine."
    )
    parser.add_argument("--json", action="store_true", help="force JSON output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a seeded synthetic corpus")
    p.add_argument("--videos", type=int, required=True)
    p.add_argument("--deviant", type=float, required=True, help="deviant fraction in [0,1]")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--taxonomy", help="taxonomy JSON (default: built-in)")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("risk", help="per-video risk values")
    p.add_argument("--corpus", required=True)
    p.add_argument("--video", help="single video id")
    p.add_argument("--taxonomy")
    p.set_defaults(func=cmd_risk)

    p = sub.add_parser("filter", help="ids of videos above the risk threshold")
    p.add_argument("--corpus", required=True)
    p.add_argument("--threshold", type=float, required=True)
    p.add_argument("--taxonomy")
    p.set_defaults(func=cmd_filter)

    p = sub.add_parser("layout", help="write the three layout JSON files for a video")
    p.add_argument("--corpus", required=True)
    p.add_argument("--video", required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--taxonomy")
    p.set_defaults(func=cmd_layout)

    p = sub.add_parser("train", help="retrain the filter from a review log")
    p.add_argument("--corpus", required=True)
    p.add_argument("--reviews", required=True, help="review log (JSONL)")
    p.add_argument("--out", required=True, help="model snapshot path")
    p.add_argument("--taxonomy")
    p.add_argument("--epochs", type=int, default=500)
    p.add_argument("--lr", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--hidden", type=int, default=16)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="time efficiency and missing rate of a review log")
    p.add_argument("--reviews", required=True)
    p.add_argument("--truth", required=True, help="JSON map video_id -> label")
    p.add_argument("--hours", type=float, required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("serve", help="run the review service")
    p.add_argument("--config", required=True)
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except VidmodError as exc:
        print(f"vidmod: error[validation] {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"vidmod: error[io] {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
