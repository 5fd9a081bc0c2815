"""Risk scoring end to end: synthesize a corpus, score it, filter the queue.

Every video is reduced to one risk value: each frame is represented by its
highest aggregated tag score, each audio clip by its highest word rate, and
the video's risk is the mean of those maxima. Videos above the threshold
form the review queue.
"""

from vidmod import corpus, risk

taxonomy = corpus.default_taxonomy()
print(f"taxonomy: {len(taxonomy.tags)} tags + {len(taxonomy.words)} words "
      f"across {len(taxonomy.categories)} categories\n")

records = corpus.synthesize_corpus(num_videos=20, deviant_fraction=0.3, taxonomy=taxonomy, seed=7)
print(f"synthesized {len(records)} videos "
      f"({sum(1 for r in records if r.ground_truth != 'normal')} deviant by construction)\n")

# anatomy of one risk value
video = next(r for r in records if r.ground_truth != "normal")
summary = risk.video_risk(video, taxonomy)
print(f"video {video.video_id} (truth: {video.ground_truth})")
print(f"  {len(video.frames)} frames, {len(video.audio)} audio clips")
worst_frame = max(summary.per_frame, key=lambda e: e[1])
print(f"  riskiest frame: t={worst_frame[0]:.0f}s score={worst_frame[1]:.3f} tag={worst_frame[2]}")
if summary.per_audio:
    worst_clip = max(summary.per_audio, key=lambda e: e[1])
    print(f"  riskiest clip:  t={worst_clip[0]:.0f}s rate={worst_clip[1]:.3f} word={worst_clip[2]}")
print(f"  risk value = mean of all {len(summary.per_frame) + len(summary.per_audio)} maxima "
      f"= {summary.risk_value:.4f}\n")

# threshold filter
risks = [risk.video_risk(r, taxonomy) for r in records]
high, low = risk.filter_high_risk(risks, threshold=0.5)
print(f"threshold 0.5 -> {len(high)} queued for review, {len(low)} auto-passed")
print(f"{'video':10s} {'risk':>7s}  truth")
for item in sorted(high, key=lambda r: -r.risk_value):
    truth = next(r.ground_truth for r in records if r.video_id == item.video_id)
    print(f"{item.video_id:10s} {item.risk_value:7.4f}  {truth}")
