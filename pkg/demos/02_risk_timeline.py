"""The segmented risk timeline: one colored block per dominant-category period.

Each fixed window takes the max score per category over the frames and clips
it touches; windows whose best score clears the floor get that category,
the rest stay neutral, and same-category neighbours merge into blocks.
"""

from vidmod import corpus, timeline
from vidmod.timeline import TimelineConfig

GLYPH = {
    "false_advertising": "F",
    "protected_products": "P",
    "inappropriate_business": "B",
    "sensitive_content": "S",
    "neutral": ".",
}

taxonomy = corpus.default_taxonomy()
records = corpus.synthesize_corpus(12, 0.5, taxonomy, seed=23)

config = TimelineConfig(window=5.0, floor=0.3)
print(f"window {config.window:.0f}s, floor {config.floor}\n")

for video in records[:6]:
    segments = timeline.build_timeline(video, taxonomy, config)
    # one character per ~2 seconds of video
    bar = ""
    for seg in segments:
        width = max(1, round((seg.t1 - seg.t0) / 2))
        bar += GLYPH[seg.category] * width
    print(f"{video.video_id} ({video.ground_truth:>22s}) |{bar}|")
    for seg in segments:
        if seg.category != "neutral":
            print(f"    [{seg.t0:6.1f}s - {seg.t1:6.1f}s] {seg.category} "
                  f"(intensity {seg.intensity:.2f})")
print("\nlegend: F=false_advertising P=protected_products "
      "B=inappropriate_business S=sensitive_content .=neutral")
