"""The audio view: risk-word histogram plus a storyline of word co-occurrence.

Each risk word becomes a line through the time slots where it is spoken; the
layout reorders words inside every slot to minimize line crossings and
wiggles, then compresses tracks so no vertical space is wasted.
"""

from vidmod import audiosum, corpus
from vidmod.audiosum import AudiosumConfig

taxonomy = corpus.default_taxonomy()
records = corpus.synthesize_corpus(10, 1.0, taxonomy, seed=57)
video = max(records, key=lambda r: len(r.audio))

histogram = audiosum.build_histogram(video.audio, taxonomy)
print(f"video {video.video_id}: {len(video.audio)} clips, "
      f"{len(histogram.entries)} distinct risk words\n")

print("histogram (count desc):")
for entry in histogram.entries[:8]:
    print(f"  {entry.word:14s} {'#' * entry.count} {entry.count}  ({entry.category})")

slots = audiosum.slotize(video.audio, slot_duration=10.0, duration=video.duration,
                         words=taxonomy.words.keys())
layout = audiosum.layout_storyline(slots, AudiosumConfig().wiggle_weight)
print(f"\nstoryline over {len(slots)} slots of 10s "
      f"(crossings={layout.crossings}, wiggles={layout.wiggles}):")

words = sorted({w for slot in slots for w in slot.active})
max_track = max((t for tracks in layout.tracks for t in tracks.values()), default=0)
for track in range(max_track + 1):
    cells = []
    for tracks in layout.tracks:
        owner = next((w for w, t in tracks.items() if t == track), None)
        cells.append((owner or "")[:12].ljust(12))
    print(f"  track {track}: " + " | ".join(cells))

print("\nword clouds per slot (count-weighted):")
for slot in layout.slots:
    if slot.cloud:
        cloud = ", ".join(f"{w}x{c}" for w, c in slot.cloud)
        print(f"  [{slot.t0:5.1f}s - {slot.t1:5.1f}s] {cloud}")
