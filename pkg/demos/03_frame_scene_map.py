"""The frame view: project frames to 1D, split into shots, align into scenes.

Frames are placed on a vertical axis by visual similarity (time runs along
the horizontal axis), consecutive frames with small projected gaps form
shots, and shots with close centroids align into scenes. Each scene carries
a summed per-tag glyph, a representative frame, and a risk-ranked row.
"""

import numpy as np

from vidmod import corpus, framesum

taxonomy = corpus.default_taxonomy()
records = corpus.synthesize_corpus(10, 1.0, taxonomy, seed=31)
video = records[0]

layout = framesum.build_scene_layout(video, taxonomy)
print(f"video {video.video_id}: {len(layout.frames)} frames -> "
      f"{len(layout.shots)} shots -> {len(layout.scenes)} scenes\n")

# a coarse scatter of the projection: rows are y-bands, columns are time
rows = 12
cols = min(72, len(layout.frames))
grid = [[" "] * cols for _ in range(rows)]
for frame in layout.frames:
    col = int(frame.frame_index / len(layout.frames) * cols)
    row = min(rows - 1, int((1.0 - frame.y) * rows))
    grid[row][min(col, cols - 1)] = "o"
print("projection (vertical = similarity axis, horizontal = time):")
for line in grid:
    print("  |" + "".join(line) + "|")

print("\nscenes by risk rank:")
for scene in layout.scenes:
    member_shots = [layout.shots[i] for i in scene.shot_ids]
    spans = ", ".join(f"{s.frame_range[0]}-{s.frame_range[1]}" for s in member_shots)
    top = np.argsort(scene.glyph)[::-1][:3]
    top_tags = ", ".join(
        f"{taxonomy.tag_ids[i]}={scene.glyph[i]:.1f}" for i in top if scene.glyph[i] > 0
    )
    print(f"  row {scene.row}: risk {scene.scene_risk:.2f}, "
          f"representative frame {scene.representative_frame}, shots [{spans}]")
    print(f"        glyph top tags: {top_tags}")
