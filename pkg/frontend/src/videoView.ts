// Video view: a player surface with the segmented risk timeline under it.
// Clicking a timeline block seeks the playhead to the block start; block
// colors come from the service palette. Synthetic corpora have no media
// files, so the "player" frame shows the thumbnail nearest the playhead.

import { clear, el, formatTime } from "./dom.js";
import { Store } from "./state.js";
import type { Meta, VideoDetail } from "./types.js";

export class VideoView {
  readonly root: HTMLElement;
  private detail: VideoDetail | null = null;
  private frame: HTMLImageElement;
  private clock: HTMLElement;
  private strip: HTMLElement;

  constructor(
    private store: Store,
    private meta: Meta,
    private thumbUrl: (videoId: string, frameIndex: number) => string,
  ) {
    this.frame = el("img", { class: "player-frame", alt: "current frame" });
    this.clock = el("span", { class: "player-clock" }, "00:00");
    this.strip = el("div", { class: "timeline-strip" });
    this.root = el(
      "div",
      { class: "video-view" },
      el("div", { class: "player" }, this.frame, this.clock),
      this.strip,
    );
    store.subscribe(() => this.sync());
  }

  render(detail: VideoDetail): void {
    this.detail = detail;
    clear(this.strip);
    const duration = detail.metadata.duration;
    this.root.classList.toggle("disabled", duration <= 0);
    if (duration <= 0) {
      this.strip.append(el("span", { class: "placeholder" }, "no playable content"));
      return;
    }
    for (const block of detail.timeline) {
      const width = ((block.t1 - block.t0) / duration) * 100;
      const color = this.meta.palette[block.category] ?? "#999999";
      const node = el("div", {
        class: `timeline-block${block.category === "neutral" ? " neutral" : ""}`,
        style: `width:${width}%;background:${color}`,
        title: `${block.category} ${formatTime(block.t0)}-${formatTime(block.t1)} (${block.intensity.toFixed(2)})`,
        "data-t0": String(block.t0),
        "data-category": block.category,
      });
      node.addEventListener("click", () => this.onTimelineBlockClick(block.t0));
      this.strip.append(node);
    }
    this.sync();
  }

  /** Locating high-risk periods: jump the player to the block start. */
  onTimelineBlockClick(t0: number): void {
    this.store.seek(t0);
  }

  private sync(): void {
    const state = this.store.get();
    this.clock.textContent = formatTime(state.playhead);
    if (!this.detail || !state.videoId || this.detail.risk === null) return;
    const frames = this.detail.risk.per_frame;
    if (frames.length === 0) return;
    let nearest = 0;
    for (let i = 0; i < frames.length; i++) {
      const entry = frames[i]!;
      if (Math.abs(entry[0] - state.playhead) < Math.abs(frames[nearest]![0] - state.playhead)) {
        nearest = i;
      }
    }
    this.frame.src = this.thumbUrl(state.videoId, nearest);
  }
}
