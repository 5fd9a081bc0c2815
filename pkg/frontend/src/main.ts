// Console wiring: queue sidebar on the left, the three coordinated views on
// the right, review form at the bottom. One Store instance is the shared
// time cursor that links every view.

import { ApiClient } from "./api.js";
import { AudioView } from "./audioView.js";
import { clear, el, formatTime } from "./dom.js";
import { FrameView } from "./frameView.js";
import { ReviewForm } from "./reviewForm.js";
import { Store } from "./state.js";
import type { Meta, QueueItem } from "./types.js";
import { VideoView } from "./videoView.js";

export interface Console {
  store: Store;
  videoView: VideoView;
  frameView: FrameView;
  audioView: AudioView;
  reviewForm: ReviewForm;
  loadQueue(): Promise<QueueItem[]>;
  openVideo(videoId: string): Promise<void>;
  root: HTMLElement;
}

export async function createConsole(
  api: ApiClient,
  moderatorId = "console",
): Promise<Console> {
  const meta: Meta = await api.meta();
  const store = new Store();
  const thumbUrl = (videoId: string, index: number) => api.thumbUrl(videoId, index);

  const videoView = new VideoView(store, meta, thumbUrl);
  const frameView = new FrameView(store, meta, thumbUrl);
  const audioView = new AudioView(store, meta);

  const queueList = el("ul", { class: "queue-list" });
  const title = el("h2", { class: "video-title" }, "pick a video");

  async function loadQueue(): Promise<QueueItem[]> {
    const items = await api.queue();
    clear(queueList);
    for (const item of items) {
      const node = el(
        "li",
        { class: "queue-item", "data-video": item.video_id },
        `${item.video_id} · ${item.risk_value.toFixed(2)} · ${formatTime(item.duration)}`,
      );
      node.addEventListener("click", () => void openVideo(item.video_id));
      queueList.append(node);
    }
    return items;
  }

  async function openVideo(videoId: string): Promise<void> {
    const [detail, frames, audio] = await Promise.all([
      api.video(videoId),
      api.frames(videoId),
      api.audio(videoId),
    ]);
    store.openVideo(videoId, detail.metadata.duration);
    title.textContent = `${videoId} · risk ${detail.risk ? detail.risk.risk_value.toFixed(3) : "n/a"}`;
    videoView.render(detail);
    frameView.render(frames, detail.risk);
    audioView.render(audio);
  }

  const reviewForm = new ReviewForm(store, meta, api, moderatorId, () => {
    void loadQueue().then((items) => {
      if (items.length > 0) void openVideo(items[0]!.video_id);
    });
  });

  const root = el(
    "div",
    { class: "console" },
    el("aside", { class: "sidebar" }, el("h2", {}, "review queue"), queueList),
    el(
      "main",
      { class: "workspace" },
      title,
      videoView.root,
      el("div", { class: "detail-views" }, frameView.root, audioView.root),
      reviewForm.root,
    ),
  );

  return { store, videoView, frameView, audioView, reviewForm, loadQueue, openVideo, root };
}

/**
 * Checklist of the console's coordinated interactions: each maps to exactly
 * one handler.
 */
export function interactionChecklist(console_: Console): Record<string, Function> {
  return {
    "locate-high-risk-period": console_.videoView.onTimelineBlockClick.bind(console_.videoView),
    "link-frames-glyph-hover": console_.frameView.onGlyphSectorHover.bind(console_.frameView),
    "link-frames-frame-click": console_.frameView.onFrameClick.bind(console_.frameView),
    "explore-audio-word-click": console_.audioView.onWordClick.bind(console_.audioView),
    "explore-audio-cloud-click": console_.audioView.onCloudClick.bind(console_.audioView),
    "submit-review": console_.reviewForm.submit.bind(console_.reviewForm),
  };
}

declare global {
  interface Window {
    VIDMOD_API_BASE?: string;
  }
}

/** Entry point used by index.html; the API base can be overridden there. */
export async function boot(): Promise<void> {
  const base = window.VIDMOD_API_BASE ?? "http://127.0.0.1:8000";
  const api = new ApiClient(base);
  const ui = await createConsole(api);
  document.body.append(ui.root);
  const items = await ui.loadQueue();
  if (items.length > 0) await ui.openVideo(items[0]!.video_id);
}
