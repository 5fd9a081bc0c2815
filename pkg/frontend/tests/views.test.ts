// View rendering from canned layout JSON, with no service running.

import { beforeEach, describe, expect, it } from "vitest";

import { AudioView } from "../src/audioView.js";
import { FrameView } from "../src/frameView.js";
import { Store } from "../src/state.js";
import { VideoView } from "../src/videoView.js";
import {
  AUDIO_LAYOUT,
  EMPTY_AUDIO_LAYOUT,
  META,
  SCENE_LAYOUT,
  VIDEO_DETAIL,
} from "./fixtures.js";

const thumbUrl = (videoId: string, index: number) => `/thumbs/${videoId}/${index}.png`;

function makeStore(): Store {
  const store = new Store();
  store.openVideo("v00001", VIDEO_DETAIL.metadata.duration);
  return store;
}

describe("VideoView", () => {
  let store: Store;
  let view: VideoView;

  beforeEach(() => {
    store = makeStore();
    view = new VideoView(store, META, thumbUrl);
    view.render(VIDEO_DETAIL);
  });

  it("renders one block per timeline segment with palette colors", () => {
    const blocks = view.root.querySelectorAll(".timeline-block");
    expect(blocks.length).toBe(3);
    expect((blocks[1] as HTMLElement).style.background).toContain("rgb(55, 126, 184)");
  });

  it("renders neutral blocks grey", () => {
    const neutral = view.root.querySelector(".timeline-block.neutral") as HTMLElement;
    expect(neutral.style.background).toContain("rgb(153, 153, 153)");
  });

  it("seeks the playhead to the block start on click", () => {
    const blocks = view.root.querySelectorAll<HTMLElement>(".timeline-block");
    blocks[1]!.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    expect(store.get().playhead).toBe(20.0);
  });

  it("clamps seeks to the video duration", () => {
    store.seek(1e9);
    expect(store.get().playhead).toBe(60.0);
    store.seek(-5);
    expect(store.get().playhead).toBe(0);
  });

  it("disables the player for zero-duration content", () => {
    const empty = {
      ...VIDEO_DETAIL,
      metadata: { ...VIDEO_DETAIL.metadata, duration: 0 },
      timeline: [],
      risk: null,
    };
    view.render(empty);
    expect(view.root.classList.contains("disabled")).toBe(true);
  });
});

describe("FrameView", () => {
  let store: Store;
  let view: FrameView;

  beforeEach(() => {
    store = makeStore();
    view = new FrameView(store, META, thumbUrl);
    view.render(SCENE_LAYOUT, VIDEO_DETAIL.risk);
  });

  it("renders scene rows ordered by risk rank", () => {
    const rows = view.root.querySelectorAll(".scene-row");
    expect(rows.length).toBe(3);
    expect([...rows].map((r) => r.getAttribute("data-row"))).toEqual(["0", "1", "2"]);
  });

  it("marks the representative frame", () => {
    const rep = view.root.querySelector(".frame-cell.representative");
    expect(rep?.getAttribute("data-idx")).toBe("2");
  });

  it("enlarges the frames carrying the hovered glyph tag", () => {
    view.onGlyphSectorHover("pp_tag_00");
    const enlarged = [...view.root.querySelectorAll(".frame-cell.enlarged")];
    expect(enlarged.map((c) => c.getAttribute("data-idx"))).toEqual(["2", "3"]);
    view.onGlyphSectorHover(null);
    expect(view.root.querySelectorAll(".frame-cell.enlarged").length).toBe(0);
  });

  it("seeks the playhead when a frame is clicked", () => {
    const img = view.root.querySelector('.frame-cell[data-idx="4"] img')!;
    img.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    expect(store.get().playhead).toBe(40.0);
  });

  it("re-renders the same glyph data when the style switches", () => {
    const sectorsBefore = [...view.root.querySelectorAll(".glyph-sector")].map((p) =>
      p.getAttribute("data-tag"),
    );
    store.setGlyphStyle("donut");
    const sectorsAfter = [...view.root.querySelectorAll(".glyph-sector")].map((p) =>
      p.getAttribute("data-tag"),
    );
    expect(sectorsAfter).toEqual(sectorsBefore);
  });

  it("toggles frame evidence from the star button", () => {
    const star = view.root.querySelector('.frame-cell[data-idx="2"] .evidence-toggle')!;
    star.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    expect(store.get().evidenceFrames).toEqual([20.0]);
    star.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    expect(store.get().evidenceFrames).toEqual([]);
  });
});

describe("AudioView", () => {
  let store: Store;
  let view: AudioView;

  beforeEach(() => {
    store = makeStore();
    view = new AudioView(store, META);
    view.render(AUDIO_LAYOUT);
  });

  it("renders histogram rows in service order with category colors", () => {
    const rows = view.root.querySelectorAll(".histogram-row");
    expect([...rows].map((r) => r.getAttribute("data-word"))).toEqual([
      "pp_word_00",
      "fa_word_00",
    ]);
  });

  it("highlights a word's storyline when its bar is clicked", () => {
    const row = view.root.querySelector('.histogram-row[data-word="pp_word_00"]')!;
    row.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    const highlighted = view.root.querySelectorAll(".story-line.highlighted");
    expect(highlighted.length).toBe(1);
    expect(highlighted[0]!.getAttribute("data-word")).toBe("pp_word_00");
  });

  it("seeks to the slot start when a word cloud is clicked", () => {
    const cloud = view.root.querySelector('.cloud[data-slot="1"]')!;
    cloud.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    expect(store.get().playhead).toBe(30.0);
    expect(store.get().selectedSlot).toBe(1);
  });

  it("marks the slot under the playhead (the moving window)", () => {
    store.seek(35.0);
    const current = view.root.querySelector(".cloud.current");
    expect(current?.getAttribute("data-slot")).toBe("1");
  });

  it("shows a placeholder for an empty histogram", () => {
    view.render(EMPTY_AUDIO_LAYOUT);
    expect(view.root.querySelector(".histogram .placeholder")).not.toBeNull();
  });

  it("toggles word evidence from the star button", () => {
    const star = view.root.querySelector('.histogram-row[data-word="fa_word_00"] .evidence-toggle')!;
    star.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    expect(store.get().evidenceWords).toEqual(["fa_word_00"]);
  });
});
