// Frame view: one row per scene (highest risk on top), each row holding the
// scene's circular risk glyph and its frame thumbnails. Hovering a glyph
// sector enlarges the frames whose dominant tag matches the sector; clicking
// a frame seeks the playhead; the star toggles the frame as review evidence.

import { clear, el, formatTime, svgEl } from "./dom.js";
import { glyphSectors } from "./glyph.js";
import { Store } from "./state.js";
import type { Meta, RiskBreakdown, SceneLayoutData } from "./types.js";

const GLYPH_SIZE = 96;

export class FrameView {
  readonly root: HTMLElement;
  private layout: SceneLayoutData | null = null;
  private risk: RiskBreakdown | null = null;
  private body: HTMLElement;
  private styleBar: HTMLElement;

  constructor(
    private store: Store,
    private meta: Meta,
    private thumbUrl: (videoId: string, frameIndex: number) => string,
  ) {
    this.styleBar = el("div", { class: "glyph-style-bar" });
    for (const style of ["rose", "radial_bar", "donut"] as const) {
      const input = el("input", { type: "radio", name: "glyph-style", value: style });
      (input as HTMLInputElement).checked = store.get().glyphStyle === style;
      input.addEventListener("change", () => store.setGlyphStyle(style));
      this.styleBar.append(el("label", { class: "glyph-style" }, input, style));
    }
    this.body = el("div", { class: "scene-rows" });
    this.root = el("div", { class: "frame-view" }, this.styleBar, this.body);
    store.subscribe(() => this.syncStyle());
  }

  render(layout: SceneLayoutData, risk: RiskBreakdown | null): void {
    this.layout = layout;
    this.risk = risk;
    this.draw();
  }

  private syncStyle(): void {
    const style = this.store.get().glyphStyle;
    for (const input of this.styleBar.querySelectorAll("input")) {
      (input as HTMLInputElement).checked = input.value === style;
    }
    if (this.layout) this.draw();
  }

  /** Dominant tag of a frame (from the per-frame risk breakdown). */
  private frameTag(frameIndex: number): string | null {
    const entry = this.risk?.per_frame[frameIndex];
    return entry && entry[1] > 0 ? entry[2] : null;
  }

  /** Linking frames with risk tags: enlarge the frames carrying the tag. */
  onGlyphSectorHover(tag: string | null): void {
    for (const cell of this.body.querySelectorAll(".frame-cell")) {
      const match = tag !== null && cell.getAttribute("data-tag") === tag;
      cell.classList.toggle("enlarged", match);
    }
  }

  /** Linking frames with risk tags: clicking a frame updates the video. */
  onFrameClick(time: number): void {
    this.store.seek(time);
  }

  private draw(): void {
    if (!this.layout) return;
    clear(this.body);
    const state = this.store.get();
    const videoId = state.videoId ?? "";
    const scenes = [...this.layout.scenes].sort((a, b) => a.row - b.row);
    if (scenes.length === 0) {
      this.body.append(el("span", { class: "placeholder" }, "no frames"));
      return;
    }

    for (const scene of scenes) {
      const glyph = this.buildGlyph(scene.glyph);
      const frames = el("div", { class: "scene-frames" });
      for (const shot of scene.shots) {
        for (const point of shot.frames) {
          const tag = this.frameTag(point.idx);
          const cell = el(
            "div",
            { class: "frame-cell", "data-idx": String(point.idx), "data-tag": tag ?? "" },
          );
          const img = el("img", {
            src: this.thumbUrl(videoId, point.idx),
            alt: `frame ${point.idx}`,
            title: `frame ${point.idx} @ ${formatTime(point.t)}`,
          });
          img.addEventListener("click", () => this.onFrameClick(point.t));
          const star = el("button", { class: "evidence-toggle", title: "mark as evidence" }, "☆");
          star.addEventListener("click", (event) => {
            event.stopPropagation();
            this.store.toggleFrameEvidence(point.t);
            star.textContent = this.store.get().evidenceFrames.includes(point.t) ? "★" : "☆";
          });
          if (point.idx === scene.rep_frame) cell.classList.add("representative");
          cell.append(img, star);
          frames.append(cell);
        }
      }
      const label = el(
        "div",
        { class: "scene-label" },
        `row ${scene.row} · risk ${scene.scene_risk.toFixed(2)}`,
      );
      const row = el("div", { class: "scene-row", "data-row": String(scene.row) }, glyph, frames, label);
      row.addEventListener("click", () => this.store.selectScene(scene.row));
      this.body.append(row);
    }
  }

  private buildGlyph(glyph: Record<string, number>): SVGSVGElement {
    const half = GLYPH_SIZE / 2;
    const svg = svgEl("svg", {
      class: "scene-glyph",
      width: String(GLYPH_SIZE),
      height: String(GLYPH_SIZE),
      viewBox: `${-half} ${-half} ${GLYPH_SIZE} ${GLYPH_SIZE}`,
    });
    svg.append(svgEl("circle", { r: "13", class: "glyph-hub", fill: "#eee" }));
    const sectors = glyphSectors(glyph, this.store.get().glyphStyle, half - 4, 14);
    for (const sector of sectors) {
      const color = this.meta.palette[this.meta.tags[sector.tag] ?? ""] ?? "#999999";
      const path = svgEl("path", {
        d: sector.path,
        fill: color,
        class: "glyph-sector",
        "data-tag": sector.tag,
      });
      path.append(svgEl("title", {}, `${sector.tag}: ${sector.value.toFixed(2)}`));
      path.addEventListener("mouseenter", () => this.onGlyphSectorHover(sector.tag));
      path.addEventListener("mouseleave", () => this.onGlyphSectorHover(null));
      path.addEventListener("click", () => this.store.addTagEvidence(sector.tag));
      svg.append(path);
    }
    return svg;
  }
}
