// Audio view: risk-word histogram, storyline lines over time slots, and one
// word cloud per slot. Clicking a word or histogram bar highlights that
// word's storyline; clicking a cloud seeks the playhead to the slot start.

import { clear, el, svgEl } from "./dom.js";
import { Store } from "./state.js";
import type { AudioLayoutData, Meta } from "./types.js";

const TRACK_HEIGHT = 18;
const SLOT_WIDTH = 56;

export class AudioView {
  readonly root: HTMLElement;
  private layout: AudioLayoutData | null = null;
  private histogram: HTMLElement;
  private storyline: HTMLElement;
  private clouds: HTMLElement;

  constructor(
    private store: Store,
    private meta: Meta,
  ) {
    this.histogram = el("div", { class: "histogram" });
    this.storyline = el("div", { class: "storyline" });
    this.clouds = el("div", { class: "clouds" });
    this.root = el("div", { class: "audio-view" }, this.histogram, this.storyline, this.clouds);
    store.subscribe(() => this.syncSelection());
  }

  render(layout: AudioLayoutData): void {
    this.layout = layout;
    this.drawHistogram();
    this.drawStoryline();
    this.drawClouds();
    this.syncSelection();
  }

  /** Exploring audio context: select a word to enlarge its line. */
  onWordClick(word: string): void {
    const current = this.store.get().selectedWord;
    this.store.selectWord(current === word ? null : word);
  }

  /** Exploring audio context: a cloud names the period to review further. */
  onCloudClick(slotIndex: number): void {
    const slot = this.layout?.slots[slotIndex];
    if (!slot) return;
    this.store.selectSlot(slotIndex);
    this.store.seek(slot.t0);
  }

  private drawHistogram(): void {
    clear(this.histogram);
    const entries = this.layout?.histogram ?? [];
    if (entries.length === 0) {
      this.histogram.append(el("span", { class: "placeholder" }, "no risk words detected"));
      return;
    }
    const max = entries[0]!.count;
    for (const entry of entries) {
      const bar = el("div", {
        class: "histogram-fill",
        style: `width:${(entry.count / max) * 100}%;background:${
          this.meta.palette[entry.category] ?? "#999"
        }`,
      });
      const row = el(
        "div",
        { class: "histogram-row", "data-word": entry.word, title: `${entry.count} mentions` },
        el("span", { class: "histogram-word" }, entry.word),
        el("div", { class: "histogram-bar" }, bar),
        el("span", { class: "histogram-count" }, String(entry.count)),
      );
      const star = el("button", { class: "evidence-toggle", title: "mark as evidence" }, "☆");
      star.addEventListener("click", (event) => {
        event.stopPropagation();
        this.store.toggleWordEvidence(entry.word);
        star.textContent = this.store.get().evidenceWords.includes(entry.word) ? "★" : "☆";
      });
      row.append(star);
      row.addEventListener("click", () => this.onWordClick(entry.word));
      this.histogram.append(row);
    }
  }

  private drawStoryline(): void {
    clear(this.storyline);
    const layout = this.layout;
    if (!layout || layout.lines.length === 0) return;
    const maxTrack = Math.max(
      0,
      ...layout.lines.flatMap((line) => line.points.map(([, track]) => track)),
    );
    const width = layout.slots.length * SLOT_WIDTH;
    const height = (maxTrack + 1) * TRACK_HEIGHT + 8;
    const svg = svgEl("svg", {
      class: "storyline-svg",
      width: String(width),
      height: String(height),
      viewBox: `0 0 ${width} ${height}`,
    });
    for (let i = 0; i < layout.slots.length; i++) {
      svg.append(
        svgEl("line", {
          x1: String(i * SLOT_WIDTH),
          y1: "0",
          x2: String(i * SLOT_WIDTH),
          y2: String(height),
          class: "slot-grid",
          stroke: "#eee",
        }),
      );
    }
    for (const line of layout.lines) {
      const color = this.meta.palette[this.meta.words[line.word] ?? ""] ?? "#999";
      // split into runs of consecutive slots so gaps stay visually open
      let run: [number, number][] = [];
      const flush = () => {
        if (run.length === 0) return;
        const points = run
          .map(([slot, track]) => `${slot * SLOT_WIDTH + SLOT_WIDTH / 2},${track * TRACK_HEIGHT + TRACK_HEIGHT / 2 + 4}`)
          .join(" ");
        const node = svgEl("polyline", {
          points,
          fill: "none",
          stroke: color,
          class: "story-line",
          "data-word": line.word,
        });
        node.append(svgEl("title", {}, line.word));
        node.addEventListener("click", () => this.onWordClick(line.word));
        svg.append(node);
        run = [];
      };
      for (const [slot, track] of line.points) {
        const prev = run[run.length - 1];
        if (prev && slot !== prev[0] + 1) flush();
        run.push([slot, track]);
      }
      flush();
    }
    this.storyline.append(svg);
  }

  private drawClouds(): void {
    clear(this.clouds);
    const layout = this.layout;
    if (!layout) return;
    for (let i = 0; i < layout.slots.length; i++) {
      const slot = layout.slots[i]!;
      const cloud = el("div", { class: "cloud", "data-slot": String(i), "data-t0": String(slot.t0) });
      const maxCount = Math.max(1, ...slot.cloud.map(([, count]) => count));
      for (const [word, count] of slot.cloud.slice(0, 6)) {
        const size = 10 + (count / maxCount) * 10;
        cloud.append(el("span", { style: `font-size:${size}px` }, word));
      }
      cloud.addEventListener("click", () => this.onCloudClick(i));
      this.clouds.append(cloud);
    }
  }

  private syncSelection(): void {
    const state = this.store.get();
    for (const node of this.storyline.querySelectorAll(".story-line")) {
      node.classList.toggle(
        "highlighted",
        state.selectedWord !== null && node.getAttribute("data-word") === state.selectedWord,
      );
    }
    for (const node of this.histogram.querySelectorAll(".histogram-row")) {
      node.classList.toggle(
        "selected",
        state.selectedWord !== null && node.getAttribute("data-word") === state.selectedWord,
      );
    }
    // the moving window: highlight the slot the playhead sits in
    for (const node of this.clouds.querySelectorAll(".cloud")) {
      const index = Number(node.getAttribute("data-slot"));
      const slot = this.layout?.slots[index];
      const inside =
        slot !== undefined && state.playhead >= slot.t0 && state.playhead < slot.t1;
      node.classList.toggle("current", inside);
    }
  }
}
