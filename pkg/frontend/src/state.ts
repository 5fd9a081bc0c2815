import type { GlyphStyle } from "./types.js";
import { GLYPH_STYLES } from "./types.js";

export interface ViewState {
  videoId: string | null;
  duration: number;
  playhead: number; // seconds, always within [0, duration]
  glyphStyle: GlyphStyle;
  selectedScene: number | null;
  selectedWord: string | null;
  selectedSlot: number | null;
  pendingLabel: string | null;
  evidenceFrames: number[]; // frame times
  evidenceWords: string[];
  evidenceTags: string[];
}

function initialState(): ViewState {
  return {
    videoId: null,
    duration: 0,
    playhead: 0,
    glyphStyle: "rose",
    selectedScene: null,
    selectedWord: null,
    selectedSlot: null,
    pendingLabel: null,
    evidenceFrames: [],
    evidenceWords: [],
    evidenceTags: [],
  };
}

type Listener = (state: ViewState) => void;

/** Single mutable view state with clamped invariants and change notification. */
export class Store {
  private state = initialState();
  private listeners = new Set<Listener>();

  get(): ViewState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  private commit(patch: Partial<ViewState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  openVideo(videoId: string, duration: number): void {
    this.commit({ ...initialState(), videoId, duration, glyphStyle: this.state.glyphStyle });
  }

  seek(time: number): void {
    const playhead = Math.min(Math.max(time, 0), this.state.duration);
    this.commit({ playhead });
  }

  setGlyphStyle(style: GlyphStyle): void {
    if (!GLYPH_STYLES.includes(style)) {
      throw new Error(`unknown glyph style ${style}`);
    }
    this.commit({ glyphStyle: style });
  }

  selectScene(row: number | null): void {
    this.commit({ selectedScene: row });
  }

  selectWord(word: string | null): void {
    this.commit({ selectedWord: word });
  }

  selectSlot(slot: number | null): void {
    this.commit({ selectedSlot: slot });
  }

  setPendingLabel(label: string | null): void {
    this.commit({ pendingLabel: label });
  }

  toggleFrameEvidence(time: number): void {
    const present = this.state.evidenceFrames.includes(time);
    this.commit({
      evidenceFrames: present
        ? this.state.evidenceFrames.filter((t) => t !== time)
        : [...this.state.evidenceFrames, time],
    });
  }

  toggleWordEvidence(word: string): void {
    const present = this.state.evidenceWords.includes(word);
    this.commit({
      evidenceWords: present
        ? this.state.evidenceWords.filter((w) => w !== word)
        : [...this.state.evidenceWords, word],
    });
  }

  addTagEvidence(tag: string): void {
    if (!this.state.evidenceTags.includes(tag)) {
      this.commit({ evidenceTags: [...this.state.evidenceTags, tag] });
    }
  }

  hasEvidence(): boolean {
    return this.state.evidenceFrames.length > 0 || this.state.evidenceWords.length > 0;
  }
}
