// Wire types for the review service JSON API.

export interface QueueItem {
  video_id: string;
  risk_value: number;
  duration: number;
}

export interface TimelineBlock {
  t0: number;
  t1: number;
  category: string; // a category id or "neutral"
  intensity: number;
}

export interface VideoMetadata {
  video_id: string;
  duration: number;
  frames: number;
  audio_clips: number;
  ground_truth: string | null;
}

/** Per-frame entries are [time, max tag score, argmax tag]; audio likewise. */
export interface RiskBreakdown {
  risk_value: number;
  per_frame: [number, number, string][];
  per_audio: [number, number, string][];
}

export interface VideoDetail {
  metadata: VideoMetadata;
  timeline: TimelineBlock[];
  risk: RiskBreakdown | null;
}

export interface FramePoint {
  idx: number;
  t: number;
  y: number;
}

export interface ShotData {
  frames: FramePoint[];
  centroid: number;
}

export interface SceneData {
  row: number;
  shots: ShotData[];
  glyph: Record<string, number>;
  rep_frame: number;
  scene_risk: number;
}

export interface SceneLayoutData {
  scenes: SceneData[];
}

export interface HistogramEntry {
  word: string;
  category: string;
  count: number;
}

export interface SlotData {
  t0: number;
  t1: number;
  cloud: [string, number][];
}

export interface StoryLine {
  word: string;
  points: [number, number][]; // [slot index, track]
}

export interface AudioLayoutData {
  histogram: HistogramEntry[];
  slots: SlotData[];
  lines: StoryLine[];
  crossings: number;
  wiggles: number;
}

export interface Meta {
  categories: string[];
  tags: Record<string, string>; // tag id -> category id
  words: Record<string, string>;
  palette: Record<string, string>; // category id (and "neutral") -> css color
  threshold: number;
}

export interface ReviewResult {
  accepted: boolean;
  review_count: number;
}

export type GlyphStyle = "rose" | "radial_bar" | "donut";

export const GLYPH_STYLES: GlyphStyle[] = ["rose", "radial_bar", "donut"];

export const NORMAL_LABEL = "normal";
