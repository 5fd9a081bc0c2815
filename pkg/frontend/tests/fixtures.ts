// Canned service responses (shape-identical to live /meta, /videos/{id},
// /videos/{id}/frames and /videos/{id}/audio payloads) so every view can
// render with no service running.

import type {
  AudioLayoutData,
  Meta,
  SceneLayoutData,
  VideoDetail,
} from "../src/types.js";

export const META: Meta = {
  categories: [
    "false_advertising",
    "protected_products",
    "inappropriate_business",
    "sensitive_content",
  ],
  tags: {
    fa_tag_00: "false_advertising",
    pp_tag_00: "protected_products",
    ib_tag_00: "inappropriate_business",
    sc_tag_00: "sensitive_content",
  },
  words: {
    fa_word_00: "false_advertising",
    pp_word_00: "protected_products",
  },
  palette: {
    false_advertising: "#e41a1c",
    protected_products: "#377eb8",
    inappropriate_business: "#4daf4a",
    sensitive_content: "#984ea3",
    neutral: "#999999",
  },
  threshold: 0.5,
};

export const VIDEO_DETAIL: VideoDetail = {
  metadata: {
    video_id: "v00001",
    duration: 60.0,
    frames: 6,
    audio_clips: 2,
    ground_truth: "protected_products",
  },
  timeline: [
    { t0: 0.0, t1: 20.0, category: "neutral", intensity: 0.1 },
    { t0: 20.0, t1: 40.0, category: "protected_products", intensity: 0.9 },
    { t0: 40.0, t1: 60.0, category: "false_advertising", intensity: 0.6 },
  ],
  risk: {
    risk_value: 0.62,
    per_frame: [
      [0.0, 0.1, "fa_tag_00"],
      [10.0, 0.0, "fa_tag_00"],
      [20.0, 0.9, "pp_tag_00"],
      [30.0, 0.85, "pp_tag_00"],
      [40.0, 0.6, "fa_tag_00"],
      [50.0, 0.55, "fa_tag_00"],
    ],
    per_audio: [
      [0.0, 0.4, "pp_word_00"],
      [30.0, 0.7, "pp_word_00"],
    ],
  },
};

export const SCENE_LAYOUT: SceneLayoutData = {
  scenes: [
    {
      row: 0,
      shots: [
        {
          frames: [
            { idx: 2, t: 20.0, y: 0.8 },
            { idx: 3, t: 30.0, y: 0.82 },
          ],
          centroid: 0.81,
        },
      ],
      glyph: { pp_tag_00: 1.75 },
      rep_frame: 2,
      scene_risk: 0.9,
    },
    {
      row: 1,
      shots: [
        {
          frames: [
            { idx: 4, t: 40.0, y: 0.4 },
            { idx: 5, t: 50.0, y: 0.42 },
          ],
          centroid: 0.41,
        },
      ],
      glyph: { fa_tag_00: 1.15 },
      rep_frame: 4,
      scene_risk: 0.6,
    },
    {
      row: 2,
      shots: [
        {
          frames: [
            { idx: 0, t: 0.0, y: 0.1 },
            { idx: 1, t: 10.0, y: 0.12 },
          ],
          centroid: 0.11,
        },
      ],
      glyph: { fa_tag_00: 0.1 },
      rep_frame: 0,
      scene_risk: 0.1,
    },
  ],
};

export const AUDIO_LAYOUT: AudioLayoutData = {
  histogram: [
    { word: "pp_word_00", category: "protected_products", count: 14 },
    { word: "fa_word_00", category: "false_advertising", count: 5 },
  ],
  slots: [
    { t0: 0.0, t1: 30.0, cloud: [["pp_word_00", 8], ["fa_word_00", 5]] },
    { t0: 30.0, t1: 60.0, cloud: [["pp_word_00", 6]] },
  ],
  lines: [
    { word: "pp_word_00", points: [[0, 0], [1, 0]] },
    { word: "fa_word_00", points: [[0, 1]] },
  ],
  crossings: 0,
  wiggles: 0,
};

export const EMPTY_AUDIO_LAYOUT: AudioLayoutData = {
  histogram: [],
  slots: [{ t0: 0.0, t1: 30.0, cloud: [] }],
  lines: [],
  crossings: 0,
  wiggles: 0,
};
