// Circular risk-glyph geometry. One scene glyph is a per-tag score vector;
// the three encodings draw the same vector and differ only in what carries
// the value: sector area (rose), bar height (radial bar), or angle (donut).

import type { GlyphStyle } from "./types.js";

export interface Sector {
  tag: string;
  value: number;
  startAngle: number; // radians from 12 o'clock, clockwise
  endAngle: number;
  innerRadius: number;
  outerRadius: number;
  path: string;
}

const TWO_PI = Math.PI * 2;

/**
 * Sector geometry for a glyph vector. Zero and negative entries are dropped,
 * so a zero vector yields an empty ring. Tags are laid out in sorted order
 * for stability across renders.
 */
export function glyphSectors(
  glyph: Record<string, number>,
  style: GlyphStyle,
  outerRadius = 40,
  innerRadius = 14,
): Sector[] {
  const entries = Object.entries(glyph)
    .filter(([, value]) => value > 0)
    .sort(([a], [b]) => (a < b ? -1 : 1));
  if (entries.length === 0) return [];

  const total = entries.reduce((sum, [, value]) => sum + value, 0);
  const max = Math.max(...entries.map(([, value]) => value));
  const step = TWO_PI / entries.length;
  const r0 = innerRadius;
  const gap = Math.min(0.04, step / 8); // hairline between sectors

  return entries.map(([tag, value], i) => {
    let start: number;
    let end: number;
    let outer: number;
    if (style === "donut") {
      // angle carries the value; ring thickness is constant
      const before = entries.slice(0, i).reduce((sum, [, v]) => sum + v, 0);
      start = (before / total) * TWO_PI;
      end = ((before + value) / total) * TWO_PI;
      outer = outerRadius;
    } else if (style === "radial_bar") {
      start = i * step;
      end = (i + 1) * step;
      outer = r0 + (outerRadius - r0) * (value / max);
    } else {
      // rose: annular sector area is proportional to the value
      start = i * step;
      end = (i + 1) * step;
      outer = Math.sqrt(r0 * r0 + (outerRadius * outerRadius - r0 * r0) * (value / max));
    }
    return {
      tag,
      value,
      startAngle: start,
      endAngle: end,
      innerRadius: r0,
      outerRadius: outer,
      path: annularSectorPath(start + gap, end - gap, r0, outer),
    };
  });
}

function point(angle: number, radius: number): [number, number] {
  return [radius * Math.sin(angle), -radius * Math.cos(angle)];
}

function annularSectorPath(start: number, end: number, r0: number, r1: number): string {
  // a full circle degenerates to a zero-length arc, so stop just short
  const span = Math.min(Math.max(end - start, 0.002), TWO_PI - 0.001);
  end = start + span;
  const large = span > Math.PI ? 1 : 0;
  const [x0, y0] = point(start, r1);
  const [x1, y1] = point(end, r1);
  const [x2, y2] = point(end, r0);
  const [x3, y3] = point(start, r0);
  return (
    `M ${x0.toFixed(3)} ${y0.toFixed(3)} ` +
    `A ${r1.toFixed(3)} ${r1.toFixed(3)} 0 ${large} 1 ${x1.toFixed(3)} ${y1.toFixed(3)} ` +
    `L ${x2.toFixed(3)} ${y2.toFixed(3)} ` +
    `A ${r0.toFixed(3)} ${r0.toFixed(3)} 0 ${large} 0 ${x3.toFixed(3)} ${y3.toFixed(3)} Z`
  );
}

/** Recover each sector's encoded share; used to check encodings agree. */
export function decodeShares(sectors: Sector[], style: GlyphStyle): Map<string, number> {
  const raw = new Map<string, number>();
  for (const sector of sectors) {
    let magnitude: number;
    if (style === "donut") {
      magnitude = sector.endAngle - sector.startAngle;
    } else if (style === "radial_bar") {
      magnitude = sector.outerRadius - sector.innerRadius;
    } else {
      magnitude =
        sector.outerRadius * sector.outerRadius - sector.innerRadius * sector.innerRadius;
    }
    raw.set(sector.tag, magnitude);
  }
  const total = [...raw.values()].reduce((a, b) => a + b, 0);
  return new Map([...raw.entries()].map(([tag, m]) => [tag, m / total]));
}
