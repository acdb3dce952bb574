/** SVG rendering of the decision curve phi(r_c): zero line, the series, an
 * optional comparison series for a second tax rate, and a marker where the
 * curve crosses zero. Pure string building so tests need no DOM.
 */

import type { CurvePoint } from "./api";
import { formatPercent } from "./format";

export interface Layout {
  width: number;
  height: number;
  top: number;
  right: number;
  bottom: number;
  left: number;
}

export const DEFAULT_LAYOUT: Layout = {
  width: 640,
  height: 360,
  top: 16,
  right: 16,
  bottom: 44,
  left: 64,
};

export interface Scales {
  x: (r: number) => number;
  y: (phi: number) => number;
  xDomain: [number, number];
  yDomain: [number, number];
}

export function makeScales(series: CurvePoint[][], layout: Layout): Scales {
  const points = series.flat();
  const rs = points.map((p) => p.r_c);
  const phis = points.map((p) => p.phi);
  const xDomain: [number, number] = [Math.min(...rs), Math.max(...rs)];
  // always include zero so the zero line is visible
  let lo = Math.min(...phis, 0);
  let hi = Math.max(...phis, 0);
  const pad = (hi - lo || 1) * 0.05;
  lo -= pad;
  hi += pad;
  const innerW = layout.width - layout.left - layout.right;
  const innerH = layout.height - layout.top - layout.bottom;
  const xSpan = xDomain[1] - xDomain[0] || 1;
  return {
    x: (r) => layout.left + ((r - xDomain[0]) / xSpan) * innerW,
    y: (phi) => layout.top + ((hi - phi) / (hi - lo)) * innerH,
    xDomain,
    yDomain: [lo, hi],
  };
}

export function curvePath(points: CurvePoint[], scales: Scales): string {
  return points
    .map(
      (p, i) =>
        `${i === 0 ? "M" : "L"}${scales.x(p.r_c).toFixed(2)} ${scales.y(p.phi).toFixed(2)}`,
    )
    .join(" ");
}

/** Interpolated r where the series passes from positive to non-positive. */
export function zeroCrossing(points: CurvePoint[]): number | null {
  for (let i = 0; i + 1 < points.length; i += 1) {
    const a = points[i];
    const b = points[i + 1];
    if (a.phi > 0 && b.phi <= 0) {
      if (b.phi === 0) return b.r_c;
      return a.r_c + (a.phi / (a.phi - b.phi)) * (b.r_c - a.r_c);
    }
  }
  return null;
}

export interface CurveChartOptions {
  overlay?: CurvePoint[] | null;
  overlayDelta?: number | null;
  /** Server-computed root; preferred over interpolation when provided. */
  threshold?: number | null;
  delta?: number | null;
  layout?: Layout;
}

export function renderCurveSvg(
  points: CurvePoint[],
  options: CurveChartOptions = {},
): string {
  if (points.length === 0) {
    return `<p class="placeholder">no curve data yet</p>`;
  }
  const layout = options.layout ?? DEFAULT_LAYOUT;
  const overlay = options.overlay ?? null;
  const series = overlay ? [points, overlay] : [points];
  const scales = makeScales(series, layout);
  const zeroY = scales.y(0).toFixed(2);
  const xLeft = layout.left;
  const xRight = layout.width - layout.right;
  const yBottom = layout.height - layout.bottom;

  const parts: string[] = [];
  parts.push(
    `<svg viewBox="0 0 ${layout.width} ${layout.height}" class="phi-chart" role="img" aria-label="decision curve">`,
  );
  // axes
  parts.push(
    `<line class="axis" x1="${xLeft}" y1="${layout.top}" x2="${xLeft}" y2="${yBottom}"/>`,
    `<line class="axis" x1="${xLeft}" y1="${yBottom}" x2="${xRight}" y2="${yBottom}"/>`,
  );
  // zero line
  parts.push(
    `<line class="zero-line" x1="${xLeft}" y1="${zeroY}" x2="${xRight}" y2="${zeroY}"/>`,
  );
  // axis labels and extreme ticks
  parts.push(
    `<text class="axis-label" x="${(xLeft + xRight) / 2}" y="${layout.height - 6}">r_c</text>`,
    `<text class="axis-label y" x="14" y="${(layout.top + yBottom) / 2}" transform="rotate(-90 14 ${(layout.top + yBottom) / 2})">phi(r_c)</text>`,
    `<text class="tick" x="${xLeft}" y="${yBottom + 16}">${formatPercent(scales.xDomain[0], 0)}</text>`,
    `<text class="tick" x="${xRight}" y="${yBottom + 16}" text-anchor="end">${formatPercent(scales.xDomain[1], 0)}</text>`,
  );
  // series
  parts.push(`<path class="series main" d="${curvePath(points, scales)}"/>`);
  if (overlay) {
    parts.push(`<path class="series overlay" d="${curvePath(overlay, scales)}"/>`);
    const overlayCross = zeroCrossing(overlay);
    if (overlayCross !== null) {
      parts.push(
        `<circle class="marker overlay-marker" cx="${scales.x(overlayCross).toFixed(2)}" cy="${zeroY}" r="5"/>`,
      );
    }
  }
  // threshold marker: where waiting stops paying
  const crossing = options.threshold ?? zeroCrossing(points);
  if (crossing !== null && crossing >= scales.xDomain[0] && crossing <= scales.xDomain[1]) {
    const cx = scales.x(crossing).toFixed(2);
    parts.push(
      `<line class="threshold-line" x1="${cx}" y1="${layout.top}" x2="${cx}" y2="${yBottom}"/>`,
      `<circle class="marker main-marker" cx="${cx}" cy="${zeroY}" r="5"/>`,
      `<text class="marker-label" x="${cx}" y="${layout.top + 12}">${formatPercent(crossing)}</text>`,
    );
  }
  parts.push("</svg>");
  return parts.join("");
}
