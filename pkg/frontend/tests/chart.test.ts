import { describe, expect, it } from "vitest";

import type { CurvePoint } from "../src/api";
import { DEFAULT_LAYOUT, makeScales, renderCurveSvg, zeroCrossing } from "../src/chart";

const FALLING: CurvePoint[] = [
  { r_c: 0.0, phi: 0.0833333333 },
  { r_c: 0.125, phi: 0.0417 },
  { r_c: 0.25, phi: -0.0085 },
  { r_c: 0.375, phi: -0.058 },
  { r_c: 0.5, phi: -0.107 },
];

// a steeper tax rate keeps phi positive longer
const FALLING_LATER: CurvePoint[] = [
  { r_c: 0.0, phi: 0.1111 },
  { r_c: 0.125, phi: 0.0691 },
  { r_c: 0.25, phi: 0.0184 },
  { r_c: 0.375, phi: -0.0317 },
  { r_c: 0.5, phi: -0.0813 },
];

// exemption gone: starts at zero and only falls
const NEVER_POSITIVE: CurvePoint[] = [
  { r_c: 0.0, phi: 0.0 },
  { r_c: 0.25, phi: -0.09 },
  { r_c: 0.5, phi: -0.17 },
];

describe("zeroCrossing", () => {
  it("interpolates the sign change", () => {
    const r = zeroCrossing(FALLING);
    expect(r).not.toBeNull();
    expect(r!).toBeGreaterThan(0.125);
    expect(r!).toBeLessThan(0.25);
  });

  it("finds nothing when the series never goes positive", () => {
    expect(zeroCrossing(NEVER_POSITIVE)).toBeNull();
    expect(zeroCrossing([])).toBeNull();
  });
});

describe("makeScales", () => {
  it("maps the domain onto the drawing area and always includes zero", () => {
    const scales = makeScales([FALLING], DEFAULT_LAYOUT);
    expect(scales.x(0)).toBe(DEFAULT_LAYOUT.left);
    expect(scales.x(0.5)).toBe(DEFAULT_LAYOUT.width - DEFAULT_LAYOUT.right);
    expect(scales.yDomain[0]).toBeLessThan(0);
    expect(scales.yDomain[1]).toBeGreaterThan(0);
    const zeroY = scales.y(0);
    expect(zeroY).toBeGreaterThan(DEFAULT_LAYOUT.top);
    expect(zeroY).toBeLessThan(DEFAULT_LAYOUT.height - DEFAULT_LAYOUT.bottom);
  });
});

describe("renderCurveSvg", () => {
  it("draws axes, zero line, the series and a threshold marker", () => {
    const svg = renderCurveSvg(FALLING, { threshold: 0.2274252973 });
    expect(svg).toContain("<svg");
    expect(svg).toContain('class="zero-line"');
    expect(svg).toContain('class="series main"');
    expect(svg).toContain('class="marker main-marker"');
    expect(svg).toContain("22.74%");
    expect(svg).toContain("r_c");
    expect(svg).toContain("phi(r_c)");
  });

  it("falls back to the interpolated crossing when no threshold is given", () => {
    const svg = renderCurveSvg(FALLING);
    expect(svg).toContain('class="marker main-marker"');
  });

  it("omits the marker when the curve never crosses", () => {
    const svg = renderCurveSvg(NEVER_POSITIVE);
    expect(svg).not.toContain("main-marker");
  });

  it("puts the overlay crossing to the right of the main one", () => {
    const svg = renderCurveSvg(FALLING, { overlay: FALLING_LATER });
    expect(svg).toContain('class="series overlay"');
    const main = /main-marker" cx="([\d.]+)"/.exec(svg);
    const over = /overlay-marker" cx="([\d.]+)"/.exec(svg);
    expect(main && over).toBeTruthy();
    expect(Number(over![1])).toBeGreaterThan(Number(main![1]));
  });

  it("renders a placeholder for an empty series", () => {
    expect(renderCurveSvg([])).toContain("placeholder");
  });
});
