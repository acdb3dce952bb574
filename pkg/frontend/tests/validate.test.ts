import { describe, expect, it } from "vitest";

import { DEFAULT_FORM, scenarioRequest, validateForm, type FormState } from "../src/validate";

function form(overrides: Partial<FormState> = {}): FormState {
  return { ...DEFAULT_FORM, ...overrides };
}

describe("validateForm", () => {
  it("accepts the defaults", () => {
    const result = validateForm(form(), false);
    expect(result.ok).toBe(true);
    if (result.ok) {
      expect(result.values.q).toBeCloseTo(1 / 3, 10);
      expect(result.values.delta).toBe(0.25);
      expect(result.values.n).toBe(12);
      expect(result.values.rC).toBe(0.12);
      expect(result.values.overlayDelta).toBeNull();
    }
  });

  it("mirrors the server domain for fractions", () => {
    for (const bad of ["100", "150", "-1", "x", ""]) {
      const result = validateForm(form({ q: bad }), false);
      expect(result.ok).toBe(false);
      if (!result.ok) expect(result.errors.q).toMatch(/\[0, 1\)/);
    }
    const result = validateForm(form({ delta: "99.9" }), false);
    expect(result.ok).toBe(true); // 99.9% is inside [0, 1)
  });

  it("requires positive principal and strictly positive loan rate", () => {
    let result = validateForm(form({ L: "0" }), false);
    expect(!result.ok && result.errors.L).toBeTruthy();
    result = validateForm(form({ r_c: "0" }), false);
    expect(!result.ok && result.errors.r_c).toBeTruthy();
    result = validateForm(form({ G: "-1" }), false);
    expect(!result.ok && result.errors.G).toBeTruthy();
    result = validateForm(form({ G: "0" }), false);
    expect(result.ok).toBe(true); // no gratuity is a valid question
  });

  it("requires whole positive counts", () => {
    for (const bad of ["0", "2.5", "-3", ""]) {
      const result = validateForm(form({ n: bad }), false);
      expect(result.ok).toBe(false);
    }
    const result = validateForm(form({ m: "1" }), false);
    expect(result.ok).toBe(true);
  });

  it("validates the overlay rate only when the overlay is on", () => {
    expect(validateForm(form({ overlay_delta: "nope" }), false).ok).toBe(true);
    expect(validateForm(form({ overlay_delta: "nope" }), true).ok).toBe(false);
    const on = validateForm(form(), true);
    expect(on.ok && on.values.overlayDelta).toBeCloseTo(1 / 3, 10);
  });

  it("switches to bracket mode when a schedule is given", () => {
    const result = validateForm(
      form({ brackets: "0:0,36000:25%", gross: "48000", delta: "" }),
      false,
    );
    expect(result.ok).toBe(true);
    if (result.ok) {
      expect(result.values.brackets).toEqual([
        [0, 0],
        [36000, 0.25],
      ]);
      expect(result.values.gross).toBe(48000);
      expect(result.values.delta).toBeNull();
    }
  });

  it("rejects malformed bracket schedules", () => {
    const cases: Array<[string, string]> = [
      ["5:0.1", "start at 0"],
      ["0:0,0:0.2", "increasing"],
      ["0:1.5", "[0, 1)"],
      ["0;0.1", "lower:rate"],
    ];
    for (const [brackets, fragment] of cases) {
      const result = validateForm(form({ brackets, gross: "48000" }), false);
      expect(result.ok).toBe(false);
      if (!result.ok) expect(result.errors.brackets).toContain(fragment);
    }
    const missingGross = validateForm(form({ brackets: "0:0.1", gross: "" }), false);
    expect(!missingGross.ok && missingGross.errors.gross).toBeTruthy();
  });
});

describe("scenarioRequest", () => {
  it("serializes the flat form losslessly", () => {
    const result = validateForm(form(), false);
    expect(result.ok).toBe(true);
    if (!result.ok) return;
    const req = scenarioRequest(result.values);
    expect(req).toEqual({
      policy: { q: result.values.q, delta: 0.25 },
      gratuity: { G: 1200, n: 12 },
      savings: { rate: 0.05, mode: "simple" },
      loan: { L: 100000, m: 20, n: 12, r_c: 0.12 },
    });
  });

  it("sends the bracket schedule when present", () => {
    const result = validateForm(
      form({ brackets: "0:0,36000:25%", gross: "48000" }),
      false,
    );
    expect(result.ok).toBe(true);
    if (!result.ok) return;
    const req = scenarioRequest(result.values);
    expect(req.policy).toEqual({
      brackets: [
        [0, 0],
        [36000, 0.25],
      ],
      gross: 48000,
      q: result.values.q,
    });
  });
});
