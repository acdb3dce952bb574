/** Client-side validation mirroring the server's domains, so bad values are
 * caught before a request leaves the browser. Invalid fields block the
 * recompute entirely.
 */

import { parseCount, parseNumber, parsePercent } from "./format";
import type { SavingsMode, ScenarioRequest } from "./api";

export interface FormState {
  q: string; // percent field
  delta: string; // percent field
  brackets: string; // "lower:rate,lower:rate" (optional; empty = flat delta)
  gross: string; // required when brackets given
  G: string;
  n: string;
  savings_rate: string; // percent field
  savings_mode: SavingsMode;
  L: string;
  m: string;
  r_c: string; // percent field
  overlay_delta: string; // percent field, used when the overlay is on
}

export const DEFAULT_FORM: FormState = {
  q: "33.3333333333",
  delta: "25",
  brackets: "",
  gross: "",
  G: "1200",
  n: "12",
  savings_rate: "5",
  savings_mode: "simple",
  L: "100000",
  m: "20",
  r_c: "12",
  overlay_delta: "33.3333333333",
};

export type FieldName = keyof FormState;
export type FieldErrors = Partial<Record<FieldName, string>>;

export interface ParsedForm {
  q: number;
  delta: number | null; // null in bracket mode
  brackets: Array<[number, number]> | null;
  gross: number | null;
  G: number;
  n: number;
  savingsRate: number;
  savingsMode: SavingsMode;
  L: number;
  m: number;
  rC: number;
  overlayDelta: number | null; // null when the overlay is off
}

export type ValidationResult =
  | { ok: true; values: ParsedForm }
  | { ok: false; errors: FieldErrors };

function parseBrackets(text: string): Array<[number, number]> | string {
  const rows: Array<[number, number]> = [];
  for (const chunk of text.split(",")) {
    const parts = chunk.split(":");
    if (parts.length !== 2) return "brackets must look like lower:rate,lower:rate";
    const lower = parseNumber(parts[0]);
    // rate part is not a percent-labeled input: plain fraction or "25%"
    const rateText = parts[1].trim();
    const rate = rateText.endsWith("%")
      ? parsePercent(rateText)
      : parseNumber(rateText);
    if (lower === null || rate === null) {
      return "brackets must look like lower:rate,lower:rate";
    }
    rows.push([lower, rate]);
  }
  if (rows.length === 0) return "brackets must have at least one row";
  if (rows[0][0] !== 0) return "the first bracket must start at 0";
  for (let i = 1; i < rows.length; i += 1) {
    if (rows[i][0] <= rows[i - 1][0]) return "bracket bounds must be increasing";
  }
  for (const [, rate] of rows) {
    if (rate < 0 || rate >= 1) return "bracket rates must lie in [0, 1)";
  }
  return rows;
}

export function validateForm(form: FormState, overlayOn: boolean): ValidationResult {
  const errors: FieldErrors = {};

  const q = parsePercent(form.q);
  if (q === null || q < 0 || q >= 1) errors.q = "q must lie in [0, 1)";

  const bracketMode = form.brackets.trim() !== "";
  let delta: number | null = null;
  let brackets: Array<[number, number]> | null = null;
  let gross: number | null = null;
  if (bracketMode) {
    const parsed = parseBrackets(form.brackets.trim());
    if (typeof parsed === "string") errors.brackets = parsed;
    else brackets = parsed;
    gross = parseNumber(form.gross);
    if (gross === null || gross <= 0) errors.gross = "gross must be > 0";
  } else {
    delta = parsePercent(form.delta);
    if (delta === null || delta < 0 || delta >= 1) {
      errors.delta = "delta must lie in [0, 1)";
    }
  }

  const G = parseNumber(form.G);
  if (G === null || G < 0) errors.G = "G must be >= 0";

  const n = parseCount(form.n);
  if (n === null || n < 1) errors.n = "n must be a positive whole number";

  const savingsRate = parsePercent(form.savings_rate);
  if (savingsRate === null || savingsRate < 0 || savingsRate >= 1) {
    errors.savings_rate = "rate must lie in [0, 1)";
  }

  const L = parseNumber(form.L);
  if (L === null || L <= 0) errors.L = "L must be > 0";

  const m = parseCount(form.m);
  if (m === null || m < 1) errors.m = "m must be a positive whole number";

  const rC = parsePercent(form.r_c);
  if (rC === null || rC <= 0) errors.r_c = "r_c must be > 0";

  let overlayDelta: number | null = null;
  if (overlayOn) {
    overlayDelta = parsePercent(form.overlay_delta);
    if (overlayDelta === null || overlayDelta < 0 || overlayDelta >= 1) {
      errors.overlay_delta = "delta must lie in [0, 1)";
    }
  }

  if (Object.keys(errors).length > 0) return { ok: false, errors };
  return {
    ok: true,
    values: {
      q: q as number,
      delta,
      brackets,
      gross,
      G: G as number,
      n: n as number,
      savingsRate: savingsRate as number,
      savingsMode: form.savings_mode,
      L: L as number,
      m: m as number,
      rC: rC as number,
      overlayDelta,
    },
  };
}

export function scenarioRequest(values: ParsedForm): ScenarioRequest {
  const policy = values.brackets
    ? { brackets: values.brackets, gross: values.gross as number, q: values.q }
    : { q: values.q, delta: values.delta as number };
  return {
    policy,
    gratuity: { G: values.G, n: values.n },
    savings: { rate: values.savingsRate, mode: values.savingsMode },
    loan: { L: values.L, m: values.m, n: values.n, r_c: values.rC },
  };
}
