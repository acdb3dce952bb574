/** Parsing and display helpers. Percent-labeled fields take "25" to mean 25%. */

/** "25" or "25%" -> 0.25; blank or non-numeric -> null. */
export function parsePercent(text: string): number | null {
  const trimmed = text.trim().replace(/%$/, "");
  if (trimmed === "") return null;
  const value = Number(trimmed);
  return Number.isFinite(value) ? value / 100 : null;
}

/** Plain decimal number; blank or non-numeric -> null. */
export function parseNumber(text: string): number | null {
  const trimmed = text.trim();
  if (trimmed === "") return null;
  const value = Number(trimmed);
  return Number.isFinite(value) ? value : null;
}

/** Whole number; anything fractional or non-numeric -> null. */
export function parseCount(text: string): number | null {
  const value = parseNumber(text);
  if (value === null || !Number.isInteger(value)) return null;
  return value;
}

/** Fraction -> "20.51%". */
export function formatPercent(fraction: number, digits = 2): string {
  return `${(fraction * 100).toFixed(digits)}%`;
}

/** Money-ish amount -> fixed two decimals. */
export function formatAmount(value: number): string {
  return value.toFixed(2);
}
