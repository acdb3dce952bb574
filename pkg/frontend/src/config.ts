export const DEFAULT_API_BASE = "http://localhost:8000";

/** Pick the first usable base URL from runtime/build-time candidates. */
export function resolveApiBase(candidates: readonly unknown[]): string {
  for (const candidate of candidates) {
    if (typeof candidate === "string" && candidate.trim() !== "") {
      return candidate.trim().replace(/\/+$/, "");
    }
  }
  return DEFAULT_API_BASE;
}
