/** DOM layer: renders the store state and forwards input events. Kept thin;
 * everything decision-shaped lives in the store.
 */

import { renderCurveSvg } from "./chart";
import type { ScenarioStore, StoreState } from "./store";
import type { FieldName } from "./validate";

interface FieldSpec {
  name: FieldName;
  label: string;
  unit: string;
  kind: "text" | "select";
}

const FIELDS: FieldSpec[] = [
  { name: "q", label: "exempt fraction q", unit: "%", kind: "text" },
  { name: "delta", label: "tax rate delta", unit: "%", kind: "text" },
  { name: "brackets", label: "bracket schedule (optional)", unit: "lower:rate,...", kind: "text" },
  { name: "gross", label: "gross for brackets", unit: "pula", kind: "text" },
  { name: "G", label: "gratuity G", unit: "pula", kind: "text" },
  { name: "n", label: "payments per year n", unit: "count", kind: "text" },
  { name: "savings_rate", label: "offered savings rate", unit: "%", kind: "text" },
  { name: "savings_mode", label: "compounding", unit: "", kind: "select" },
  { name: "L", label: "loan principal L", unit: "pula", kind: "text" },
  { name: "m", label: "loan term m", unit: "years", kind: "text" },
  { name: "r_c", label: "loan rate r_c", unit: "%", kind: "text" },
  { name: "overlay_delta", label: "overlay tax rate", unit: "%", kind: "text" },
];

function fieldHtml(spec: FieldSpec, value: string): string {
  const control =
    spec.kind === "select"
      ? `<select data-field="${spec.name}">
           <option value="simple"${value === "simple" ? " selected" : ""}>simple</option>
           <option value="continuous"${value === "continuous" ? " selected" : ""}>continuous</option>
         </select>`
      : `<input data-field="${spec.name}" value="${value}" autocomplete="off"/>`;
  return `<label class="field" data-field-row="${spec.name}">
      <span class="field-label">${spec.label}${spec.unit ? ` <em>(${spec.unit})</em>` : ""}</span>
      ${control}
      <span class="field-error" data-error-for="${spec.name}"></span>
    </label>`;
}

export function mount(root: HTMLElement, store: ScenarioStore): void {
  root.innerHTML = `
    <header><h1>Gratuity: monthly installments or year-end lump sum?</h1></header>
    <div class="banner" id="banner" hidden></div>
    <main class="layout">
      <section class="controls">
        ${FIELDS.map((f) => fieldHtml(f, String(store.state.form[f.name]))).join("")}
        <label class="field overlay-toggle">
          <span class="field-label">overlay a second tax rate</span>
          <input type="checkbox" id="overlay-toggle"/>
        </label>
      </section>
      <section class="results">
        <div class="verdicts">
          <div class="card" id="savings-card">
            <h2>Savings plan</h2>
            <span class="badge" id="savings-badge">&mdash;</span>
            <dl>
              <dt>break-even rate</dt><dd id="savings-breakeven">&mdash;</dd>
              <dt>offered rate</dt><dd id="savings-offered">&mdash;</dd>
              <dt>margin</dt><dd id="savings-margin">&mdash;</dd>
            </dl>
            <div class="gauge" id="gauge"><div class="gauge-breakeven"></div><div class="gauge-offered"></div></div>
          </div>
          <div class="card" id="loan-card">
            <h2>Loan servicing</h2>
            <span class="badge" id="loan-badge">&mdash;</span>
            <dl>
              <dt>decision value</dt><dd id="loan-phi">&mdash;</dd>
              <dt>rate threshold</dt><dd id="loan-threshold">&mdash;</dd>
              <dt>first-year margin</dt><dd id="loan-margin">&mdash;</dd>
              <dt>total repayment</dt><dd id="loan-total">&mdash;</dd>
            </dl>
          </div>
        </div>
        <div class="report" id="report"></div>
        <div class="chart" id="chart"><p class="placeholder">no curve data yet</p></div>
      </section>
    </main>`;

  for (const input of root.querySelectorAll<HTMLInputElement | HTMLSelectElement>(
    "[data-field]",
  )) {
    input.addEventListener("input", () => {
      store.setField(input.dataset.field as FieldName, input.value);
    });
  }
  const toggle = root.querySelector<HTMLInputElement>("#overlay-toggle");
  toggle?.addEventListener("change", () => store.setOverlay(toggle.checked));

  store.subscribe((state) => render(root, state));
  render(root, store.state);
}

function setText(root: HTMLElement, selector: string, text: string): void {
  const el = root.querySelector<HTMLElement>(selector);
  if (el) el.textContent = text;
}

function badgeClass(verdict: string): string {
  if (verdict === "WaitYearEnd") return "badge wait";
  if (verdict === "TakeInstallments") return "badge take";
  return "badge even";
}

function render(root: HTMLElement, state: StoreState): void {
  const banner = root.querySelector<HTMLElement>("#banner");
  if (banner) {
    banner.hidden = state.banner === null;
    banner.textContent = state.banner ?? "";
  }

  for (const spec of FIELDS) {
    const slot = root.querySelector<HTMLElement>(`[data-error-for="${spec.name}"]`);
    if (slot) slot.textContent = state.errors[spec.name] ?? "";
  }

  if (state.savings) {
    const badge = root.querySelector<HTMLElement>("#savings-badge");
    if (badge) {
      badge.textContent = state.savings.label;
      badge.className = badgeClass(state.savings.verdict);
    }
    setText(root, "#savings-breakeven", state.savings.breakevenText);
    setText(root, "#savings-offered", state.savings.offeredText);
    setText(root, "#savings-margin", state.savings.marginText);
    const gauge = root.querySelector<HTMLElement>("#gauge");
    if (gauge) {
      const top = Math.max(state.savings.breakevenRate, state.savings.offeredRate) * 1.25 || 1;
      const be = gauge.querySelector<HTMLElement>(".gauge-breakeven");
      const of_ = gauge.querySelector<HTMLElement>(".gauge-offered");
      if (be) be.style.left = `${(state.savings.breakevenRate / top) * 100}%`;
      if (of_) of_.style.left = `${(state.savings.offeredRate / top) * 100}%`;
    }
  }

  if (state.loan) {
    const badge = root.querySelector<HTMLElement>("#loan-badge");
    if (badge) {
      badge.textContent = state.loan.label;
      badge.className = badgeClass(state.loan.verdict);
    }
    setText(root, "#loan-phi", state.loan.phiText);
    setText(root, "#loan-threshold", state.loan.thresholdText);
    setText(root, "#loan-margin", state.loan.marginText);
    setText(root, "#loan-total", state.loan.totalRepaymentText || "\u2014");
  }

  const report = root.querySelector<HTMLElement>("#report");
  if (report && state.report) {
    report.innerHTML = `<p>${state.report.notes}</p>
      <p>annual net at year end: <strong>${state.report.annualNetText}</strong>
      &middot; net installments at maturity: <strong>${state.report.maturityText}</strong></p>`;
  }

  const chart = root.querySelector<HTMLElement>("#chart");
  if (chart) {
    if (state.curve) {
      chart.innerHTML = renderCurveSvg(state.curve.points, {
        overlay: state.overlayOn ? state.curve.overlay : null,
        overlayDelta: state.curve.overlayDelta,
        threshold: state.loan?.threshold ?? null,
        delta: state.curve.delta,
      });
    } else {
      chart.innerHTML = `<p class="placeholder">curve needs a flat tax rate</p>`;
    }
  }
}
