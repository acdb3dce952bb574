/** View-model for the what-if explorer. DOM-free so it can be tested with a
 * mocked transport: field edits are validated, debounced, and turned into a
 * batch of API requests tagged with a sequence number; responses from a
 * superseded batch are discarded, so rapid edits can never paint stale
 * verdicts (last write wins).
 */

import {
  ApiClient,
  ApiError,
  type CurvePoint,
  type VerdictName,
} from "./api";
import { formatAmount, formatPercent } from "./format";
import {
  DEFAULT_FORM,
  scenarioRequest,
  validateForm,
  type FieldErrors,
  type FieldName,
  type FormState,
  type ParsedForm,
} from "./validate";

export const DEBOUNCE_MS = 150;

const VERDICT_LABELS: Record<VerdictName, string> = {
  WaitYearEnd: "Wait for year-end",
  TakeInstallments: "Take installments",
  Indifferent: "Indifferent",
};

export interface SavingsView {
  verdict: VerdictName;
  label: string;
  breakevenText: string;
  offeredText: string;
  marginText: string; // percentage points, signed
  breakevenRate: number;
  offeredRate: number;
}

export interface LoanView {
  verdict: VerdictName;
  label: string;
  phiText: string;
  threshold: number | null;
  thresholdText: string;
  marginText: string;
  totalRepaymentText: string;
}

export interface CurveView {
  points: CurvePoint[];
  delta: number;
  overlay: CurvePoint[] | null;
  overlayDelta: number | null;
}

export interface ReportView {
  annualNetText: string;
  maturityText: string;
  notes: string;
}

export interface StoreState {
  form: FormState;
  overlayOn: boolean;
  errors: FieldErrors;
  banner: string | null;
  pending: boolean;
  savings: SavingsView | null;
  loan: LoanView | null;
  curve: CurveView | null;
  report: ReportView | null;
}

type Listener = (state: StoreState) => void;

export class ScenarioStore {
  readonly state: StoreState;
  private readonly client: ApiClient;
  private readonly debounceMs: number;
  private seq = 0;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private readonly outstanding = new Set<Promise<void>>();
  private readonly listeners = new Set<Listener>();

  constructor(options: { client: ApiClient; debounceMs?: number }) {
    this.client = options.client;
    this.debounceMs = options.debounceMs ?? DEBOUNCE_MS;
    this.state = {
      form: { ...DEFAULT_FORM },
      overlayOn: false,
      errors: {},
      banner: null,
      pending: false,
      savings: null,
      loan: null,
      curve: null,
      report: null,
    };
  }

  subscribe(listener: Listener): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) listener(this.state);
  }

  /** Update one field and schedule a debounced recompute. */
  setField(name: FieldName, raw: string): void {
    if (name === "savings_mode") {
      this.state.form.savings_mode = raw === "continuous" ? "continuous" : "simple";
    } else {
      this.state.form[name] = raw;
    }
    this.scheduleRecompute();
    this.notify();
  }

  setOverlay(on: boolean): void {
    this.state.overlayOn = on;
    this.scheduleRecompute();
    this.notify();
  }

  /** Recompute immediately, skipping the debounce (used at startup). */
  recomputeNow(): Promise<void> {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    return this.recompute();
  }

  /** Resolves once every in-flight batch has settled. */
  async whenIdle(): Promise<void> {
    while (this.outstanding.size > 0) {
      await Promise.allSettled(Array.from(this.outstanding));
    }
  }

  private scheduleRecompute(): void {
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.recompute();
    }, this.debounceMs);
  }

  private recompute(): Promise<void> {
    const checked = validateForm(this.state.form, this.state.overlayOn);
    if (!checked.ok) {
      this.state.errors = checked.errors;
      this.notify();
      return Promise.resolve();
    }
    this.state.errors = {};
    this.state.banner = null;
    this.state.pending = true;
    this.notify();

    const ticket = ++this.seq;
    const batch = this.issue(ticket, checked.values).finally(() => {
      if (ticket === this.seq) {
        this.state.pending = false;
        this.notify();
      }
    });
    this.outstanding.add(batch);
    void batch.finally(() => this.outstanding.delete(batch));
    return batch;
  }

  private async issue(ticket: number, values: ParsedForm): Promise<void> {
    const requests: Array<Promise<void>> = [
      this.client
        .scenario(scenarioRequest(values))
        .then((resp) => {
          if (ticket !== this.seq) return; // stale batch: discard
          if (resp.savings_verdict) {
            const sv = resp.savings_verdict;
            this.state.savings = {
              verdict: sv.verdict,
              label: VERDICT_LABELS[sv.verdict],
              breakevenText: formatPercent(sv.breakeven_rate),
              offeredText: formatPercent(sv.offered_rate),
              marginText: `${(sv.margin * 100).toFixed(2)} pp`,
              breakevenRate: sv.breakeven_rate,
              offeredRate: sv.offered_rate,
            };
          }
          if (resp.loan_verdict) {
            const lv = resp.loan_verdict;
            const threshold = lv.threshold ?? null;
            this.state.loan = {
              verdict: lv.verdict,
              label: VERDICT_LABELS[lv.verdict],
              phiText: lv.phi.toFixed(6),
              threshold,
              thresholdText:
                threshold === null
                  ? "none (installments never lose)"
                  : formatPercent(threshold),
              marginText: formatAmount(lv.margin),
              totalRepaymentText: this.state.loan?.totalRepaymentText ?? "",
            };
          }
          this.state.report = {
            annualNetText: formatAmount(resp.annual_net),
            maturityText: formatAmount(resp.installment_net_total_at_maturity),
            notes: resp.notes,
          };
          this.notify();
        })
        .catch((err) => this.fail(ticket, err)),
    ];

    // the curve and the standalone endpoints need a flat tax rate
    if (values.delta !== null) {
      const delta = values.delta;
      requests.push(
        this.client
          .breakeven({ q: values.q, delta, n: values.n, mode: values.savingsMode })
          .then((resp) => {
            if (ticket !== this.seq) return;
            if (this.state.savings) {
              // keep the badge's number in sync with the dedicated endpoint
              this.state.savings.breakevenText = formatPercent(resp.rate);
              this.state.savings.breakevenRate = resp.rate;
            }
            this.notify();
          })
          .catch((err) => this.fail(ticket, err)),
        this.client
          .loanDecision({
            L: values.L,
            m: values.m,
            n: values.n,
            r_c: values.rC,
            G: values.G,
            q: values.q,
            delta,
          })
          .then((resp) => {
            if (ticket !== this.seq) return;
            const threshold = resp.threshold ?? null;
            this.state.loan = {
              verdict: resp.verdict,
              label: VERDICT_LABELS[resp.verdict],
              phiText: resp.phi.toFixed(6),
              threshold,
              thresholdText:
                threshold === null
                  ? "none (installments never lose)"
                  : formatPercent(threshold),
              marginText: formatAmount(resp.margin),
              totalRepaymentText: formatAmount(resp.total_repayment),
            };
            this.notify();
          })
          .catch((err) => this.fail(ticket, err)),
        this.client
          .curve({ q: values.q, delta, n: values.n })
          .then((resp) => {
            if (ticket !== this.seq) return;
            const previous = this.state.curve;
            this.state.curve = {
              points: resp.points,
              delta: resp.delta,
              overlay: previous?.overlay ?? null,
              overlayDelta: previous?.overlayDelta ?? null,
            };
            if (values.overlayDelta === null && this.state.curve) {
              this.state.curve.overlay = null;
              this.state.curve.overlayDelta = null;
            }
            this.notify();
          })
          .catch((err) => this.fail(ticket, err)),
      );
      if (values.overlayDelta !== null) {
        const overlayDelta = values.overlayDelta;
        requests.push(
          this.client
            .curve({ q: values.q, delta: overlayDelta, n: values.n })
            .then((resp) => {
              if (ticket !== this.seq) return;
              if (this.state.curve) {
                this.state.curve.overlay = resp.points;
                this.state.curve.overlayDelta = resp.delta;
              } else {
                this.state.curve = {
                  points: [],
                  delta: 0,
                  overlay: resp.points,
                  overlayDelta: resp.delta,
                };
              }
              this.notify();
            })
            .catch((err) => this.fail(ticket, err)),
        );
      }
    } else if (this.state.curve) {
      // bracket schedules have no single flat rate to sweep
      this.state.curve = null;
      this.notify();
    }

    await Promise.allSettled(requests);
  }

  private fail(ticket: number, err: unknown): void {
    if (ticket !== this.seq) return;
    if (err instanceof ApiError) {
      this.state.banner =
        err.field && err.field !== "body" ? `${err.field}: ${err.message}` : err.message;
    } else {
      this.state.banner = err instanceof Error ? err.message : String(err);
    }
    this.notify();
  }
}
