/** Thin typed client for the calculation service. All numbers shown in the
 * UI come from these responses; the browser never recomputes them.
 */

export type SavingsMode = "simple" | "continuous";
export type VerdictName = "WaitYearEnd" | "TakeInstallments" | "Indifferent";

export interface BreakevenRequest {
  q: number;
  delta: number;
  n: number;
  mode: SavingsMode;
}

export interface BreakevenResponse {
  rate: number;
  mode: SavingsMode;
  n: number;
  residual: number;
}

export interface LoanDecisionRequest {
  L: number;
  m: number;
  n: number;
  r_c: number;
  G: number;
  q: number;
  delta: number;
}

export interface LoanDecisionResponse {
  phi: number;
  threshold?: number;
  verdict: VerdictName;
  margin: number;
  total_repayment: number;
}

export type PolicyRequest =
  | { q: number; delta: number }
  | { brackets: Array<[number, number]>; gross: number; q: number };

export interface ScenarioRequest {
  policy: PolicyRequest;
  gratuity: { G: number; n: number };
  savings?: { rate: number; mode: SavingsMode };
  loan?: { L: number; m: number; n: number; r_c: number };
}

export interface SavingsVerdict {
  verdict: VerdictName;
  breakeven_rate: number;
  offered_rate: number;
  margin: number;
  mode: SavingsMode;
}

export interface LoanVerdict {
  phi: number;
  threshold?: number;
  verdict: VerdictName;
  margin: number;
}

export interface ScenarioResponse {
  savings_verdict?: SavingsVerdict;
  loan_verdict?: LoanVerdict;
  annual_net: number;
  installment_net_total_at_maturity: number;
  notes: string;
}

export interface CurvePoint {
  r_c: number;
  phi: number;
}

export interface CurveResponse {
  q: number;
  delta: number;
  n: number;
  points: CurvePoint[];
}

export interface CurveQuery {
  q: number;
  delta: number;
  n: number;
  min?: number;
  max?: number;
  samples?: number;
}

/** Minimal fetch shape so tests can mock the transport. */
export interface TransportResponse {
  status: number;
  json(): Promise<unknown>;
}

export type Transport = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<TransportResponse>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
    readonly field: string | null,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

function defaultTransport(): Transport {
  return (url, init) => globalThis.fetch(url, init);
}

async function errorFrom(status: number, resp: TransportResponse): Promise<ApiError> {
  let message = `request failed with status ${status}`;
  let field: string | null = null;
  try {
    const body = (await resp.json()) as { error?: unknown; field?: unknown };
    if (typeof body.error === "string") message = body.error;
    if (typeof body.field === "string") field = body.field;
  } catch {
    // non-JSON error body; keep the generic message
  }
  return new ApiError(status, message, field);
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly transport: Transport = defaultTransport(),
  ) {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    const resp = await this.transport(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    if (resp.status !== 200) throw await errorFrom(resp.status, resp);
    return (await resp.json()) as T;
  }

  private async get<T>(path: string): Promise<T> {
    const resp = await this.transport(`${this.baseUrl}${path}`, { method: "GET" });
    if (resp.status !== 200) throw await errorFrom(resp.status, resp);
    return (await resp.json()) as T;
  }

  breakeven(req: BreakevenRequest): Promise<BreakevenResponse> {
    return this.post("/api/v1/breakeven", req);
  }

  loanDecision(req: LoanDecisionRequest): Promise<LoanDecisionResponse> {
    return this.post("/api/v1/loan/decision", req);
  }

  scenario(req: ScenarioRequest): Promise<ScenarioResponse> {
    return this.post("/api/v1/scenario", req);
  }

  curve(query: CurveQuery): Promise<CurveResponse> {
    const params = new URLSearchParams();
    for (const [key, value] of Object.entries(query)) {
      if (value !== undefined) params.set(key, String(value));
    }
    return this.get(`/api/v1/curve?${params.toString()}`);
  }
}
