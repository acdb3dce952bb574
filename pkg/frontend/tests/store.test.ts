import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiClient, type Transport, type TransportResponse } from "../src/api";
import { DEBOUNCE_MS, ScenarioStore } from "../src/store";

// response bodies captured from a live service run at the default scenario
const BREAKEVEN_BOTSWANA = {
  rate: 0.20512820512820512,
  mode: "simple",
  n: 12,
  residual: 0.0,
};

const LOAN_WAIT = {
  phi: 0.04067689500852212,
  threshold: 0.22742529736338368,
  verdict: "WaitYearEnd",
  margin: 48.81227401022654,
  total_repayment: 264260.67205670633,
};

const LOAN_TAKE = {
  phi: -0.028888727282409432,
  threshold: 0.22742529736338368,
  verdict: "TakeInstallments",
  margin: -34.66647273889132,
  total_repayment: 553881.2079608281,
};

function scenarioBody(opts: { breakevenRate?: number; loanVerdict?: string } = {}) {
  const rate = opts.breakevenRate ?? 0.20512820512820512;
  const loanVerdict = opts.loanVerdict ?? "WaitYearEnd";
  return {
    savings_verdict: {
      verdict: "WaitYearEnd",
      breakeven_rate: rate,
      offered_rate: 0.05,
      margin: 0.05 - rate,
      mode: "simple",
    },
    loan_verdict: {
      phi: loanVerdict === "WaitYearEnd" ? LOAN_WAIT.phi : LOAN_TAKE.phi,
      threshold: 0.22742529736338368,
      verdict: loanVerdict,
      margin: loanVerdict === "WaitYearEnd" ? 48.81 : -34.67,
    },
    annual_net: 1000.0,
    installment_net_total_at_maturity: 924.375,
    notes:
      "Saving the installments at 5.00% (simple) against a break-even rate of " +
      "20.51%: waiting for the tax-relieved year-end payment comes out ahead.",
  };
}

const CURVE = {
  q: 0.3333333333333333,
  delta: 0.25,
  n: 12,
  points: [
    { r_c: 0.0, phi: 0.0833333333 },
    { r_c: 0.125, phi: 0.0417 },
    { r_c: 0.25, phi: -0.0085 },
    { r_c: 0.375, phi: -0.058 },
    { r_c: 0.5, phi: -0.107 },
  ],
};

interface Call {
  url: string;
  body: Record<string, unknown> | null;
}

type Body = Record<string, unknown>;

/** Transport that answers straight away via a URL router. */
function immediateTransport(router: (url: string, body: Body | null) => unknown) {
  const calls: Call[] = [];
  const transport: Transport = async (url, init) => {
    const body = init?.body ? (JSON.parse(init.body) as Body) : null;
    calls.push({ url, body });
    const payload = router(url, body);
    return { status: 200, json: async () => payload };
  };
  return { transport, calls };
}

function routeBotswana(url: string, body: Body | null): unknown {
  if (url.includes("/api/v1/breakeven")) return BREAKEVEN_BOTSWANA;
  if (url.includes("/api/v1/loan/decision")) {
    return (body!.r_c as number) > 0.2274 ? LOAN_TAKE : LOAN_WAIT;
  }
  if (url.includes("/api/v1/scenario")) {
    const loan = body!.loan as { r_c: number };
    return scenarioBody({
      loanVerdict: loan.r_c > 0.2274 ? "TakeInstallments" : "WaitYearEnd",
    });
  }
  if (url.includes("/api/v1/curve")) return CURVE;
  throw new Error(`unexpected request: ${url}`);
}

function makeStore(transport: Transport): ScenarioStore {
  return new ScenarioStore({ client: new ApiClient("http://api.test", transport) });
}

/** Let queued microtasks run; fake timers do not block these. */
async function flushMicrotasks(): Promise<void> {
  for (let i = 0; i < 12; i += 1) await Promise.resolve();
}

afterEach(() => {
  vi.useRealTimers();
});

describe("default scenario", () => {
  it("renders the wait badge with the 20.51% break-even", async () => {
    const { transport } = immediateTransport(routeBotswana);
    const store = makeStore(transport);
    await store.recomputeNow();
    await store.whenIdle();

    expect(store.state.savings?.label).toBe("Wait for year-end");
    expect(store.state.savings?.breakevenText).toBe("20.51%");
    expect(store.state.savings?.offeredText).toBe("5.00%");
    expect(store.state.loan?.label).toBe("Wait for year-end");
    expect(store.state.loan?.thresholdText).toBe("22.74%");
    expect(store.state.curve?.points).toHaveLength(5);
    expect(store.state.banner).toBeNull();
    expect(store.state.report?.annualNetText).toBe("1000.00");
  });

  it("issues one batch of requests per recompute", async () => {
    const { transport, calls } = immediateTransport(routeBotswana);
    const store = makeStore(transport);
    await store.recomputeNow();
    await store.whenIdle();
    const urls = calls.map((c) => new URL(c.url).pathname).sort();
    expect(urls).toEqual([
      "/api/v1/breakeven",
      "/api/v1/curve",
      "/api/v1/loan/decision",
      "/api/v1/scenario",
    ]);
  });
});

describe("edits", () => {
  it("setting the loan rate to 30 flips the loan badge", async () => {
    const { transport, calls } = immediateTransport(routeBotswana);
    const store = makeStore(transport);
    await store.recomputeNow();
    await store.whenIdle();
    expect(store.state.loan?.label).toBe("Wait for year-end");

    vi.useFakeTimers();
    store.setField("r_c", "30"); // percent field: 30 means 30%
    vi.advanceTimersByTime(DEBOUNCE_MS);
    await store.whenIdle();

    const loanCall = calls.filter((c) => c.url.includes("/loan/decision")).at(-1);
    expect(loanCall?.body?.r_c).toBe(0.3);
    expect(store.state.loan?.label).toBe("Take installments");
    // the savings side is unaffected by the loan rate
    expect(store.state.savings?.label).toBe("Wait for year-end");
  });

  it("debounces rapid edits into a single batch", async () => {
    const { transport, calls } = immediateTransport(routeBotswana);
    const store = makeStore(transport);
    await store.recomputeNow();
    await store.whenIdle();
    const before = calls.length;

    vi.useFakeTimers();
    store.setField("G", "2400");
    vi.advanceTimersByTime(DEBOUNCE_MS - 50);
    store.setField("G", "3600");
    vi.advanceTimersByTime(DEBOUNCE_MS - 50);
    expect(calls.length).toBe(before); // still inside the debounce window

    vi.advanceTimersByTime(50);
    await store.whenIdle();
    expect(calls.length).toBe(before + 4);
    const scenarioCall = calls.filter((c) => c.url.includes("/scenario")).at(-1);
    expect((scenarioCall?.body?.gratuity as Body).G).toBe(3600);
    expect(DEBOUNCE_MS).toBe(150);
  });

  it("blocks requests while a field is invalid and surfaces the message", async () => {
    const { transport, calls } = immediateTransport(routeBotswana);
    const store = makeStore(transport);
    await store.recomputeNow();
    await store.whenIdle();
    const before = calls.length;

    vi.useFakeTimers();
    store.setField("q", "150");
    vi.advanceTimersByTime(DEBOUNCE_MS);
    await store.whenIdle();
    expect(calls.length).toBe(before);
    expect(store.state.errors.q).toBe("q must lie in [0, 1)");

    store.setField("q", "25");
    vi.advanceTimersByTime(DEBOUNCE_MS);
    await store.whenIdle();
    expect(calls.length).toBe(before + 4);
    expect(store.state.errors.q).toBeUndefined();
  });

  it("shows the server's field diagnostic in the banner and stays editable", async () => {
    const transport: Transport = async () => ({
      status: 400,
      json: async () => ({ error: "delta must lie in [0, 1)", field: "policy.delta" }),
    });
    const store = makeStore(transport);
    await store.recomputeNow();
    await store.whenIdle();
    expect(store.state.banner).toBe("policy.delta: delta must lie in [0, 1)");
    expect(store.state.errors).toEqual({});
    store.setField("delta", "20"); // no throw; the form still accepts input
    expect(store.state.form.delta).toBe("20");
  });

  it("reports a missing threshold as never losing", async () => {
    const { transport } = immediateTransport((url, body) => {
      if (url.includes("/loan/decision")) {
        return { phi: -0.05, verdict: "TakeInstallments", margin: -60.0, total_repayment: 264260.67 };
      }
      if (url.includes("/scenario")) {
        const base = scenarioBody({ loanVerdict: "TakeInstallments" }) as Record<string, unknown>;
        const loanVerdict = { ...(base.loan_verdict as Body) };
        delete loanVerdict.threshold;
        return { ...base, loan_verdict: loanVerdict };
      }
      return routeBotswana(url, body);
    });
    const store = makeStore(transport);
    await store.recomputeNow();
    await store.whenIdle();
    expect(store.state.loan?.threshold).toBeNull();
    expect(store.state.loan?.thresholdText).toBe("none (installments never lose)");
  });

  it("fetches a second curve when the overlay is enabled", async () => {
    const { transport, calls } = immediateTransport((url, body) => {
      if (url.includes("/curve") && url.includes("delta=0.35")) {
        return { ...CURVE, delta: 0.35 };
      }
      return routeBotswana(url, body);
    });
    const store = makeStore(transport);
    await store.recomputeNow();
    await store.whenIdle();

    vi.useFakeTimers();
    store.setField("overlay_delta", "35");
    store.setOverlay(true);
    vi.advanceTimersByTime(DEBOUNCE_MS);
    await store.whenIdle();

    const curveCalls = calls.filter((c) => c.url.includes("/curve"));
    expect(curveCalls.length).toBe(3); // initial + main + overlay
    expect(store.state.curve?.overlay).toHaveLength(5);
    expect(store.state.curve?.overlayDelta).toBe(0.35);
  });
});

describe("stale responses", () => {
  interface Pending {
    url: string;
    body: Body | null;
    respond: (payload: unknown, status?: number) => void;
  }

  function deferredTransport() {
    const pending: Pending[] = [];
    const transport: Transport = (url, init) =>
      new Promise<TransportResponse>((resolve) => {
        pending.push({
          url,
          body: init?.body ? (JSON.parse(init.body) as Body) : null,
          respond: (payload, status = 200) =>
            resolve({ status, json: async () => payload }),
        });
      });
    return { transport, pending };
  }

  function respondBatch(batch: Pending[], breakevenRate: number): void {
    for (const req of batch) {
      if (req.url.includes("/breakeven")) {
        req.respond({ rate: breakevenRate, mode: "simple", n: 12, residual: 0.0 });
      } else if (req.url.includes("/loan/decision")) {
        req.respond(LOAN_WAIT);
      } else if (req.url.includes("/scenario")) {
        req.respond(scenarioBody({ breakevenRate }));
      } else {
        req.respond(CURVE);
      }
    }
  }

  it("discards responses delivered out of order", async () => {
    vi.useFakeTimers();
    const { transport, pending } = deferredTransport();
    const store = makeStore(transport);

    store.setField("savings_rate", "6");
    vi.advanceTimersByTime(DEBOUNCE_MS);
    const first = pending.splice(0);
    expect(first).toHaveLength(4);

    store.setField("savings_rate", "7");
    vi.advanceTimersByTime(DEBOUNCE_MS);
    const second = pending.splice(0);
    expect(second).toHaveLength(4);

    // the newer batch lands first...
    respondBatch(second, 0.222);
    await flushMicrotasks();
    expect(store.state.savings?.breakevenText).toBe("22.20%");

    // ...then the superseded batch arrives and must be ignored
    respondBatch(first, 0.111);
    await flushMicrotasks();
    expect(store.state.savings?.breakevenText).toBe("22.20%");

    await store.whenIdle();
    expect(store.state.savings?.breakevenText).toBe("22.20%");
  });

  it("never paints an error from a superseded request", async () => {
    vi.useFakeTimers();
    const { transport, pending } = deferredTransport();
    const store = makeStore(transport);

    store.setField("savings_rate", "6");
    vi.advanceTimersByTime(DEBOUNCE_MS);
    const first = pending.splice(0);

    store.setField("savings_rate", "7");
    vi.advanceTimersByTime(DEBOUNCE_MS);
    const second = pending.splice(0);

    respondBatch(second, 0.222);
    await flushMicrotasks();

    // stale batch fails late; the banner must stay clear
    for (const req of first) {
      req.respond({ error: "boom", field: "q" }, 400);
    }
    await flushMicrotasks();
    expect(store.state.banner).toBeNull();
    expect(store.state.savings?.breakevenText).toBe("22.20%");
  });
});
