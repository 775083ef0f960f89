/** Engine API client: single in-flight analysis, newer submissions cancel older. */

import type { AnalysisResponse } from "./model.js";

export interface AnalyzePayload {
  graph: string;
  effect?: string;
  constraints?: string;
  options: { emit: string[] };
}

export interface ViolationDetail {
  code: string;
  message: string;
  element?: string;
}

export class ApiError extends Error {
  code: string;
  violations: ViolationDetail[];
  status: number;

  constructor(status: number, code: string, message: string, violations: ViolationDetail[] = []) {
    super(message);
    this.status = status;
    this.code = code;
    this.violations = violations;
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private fetchImpl: FetchLike;
  private base: string;
  private inflight: AbortController | null = null;

  constructor(fetchImpl?: FetchLike, base = "") {
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
    this.base = base;
  }

  /** POST /api/analyze; an earlier unfinished request gets aborted. */
  async analyze(payload: AnalyzePayload): Promise<AnalysisResponse> {
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    let res: Response;
    try {
      res = await this.fetchImpl(`${this.base}/api/analyze`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(payload),
        signal: controller.signal,
      });
    } catch (err) {
      if ((err as Error).name === "AbortError") throw err;
      throw new ApiError(0, "NETWORK", `could not reach the engine: ${(err as Error).message}`);
    } finally {
      if (this.inflight === controller) this.inflight = null;
    }
    if (!res.ok) {
      const detail = await res
        .json()
        .then((body) => body?.detail ?? {})
        .catch(() => ({}));
      throw new ApiError(
        res.status,
        detail.code ?? `HTTP_${res.status}`,
        detail.message ?? `engine returned ${res.status}`,
        detail.violations ?? [],
      );
    }
    return (await res.json()) as AnalysisResponse;
  }
}
