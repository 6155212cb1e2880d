/** Thin typed client over the review service HTTP API. */

import type {
  ApiError,
  DecisionBody,
  RecordDto,
  RecordPage,
} from "./types.js";

export interface ListParams {
  status?: string;
  dataset?: string;
  language?: string;
  page?: number;
  page_size?: number;
}

export type DecisionResult =
  | { ok: true; record: RecordDto }
  | { ok: false; status: number; error: ApiError };

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ReviewApi {
  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private url(path: string, params?: Record<string, string | number | undefined>): string {
    const query = Object.entries(params ?? {})
      .filter(([, v]) => v !== undefined && v !== "")
      .map(([k, v]) => `${encodeURIComponent(k)}=${encodeURIComponent(String(v))}`)
      .join("&");
    return `${this.base}${path}${query ? `?${query}` : ""}`;
  }

  async listRecords(params: ListParams = {}): Promise<RecordPage> {
    const response = await this.fetchFn(this.url("/api/records", { ...params }));
    if (!response.ok) {
      throw new Error(`list failed: HTTP ${response.status}`);
    }
    return (await response.json()) as RecordPage;
  }

  async getRecord(id: string): Promise<RecordDto> {
    const response = await this.fetchFn(this.url(`/api/records/${encodeURIComponent(id)}`));
    if (!response.ok) {
      throw new Error(`record ${id}: HTTP ${response.status}`);
    }
    return (await response.json()) as RecordDto;
  }

  /** 4xx/409 come back as structured results, not exceptions - the view model
   * needs the error code to drive the conflict flow. */
  async submitDecision(id: string, body: DecisionBody): Promise<DecisionResult> {
    const response = await this.fetchFn(
      this.url(`/api/records/${encodeURIComponent(id)}/decision`),
      {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(body),
      },
    );
    if (response.ok) {
      return { ok: true, record: (await response.json()) as RecordDto };
    }
    let error: ApiError;
    try {
      error = (await response.json()) as ApiError;
    } catch {
      error = { code: "http-error", message: `HTTP ${response.status}` };
    }
    return { ok: false, status: response.status, error };
  }

  async stats(): Promise<Record<string, unknown>> {
    const response = await this.fetchFn(this.url("/api/stats"));
    if (!response.ok) {
      throw new Error(`stats failed: HTTP ${response.status}`);
    }
    return (await response.json()) as Record<string, unknown>;
  }
}
