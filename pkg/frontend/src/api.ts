/** Thin fetch client for the analytics API; fetch is injectable for tests. */

import type { CorporaPayload, CoveragePayload, EntityDetail, FrequencyPage } from "./types.js";

export class ApiError extends Error {
  constructor(public readonly status: number, message: string) {
    super(message);
    this.name = "ApiError";
  }
}

type FetchLike = (url: string) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (url) => fetch(url),
  ) {}

  private async get<T>(path: string): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path);
    } catch (cause) {
      throw new ApiError(0, `API unreachable at ${this.baseUrl || "current origin"}`);
    }
    if (!response.ok) {
      let message = `HTTP ${response.status}`;
      try {
        const body = (await response.json()) as { error?: string };
        if (body.error) message = body.error;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, message);
    }
    return (await response.json()) as T;
  }

  corpora(): Promise<CorporaPayload> {
    return this.get("/api/corpora");
  }

  entities(corpus: string): Promise<FrequencyPage> {
    return this.get(`/api/corpora/${encodeURIComponent(corpus)}/entities`);
  }

  entity(corpus: string, term: string): Promise<EntityDetail> {
    return this.get(
      `/api/corpora/${encodeURIComponent(corpus)}/entities/${encodeURIComponent(term)}`,
    );
  }

  /** Returns null when the service has no glossary configured. */
  async coverage(corpus: string): Promise<CoveragePayload | null> {
    try {
      return await this.get(`/api/corpora/${encodeURIComponent(corpus)}/coverage`);
    } catch (error) {
      if (error instanceof ApiError && error.status === 404) return null;
      throw error;
    }
  }
}
