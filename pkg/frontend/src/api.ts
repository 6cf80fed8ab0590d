// Typed client for the catalog service. The UI talks to the server through
// this module only; `fetchImpl` is injectable so tests can fake transport.

export interface FeatureListItem {
  id: string;
  phrase: string;
  support: number;
}

export interface HoleInfo {
  id: string;
  kind: "HOLE" | "BODY";
  expected_type: string | null;
  marker: string;
}

export interface EntryDetail extends FeatureListItem {
  surface_forms: string[];
  api: { name: string; qualified: string };
  skeleton: string;
  holes: HoleInfo[];
  pattern_support: number;
  provenance: string;
}

export interface Recommendation {
  rank: number;
  text: string;
  cost: number;
  frequency: number;
}

export interface HoleRecommendations extends HoleInfo {
  recommendations: Recommendation[];
}

export interface ContextVar {
  name: string;
  type: string;
}

export interface ServiceError {
  code: string;
  message: string;
  hole?: string;
  expected?: string | null;
  actual?: string | null;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: ServiceError,
  ) {
    super(detail.message);
  }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const res = await this.fetchImpl(this.baseUrl + path, init);
    const body = await res.json();
    if (!res.ok) {
      const detail: ServiceError = body?.error ?? {
        code: "http_error",
        message: `request failed with status ${res.status}`,
      };
      throw new ApiError(res.status, detail);
    }
    return body as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  async searchFeatures(query: string): Promise<FeatureListItem[]> {
    const q = encodeURIComponent(query);
    const body = await this.request<{ features: FeatureListItem[] }>(
      `/api/features?q=${q}`,
    );
    return body.features;
  }

  getEntry(id: string): Promise<EntryDetail> {
    return this.request<EntryDetail>(`/api/features/${encodeURIComponent(id)}`);
  }

  async recommend(
    id: string,
    context: ContextVar[],
  ): Promise<HoleRecommendations[]> {
    const body = await this.post<{ holes: HoleRecommendations[] }>(
      `/api/features/${encodeURIComponent(id)}/recommend`,
      { context },
    );
    return body.holes;
  }

  async fill(
    id: string,
    context: ContextVar[],
    fills: Record<string, string>,
  ): Promise<string> {
    const body = await this.post<{ snippet: string }>(
      `/api/features/${encodeURIComponent(id)}/fill`,
      { context, fills },
    );
    return body.snippet;
  }

  logInteraction(
    entryId: string,
    holeId: string,
    acceptedRank: number | null,
    session = "ui",
  ): Promise<{ ok: boolean }> {
    return this.post(`/api/log`, {
      session,
      entry_id: entryId,
      hole_id: holeId,
      accepted_rank: acceptedRank,
    });
  }
}
