import { ConflictError } from "./types.js";
import type {
  ApiClient,
  CategoryInfo,
  FitRequest,
  FitResponse,
  PointUpdate,
  SampleInfo,
  SessionView,
} from "./types.js";

/** fetch-based client for the /v1 annotation service. */
export class HttpClient implements ApiClient {
  constructor(private readonly base: string = "") {}

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const response = await fetch(`${this.base}${path}`, {
      method,
      headers: body === undefined ? {} : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (response.status === 409) {
      const detail = (await response.json()) as {
        detail: { expected: number; got: number };
      };
      throw new ConflictError(detail.detail.expected, detail.detail.got);
    }
    if (!response.ok) {
      const text = await response.text();
      throw new Error(`${method} ${path} -> ${response.status}: ${text}`);
    }
    return (await response.json()) as T;
  }

  async categories(): Promise<CategoryInfo[]> {
    const body = await this.request<{ categories: CategoryInfo[] }>(
      "GET",
      "/v1/categories",
    );
    return body.categories;
  }

  async samples(): Promise<SampleInfo[]> {
    const body = await this.request<{ samples: SampleInfo[] }>(
      "GET",
      "/v1/samples",
    );
    return body.samples;
  }

  fit(req: FitRequest): Promise<FitResponse> {
    return this.request("POST", "/v1/fit", req);
  }

  openSession(sampleId: string): Promise<SessionView> {
    return this.request("POST", "/v1/sessions", { sample_id: sampleId });
  }

  getSession(sessionId: string): Promise<SessionView> {
    return this.request("GET", `/v1/sessions/${sessionId}`);
  }

  patchPoints(
    sessionId: string,
    revision: number,
    updates: PointUpdate[],
  ): Promise<SessionView> {
    return this.request("PATCH", `/v1/sessions/${sessionId}/points`, {
      revision,
      updates,
    });
  }

  undo(sessionId: string): Promise<SessionView> {
    return this.request("POST", `/v1/sessions/${sessionId}/undo`);
  }

  save(sessionId: string): Promise<SessionView> {
    return this.request("POST", `/v1/sessions/${sessionId}/save`);
  }

  next(sessionId: string): Promise<SessionView> {
    return this.request("POST", `/v1/sessions/${sessionId}/next`);
  }

  imageUrl(sampleId: string): string {
    return `${this.base}/v1/samples/${sampleId}/image`;
  }
}
