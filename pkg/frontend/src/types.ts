/** Wire types of the /v1 annotation API (see docs/API.md). */

export type Point = [number, number];

export interface CategoryInfo {
  id: number;
  name: string;
  color: [number, number, number];
}

export interface SampleInfo {
  id: string;
  split: string;
}

export interface RleLabelMap {
  encoding: "row_value_runs";
  width: number;
  height: number;
  rows: number[][];
}

export interface ContourOverlay {
  category_id: number;
  category: string;
  closed: boolean;
  points: Point[];
}

export interface FitResponse {
  width: number;
  height: number;
  label_map: RleLabelMap;
  contours: ContourOverlay[];
}

export interface SessionView {
  session_id: string;
  sample_id: string;
  revision: number;
  width: number;
  height: number;
  landmarks: Point[];
  dirty: boolean;
  undo_depth: number;
  history_exhausted?: boolean;
  end_of_manifest?: boolean;
  saved?: { landmarks: string; labels: string } | null;
}

export interface PointUpdate {
  index: number;
  x: number;
  y: number;
}

export interface FitRequest {
  landmarks: Point[];
  width: number;
  height: number;
  visibility?: boolean[];
}

/** Thrown by the client on a 409 revision conflict. */
export class ConflictError extends Error {
  constructor(public expected: number, public got: number) {
    super(`revision conflict: server at ${expected}, sent ${got}`);
    this.name = "ConflictError";
  }
}

/** Transport-agnostic client; the editor never talks HTTP directly. */
export interface ApiClient {
  categories(): Promise<CategoryInfo[]>;
  samples(): Promise<SampleInfo[]>;
  fit(req: FitRequest): Promise<FitResponse>;
  openSession(sampleId: string): Promise<SessionView>;
  getSession(sessionId: string): Promise<SessionView>;
  patchPoints(
    sessionId: string,
    revision: number,
    updates: PointUpdate[],
  ): Promise<SessionView>;
  undo(sessionId: string): Promise<SessionView>;
  save(sessionId: string): Promise<SessionView>;
  next(sessionId: string): Promise<SessionView>;
  imageUrl(sampleId: string): string;
}
