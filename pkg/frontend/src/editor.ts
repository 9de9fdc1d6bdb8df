import { SingleFlight } from "./coalesce.js";
import { ConflictError } from "./types.js";
import type {
  ApiClient,
  FitResponse,
  Point,
  SessionView,
} from "./types.js";

export type StatusKind = "info" | "error" | "success";

export interface EditorEvents {
  /** Any state change the view should repaint for. */
  onChange: () => void;
  /** New parsing preview delivered by the server. */
  onPreview?: (fit: FitResponse) => void;
  onStatus?: (message: string, kind: StatusKind) => void;
}

/**
 * Session state machine behind the annotator UI.
 *
 * Owns the working landmark set, the dirty/undo bookkeeping mirrored
 * from the server, category visibility toggles and the coalesced fit
 * pipeline.  The preview is always the latest server response; nothing
 * is ever fitted locally.
 */
export class EditorSession {
  view: SessionView | null = null;
  /** Landmarks as loaded when the sample was opened (styling baseline). */
  initial: Point[] = [];
  lastFit: FitResponse | null = null;
  categoryVisible = new Map<number, boolean>();
  previewOpacity = 0.6;
  selectedPoint: number | null = null;
  atEndOfManifest = false;

  private readonly fitPipeline: SingleFlight<FitResponse>;

  constructor(
    private readonly client: ApiClient,
    private readonly events: EditorEvents,
  ) {
    this.fitPipeline = new SingleFlight<FitResponse>(
      (fit) => {
        this.lastFit = fit;
        this.events.onPreview?.(fit);
        this.events.onChange();
      },
      (error) => this.status(`preview failed: ${describe(error)}`, "error"),
    );
  }

  get landmarks(): Point[] {
    return this.view?.landmarks ?? [];
  }

  get dirty(): boolean {
    return this.view?.dirty ?? false;
  }

  /** Indices whose current position differs from the opening state. */
  editedIndices(): Set<number> {
    const edited = new Set<number>();
    const current = this.landmarks;
    for (let i = 0; i < current.length; i++) {
      const a = current[i]!;
      const b = this.initial[i];
      if (!b || a[0] !== b[0] || a[1] !== b[1]) {
        edited.add(i);
      }
    }
    return edited;
  }

  async open(sampleId: string): Promise<void> {
    const view = await this.client.openSession(sampleId);
    this.adoptSample(view);
    this.status(`opened ${view.sample_id}`, "info");
    this.requestPreview();
  }

  /** Move one landmark; the preview refresh is coalesced (latest wins). */
  async movePoint(index: number, x: number, y: number): Promise<void> {
    const view = this.require();
    try {
      this.view = await this.client.patchPoints(view.session_id, view.revision, [
        { index, x, y },
      ]);
      this.events.onChange();
      this.requestPreview();
    } catch (error) {
      if (error instanceof ConflictError) {
        await this.reload("concurrent edit detected; session reloaded");
        return;
      }
      throw error;
    }
  }

  async undo(): Promise<boolean> {
    const view = this.require();
    this.view = await this.client.undo(view.session_id);
    this.events.onChange();
    if (this.view.history_exhausted) {
      this.status("nothing left to undo", "info");
      return false;
    }
    this.requestPreview();
    return true;
  }

  async save(): Promise<void> {
    const view = this.require();
    if (!view.dirty) {
      this.status("no changes to save", "info");
      return;
    }
    this.view = await this.client.save(view.session_id);
    this.events.onChange();
    this.status("saved", "success");
  }

  async next(): Promise<void> {
    const view = this.require();
    const advanced = await this.client.next(view.session_id);
    if (advanced.end_of_manifest) {
      this.view = advanced;
      this.atEndOfManifest = true;
      this.events.onChange();
      this.status("end of manifest reached", "info");
      return;
    }
    this.adoptSample(advanced);
    this.status(`opened ${advanced.sample_id}`, "info");
    this.requestPreview();
  }

  /** Rendering-only toggle; never triggers a fit request. */
  toggleCategory(categoryId: number): void {
    const current = this.categoryVisible.get(categoryId) ?? true;
    this.categoryVisible.set(categoryId, !current);
    this.events.onChange();
  }

  isCategoryVisible(categoryId: number): boolean {
    return this.categoryVisible.get(categoryId) ?? true;
  }

  setOpacity(opacity: number): void {
    this.previewOpacity = Math.min(1, Math.max(0, opacity));
    this.events.onChange();
  }

  /** Wait until no fit request is pending (tests and teardown). */
  async previewSettled(): Promise<void> {
    await this.fitPipeline.idle();
  }

  private adoptSample(view: SessionView): void {
    this.view = view;
    this.initial = view.landmarks.map((p) => [p[0], p[1]]);
    this.lastFit = null;
    this.selectedPoint = null;
    this.atEndOfManifest = false;
    this.events.onChange();
  }

  private requestPreview(): void {
    const view = this.require();
    const landmarks = view.landmarks.map((p): Point => [p[0], p[1]]);
    this.fitPipeline.schedule(() =>
      this.client.fit({
        landmarks,
        width: view.width,
        height: view.height,
      }),
    );
  }

  private async reload(message: string): Promise<void> {
    const view = this.require();
    this.view = await this.client.getSession(view.session_id);
    this.events.onChange();
    this.status(message, "error");
    this.requestPreview();
  }

  private require(): SessionView {
    if (!this.view) {
      throw new Error("no open session");
    }
    return this.view;
  }

  private status(message: string, kind: StatusKind): void {
    this.events.onStatus?.(message, kind);
  }
}

function describe(error: unknown): string {
  return error instanceof Error ? error.message : String(error);
}
