import { decodeLabelMap } from "./rle.js";
import {
  HANDLE_EDITED,
  HANDLE_INITIAL,
  HANDLE_SELECTED,
} from "./palette.js";
import type { EditorSession } from "./editor.js";
import type { CategoryInfo, FitResponse } from "./types.js";

const HANDLE_RADIUS = 3.0;
const HIT_RADIUS = 6.0;

/**
 * Canvas view: image, label-map preview, contour overlays and 106
 * draggable handles on one zoomable surface.  Pure rendering + input;
 * all state lives in the EditorSession.
 */
export class AnnotatorCanvas {
  private readonly ctx: CanvasRenderingContext2D;
  private image: HTMLImageElement | null = null;
  private previewCache: { fit: FitResponse; bitmap: HTMLCanvasElement } | null =
    null;
  private zoom = 3.0;
  private panX = 0;
  private panY = 0;
  private dragging: number | null = null;
  private panning = false;
  private lastPointer: [number, number] = [0, 0];

  constructor(
    private readonly canvas: HTMLCanvasElement,
    private readonly session: EditorSession,
    private categories: CategoryInfo[],
  ) {
    const ctx = canvas.getContext("2d");
    if (!ctx) {
      throw new Error("2d canvas context unavailable");
    }
    this.ctx = ctx;
    canvas.addEventListener("pointerdown", (e) => this.pointerDown(e));
    canvas.addEventListener("pointermove", (e) => this.pointerMove(e));
    canvas.addEventListener("pointerup", (e) => this.pointerUp(e));
    canvas.addEventListener("pointercancel", (e) => this.pointerUp(e));
    canvas.addEventListener("wheel", (e) => this.wheel(e), { passive: false });
  }

  setCategories(categories: CategoryInfo[]): void {
    this.categories = categories;
  }

  setImage(url: string): void {
    const img = new Image();
    img.onload = () => {
      this.image = img;
      this.fitView();
      this.render();
    };
    img.src = url;
  }

  /** Scale so the sample fills ~90% of the canvas. */
  private fitView(): void {
    const view = this.session.view;
    if (!view) return;
    const sx = this.canvas.width / view.width;
    const sy = this.canvas.height / view.height;
    this.zoom = 0.9 * Math.min(sx, sy);
    this.panX = (this.canvas.width - view.width * this.zoom) / 2;
    this.panY = (this.canvas.height - view.height * this.zoom) / 2;
  }

  private toImage(e: PointerEvent): [number, number] {
    const rect = this.canvas.getBoundingClientRect();
    const cx = ((e.clientX - rect.left) * this.canvas.width) / rect.width;
    const cy = ((e.clientY - rect.top) * this.canvas.height) / rect.height;
    return [(cx - this.panX) / this.zoom, (cy - this.panY) / this.zoom];
  }

  private hitTest(x: number, y: number): number | null {
    const pts = this.session.landmarks;
    let best: number | null = null;
    let bestDist = HIT_RADIUS / this.zoom + HANDLE_RADIUS;
    for (let i = 0; i < pts.length; i++) {
      const p = pts[i]!;
      const d = Math.hypot(p[0] - x, p[1] - y);
      if (d < bestDist) {
        best = i;
        bestDist = d;
      }
    }
    return best;
  }

  private pointerDown(e: PointerEvent): void {
    this.canvas.setPointerCapture(e.pointerId);
    const [x, y] = this.toImage(e);
    this.lastPointer = [e.clientX, e.clientY];
    if (e.button === 1 || e.shiftKey) {
      this.panning = true;
      return;
    }
    const hit = this.hitTest(x, y);
    this.session.selectedPoint = hit;
    this.dragging = hit;
    this.render();
  }

  private pointerMove(e: PointerEvent): void {
    if (this.panning) {
      this.panX += e.clientX - this.lastPointer[0];
      this.panY += e.clientY - this.lastPointer[1];
      this.lastPointer = [e.clientX, e.clientY];
      this.render();
      return;
    }
    if (this.dragging === null) return;
    const [x, y] = this.toImage(e);
    // optimistic local display; the authoritative move happens on release
    const view = this.session.view;
    if (view) {
      view.landmarks[this.dragging] = [x, y];
      this.render();
    }
  }

  private pointerUp(e: PointerEvent): void {
    if (this.panning) {
      this.panning = false;
      return;
    }
    if (this.dragging === null) return;
    const index = this.dragging;
    this.dragging = null;
    const [x, y] = this.toImage(e);
    void this.session.movePoint(index, x, y);
  }

  private wheel(e: WheelEvent): void {
    e.preventDefault();
    const factor = e.deltaY < 0 ? 1.15 : 1 / 1.15;
    const rect = this.canvas.getBoundingClientRect();
    const cx = ((e.clientX - rect.left) * this.canvas.width) / rect.width;
    const cy = ((e.clientY - rect.top) * this.canvas.height) / rect.height;
    this.panX = cx - (cx - this.panX) * factor;
    this.panY = cy - (cy - this.panY) * factor;
    this.zoom *= factor;
    this.render();
  }

  /** Rasterized preview with per-category visibility, cached per response. */
  private previewBitmap(fit: FitResponse): HTMLCanvasElement {
    if (this.previewCache && this.previewCache.fit === fit) {
      return this.previewCache.bitmap;
    }
    const labels = decodeLabelMap(fit.label_map);
    const bitmap = document.createElement("canvas");
    bitmap.width = fit.width;
    bitmap.height = fit.height;
    const bctx = bitmap.getContext("2d")!;
    const data = bctx.createImageData(fit.width, fit.height);
    for (let i = 0; i < labels.length; i++) {
      const id = labels[i]!;
      if (id === 0 || !this.session.isCategoryVisible(id)) continue;
      const color = this.categories[id]?.color ?? [255, 0, 255];
      data.data[i * 4] = color[0];
      data.data[i * 4 + 1] = color[1];
      data.data[i * 4 + 2] = color[2];
      data.data[i * 4 + 3] = 255;
    }
    bctx.putImageData(data, 0, 0);
    this.previewCache = { fit, bitmap };
    return bitmap;
  }

  invalidatePreview(): void {
    this.previewCache = null;
  }

  render(): void {
    const { ctx, canvas } = this;
    ctx.setTransform(1, 0, 0, 1, 0, 0);
    ctx.fillStyle = "#181c22";
    ctx.fillRect(0, 0, canvas.width, canvas.height);
    const view = this.session.view;
    if (!view) return;

    ctx.setTransform(this.zoom, 0, 0, this.zoom, this.panX, this.panY);
    ctx.imageSmoothingEnabled = false;
    if (this.image) {
      ctx.drawImage(this.image, 0, 0, view.width, view.height);
    }
    const fit = this.session.lastFit;
    if (fit) {
      ctx.globalAlpha = this.session.previewOpacity;
      ctx.drawImage(this.previewBitmap(fit), 0, 0);
      ctx.globalAlpha = 1.0;
      this.drawContours(fit);
    }
    this.drawHandles();
  }

  private drawContours(fit: FitResponse): void {
    const { ctx } = this;
    ctx.lineWidth = 1.2 / this.zoom;
    for (const contour of fit.contours) {
      if (!this.session.isCategoryVisible(contour.category_id)) continue;
      const color = this.categories[contour.category_id]?.color ?? [255, 0, 255];
      ctx.strokeStyle = `rgb(${color[0]},${color[1]},${color[2]})`;
      ctx.beginPath();
      const pts = contour.points;
      if (pts.length === 0) continue;
      ctx.moveTo(pts[0]![0], pts[0]![1]);
      for (let i = 1; i < pts.length; i++) {
        ctx.lineTo(pts[i]![0], pts[i]![1]);
      }
      if (contour.closed) ctx.closePath();
      ctx.stroke();
    }
  }

  private drawHandles(): void {
    const { ctx } = this;
    const edited = this.session.editedIndices();
    const radius = HANDLE_RADIUS / this.zoom;
    const pts = this.session.landmarks;
    for (let i = 0; i < pts.length; i++) {
      const p = pts[i]!;
      ctx.beginPath();
      ctx.arc(p[0], p[1], radius, 0, 2 * Math.PI);
      ctx.fillStyle = edited.has(i) ? HANDLE_EDITED : HANDLE_INITIAL;
      ctx.fill();
      if (i === this.session.selectedPoint) {
        ctx.strokeStyle = HANDLE_SELECTED;
        ctx.lineWidth = 1.5 / this.zoom;
        ctx.stroke();
      }
    }
  }
}
