import { AnnotatorCanvas } from "./canvas.js";
import { EditorSession } from "./editor.js";
import { HttpClient } from "./api.js";
import { DEFAULT_CATEGORIES } from "./palette.js";
import type { CategoryInfo } from "./types.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

async function boot(): Promise<void> {
  const client = new HttpClient("");
  const canvasEl = el<HTMLCanvasElement>("editor-canvas");
  const statusEl = el<HTMLDivElement>("status");
  const toggleBox = el<HTMLDivElement>("category-toggles");
  const sampleLabel = el<HTMLSpanElement>("sample-label");

  let categories: CategoryInfo[] = DEFAULT_CATEGORIES;
  try {
    categories = await client.categories();
  } catch {
    // offline preview: fall back to the bundled palette
  }

  const session = new EditorSession(client, {
    onChange: () => {
      canvas.invalidatePreview();
      canvas.render();
      sampleLabel.textContent = session.view
        ? `${session.view.sample_id}${session.dirty ? " *" : ""}`
        : "no sample";
    },
    onStatus: (message, kind) => {
      statusEl.textContent = message;
      statusEl.dataset.kind = kind;
    },
  });
  const canvas = new AnnotatorCanvas(canvasEl, session, categories);

  // category visibility toggles (digit keys mirror these checkboxes)
  for (const cat of categories.filter((c) => c.id > 0)) {
    const label = document.createElement("label");
    const box = document.createElement("input");
    box.type = "checkbox";
    box.checked = true;
    box.addEventListener("change", () => session.toggleCategory(cat.id));
    const swatch = document.createElement("span");
    swatch.className = "swatch";
    swatch.style.background = `rgb(${cat.color.join(",")})`;
    label.append(box, swatch, ` ${cat.name}`);
    toggleBox.append(label);
  }

  const opacity = el<HTMLInputElement>("opacity");
  opacity.addEventListener("input", () =>
    session.setOpacity(Number(opacity.value) / 100),
  );

  const guarded = (fn: () => Promise<void>) => () =>
    fn().catch((err) => {
      statusEl.textContent = String(err);
      statusEl.dataset.kind = "error";
    });

  const doUndo = guarded(async () => void (await session.undo()));
  const doSave = guarded(() => session.save());
  const doNext = guarded(async () => {
    if (session.dirty && !window.confirm("Unsaved edits will be saved. Continue?")) {
      return;
    }
    await session.next();
    if (session.view && !session.atEndOfManifest) {
      canvas.setImage(client.imageUrl(session.view.sample_id));
    }
  });

  el<HTMLButtonElement>("btn-undo").addEventListener("click", doUndo);
  el<HTMLButtonElement>("btn-save").addEventListener("click", doSave);
  el<HTMLButtonElement>("btn-next").addEventListener("click", doNext);

  document.addEventListener("keydown", (e) => {
    if (e.target instanceof HTMLInputElement) return;
    if (e.key === "u") void doUndo();
    else if (e.key === "s") void doSave();
    else if (e.key === "n") void doNext();
    else if (e.key === "Tab") {
      e.preventDefault();
      const count = session.landmarks.length;
      if (count) {
        const current = session.selectedPoint ?? -1;
        session.selectedPoint = (current + 1 + (e.shiftKey ? -2 + count : 0)) % count;
        canvas.render();
      }
    } else if (e.key.startsWith("Arrow") && session.selectedPoint !== null) {
      e.preventDefault();
      const step = e.shiftKey ? 0.1 : 1.0;
      const deltas: Record<string, [number, number]> = {
        ArrowUp: [0, -step],
        ArrowDown: [0, step],
        ArrowLeft: [-step, 0],
        ArrowRight: [step, 0],
      };
      const d = deltas[e.key];
      const p = session.landmarks[session.selectedPoint];
      if (d && p) {
        void session.movePoint(session.selectedPoint, p[0] + d[0], p[1] + d[1]);
      }
    } else if (/^[0-9]$/.test(e.key)) {
      const id = Number(e.key) === 0 ? 10 : Number(e.key);
      session.toggleCategory(id);
      const box = toggleBox.querySelectorAll<HTMLInputElement>("input")[id - 1];
      if (box) box.checked = session.isCategoryVisible(id);
    }
  });

  const samples = await client.samples();
  const first = new URLSearchParams(location.search).get("sample") ?? samples[0]?.id;
  if (!first) {
    statusEl.textContent = "dataset has no samples";
    return;
  }
  await session.open(first);
  canvas.setImage(client.imageUrl(first));
}

boot().catch((err) => {
  const statusEl = document.getElementById("status");
  if (statusEl) statusEl.textContent = `failed to start: ${err}`;
});
