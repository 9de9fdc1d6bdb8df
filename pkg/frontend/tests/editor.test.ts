import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { EditorSession } from "../src/editor.js";
import type { EditorEvents } from "../src/editor.js";
import type { FitResponse, Point } from "../src/types.js";
import { MockServer, parseLandmarkText } from "./mock_server.js";

const fixturePath = fileURLToPath(
  new URL("./fixtures/landmarks.json", import.meta.url),
);
const fixture = JSON.parse(readFileSync(fixturePath, "utf-8")) as {
  sample_id: string;
  points: Point[];
};

function makeServer(): MockServer {
  const second: Point[] = fixture.points.map(([x, y]) => [x + 1, y]);
  return new MockServer(
    [fixture.sample_id, "sample_zz"],
    new Map([
      [fixture.sample_id, fixture.points],
      ["sample_zz", second],
    ]),
  );
}

interface Harness {
  server: MockServer;
  editor: EditorSession;
  previews: FitResponse[];
  statuses: string[];
}

function makeEditor(): Harness {
  const server = makeServer();
  const previews: FitResponse[] = [];
  const statuses: string[] = [];
  const events: EditorEvents = {
    onChange: () => undefined,
    onPreview: (fit) => previews.push(fit),
    onStatus: (message) => statuses.push(message),
  };
  return { server, editor: new EditorSession(server, events), previews, statuses };
}

describe("scripted annotation session", () => {
  it("drag x3, undo x3 back to initial, save parses to initial", async () => {
    const { server, editor, previews } = makeEditor();

    await editor.open(fixture.sample_id);
    await editor.previewSettled();
    expect(previews).toHaveLength(1); // initial preview
    const initial = editor.landmarks.map(([x, y]) => [x, y] as Point);

    // drag three landmarks, one preview refresh each
    const drags: Array<[number, number, number]> = [
      [10, 101.5, 42.25],
      [37, 55.0, 60.5],
      [70, 80.125, 90.75],
    ];
    for (const [index, x, y] of drags) {
      await editor.movePoint(index, x, y);
      await editor.previewSettled();
    }
    expect(previews).toHaveLength(1 + 3);
    expect(editor.editedIndices()).toEqual(new Set([10, 37, 70]));
    expect(editor.dirty).toBe(true);

    // three undos restore the initial landmarks exactly
    for (let i = 0; i < 3; i++) {
      expect(await editor.undo()).toBe(true);
    }
    await editor.previewSettled();
    expect(editor.landmarks).toEqual(initial);
    expect(editor.editedIndices().size).toBe(0);

    // a further undo reports exhausted history and changes nothing
    expect(await editor.undo()).toBe(false);
    expect(editor.landmarks).toEqual(initial);

    // dirty flag is still set (the session was mutated); save persists
    await editor.save();
    expect(editor.dirty).toBe(false);
    const text = server.savedLandmarks.get(fixture.sample_id)!;
    expect(parseLandmarkText(text)).toEqual(initial);
  });

  it("coalesces rapid drags into at most one in-flight fit", async () => {
    const { server, editor } = makeEditor();
    await editor.open(fixture.sample_id);
    await editor.previewSettled();
    const fitsBefore = server.countRequests("POST /v1/fit");

    // hold every fit response open until released
    const releases: Array<() => void> = [];
    server.fitGate = () =>
      new Promise<void>((resolve) => releases.push(resolve));

    // fire 8 sequential edits without waiting for previews
    for (let step = 1; step <= 8; step++) {
      await editor.movePoint(5, 10 + step, 20);
    }
    // release held fit responses until no new ones appear for a few ticks
    let quietTicks = 0;
    while (quietTicks < 3) {
      if (releases.length) {
        while (releases.length) releases.shift()!();
        quietTicks = 0;
      } else {
        quietTicks += 1;
      }
      await new Promise((r) => setTimeout(r, 0));
    }
    server.fitGate = null;
    await editor.previewSettled();

    expect(server.maxConcurrentFits).toBe(1);
    const fitsDuring = server.countRequests("POST /v1/fit") - fitsBefore;
    expect(fitsDuring).toBeLessThan(8); // intermediate states coalesced
    expect(fitsDuring).toBeGreaterThanOrEqual(1);
    // every edit still reached the server
    expect(server.countRequests("PATCH")).toBe(8);
    expect(editor.landmarks[5]![0]).toBe(18);
  });

  it("no-edit save is a no-op and next reaches the end of the manifest", async () => {
    const { server, editor, statuses } = makeEditor();
    await editor.open(fixture.sample_id);
    await editor.previewSettled();

    await editor.save();
    expect(statuses).toContain("no changes to save");
    expect(server.savedLandmarks.size).toBe(0);

    await editor.next();
    await editor.previewSettled();
    expect(editor.view?.sample_id).toBe("sample_zz");
    expect(editor.atEndOfManifest).toBe(false);

    await editor.next();
    expect(editor.atEndOfManifest).toBe(true);
    expect(editor.view?.sample_id).toBe("sample_zz");
    expect(statuses).toContain("end of manifest reached");
  });

  it("next saves dirty sessions before advancing", async () => {
    const { server, editor } = makeEditor();
    await editor.open(fixture.sample_id);
    await editor.movePoint(3, 1.25, 2.5);
    await editor.next();
    await editor.previewSettled();
    expect(server.savedLandmarks.has(fixture.sample_id)).toBe(true);
    const saved = parseLandmarkText(server.savedLandmarks.get(fixture.sample_id)!);
    expect(saved[3]).toEqual([1.25, 2.5]);
  });

  it("category toggles never trigger fit requests", async () => {
    const { server, editor } = makeEditor();
    await editor.open(fixture.sample_id);
    await editor.previewSettled();
    const fits = server.countRequests("POST /v1/fit");
    for (const id of [2, 5, 10, 2]) {
      editor.toggleCategory(id);
    }
    expect(editor.isCategoryVisible(5)).toBe(false);
    expect(editor.isCategoryVisible(2)).toBe(true); // toggled twice
    expect(server.countRequests("POST /v1/fit")).toBe(fits);
  });

  it("reloads the session after a revision conflict", async () => {
    const { server, editor, statuses } = makeEditor();
    await editor.open(fixture.sample_id);
    await editor.previewSettled();
    // another client edits the same session behind our back
    const sid = editor.view!.session_id;
    await server.patchPoints(sid, 0, [{ index: 0, x: 5, y: 5 }]);

    await editor.movePoint(1, 9, 9); // stale revision 0 -> conflict path
    await editor.previewSettled();
    expect(statuses.some((s) => s.includes("reloaded"))).toBe(true);
    expect(editor.view!.revision).toBe(1);
    expect(editor.landmarks[0]).toEqual([5, 5]);
  });
});
