import { describe, expect, it } from "vitest";

import { SingleFlight } from "../src/coalesce.js";

function deferred<T>() {
  let resolve!: (v: T) => void;
  const promise = new Promise<T>((r) => (resolve = r));
  return { promise, resolve };
}

describe("SingleFlight", () => {
  it("runs at most one task at a time and keeps only the latest", async () => {
    const results: number[] = [];
    let running = 0;
    let maxRunning = 0;
    let started = 0;
    const gates: Array<ReturnType<typeof deferred<void>>> = [];

    const flight = new SingleFlight<number>((r) => results.push(r));
    const task = (value: number) => async () => {
      running += 1;
      started += 1;
      maxRunning = Math.max(maxRunning, running);
      const gate = deferred<void>();
      gates.push(gate);
      await gate.promise;
      running -= 1;
      return value;
    };

    for (let i = 1; i <= 10; i++) {
      flight.schedule(task(i));
    }
    expect(flight.inFlight).toBe(true);
    // release tasks as they start (the queued latest task opens a new gate)
    let released = 0;
    while (released < gates.length) {
      gates[released]!.resolve();
      released += 1;
      await new Promise((r) => setTimeout(r, 0));
    }
    await flight.idle();
    // first task ran, intermediate ones 2..9 were replaced by 10
    expect(started).toBe(2);
    expect(maxRunning).toBe(1);
    expect(results).toEqual([1, 10]);
  });

  it("recovers after a failing task", async () => {
    const results: number[] = [];
    const errors: unknown[] = [];
    const flight = new SingleFlight<number>(
      (r) => results.push(r),
      (e) => errors.push(e),
    );
    flight.schedule(async () => {
      throw new Error("boom");
    });
    await flight.idle();
    flight.schedule(async () => 7);
    await flight.idle();
    expect(errors).toHaveLength(1);
    expect(results).toEqual([7]);
  });
});
