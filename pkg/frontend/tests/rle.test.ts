import { describe, expect, it } from "vitest";

import { decodeLabelMap, decodeLabelRows } from "../src/rle.js";

function encodeRow(row: number[]): number[] {
  const out: number[] = [];
  let run = 1;
  for (let i = 1; i <= row.length; i++) {
    if (i < row.length && row[i] === row[i - 1]) {
      run += 1;
    } else {
      out.push(row[i - 1]!, run);
      run = 1;
    }
  }
  return out;
}

describe("decodeLabelRows", () => {
  it("decodes a simple row", () => {
    const out = decodeLabelRows([[0, 2, 4, 3, 0, 1]], 6);
    expect(Array.from(out)).toEqual([0, 0, 4, 4, 4, 0]);
  });

  it("round-trips random label maps against a reference encoder", () => {
    let seed = 123456789;
    const rand = () => {
      seed = (seed * 1103515245 + 12345) % 2147483648;
      return seed / 2147483648;
    };
    for (let trial = 0; trial < 50; trial++) {
      const width = 1 + Math.floor(rand() * 24);
      const height = 1 + Math.floor(rand() * 24);
      const labels: number[][] = [];
      for (let y = 0; y < height; y++) {
        labels.push(
          Array.from({ length: width }, () => Math.floor(rand() * 11)),
        );
      }
      const rows = labels.map(encodeRow);
      const decoded = decodeLabelRows(rows, width);
      expect(Array.from(decoded)).toEqual(labels.flat());
    }
  });

  it("rejects malformed rows", () => {
    expect(() => decodeLabelRows([[0, 2, 1]], 4)).toThrow(/odd/);
    expect(() => decodeLabelRows([[0, 5]], 4)).toThrow(/exceed/);
    expect(() => decodeLabelRows([[0, 2]], 4)).toThrow(/cover/);
  });

  it("validates the envelope", () => {
    expect(() =>
      decodeLabelMap({
        encoding: "row_value_runs",
        width: 2,
        height: 2,
        rows: [[0, 2]],
      }),
    ).toThrow(/rows/);
  });
});
