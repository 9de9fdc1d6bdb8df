import type { RleLabelMap } from "./types.js";

/**
 * Decode a row_value_runs label map into a flat row-major Uint8Array.
 * Each row is [value, run, value, run, ...] with runs summing to width.
 */
export function decodeLabelRows(rows: number[][], width: number): Uint8Array {
  const out = new Uint8Array(rows.length * width);
  for (let y = 0; y < rows.length; y++) {
    const row = rows[y]!;
    if (row.length % 2 !== 0) {
      throw new Error(`row ${y}: odd run-length list`);
    }
    let pos = 0;
    for (let k = 0; k < row.length; k += 2) {
      const value = row[k]!;
      const run = row[k + 1]!;
      if (run < 0 || pos + run > width) {
        throw new Error(`row ${y}: runs exceed width ${width}`);
      }
      out.fill(value, y * width + pos, y * width + pos + run);
      pos += run;
    }
    if (pos !== width) {
      throw new Error(`row ${y}: runs cover ${pos} of ${width} columns`);
    }
  }
  return out;
}

export function decodeLabelMap(map: RleLabelMap): Uint8Array {
  if (map.encoding !== "row_value_runs") {
    throw new Error(`unknown label map encoding ${map.encoding}`);
  }
  if (map.rows.length !== map.height) {
    throw new Error(`expected ${map.height} rows, got ${map.rows.length}`);
  }
  return decodeLabelRows(map.rows, map.width);
}
