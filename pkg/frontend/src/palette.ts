import type { CategoryInfo } from "./types.js";

/** Fallback copy of the service's category table (GET /v1/categories wins). */
export const DEFAULT_CATEGORIES: CategoryInfo[] = [
  { id: 0, name: "background", color: [0, 0, 0] },
  { id: 1, name: "skin", color: [255, 211, 165] },
  { id: 2, name: "left_eyebrow", color: [120, 72, 36] },
  { id: 3, name: "right_eyebrow", color: [169, 109, 58] },
  { id: 4, name: "left_eye", color: [48, 160, 80] },
  { id: 5, name: "right_eye", color: [36, 148, 148] },
  { id: 6, name: "nose", color: [238, 206, 32] },
  { id: 7, name: "upper_lip", color: [222, 58, 58] },
  { id: 8, name: "inner_mouth", color: [140, 16, 49] },
  { id: 9, name: "lower_lip", color: [244, 121, 121] },
  { id: 10, name: "hair", color: [64, 80, 224] },
];

/** Point handle colors: untouched landmarks vs manually corrected ones. */
export const HANDLE_INITIAL = "#ff6eb4";
export const HANDLE_EDITED = "#2ecc40";
export const HANDLE_SELECTED = "#ffffff";
