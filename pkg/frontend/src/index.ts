export { render, MANIFEST_SCHEMA_VERSION } from "./render.js";
export type { RenderResult } from "./render.js";
export { FIGURE_KINDS, manifestPath, validateSpec } from "./spec.js";
export type { FigureKind, FigureSpec } from "./spec.js";
export { SUPPORTED_SCHEMA_VERSION } from "./jsonio.js";
export type { AxisScale } from "./scale.js";
