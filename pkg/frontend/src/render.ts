import { mkdirSync, writeFileSync } from "node:fs";
import { dirname } from "node:path";
import { complexityStaircase } from "./figures/staircase.js";
import { equidMap } from "./figures/equidmap.js";
import { gapCurves } from "./figures/gapcurves.js";
import { recurrenceHistogram } from "./figures/recurrence.js";
import { slhExceedance } from "./figures/slh.js";
import type { AxisScales, RenderedFigure } from "./figures/common.js";
import { manifestPath, validateSpec } from "./spec.js";
import type { FigureKind, FigureSpec } from "./spec.js";
import { HEIGHT, WIDTH } from "./style.js";

export const MANIFEST_SCHEMA_VERSION = 1;

const RENDERERS: Record<FigureKind, (inputs: string[], scales: AxisScales) => RenderedFigure> = {
  "complexity-staircase": complexityStaircase,
  "gap-curves": gapCurves,
  "recurrence-histogram": recurrenceHistogram,
  "equid-map": equidMap,
  "slh-exceedance": slhExceedance,
};

export interface RenderResult {
  figure: string;
  manifest: string;
}

/**
 * Render a figure spec to its SVG file and write the data-to-pixel
 * manifest beside it. Output bytes are a pure function of the input
 * files: fixed style, no timestamps, no randomness.
 */
export function render(spec: FigureSpec): RenderResult {
  validateSpec(spec);
  const figure = RENDERERS[spec.kind](spec.inputs, spec.scales ?? {});
  const manifest = {
    schema_version: MANIFEST_SCHEMA_VERSION,
    kind: spec.kind,
    sources: spec.inputs,
    size: { width: WIDTH, height: HEIGHT },
    ...figure.manifestBody,
  };
  mkdirSync(dirname(spec.output) || ".", { recursive: true });
  writeFileSync(spec.output, figure.svgText);
  const manifestFile = manifestPath(spec.output);
  writeFileSync(manifestFile, JSON.stringify(manifest, null, 2) + "\n");
  return { figure: spec.output, manifest: manifestFile };
}
