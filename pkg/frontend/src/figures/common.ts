import type { Mapper } from "../scale.js";
import { PALETTE } from "../style.js";

export interface RenderedFigure {
  svgText: string;
  manifestBody: Record<string, unknown>;
}

export interface AxisScales {
  x?: "linear" | "log";
  y?: "linear" | "log";
}

export function axisManifest(m: Mapper) {
  return { scale: m.scale, domain: m.domain, range: m.range };
}

export function seriesColor(i: number): string {
  return PALETTE[i % PALETTE.length];
}

export function expectInputs(kind: string, inputs: string[], count: number): void {
  if (inputs.length !== count) {
    throw new Error(
      `${kind} takes exactly ${count} input file${count === 1 ? "" : "s"}, got ${inputs.length}`,
    );
  }
}

/** Split a [csv, json] input pair given in either order. */
export function csvJsonPair(kind: string, inputs: string[]): { csv: string; json: string } {
  expectInputs(kind, inputs, 2);
  const csv = inputs.find((p) => p.endsWith(".csv"));
  const json = inputs.find((p) => p.endsWith(".json"));
  if (!csv || !json) {
    throw new Error(`${kind} needs one .csv and one .json input, got: ${inputs.join(", ")}`);
  }
  return { csv, json };
}
