import type { AxisScale } from "./scale.js";

export const FIGURE_KINDS = [
  "complexity-staircase",
  "gap-curves",
  "recurrence-histogram",
  "equid-map",
  "slh-exceedance",
] as const;

export type FigureKind = (typeof FIGURE_KINDS)[number];

export interface FigureSpec {
  kind: FigureKind;
  /** Input files; what each position means depends on the kind. */
  inputs: string[];
  /** Output figure path; vector only, must end in .svg. */
  output: string;
  scales?: { x?: AxisScale; y?: AxisScale };
}

const SCALE_VALUES: AxisScale[] = ["linear", "log"];

export function validateSpec(spec: FigureSpec): void {
  if (!FIGURE_KINDS.includes(spec.kind)) {
    throw new Error(
      `unknown figure kind "${spec.kind}"; choose from ${FIGURE_KINDS.join(", ")}`,
    );
  }
  if (!Array.isArray(spec.inputs) || spec.inputs.length === 0) {
    throw new Error("figure spec needs at least one input file");
  }
  if (!spec.output.endsWith(".svg")) {
    throw new Error(
      `output must be a vector .svg path, got "${spec.output}"`,
    );
  }
  for (const axis of ["x", "y"] as const) {
    const value = spec.scales?.[axis];
    if (value !== undefined && !SCALE_VALUES.includes(value)) {
      throw new Error(`scales.${axis} must be "linear" or "log", got "${value}"`);
    }
  }
}

/** The manifest lands beside the figure: fig.svg -> fig.manifest.json. */
export function manifestPath(output: string): string {
  return output.slice(0, -".svg".length) + ".manifest.json";
}
