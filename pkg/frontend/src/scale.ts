import { scaleLinear, scaleLog } from "d3";

export type AxisScale = "linear" | "log";

/** A resolved axis: the data-to-pixel map plus what the manifest reports. */
export interface Mapper {
  scale: AxisScale;
  domain: [number, number];
  range: [number, number];
  map(value: number): number;
  ticks(): number[];
}

export function makeScale(
  kind: AxisScale,
  domain: [number, number],
  range: [number, number],
  context: string,
): Mapper {
  if (kind === "log" && (domain[0] <= 0 || domain[1] <= 0)) {
    throw new Error(
      `${context}: log scale needs positive values, got domain [${domain[0]}, ${domain[1]}]`,
    );
  }
  const base = (kind === "log" ? scaleLog() : scaleLinear())
    .domain(domain)
    .range(range)
    .nice();
  const nicedDomain = base.domain() as [number, number];
  return {
    scale: kind,
    domain: nicedDomain,
    range,
    map: (value: number) => base(value),
    ticks: () => base.ticks(kind === "log" ? 6 : 7),
  };
}

/** Pad a [lo, hi] data extent so points do not sit on the frame. */
export function padded(lo: number, hi: number, frac = 0.05): [number, number] {
  if (lo === hi) {
    const pad = lo === 0 ? 1 : Math.abs(lo) * frac;
    return [lo - pad, hi + pad];
  }
  const pad = (hi - lo) * frac;
  return [lo - pad, hi + pad];
}

export function extent(values: number[], context: string): [number, number] {
  if (values.length === 0) {
    throw new Error(`${context}: no values to scale`);
  }
  let lo = values[0];
  let hi = values[0];
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return [lo, hi];
}
