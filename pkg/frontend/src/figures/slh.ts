import { numericColumn, readCsv, requireColumns } from "../csv.js";
import { parseWith, readJson, slhSummarySchema } from "../jsonio.js";
import { extent, makeScale, padded } from "../scale.js";
import { drawFrame, fmt, labelNumber, plotArea, Svg } from "../svg.js";
import { ANNOTATION_COLOR, AXIS_COLOR, FONT_SIZE, PALETTE } from "../style.js";
import { axisManifest, csvJsonPair } from "./common.js";
import type { AxisScales, RenderedFigure } from "./common.js";

/**
 * Observed exceedance frequency of the running supremum against the
 * maximal-inequality bound, per threshold. CI halfwidths are drawn as
 * error bars; the run verdict is annotated from the summary.
 */
export function slhExceedance(inputs: string[], scales: AxisScales): RenderedFigure {
  const { csv, json } = csvJsonPair("slh-exceedance", inputs);
  const summary = parseWith(json, slhSummarySchema, readJson(json));

  const table = readCsv(csv);
  requireColumns(table, ["x", "exceed_freq", "ci_halfwidth", "bound"]);
  const x = numericColumn(table, "x");
  const freq = numericColumn(table, "exceed_freq");
  const ci = numericColumn(table, "ci_halfwidth");
  const bound = numericColumn(table, "bound");

  const area = plotArea();
  const xm = makeScale(scales.x ?? "linear", padded(...extent(x, `${table.file}: column "x"`)),
    [area.left, area.right], "x axis");
  const yValues = [...freq, ...bound.map((b) => Math.min(b, 2))];
  const ym = makeScale(scales.y ?? "linear", padded(0, Math.max(...yValues)),
    [area.bottom, area.top], `${table.file}: exceedance on the y axis`);

  const svg = new Svg();
  drawFrame(svg, xm, ym, {
    title: "Supremum exceedance vs bound",
    xLabel: "threshold x",
    yLabel: "frequency",
  });

  const clampTop = ym.domain[1];
  let d = "";
  const boundPts = x.map((xv, i) => {
    const shown = Math.min(bound[i], clampTop);
    const px = xm.map(xv);
    const py = ym.map(shown);
    d += `${i === 0 ? "M" : "L"}${fmt(px)} ${fmt(py)}`;
    return {
      x: xv, bound: bound[i], clamped: bound[i] > clampTop,
      px: Number(fmt(px)), py: Number(fmt(py)),
    };
  });
  svg.path(d, `fill="none" stroke="${ANNOTATION_COLOR}" stroke-width="1.5" stroke-dasharray="6 4"`);

  const color = PALETTE[0];
  const freqPts = x.map((xv, i) => {
    const px = xm.map(xv);
    const py = ym.map(freq[i]);
    const lo = ym.map(Math.max(freq[i] - ci[i], ym.domain[0]));
    const hi = ym.map(Math.min(freq[i] + ci[i], clampTop));
    svg.line(px, lo, px, hi, `stroke="${color}" stroke-width="1"`);
    svg.circle(px, py, 3, `fill="${color}"`);
    return { x: xv, freq: freq[i], ci: ci[i], px: Number(fmt(px)), py: Number(fmt(py)) };
  });

  const legendY = area.top + 10;
  svg.circle(area.right - 150, legendY, 3, `fill="${color}"`);
  svg.text(area.right - 142, legendY + 4, "observed", `font-size="${FONT_SIZE}" fill="${AXIS_COLOR}"`);
  svg.line(area.right - 150, legendY + 16, area.right - 130, legendY + 16,
    `stroke="${ANNOTATION_COLOR}" stroke-width="1.5" stroke-dasharray="6 4"`);
  svg.text(area.right - 124, legendY + 20, "2d exp(-x^2/2ms)", `font-size="${FONT_SIZE}" fill="${AXIS_COLOR}"`);

  svg.text(area.left + 8, area.bottom - 10,
    `verdict: ${summary.verdict} (m = ${labelNumber(summary.m)}, s = ${labelNumber(summary.params.s)})`,
    `font-size="11" fill="${AXIS_COLOR}"`);

  return {
    svgText: svg.toString(),
    manifestBody: {
      axes: { x: axisManifest(xm), y: axisManifest(ym) },
      observed: freqPts,
      bound: boundPts,
      verdict: summary.verdict,
      params: { m: summary.m, s: summary.params.s, unitarity_defect: summary.unitarity_defect },
    },
  };
}
