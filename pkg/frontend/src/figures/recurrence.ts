import { column, numericColumn, readCsv, requireColumns } from "../csv.js";
import { parseWith, readJson, recurrenceSummarySchema } from "../jsonio.js";
import { makeScale } from "../scale.js";
import { drawFrame, fmt, labelNumber, plotArea, Svg } from "../svg.js";
import { ANNOTATION_COLOR, PALETTE } from "../style.js";
import { axisManifest, csvJsonPair } from "./common.js";
import type { AxisScales, RenderedFigure } from "./common.js";

/**
 * Histogram of blocks-to-first-hit over realizations, with the geometric
 * reference 1/Vol(eps) read from the run summary drawn as a vertical line
 * (its Monte Carlo CI as a band) and the sample mean beside it.
 */
export function recurrenceHistogram(inputs: string[], scales: AxisScales): RenderedFigure {
  const { csv, json } = csvJsonPair("recurrence-histogram", inputs);
  const summary = parseWith(json, recurrenceSummarySchema, readJson(json));

  const table = readCsv(csv);
  requireColumns(table, ["blocks_to_hit", "censored"]);
  const censoredFlags = column(table, "censored");
  const blocksRaw = column(table, "blocks_to_hit");
  const blocks: number[] = [];
  let censoredCount = 0;
  for (let i = 0; i < blocksRaw.length; i++) {
    if (censoredFlags[i] === "true") {
      censoredCount += 1;
      continue;
    }
    const b = Number(blocksRaw[i]);
    if (blocksRaw[i] === "" || !Number.isFinite(b)) {
      throw new Error(
        `${table.file}: column "blocks_to_hit" row ${i + 1}: not a number: "${blocksRaw[i]}"`,
      );
    }
    blocks.push(b);
  }
  if (blocks.length === 0) {
    throw new Error(`${table.file}: every realization is censored, nothing to histogram`);
  }

  const reference = 1 / summary.vol_reference.estimate;
  const refBand: [number, number] = [
    1 / summary.vol_reference.ci_high,
    1 / summary.vol_reference.ci_low,
  ];

  const maxBlocks = Math.max(...blocks, reference);
  const binWidth = Math.max(1, Math.ceil((maxBlocks + 1) / 24));
  const binCount = Math.ceil((maxBlocks + 1) / binWidth);
  const counts = new Array<number>(binCount).fill(0);
  for (const b of blocks) {
    counts[Math.min(Math.floor(b / binWidth), binCount - 1)] += 1;
  }

  const area = plotArea();
  const xm = makeScale(scales.x ?? "linear", [0, binCount * binWidth], [area.left, area.right], "x axis");
  const ym = makeScale(scales.y ?? "linear", [0, Math.max(...counts)], [area.bottom, area.top], "y axis");

  const svg = new Svg();
  drawFrame(svg, xm, ym, {
    title: "Recurrence times",
    xLabel: "blocks to first return",
    yLabel: "realizations",
  });

  const barColor = PALETTE[0];
  const bins = counts.map((count, i) => {
    const lo = i * binWidth;
    const hi = lo + binWidth;
    const x = xm.map(lo);
    const w = xm.map(hi) - x;
    const y = ym.map(count);
    if (count > 0) {
      svg.rect(x + 0.5, y, Math.max(w - 1, 0.5), area.bottom - y,
        `fill="${barColor}" fill-opacity="0.75"`);
    }
    return { lo, hi, count, px: Number(fmt(x)), py: Number(fmt(y)) };
  });

  const bandX0 = xm.map(refBand[0]);
  const bandX1 = xm.map(refBand[1]);
  svg.rect(bandX0, area.top, bandX1 - bandX0, area.bottom - area.top,
    `fill="${ANNOTATION_COLOR}" fill-opacity="0.12"`);
  const refX = xm.map(reference);
  svg.line(refX, area.top, refX, area.bottom,
    `stroke="${ANNOTATION_COLOR}" stroke-width="1.5" stroke-dasharray="6 4"`);
  svg.text(refX + 4, area.top + 14, `1/Vol(eps) = ${labelNumber(Number(reference.toPrecision(4)))}`,
    `font-size="11" fill="${ANNOTATION_COLOR}"`);

  let meanPx: number | null = null;
  if (summary.mean_blocks_to_hit !== null) {
    const meanX = xm.map(summary.mean_blocks_to_hit);
    meanPx = Number(fmt(meanX));
    svg.line(meanX, area.top, meanX, area.bottom,
      `stroke="${PALETTE[1]}" stroke-width="1.5" stroke-dasharray="2 3"`);
    svg.text(meanX + 4, area.top + 30, `mean = ${labelNumber(Number(summary.mean_blocks_to_hit.toPrecision(4)))}`,
      `font-size="11" fill="${PALETTE[1]}"`);
  }
  if (censoredCount > 0) {
    svg.text(area.right - 4, area.bottom - 8,
      `censored: ${censoredCount}/${blocksRaw.length}`,
      `font-size="11" fill="${ANNOTATION_COLOR}" text-anchor="end"`);
  }

  return {
    svgText: svg.toString(),
    manifestBody: {
      axes: { x: axisManifest(xm), y: axisManifest(ym) },
      bin_width: binWidth,
      bins,
      censored: censoredCount,
      reference: {
        value: reference,
        band: refBand,
        px: Number(fmt(refX)),
        mean: summary.mean_blocks_to_hit,
        mean_px: meanPx,
      },
      params: { eps: summary.params.eps, tau_block: summary.params.tau_block },
    },
  };
}
