import { numericColumn, readCsv, requireColumns } from "../csv.js";
import { extent, makeScale, padded } from "../scale.js";
import { drawFrame, fmt, plotArea, Svg } from "../svg.js";
import { AXIS_COLOR, FONT_SIZE } from "../style.js";
import { axisManifest, expectInputs, seriesColor } from "./common.js";
import type { AxisScales, RenderedFigure } from "./common.js";

/** Spectral gap against system size, one line per moment order k. */
export function gapCurves(inputs: string[], scales: AxisScales): RenderedFigure {
  expectInputs("gap-curves", inputs, 1);
  const table = readCsv(inputs[0]);
  requireColumns(table, ["n", "k", "gap"]);
  const n = numericColumn(table, "n");
  const k = numericColumn(table, "k");
  const gap = numericColumn(table, "gap");

  const byK = new Map<number, { n: number; gap: number }[]>();
  for (let i = 0; i < n.length; i++) {
    if (!byK.has(k[i])) byK.set(k[i], []);
    byK.get(k[i])!.push({ n: n[i], gap: gap[i] });
  }
  const ks = [...byK.keys()].sort((a, b) => a - b);
  for (const rows of byK.values()) rows.sort((a, b) => a.n - b.n);

  const area = plotArea();
  const xm = makeScale(scales.x ?? "linear", padded(...extent(n, `${table.file}: column "n"`)),
    [area.left, area.right], "x axis");
  const ym = makeScale(scales.y ?? "log", extent(gap, `${table.file}: column "gap"`),
    [area.bottom, area.top], `${table.file}: column "gap" on the y axis`);

  const svg = new Svg();
  drawFrame(svg, xm, ym, {
    title: "Moment-operator spectral gap",
    xLabel: "n (sites)",
    yLabel: "gap",
    xTickLabel: (v) => (Number.isInteger(v) ? String(v) : ""),
  });

  const series = ks.map((kVal, si) => {
    const color = seriesColor(si);
    const rows = byK.get(kVal)!;
    const pts = rows.map((r) => ({
      n: r.n,
      gap: r.gap,
      px: Number(fmt(xm.map(r.n))),
      py: Number(fmt(ym.map(r.gap))),
    }));
    let d = "";
    pts.forEach((p, i) => {
      d += `${i === 0 ? "M" : "L"}${fmt(p.px)} ${fmt(p.py)}`;
    });
    svg.path(d, `fill="none" stroke="${color}" stroke-width="1.5"`);
    for (const p of pts) {
      svg.circle(p.px, p.py, 3, `fill="${color}"`);
    }
    return { label: `k = ${kVal}`, k: kVal, color, points: pts };
  });

  series.forEach((s, si) => {
    const y = area.top + 10 + 16 * si;
    svg.line(area.right - 90, y, area.right - 70, y, `stroke="${s.color}" stroke-width="1.5"`);
    svg.text(area.right - 65, y + 4, s.label, `font-size="${FONT_SIZE}" fill="${AXIS_COLOR}"`);
  });

  return {
    svgText: svg.toString(),
    manifestBody: {
      axes: { x: axisManifest(xm), y: axisManifest(ym) },
      series,
    },
  };
}
