import { column, readCsv, requireColumns } from "../csv.js";
import { makeScale } from "../scale.js";
import { drawFrame, fmt, plotArea, Svg } from "../svg.js";
import { ANNOTATION_COLOR, AXIS_COLOR, FONT_SIZE } from "../style.js";
import { axisManifest, expectInputs, seriesColor } from "./common.js";
import type { AxisScales, RenderedFigure } from "./common.js";

const EXCEEDS = "exceeds r_max";

interface Sample {
  t: number;
  level: number;
  capped: boolean;
}

interface Series {
  column: string;
  label: string;
  samples: Sample[];
}

/**
 * Complexity-versus-time staircase from a walk trace. Values above the
 * search table ("exceeds r_max") are drawn at one level above the largest
 * resolved complexity; the saturation plateau and the post-saturation
 * return dips are annotated per series.
 */
export function complexityStaircase(inputs: string[], scales: AxisScales): RenderedFigure {
  expectInputs("complexity-staircase", inputs, 1);
  const table = readCsv(inputs[0]);
  requireColumns(table, ["t"]);
  const epsColumns = table.header.filter((h) => h.startsWith("complexity_eps_"));
  if (epsColumns.length === 0) {
    throw new Error(
      `${table.file}: missing column "complexity_eps_*" (columns: ${table.header.join(", ")})`,
    );
  }

  const t = column(table, "t").map((v, i) => {
    const x = Number(v);
    if (v === "" || !Number.isFinite(x)) {
      throw new Error(`${table.file}: column "t" row ${i + 1}: not a number: "${v}"`);
    }
    return x;
  });

  let maxResolved = 0;
  let anyCapped = false;
  const rawSeries = epsColumns.map((name) => {
    const values = column(table, name).map((v, i) => {
      if (v === EXCEEDS) {
        anyCapped = true;
        return null;
      }
      const x = Number(v);
      if (v === "" || !Number.isFinite(x)) {
        throw new Error(
          `${table.file}: column "${name}" row ${i + 1}: not a number: "${v}"`,
        );
      }
      if (x > maxResolved) maxResolved = x;
      return x;
    });
    return { name, values };
  });
  const capLevel = anyCapped ? maxResolved + 1 : null;

  const series: Series[] = rawSeries.map(({ name, values }) => ({
    column: name,
    label: `eps = ${name.slice("complexity_eps_".length)}`,
    samples: values.map((v, i) => ({
      t: t[i],
      level: v === null ? (capLevel as number) : v,
      capped: v === null,
    })),
  }));

  const area = plotArea();
  const xm = makeScale(scales.x ?? "linear", [t[0], t[t.length - 1]], [area.left, area.right], "x axis");
  const yTop = capLevel ?? maxResolved;
  const ym = makeScale(scales.y ?? "linear", [0, yTop], [area.bottom, area.top], "y axis");

  const svg = new Svg();
  drawFrame(svg, xm, ym, {
    title: "Complexity of a circuit walk",
    xLabel: "t (steps)",
    yLabel: "epsilon-complexity",
  });

  if (capLevel !== null) {
    const y = ym.map(capLevel);
    svg.line(area.left, y, area.right, y, `stroke="${ANNOTATION_COLOR}" stroke-width="1" stroke-dasharray="2 3"`);
    svg.text(area.right - 4, y - 4, `> ${maxResolved} (table exhausted)`,
      `font-size="10" fill="${ANNOTATION_COLOR}" text-anchor="end"`);
  }

  const manifestSeries = series.map((s, si) => {
    const color = seriesColor(si);
    const pts = s.samples.map((sample) => ({
      t: sample.t,
      level: sample.level,
      capped: sample.capped,
      px: Number(fmt(xm.map(sample.t))),
      py: Number(fmt(ym.map(sample.level))),
    }));

    let d = `M${fmt(pts[0].px)} ${fmt(pts[0].py)}`;
    for (let i = 1; i < pts.length; i++) {
      d += `H${fmt(pts[i].px)}V${fmt(pts[i].py)}`;
    }
    svg.path(d, `fill="none" stroke="${color}" stroke-width="1.5"`);

    const satLevel = Math.max(...s.samples.map((p) => p.level));
    const satIndex = s.samples.findIndex((p) => p.level === satLevel);
    const satT = s.samples[satIndex].t;
    const satY = ym.map(satLevel);
    svg.line(xm.map(satT), satY, area.right, satY,
      `stroke="${color}" stroke-width="1" stroke-dasharray="5 4" opacity="0.7"`);

    const dips: { t: number; level: number; px: number; py: number }[] = [];
    let below = false;
    for (let i = satIndex + 1; i < s.samples.length; i++) {
      const p = s.samples[i];
      if (p.level < satLevel && !below) {
        dips.push({
          t: p.t,
          level: p.level,
          px: Number(fmt(xm.map(p.t))),
          py: Number(fmt(ym.map(p.level))),
        });
        below = true;
      } else if (p.level >= satLevel) {
        below = false;
      }
    }
    for (const dip of dips) {
      svg.circle(dip.px, dip.py, 3, `fill="none" stroke="${color}" stroke-width="1.2"`);
    }
    if (dips.length > 0) {
      svg.text(dips[0].px, dips[0].py + 14, "first return",
        `font-size="10" fill="${color}" text-anchor="middle"`);
    }

    return {
      column: s.column,
      label: s.label,
      color,
      points: pts,
      saturation: { level: satLevel, t: satT, px: Number(fmt(xm.map(satT))), py: Number(fmt(satY)) },
      dips,
    };
  });

  series.forEach((s, si) => {
    const y = area.top + 10 + 16 * si;
    svg.line(area.left + 8, y, area.left + 28, y, `stroke="${seriesColor(si)}" stroke-width="1.5"`);
    svg.text(area.left + 33, y + 4, s.label, `font-size="${FONT_SIZE}" fill="${AXIS_COLOR}"`);
  });

  return {
    svgText: svg.toString(),
    manifestBody: {
      axes: { x: axisManifest(xm), y: axisManifest(ym) },
      cap_level: capLevel,
      series: manifestSeries,
    },
  };
}
