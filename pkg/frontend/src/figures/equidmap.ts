import { column, readCsv, requireColumns } from "../csv.js";
import { equidCertificateSchema, parseWith, readJson } from "../jsonio.js";
import { fmt, labelNumber, plotArea, Svg } from "../svg.js";
import { AXIS_COLOR, FONT_FAMILY, STATUS_COLORS, TITLE_SIZE } from "../style.js";
import type { AxisScales, RenderedFigure } from "./common.js";

type CellStatus = "contained" | "disjoint" | "open";

interface CertColumn {
  cert: string;
  cells: string;
  t: number;
  verdict: "pass" | "fail" | "inconclusive";
  byKey: Map<string, CellStatus>;
}

const STATUS_FILL: Record<CellStatus, string> = {
  contained: STATUS_COLORS.pass,
  disjoint: STATUS_COLORS.fail,
  open: STATUS_COLORS.open,
};

/**
 * Pass/fail map over equidistribution certificates: one column per
 * certificate (sorted by walk depth t), one row per tested ball, each
 * cell colored by whether the hit-rate CI landed inside the Haar window,
 * missed it entirely, or straddled it.
 */
export function equidMap(inputs: string[], scales: AxisScales): RenderedFigure {
  void scales; // both axes are categorical here
  if (inputs.length === 0 || inputs.length % 2 !== 0) {
    throw new Error(
      "equid-map takes certificate/cell-table pairs " +
        `(equid_certificate.json, equid_cells.csv, ...), got ${inputs.length} inputs`,
    );
  }

  const columns: CertColumn[] = [];
  for (let i = 0; i < inputs.length; i += 2) {
    const cert = inputs[i];
    const cells = inputs[i + 1];
    if (!cert.endsWith(".json") || !cells.endsWith(".csv")) {
      throw new Error(
        `equid-map inputs must alternate certificate .json and cells .csv, got "${cert}", "${cells}"`,
      );
    }
    const summary = parseWith(cert, equidCertificateSchema, readJson(cert));
    const table = readCsv(cells);
    requireColumns(table, ["center_index", "radius", "contained", "disjoint"]);
    const centers = column(table, "center_index");
    const radii = column(table, "radius");
    const contained = column(table, "contained");
    const disjoint = column(table, "disjoint");
    const byKey = new Map<string, CellStatus>();
    for (let row = 0; row < centers.length; row++) {
      const status: CellStatus =
        contained[row] === "true" ? "contained" : disjoint[row] === "true" ? "disjoint" : "open";
      byKey.set(`${radii[row]}|${centers[row]}`, status);
    }
    columns.push({ cert, cells, t: summary.params.t, verdict: summary.verdict, byKey });
  }
  columns.sort((a, b) => a.t - b.t);

  const keys = [...new Set(columns.flatMap((c) => [...c.byKey.keys()]))];
  keys.sort((a, b) => {
    const [ra, ca] = a.split("|").map(Number);
    const [rb, cb] = b.split("|").map(Number);
    return ra - rb || ca - cb;
  });

  const area = plotArea();
  const stripH = 16;
  const gridTop = area.top + stripH + 4;
  const colW = (area.right - area.left) / columns.length;
  const rowH = (area.bottom - gridTop) / keys.length;

  const svg = new Svg();
  svg.text(
    (area.left + area.right) / 2, 20, "Equidistribution certificates",
    `font-size="${TITLE_SIZE}" fill="${AXIS_COLOR}" text-anchor="middle" font-weight="bold"`,
  );

  keys.forEach((key, r) => {
    const [radius, center] = key.split("|");
    svg.text(area.left - 6, gridTop + rowH * (r + 0.5) + 3,
      `r=${labelNumber(Number(radius))} #${center}`,
      `font-size="10" fill="${AXIS_COLOR}" text-anchor="end"`);
  });

  const manifestColumns = columns.map((col, c) => {
    const x = area.left + colW * c;
    const verdictFill =
      col.verdict === "pass" ? STATUS_COLORS.pass
      : col.verdict === "fail" ? STATUS_COLORS.fail
      : STATUS_COLORS.open;
    svg.rect(x + 1, area.top, colW - 2, stripH, `fill="${verdictFill}" fill-opacity="0.85"`);
    svg.raw(
      `<text x="${fmt(x + colW / 2)}" y="${fmt(area.top + 12)}" font-family="${FONT_FAMILY}" ` +
        `font-size="10" fill="#ffffff" text-anchor="middle">${col.verdict}</text>`,
    );
    svg.text(x + colW / 2, area.bottom + 16, `t = ${col.t}`,
      `font-size="11" fill="${AXIS_COLOR}" text-anchor="middle"`);

    const cells = keys.map((key, r) => {
      const status = col.byKey.get(key) ?? "open";
      const y = gridTop + rowH * r;
      svg.rect(x + 1, y + 1, colW - 2, rowH - 2,
        `fill="${STATUS_FILL[status]}" fill-opacity="0.8" stroke="#ffffff" stroke-width="0.5"`);
      const [radius, center] = key.split("|");
      return {
        radius: Number(radius),
        center_index: Number(center),
        status,
        px: Number(fmt(x + 1)),
        py: Number(fmt(y + 1)),
        width: Number(fmt(colW - 2)),
        height: Number(fmt(rowH - 2)),
      };
    });
    return { certificate: col.cert, cells_file: col.cells, t: col.t, verdict: col.verdict, cells };
  });

  const legend: [CellStatus, string][] = [
    ["contained", "CI inside Haar window"],
    ["disjoint", "CI outside"],
    ["open", "straddles"],
  ];
  legend.forEach(([status, label], i) => {
    const y = svg.height - 8;
    svg.rect(area.left + 170 * i, y - 9, 10, 10, `fill="${STATUS_FILL[status]}" fill-opacity="0.8"`);
    svg.text(area.left + 170 * i + 14, y, label, `font-size="10" fill="${AXIS_COLOR}"`);
  });

  return {
    svgText: svg.toString(),
    manifestBody: {
      axes: {
        x: { scale: "categorical", labels: columns.map((c) => `t = ${c.t}`) },
        y: { scale: "categorical", labels: keys.map((k) => k.replace("|", " #")) },
      },
      columns: manifestColumns,
    },
  };
}
