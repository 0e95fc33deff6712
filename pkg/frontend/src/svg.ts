import {
  AXIS_COLOR,
  FONT_FAMILY,
  FONT_SIZE,
  GRID_COLOR,
  HEIGHT,
  MARGIN,
  TITLE_SIZE,
  WIDTH,
} from "./style.js";
import type { Mapper } from "./scale.js";

/** Pixel coordinates rounded to a fixed precision so output is byte-stable. */
export function fmt(x: number): string {
  const s = x.toFixed(2).replace(/\.?0+$/, "");
  return s === "-0" ? "0" : s;
}

/** Tick and annotation labels: short, locale-free. */
export function labelNumber(x: number): string {
  if (x !== 0 && (Math.abs(x) >= 1e5 || Math.abs(x) < 1e-4)) {
    return x.toExponential(2).replace(/\.?0+e/, "e");
  }
  return String(Number(x.toPrecision(6)));
}

export function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export class Svg {
  private parts: string[] = [];
  readonly width: number;
  readonly height: number;

  constructor(width = WIDTH, height = HEIGHT) {
    this.width = width;
    this.height = height;
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
      `<rect x="0" y="0" width="${width}" height="${height}" fill="#ffffff"/>`,
    );
  }

  raw(s: string): void {
    this.parts.push(s);
  }

  line(x1: number, y1: number, x2: number, y2: number, attrs: string): void {
    this.parts.push(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ${attrs}/>`,
    );
  }

  path(d: string, attrs: string): void {
    this.parts.push(`<path d="${d}" ${attrs}/>`);
  }

  rect(x: number, y: number, w: number, h: number, attrs: string): void {
    this.parts.push(
      `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" ${attrs}/>`,
    );
  }

  circle(cx: number, cy: number, r: number, attrs: string): void {
    this.parts.push(`<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="${fmt(r)}" ${attrs}/>`);
  }

  text(x: number, y: number, s: string, attrs: string): void {
    this.parts.push(
      `<text x="${fmt(x)}" y="${fmt(y)}" font-family="${FONT_FAMILY}" ${attrs}>${esc(s)}</text>`,
    );
  }

  toString(): string {
    return this.parts.join("\n") + "\n</svg>\n";
  }
}

export interface FrameOptions {
  title: string;
  xLabel: string;
  yLabel: string;
  xTickLabel?: (v: number) => string;
}

/** Plot area rectangle shared by every figure kind. */
export function plotArea(width = WIDTH, height = HEIGHT) {
  return {
    left: MARGIN.left,
    right: width - MARGIN.right,
    top: MARGIN.top,
    bottom: height - MARGIN.bottom,
  };
}

/** Axes, ticks, grid lines, axis labels, and the figure title. */
export function drawFrame(svg: Svg, xm: Mapper, ym: Mapper, opts: FrameOptions): void {
  const area = plotArea(svg.width, svg.height);
  const tickLabel = opts.xTickLabel ?? labelNumber;

  for (const t of ym.ticks()) {
    const y = ym.map(t);
    svg.line(area.left, y, area.right, y, `stroke="${GRID_COLOR}" stroke-width="1"`);
    svg.text(
      area.left - 8,
      y + 4,
      labelNumber(t),
      `font-size="${FONT_SIZE}" fill="${AXIS_COLOR}" text-anchor="end"`,
    );
  }
  for (const t of xm.ticks()) {
    const x = xm.map(t);
    svg.line(x, area.bottom, x, area.bottom + 5, `stroke="${AXIS_COLOR}" stroke-width="1"`);
    svg.text(
      x,
      area.bottom + 18,
      tickLabel(t),
      `font-size="${FONT_SIZE}" fill="${AXIS_COLOR}" text-anchor="middle"`,
    );
  }

  svg.line(area.left, area.top, area.left, area.bottom, `stroke="${AXIS_COLOR}" stroke-width="1"`);
  svg.line(area.left, area.bottom, area.right, area.bottom, `stroke="${AXIS_COLOR}" stroke-width="1"`);

  svg.text(
    (area.left + area.right) / 2,
    svg.height - 12,
    opts.xLabel,
    `font-size="${FONT_SIZE}" fill="${AXIS_COLOR}" text-anchor="middle"`,
  );
  svg.raw(
    `<text x="${fmt(16)}" y="${fmt((area.top + area.bottom) / 2)}" font-family="${FONT_FAMILY}" ` +
      `font-size="${FONT_SIZE}" fill="${AXIS_COLOR}" text-anchor="middle" ` +
      `transform="rotate(-90 16 ${fmt((area.top + area.bottom) / 2)})">${esc(opts.yLabel)}</text>`,
  );
  svg.text(
    (area.left + area.right) / 2,
    20,
    opts.title,
    `font-size="${TITLE_SIZE}" fill="${AXIS_COLOR}" text-anchor="middle" font-weight="bold"`,
  );
}
