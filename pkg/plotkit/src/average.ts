/**
 * Average error reduction against a sweep parameter.
 *
 * Uses the `kind=average` rows the harness emits for configs with an
 * `average_window`; the parameter is either a CSV column (nt, dt, m)
 * or a key in the extra annotations (nu, rho, c, ...).
 */

import { averageRows, CsvError, ResultRow } from "./csv.js";
import { CURVE_COLORS, linearScale, logScale, Svg } from "./svg.js";

export interface AverageOptions {
  param: string;
  logx?: boolean;
}

const COLUMN_PARAMS = new Set(["nt", "nx", "m", "m2", "k"]);

function paramValue(row: ResultRow, param: string): number | null {
  if (COLUMN_PARAMS.has(param)) {
    return (row as unknown as Record<string, number>)[param];
  }
  const raw = row.extra[param];
  if (raw === undefined) return null;
  const value = Number(raw);
  return Number.isFinite(value) ? value : null;
}

export function renderAverage(rows: ResultRow[], title: string, options: AverageOptions): string {
  const data = averageRows(rows);
  if (data.length === 0) {
    throw new CsvError("no average rows; run the harness with average_window set");
  }
  const points = data
    .map((row) => ({ row, x: paramValue(row, options.param) }))
    .filter((p): p is { row: ResultRow; x: number } => p.x !== null);
  if (points.length === 0) {
    throw new CsvError(`missing column '${options.param}' (not a CSV column or extra key)`);
  }

  const margin = { top: 34, right: 170, bottom: 44, left: 64 };
  const width = 680;
  const height = 400;
  const xsAll = points.map((p) => p.x);
  const makeX = options.logx ? logScale : linearScale;
  const x = makeX(Math.min(...xsAll), Math.max(...xsAll), margin.left, width - margin.right);
  const values = points.map((p) => p.row.value).filter((v) => v > 0);
  if (values.length === 0) throw new CsvError("no positive average values");
  const y = linearScale(0, Math.max(...values) * 1.1, height - margin.bottom, margin.top);

  const svg = new Svg(width, height);
  svg.text(margin.left, 20, title, 14);
  svg.line(margin.left, height - margin.bottom, width - margin.right, height - margin.bottom);
  svg.line(margin.left, height - margin.bottom, margin.left, margin.top);
  for (const tick of x.ticks()) {
    const px = x(tick.value);
    svg.line(px, height - margin.bottom, px, height - margin.bottom + 4);
    svg.text(px, height - margin.bottom + 16, tick.label, 10, "middle");
  }
  for (const tick of y.ticks()) {
    const py = y(tick.value);
    svg.line(margin.left - 4, py, margin.left, py);
    svg.text(margin.left - 7, py + 3, tick.label, 10, "end");
  }
  svg.text((margin.left + width - margin.right) / 2, height - 8, options.param, 11, "middle");
  svg.text(
    14,
    (margin.top + height - margin.bottom) / 2,
    "average reduction",
    11,
    "middle",
    ` transform="rotate(-90 14 ${(margin.top + height - margin.bottom) / 2})"`,
  );

  const groups = new Map<string, Array<{ x: number; value: number }>>();
  for (const { row, x: px } of points) {
    const label = `${row.method} ${row.variant} ${row.relax} m=${row.m}`;
    if (!groups.has(label)) groups.set(label, []);
    groups.get(label)!.push({ x: px, value: row.value });
  }
  let i = 0;
  for (const [label, pts] of groups) {
    const color = CURVE_COLORS[i % CURVE_COLORS.length];
    pts.sort((a, b) => a.x - b.x);
    svg.polyline(pts.map((p) => [x(p.x), y(p.value)] as [number, number]), color);
    for (const p of pts) svg.circle(x(p.x), y(p.value), 3, color);
    const ly = margin.top + 14 * i;
    svg.line(width - margin.right + 12, ly - 4, width - margin.right + 30, ly - 4, color, 2);
    svg.text(width - margin.right + 36, ly, label, 10);
    i += 1;
  }
  return svg.toString();
}
