/**
 * Convergence-curve figure: per-iteration worst-case (or measured)
 * error-reduction values on a log vertical axis, one curve per
 * distinguishable series in the CSV.
 */

import { ResultRow, seriesRows, CsvError } from "./csv.js";
import { CURVE_COLORS, linearScale, logScale, Margin, Svg } from "./svg.js";

const MARGIN: Margin = { top: 34, right: 200, bottom: 42, left: 64 };

interface Series {
  label: string;
  points: Array<{ k: number; value: number }>;
}

/** Group rows into curves, labeling only by the columns that vary. */
export function groupSeries(rows: ResultRow[]): Series[] {
  const keys = ["method", "variant", "relax", "cycle", "m", "m2", "nx", "nt"] as const;
  const varying = keys.filter((key) => new Set(rows.map((r) => String(r[key]))).size > 1);
  const tagged = new Map<string, Series>();
  for (const row of rows) {
    const label =
      varying.length === 0
        ? `${row.method} ${row.variant}`
        : varying.map((key) => `${key}=${row[key]}`).join(" ");
    if (!tagged.has(label)) tagged.set(label, { label, points: [] });
    tagged.get(label)!.points.push({ k: row.k, value: row.value });
  }
  const series = [...tagged.values()];
  for (const s of series) s.points.sort((a, b) => a.k - b.k);
  return series;
}

export function renderCurves(rows: ResultRow[], title: string): string {
  const data = seriesRows(rows);
  if (data.length === 0) throw new CsvError("no data rows to plot");
  const series = groupSeries(data);

  const positive = data.filter((r) => r.value > 0);
  if (positive.length === 0) throw new CsvError("no positive values to place on a log axis");
  const width = 760;
  const height = 440;
  const x = linearScale(
    Math.min(...data.map((r) => r.k)),
    Math.max(...data.map((r) => r.k)),
    MARGIN.left,
    width - MARGIN.right,
  );
  const y = logScale(
    Math.min(...positive.map((r) => r.value)),
    Math.max(...positive.map((r) => r.value)),
    height - MARGIN.bottom,
    MARGIN.top,
  );

  const svg = new Svg(width, height);
  svg.text(MARGIN.left, 20, title, 14);
  drawAxes(svg, x, y, width, height, "iteration k", "error reduction");

  series.forEach((s, i) => {
    const color = CURVE_COLORS[i % CURVE_COLORS.length];
    const dash = i >= CURVE_COLORS.length ? "4 3" : undefined;
    const pts = s.points.filter((p) => p.value > 0);
    if (pts.length > 0) {
      svg.polyline(pts.map((p) => [x(p.k), y(p.value)] as [number, number]), color, dash);
      for (const p of pts) svg.circle(x(p.k), y(p.value), 2.4, color);
    }
    const ly = MARGIN.top + 14 * i;
    svg.line(width - MARGIN.right + 12, ly - 4, width - MARGIN.right + 30, ly - 4, color, 2);
    svg.text(width - MARGIN.right + 36, ly, s.label, 10);
  });
  return svg.toString();
}

export function drawAxes(
  svg: Svg,
  x: ReturnType<typeof linearScale>,
  y: ReturnType<typeof logScale>,
  width: number,
  height: number,
  xlabel: string,
  ylabel: string,
): void {
  const x0 = MARGIN.left;
  const x1 = width - MARGIN.right;
  const y0 = height - MARGIN.bottom;
  const y1 = MARGIN.top;
  svg.line(x0, y0, x1, y0);
  svg.line(x0, y0, x0, y1);
  for (const tick of x.ticks()) {
    const px = x(tick.value);
    svg.line(px, y0, px, y0 + 4);
    svg.text(px, y0 + 16, tick.label, 10, "middle");
  }
  for (const tick of y.ticks()) {
    const py = y(tick.value);
    svg.line(x0 - 4, py, x0, py);
    svg.line(x0, py, x1, py, "#eee");
    svg.text(x0 - 7, py + 3, tick.label, 10, "end");
  }
  svg.text((x0 + x1) / 2, height - 8, xlabel, 11, "middle");
  svg.text(14, (y0 + y1) / 2, ylabel, 11, "middle", ` transform="rotate(-90 14 ${(y0 + y1) / 2})"`);
}
