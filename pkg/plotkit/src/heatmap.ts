/**
 * Frequency heatmaps from per-mode rows (`--emit-argmax-map` output).
 *
 * 2D problems map (theta_x, theta_y) cells at one iteration; 1D
 * problems map (theta, k) cells across all iterations. Cell counts
 * equal the sweep dimensions exactly.
 */

import { CsvError, mapRows, ResultRow } from "./csv.js";
import { colorRamp, fmt, Svg } from "./svg.js";

export interface HeatmapOptions {
  k?: number;
  /** Restrict to one (relax, m) combination when several are present. */
  relax?: string;
  m?: number;
}

interface Grid {
  xs: number[];
  ys: number[];
  values: Map<string, number>;
  xlabel: string;
  ylabel: string;
  note: string;
}

function cellKey(x: number, y: number): string {
  return `${x.toPrecision(12)}|${y.toPrecision(12)}`;
}

export function buildGrid(rows: ResultRow[], options: HeatmapOptions): Grid {
  let cells = mapRows(rows);
  if (cells.length === 0) {
    throw new CsvError("no per-frequency rows; run the harness with --emit-argmax-map");
  }
  if (options.relax) cells = cells.filter((r) => r.relax === options.relax);
  if (options.m !== undefined) cells = cells.filter((r) => r.m === options.m);
  if (cells.length === 0) throw new CsvError("no per-frequency rows match the filters");
  if (!cells.every((r) => r.theta_x !== null)) {
    throw new CsvError("per-frequency rows are missing theta_x values");
  }
  const relax = cells[0].relax;
  const m = cells[0].m;
  cells = cells.filter((r) => r.relax === relax && r.m === m && r.variant === cells[0].variant);

  const twoD = cells.some((r) => r.theta_y !== null);
  if (twoD) {
    const k = options.k ?? Math.max(...cells.map((r) => r.k));
    const at = cells.filter((r) => r.k === k);
    if (at.length === 0) throw new CsvError(`no per-frequency rows at iteration k=${k}`);
    const xs = [...new Set(at.map((r) => r.theta_x!))].sort((a, b) => a - b);
    const ys = [...new Set(at.map((r) => r.theta_y!))].sort((a, b) => a - b);
    const values = new Map<string, number>();
    for (const row of at) values.set(cellKey(row.theta_x!, row.theta_y!), row.value);
    return {
      xs,
      ys,
      values,
      xlabel: "theta_x",
      ylabel: "theta_y",
      note: `${relax}, m=${m}, k=${k}`,
    };
  }
  const xs = [...new Set(cells.map((r) => r.theta_x!))].sort((a, b) => a - b);
  const ys = [...new Set(cells.map((r) => r.k))].sort((a, b) => a - b);
  const values = new Map<string, number>();
  for (const row of cells) values.set(cellKey(row.theta_x!, row.k), row.value);
  return { xs, ys, values, xlabel: "theta", ylabel: "iteration k", note: `${relax}, m=${m}` };
}

export function renderHeatmap(rows: ResultRow[], title: string, options: HeatmapOptions = {}): string {
  const grid = buildGrid(rows, options);
  const margin = { top: 40, right: 90, bottom: 48, left: 70 };
  const cell = Math.max(6, Math.min(26, Math.floor(460 / Math.max(grid.xs.length, grid.ys.length))));
  const width = margin.left + cell * grid.xs.length + margin.right;
  const height = margin.top + cell * grid.ys.length + margin.bottom;

  const positive = [...grid.values.values()].filter((v) => v > 0);
  if (positive.length === 0) throw new CsvError("no positive values to color");
  const lo = Math.log10(Math.min(...positive));
  const hi = Math.log10(Math.max(...positive));
  const span = hi - lo || 1;

  const svg = new Svg(width, height);
  svg.text(margin.left, 22, `${title} (${grid.note})`, 13);
  grid.ys.forEach((yv, j) => {
    grid.xs.forEach((xv, i) => {
      const value = grid.values.get(cellKey(xv, yv));
      const fill =
        value === undefined || value <= 0
          ? "#dddddd"
          : colorRamp((Math.log10(value) - lo) / span);
      // Row 0 at the bottom: axes grow upward.
      const py = margin.top + cell * (grid.ys.length - 1 - j);
      svg.rect(margin.left + cell * i, py, cell, cell, fill, ` data-cell="1"`);
    });
  });

  const skipX = Math.max(1, Math.ceil(grid.xs.length / 8));
  grid.xs.forEach((xv, i) => {
    if (i % skipX === 0) {
      svg.text(margin.left + cell * (i + 0.5), height - margin.bottom + 14, fmt(xv), 9, "middle");
    }
  });
  const skipY = Math.max(1, Math.ceil(grid.ys.length / 10));
  grid.ys.forEach((yv, j) => {
    if (j % skipY === 0) {
      const py = margin.top + cell * (grid.ys.length - 1 - j);
      svg.text(margin.left - 6, py + cell / 2 + 3, fmt(yv), 9, "end");
    }
  });
  svg.text(margin.left + (cell * grid.xs.length) / 2, height - 10, grid.xlabel, 11, "middle");
  svg.text(
    16,
    margin.top + (cell * grid.ys.length) / 2,
    grid.ylabel,
    11,
    "middle",
    ` transform="rotate(-90 16 ${margin.top + (cell * grid.ys.length) / 2})"`,
  );

  // Color bar with log10 labels.
  const barX = width - margin.right + 24;
  const barH = cell * grid.ys.length;
  for (let s = 0; s < 64; s += 1) {
    const t = 1 - s / 63;
    svg.rect(barX, margin.top + (barH * s) / 64, 14, barH / 64 + 0.5, colorRamp(t));
  }
  svg.text(barX + 18, margin.top + 8, `1e${hi.toFixed(1)}`, 9);
  svg.text(barX + 18, margin.top + barH, `1e${lo.toFixed(1)}`, 9);
  return svg.toString();
}
