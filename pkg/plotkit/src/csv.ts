/**
 * Reader for pintconv result CSVs.
 *
 * Files start with a `# pintconv-results v1` stamp, then a fixed
 * header, then one row per (method, variant, relaxation, iteration).
 * The trailing `extra` column holds `key=value` pairs separated by
 * semicolons.
 */

import { readFileSync } from "fs";

export interface ResultRow {
  problem: string;
  method: string;
  variant: string;
  relax: string;
  levels: number;
  cycle: string;
  m: number;
  m2: number;
  nx: number;
  nt: number;
  k: number;
  value: number;
  theta_x: number | null;
  theta_y: number | null;
  omega0: number | null;
  extra: Record<string, string>;
}

export const REQUIRED_COLUMNS = [
  "problem",
  "method",
  "variant",
  "relax",
  "levels",
  "cycle",
  "m",
  "m2",
  "nx",
  "nt",
  "k",
  "value",
  "theta_x",
  "theta_y",
  "omega0",
  "extra",
] as const;

export class CsvError extends Error {}

function parseExtra(cell: string): Record<string, string> {
  const extra: Record<string, string> = {};
  if (cell === "") return extra;
  for (const pair of cell.split(";")) {
    const eq = pair.indexOf("=");
    if (eq > 0) extra[pair.slice(0, eq)] = pair.slice(eq + 1);
  }
  return extra;
}

function numberOrNull(cell: string): number | null {
  return cell === "" ? null : Number(cell);
}

export function parseResults(text: string, source = "<csv>"): ResultRow[] {
  const lines = text.split("\n").filter((l) => l.length > 0 && !l.startsWith("#"));
  if (lines.length === 0) {
    throw new CsvError(`${source}: no data (empty file)`);
  }
  const header = lines[0].split(",");
  const index = new Map<string, number>();
  header.forEach((name, i) => index.set(name, i));
  for (const column of REQUIRED_COLUMNS) {
    if (!index.has(column)) {
      throw new CsvError(`${source}: missing column '${column}'`);
    }
  }
  const rows: ResultRow[] = [];
  for (const line of lines.slice(1)) {
    const cells = line.split(",");
    const at = (name: string) => cells[index.get(name)!] ?? "";
    rows.push({
      problem: at("problem"),
      method: at("method"),
      variant: at("variant"),
      relax: at("relax"),
      levels: Number(at("levels")),
      cycle: at("cycle"),
      m: Number(at("m")),
      m2: Number(at("m2")),
      nx: Number(at("nx")),
      nt: Number(at("nt")),
      k: Number(at("k")),
      value: Number(at("value")),
      theta_x: numberOrNull(at("theta_x")),
      theta_y: numberOrNull(at("theta_y")),
      omega0: numberOrNull(at("omega0")),
      extra: parseExtra(at("extra")),
    });
  }
  if (rows.length === 0) {
    throw new CsvError(`${source}: no data rows`);
  }
  return rows;
}

export function readResults(path: string): ResultRow[] {
  return parseResults(readFileSync(path, "utf8"), path);
}

/** Rows carrying per-frequency map values (variant suffix `+map`). */
export function mapRows(rows: ResultRow[]): ResultRow[] {
  return rows.filter((r) => r.variant.endsWith("+map"));
}

/** Worst-case series rows: no map rows, no average rows. */
export function seriesRows(rows: ResultRow[]): ResultRow[] {
  return rows.filter((r) => !r.variant.endsWith("+map") && r.extra["kind"] !== "average");
}

/** Fitted average-reduction rows (`kind=average`). */
export function averageRows(rows: ResultRow[]): ResultRow[] {
  return rows.filter((r) => r.extra["kind"] === "average");
}
