#!/usr/bin/env node
/**
 * plotkit - render pintconv result CSVs into figures.
 *
 * Usage:
 *   plotkit curves  --in fig4a.csv --out fig4a.svg [--title ...] [--png]
 *   plotkit heatmap --in map.csv --out map.svg [--k 5] [--relax F] [--m 2]
 *   plotkit average --in fig15.csv --out fig15.svg --param nu [--logx]
 */

import { CsvError } from "./csv.js";
import { PlotKind, PlotSpec, render } from "./render.js";

const KINDS: Record<string, PlotKind> = {
  curves: "convergence_curves",
  heatmap: "frequency_heatmap",
  average: "average_vs_parameter",
};

function usage(message?: string): never {
  if (message) process.stderr.write(`plotkit: ${message}\n`);
  process.stderr.write(
    "usage: plotkit <curves|heatmap|average> --in results.csv --out figure.svg\n" +
      "  common: --title TEXT --png\n" +
      "  heatmap: --k N --relax F|FCF --m N\n" +
      "  average: --param NAME --logx\n",
  );
  process.exit(2);
}

function parseArgs(argv: string[]): PlotSpec {
  if (argv.length === 0) usage();
  const kind = KINDS[argv[0]];
  if (!kind) usage(`unknown plot kind '${argv[0]}'`);
  const flags = new Map<string, string>();
  for (let i = 1; i < argv.length; i += 1) {
    const arg = argv[i];
    if (!arg.startsWith("--")) usage(`unexpected argument '${arg}'`);
    const name = arg.slice(2);
    if (name === "png" || name === "logx") {
      flags.set(name, "true");
    } else {
      const value = argv[i + 1];
      if (value === undefined) usage(`flag --${name} needs a value`);
      flags.set(name, value);
      i += 1;
    }
  }
  const input = flags.get("in");
  const output = flags.get("out");
  if (!input || !output) usage("--in and --out are required");
  return {
    kind,
    input,
    output,
    title: flags.get("title"),
    k: flags.has("k") ? Number(flags.get("k")) : undefined,
    relax: flags.get("relax"),
    m: flags.has("m") ? Number(flags.get("m")) : undefined,
    param: flags.get("param"),
    logx: flags.has("logx"),
    png: flags.has("png"),
  };
}

async function main(): Promise<void> {
  try {
    const written = await render(parseArgs(process.argv.slice(2)));
    for (const path of written) process.stdout.write(`${path}\n`);
  } catch (error) {
    if (error instanceof CsvError) {
      process.stderr.write(`plotkit: ${error.message}\n`);
      process.exit(1);
    }
    throw error;
  }
}

void main();
