/**
 * PlotSpec dispatch: CSV in, SVG (and optionally PNG) out.
 *
 * Rendering is read-only over the CSVs and deterministic: identical
 * input and spec produce identical bytes.
 */

import { writeFileSync } from "fs";

import { renderAverage } from "./average.js";
import { readResults } from "./csv.js";
import { renderCurves } from "./curves.js";
import { renderHeatmap } from "./heatmap.js";

export type PlotKind = "convergence_curves" | "frequency_heatmap" | "average_vs_parameter";

export interface PlotSpec {
  kind: PlotKind;
  input: string;
  output: string;
  title?: string;
  k?: number;
  relax?: string;
  m?: number;
  param?: string;
  logx?: boolean;
  png?: boolean;
}

export function renderToString(spec: PlotSpec): string {
  const rows = readResults(spec.input);
  const title = spec.title ?? spec.input.replace(/^.*\//, "");
  switch (spec.kind) {
    case "convergence_curves":
      return renderCurves(rows, title);
    case "frequency_heatmap":
      return renderHeatmap(rows, title, { k: spec.k, relax: spec.relax, m: spec.m });
    case "average_vs_parameter":
      if (!spec.param) throw new Error("average_vs_parameter needs --param");
      return renderAverage(rows, title, { param: spec.param, logx: spec.logx });
    default:
      throw new Error(`unknown plot kind ${String(spec.kind)}`);
  }
}

export async function render(spec: PlotSpec): Promise<string[]> {
  const svg = renderToString(spec);
  const written: string[] = [];
  const svgPath = spec.output.endsWith(".png")
    ? spec.output.replace(/\.png$/, ".svg")
    : spec.output.endsWith(".svg")
      ? spec.output
      : `${spec.output}.svg`;
  writeFileSync(svgPath, svg);
  written.push(svgPath);
  if (spec.png || spec.output.endsWith(".png")) {
    const pngPath = svgPath.replace(/\.svg$/, ".png");
    const { Resvg } = await import("@resvg/resvg-js");
    const rendered = new Resvg(svg, { background: "white" });
    writeFileSync(pngPath, rendered.render().asPng());
    written.push(pngPath);
  }
  return written;
}
