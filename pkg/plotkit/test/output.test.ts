import { describe, expect, it } from "vitest";
import { mkdtempSync, readFileSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";
import { fileURLToPath } from "url";

import { render } from "../src/render.js";

const fixture = (name: string) =>
  fileURLToPath(new URL(`./fixtures/${name}`, import.meta.url));

describe("file output", () => {
  it("writes SVG and, on request, PNG", async () => {
    const dir = mkdtempSync(join(tmpdir(), "plotkit-"));
    const written = await render({
      kind: "convergence_curves",
      input: fixture("fig4a.csv"),
      output: join(dir, "fig4a.svg"),
      png: true,
    });
    expect(written.length).toBe(2);
    const svg = readFileSync(written[0], "utf8");
    expect(svg.startsWith("<svg")).toBe(true);
    const png = readFileSync(written[1]);
    expect(png.subarray(0, 8)).toEqual(
      Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]),
    );
  });

  it("derives the SVG path from a .png output target", async () => {
    const dir = mkdtempSync(join(tmpdir(), "plotkit-"));
    const written = await render({
      kind: "frequency_heatmap",
      input: fixture("map2d.csv"),
      output: join(dir, "map.png"),
      relax: "F",
      m: 2,
    });
    expect(written.some((p) => p.endsWith("map.svg"))).toBe(true);
    expect(written.some((p) => p.endsWith("map.png"))).toBe(true);
  });
});
