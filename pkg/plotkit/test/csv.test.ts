import { describe, expect, it } from "vitest";
import { readFileSync } from "fs";

import { averageRows, CsvError, mapRows, parseResults, seriesRows } from "../src/csv.js";

const fixture = (name: string) =>
  readFileSync(new URL(`./fixtures/${name}`, import.meta.url), "utf8");

describe("parseResults", () => {
  it("reads the stamped fixture and typed columns", () => {
    const rows = parseResults(fixture("fig4a.csv"), "fig4a.csv");
    expect(rows.length).toBe(60);
    const first = rows[0];
    expect(first.problem).toBe("advection");
    expect(first.method).toBe("lfa");
    expect(first.k).toBe(1);
    expect(first.value).toBeGreaterThan(0);
    expect(first.theta_y).toBeNull();
    expect(first.omega0).not.toBeNull();
    expect(first.extra["experiment"]).toBe("lfa");
  });

  it("rejects an empty file with a no-data error", () => {
    expect(() => parseResults("", "empty.csv")).toThrowError(/no data/);
    expect(() => parseResults("# pintconv-results v1\n", "empty.csv")).toThrowError(/no data/);
  });

  it("rejects a header-only file", () => {
    const header = fixture("fig4a.csv").split("\n")[1];
    expect(() => parseResults(`${header}\n`, "h.csv")).toThrowError(/no data rows/);
  });

  it("names the missing column", () => {
    const lines = fixture("fig4a.csv").split("\n");
    const broken = [lines[1].replace("value", "val"), ...lines.slice(2)].join("\n");
    expect(() => parseResults(broken, "broken.csv")).toThrowError(
      /missing column 'value'/,
    );
  });

  it("classifies series, map, and average rows", () => {
    const rows = parseResults(fixture("map2d.csv"), "map2d.csv");
    expect(mapRows(rows).length).toBeGreaterThan(0);
    expect(seriesRows(rows).length).toBeGreaterThan(0);
    const fig15 = parseResults(fixture("fig15.csv"), "fig15.csv");
    expect(averageRows(fig15).length).toBeGreaterThan(0);
  });
});

describe("CsvError", () => {
  it("is an Error subclass", () => {
    expect(new CsvError("x")).toBeInstanceOf(Error);
  });
});
