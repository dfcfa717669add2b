/** Minimal deterministic SVG builder plus axis/scale helpers. */

export interface Margin {
  top: number;
  right: number;
  bottom: number;
  left: number;
}

export class Svg {
  private parts: string[] = [];

  constructor(
    readonly width: number,
    readonly height: number,
  ) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
        `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
      `<rect width="${width}" height="${height}" fill="white"/>`,
    );
  }

  raw(fragment: string): void {
    this.parts.push(fragment);
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke = "#444", width = 1): void {
    this.parts.push(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ` +
        `stroke="${stroke}" stroke-width="${width}"/>`,
    );
  }

  polyline(points: Array<[number, number]>, stroke: string, dash?: string): void {
    const attr = dash ? ` stroke-dasharray="${dash}"` : "";
    const coords = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    this.parts.push(
      `<polyline points="${coords}" fill="none" stroke="${stroke}" stroke-width="1.6"${attr}/>`,
    );
  }

  circle(x: number, y: number, r: number, fill: string): void {
    this.parts.push(`<circle cx="${fmt(x)}" cy="${fmt(y)}" r="${r}" fill="${fill}"/>`);
  }

  rect(x: number, y: number, w: number, h: number, fill: string, extra = ""): void {
    this.parts.push(
      `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" fill="${fill}"${extra}/>`,
    );
  }

  text(
    x: number,
    y: number,
    content: string,
    size = 11,
    anchor: "start" | "middle" | "end" = "start",
    extra = "",
  ): void {
    this.parts.push(
      `<text x="${fmt(x)}" y="${fmt(y)}" font-size="${size}" text-anchor="${anchor}"${extra}>` +
        `${escapeXml(content)}</text>`,
    );
  }

  toString(): string {
    return this.parts.join("\n") + "\n</svg>\n";
  }
}

export function fmt(x: number): string {
  return Number(x.toFixed(2)).toString();
}

export function escapeXml(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export interface Scale {
  (value: number): number;
  ticks(): Array<{ value: number; label: string }>;
}

export function linearScale(lo: number, hi: number, rangeLo: number, rangeHi: number): Scale {
  const span = hi - lo || 1;
  const scale = ((value: number) => rangeLo + ((value - lo) / span) * (rangeHi - rangeLo)) as Scale;
  scale.ticks = () => {
    const step = niceStep(span / 5);
    const first = Math.ceil(lo / step) * step;
    const ticks = [];
    for (let v = first; v <= hi + 1e-9 * Math.abs(span); v += step) {
      ticks.push({ value: v, label: trimFloat(v) });
    }
    return ticks;
  };
  return scale;
}

/** Log10 scale; the domain must be strictly positive. */
export function logScale(lo: number, hi: number, rangeLo: number, rangeHi: number): Scale {
  if (lo <= 0 || hi <= 0) throw new Error("log scale needs positive bounds");
  const llo = Math.log10(lo);
  const lhi = Math.log10(hi);
  const span = lhi - llo || 1;
  const scale = ((value: number) =>
    rangeLo + ((Math.log10(value) - llo) / span) * (rangeHi - rangeLo)) as Scale;
  scale.ticks = () => {
    const ticks = [];
    const step = Math.max(1, Math.round(span / 6));
    for (let e = Math.ceil(llo); e <= Math.floor(lhi + 1e-9); e += step) {
      ticks.push({ value: 10 ** e, label: `1e${e}` });
    }
    if (ticks.length < 2) {
      ticks.length = 0;
      ticks.push({ value: lo, label: trimFloat(lo) }, { value: hi, label: trimFloat(hi) });
    }
    return ticks;
  };
  return scale;
}

function niceStep(raw: number): number {
  const power = 10 ** Math.floor(Math.log10(raw));
  const scaled = raw / power;
  const nice = scaled >= 5 ? 5 : scaled >= 2 ? 2 : 1;
  return nice * power;
}

function trimFloat(v: number): string {
  return Number(v.toPrecision(6)).toString();
}

/** Perceptually ordered dark-to-light color ramp for heatmaps. */
export function colorRamp(t: number): string {
  const stops: Array<[number, number, number]> = [
    [68, 1, 84],
    [59, 82, 139],
    [33, 145, 140],
    [94, 201, 98],
    [253, 231, 37],
  ];
  const clamped = Math.min(1, Math.max(0, t));
  const pos = clamped * (stops.length - 1);
  const i = Math.min(stops.length - 2, Math.floor(pos));
  const f = pos - i;
  const mix = (a: number, b: number) => Math.round(a + (b - a) * f);
  const [r, g, b] = [0, 1, 2].map((c) => mix(stops[i][c], stops[i + 1][c]));
  return `rgb(${r},${g},${b})`;
}

export const CURVE_COLORS = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#17becf",
  "#e377c2",
  "#7f7f7f",
  "#bcbd22",
];
