/** Figure assembly: per-scheme SE CDFs and AP-sweep median charts. */

import { RawRow, parseRawCsv, pointFromFilename } from "./csv";
import { CdfPoint, empiricalCdf, median } from "./stats";
import * as svg from "./svg";

export interface PlotOptions {
  width: number;
  height: number;
  xlabel?: string;
  ylabel?: string;
  title?: string;
  schemes?: string[];
}

export const DEFAULT_OPTIONS: PlotOptions = { width: 640, height: 420 };

// fixed style per scheme so figures stay comparable across runs
const STYLE: Record<string, { color: string; marker: string }> = {
  ippa: { color: "#c0392b", marker: "circle" },
  nppa: { color: "#2980b9", marker: "square" },
  cppa: { color: "#27ae60", marker: "triangle" },
  fppa: { color: "#8e44ad", marker: "diamond" },
};
const FALLBACK_COLORS = ["#e67e22", "#16a085", "#7f8c8d", "#2c3e50"];

export function styleOf(scheme: string, index: number) {
  return STYLE[scheme] ?? {
    color: FALLBACK_COLORS[index % FALLBACK_COLORS.length],
    marker: "circle",
  };
}

function schemesIn(rows: RawRow[]): string[] {
  const seen: string[] = [];
  for (const row of rows) {
    if (!seen.includes(row.scheme)) seen.push(row.scheme);
  }
  return seen;
}

export function selectSchemes(rows: RawRow[], requested?: string[]): string[] {
  const present = schemesIn(rows);
  if (!requested || requested.length === 0) return present;
  for (const name of requested) {
    if (!present.includes(name)) {
      throw new Error(`no samples for scheme "${name}" in the input`);
    }
  }
  return requested;
}

/** Per-scheme empirical CDF of the SE samples. */
export function buildCdfSeries(rows: RawRow[], requested?: string[]):
    Map<string, CdfPoint[]> {
  const series = new Map<string, CdfPoint[]>();
  for (const scheme of selectSchemes(rows, requested)) {
    const samples = rows.filter((r) => r.scheme === scheme)
      .map((r) => r.se_bps_hz);
    series.set(scheme, empiricalCdf(samples));
  }
  return series;
}

export interface SweepSeriesPoint {
  aps: number;
  antennas: number;
  medianSe: number;
}

/** Median SE per (APs, antennas) file, per scheme, ordered by AP count. */
export function buildSweepSeries(paths: string[], requested?: string[]):
    Map<string, SweepSeriesPoint[]> {
  const perFile = paths.map((path) => ({
    point: pointFromFilename(path),
    rows: parseRawCsv(path),
  }));
  perFile.sort((a, b) => a.point.aps - b.point.aps);
  let schemes: string[] | undefined;
  for (const file of perFile) {
    schemes = selectSchemes(file.rows, requested ?? schemes);
  }
  const series = new Map<string, SweepSeriesPoint[]>();
  for (const scheme of schemes ?? []) {
    series.set(scheme, perFile.map(({ point, rows }) => ({
      aps: point.aps,
      antennas: point.antennas,
      medianSe: median(rows.filter((r) => r.scheme === scheme)
        .map((r) => r.se_bps_hz)),
    })));
  }
  return series;
}

function frameFor(options: PlotOptions, xMin: number, xMax: number,
                  yMin: number, yMax: number): svg.Frame {
  return {
    width: options.width,
    height: options.height,
    margin: { top: 28, right: 20, bottom: 44, left: 62 },
    xMin, xMax, yMin, yMax,
  };
}

export function renderCdfSvg(rows: RawRow[], options: PlotOptions): string {
  const series = buildCdfSeries(rows, options.schemes);
  let xMax = -Infinity;
  for (const points of series.values()) {
    xMax = Math.max(xMax, points[points.length - 1].value);
  }
  const frame = frameFor(options, 0, xMax || 1, 0, 1);
  const parts: string[] = [svg.chrome(
    frame,
    options.xlabel ?? "Spectral efficiency [bits/s/Hz]",
    options.ylabel ?? "Cumulative fraction",
    options.title ?? "")];
  const entries: Array<{ label: string; color: string }> = [];
  let index = 0;
  for (const [scheme, points] of series) {
    const { color } = styleOf(scheme, index++);
    // staircase through the sample points, anchored at fraction 0
    const px: Array<[number, number]> = [
      [svg.xPixel(frame, points[0].value), svg.yPixel(frame, 0)],
    ];
    let prev = 0;
    for (const { value, fraction } of points) {
      px.push([svg.xPixel(frame, value), svg.yPixel(frame, prev)]);
      px.push([svg.xPixel(frame, value), svg.yPixel(frame, fraction)]);
      prev = fraction;
    }
    parts.push(svg.polyline(px, color, scheme));
    entries.push({ label: scheme, color });
  }
  parts.push(svg.legend(frame, entries));
  return svg.document(frame, parts.join("\n"));
}

export function renderSweepSvg(paths: string[], options: PlotOptions): string {
  const series = buildSweepSeries(paths, options.schemes);
  let xMin = Infinity, xMax = -Infinity, yMax = -Infinity;
  for (const points of series.values()) {
    for (const p of points) {
      xMin = Math.min(xMin, p.aps);
      xMax = Math.max(xMax, p.aps);
      yMax = Math.max(yMax, p.medianSe);
    }
  }
  const frame = frameFor(options, xMin, xMax, 0, yMax || 1);
  const parts: string[] = [svg.chrome(
    frame,
    options.xlabel ?? "Number of APs",
    options.ylabel ?? "50% likely per-user SE [bits/s/Hz]",
    options.title ?? "")];
  const entries: Array<{ label: string; color: string }> = [];
  let index = 0;
  for (const [scheme, points] of series) {
    const { color, marker } = styleOf(scheme, index++);
    const px = points.map((p): [number, number] =>
      [svg.xPixel(frame, p.aps), svg.yPixel(frame, p.medianSe)]);
    parts.push(svg.polyline(px, color, scheme));
    for (const [x, y] of px) {
      parts.push(svg.marker(x, y, marker, color, scheme));
    }
    entries.push({ label: scheme, color });
  }
  parts.push(svg.legend(frame, entries));
  return svg.document(frame, parts.join("\n"));
}
