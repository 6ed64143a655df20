/** Minimal deterministic SVG assembly: fixed formatting, no timestamps. */

export interface Frame {
  width: number;
  height: number;
  margin: { top: number; right: number; bottom: number; left: number };
  xMin: number;
  xMax: number;
  yMin: number;
  yMax: number;
}

export function fmt(value: number): string {
  if (!Number.isFinite(value)) throw new Error(`non-finite coordinate ${value}`);
  const text = value.toPrecision(8);
  return text.includes(".") ? text.replace(/\.?0+$/, "") : text;
}

export function xPixel(frame: Frame, x: number): number {
  const span = frame.xMax - frame.xMin || 1;
  const inner = frame.width - frame.margin.left - frame.margin.right;
  return frame.margin.left + ((x - frame.xMin) / span) * inner;
}

export function yPixel(frame: Frame, y: number): number {
  const span = frame.yMax - frame.yMin || 1;
  const inner = frame.height - frame.margin.top - frame.margin.bottom;
  return frame.height - frame.margin.bottom - ((y - frame.yMin) / span) * inner;
}

export function polyline(points: Array<[number, number]>, color: string,
                         scheme: string): string {
  const attr = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
  return `<polyline class="curve" data-scheme="${scheme}" fill="none" ` +
    `stroke="${color}" stroke-width="1.8" points="${attr}"/>`;
}

export function marker(x: number, y: number, shape: string, color: string,
                       scheme: string): string {
  const common = `class="marker" data-scheme="${scheme}" fill="${color}"`;
  const r = 3.5;
  switch (shape) {
    case "square":
      return `<rect ${common} x="${fmt(x - r)}" y="${fmt(y - r)}" ` +
        `width="${fmt(2 * r)}" height="${fmt(2 * r)}"/>`;
    case "triangle":
      return `<path ${common} d="M ${fmt(x)} ${fmt(y - r)} L ${fmt(x + r)} ` +
        `${fmt(y + r)} L ${fmt(x - r)} ${fmt(y + r)} Z"/>`;
    case "diamond":
      return `<path ${common} d="M ${fmt(x)} ${fmt(y - r)} L ${fmt(x + r)} ` +
        `${fmt(y)} L ${fmt(x)} ${fmt(y + r)} L ${fmt(x - r)} ${fmt(y)} Z"/>`;
    default:
      return `<circle ${common} cx="${fmt(x)}" cy="${fmt(y)}" r="${fmt(r)}"/>`;
  }
}

function ticks(lo: number, hi: number, count = 5): number[] {
  if (hi === lo) return [lo];
  const out: number[] = [];
  for (let i = 0; i < count; i++) out.push(lo + ((hi - lo) * i) / (count - 1));
  return out;
}

export function chrome(frame: Frame, xlabel: string, ylabel: string,
                       title: string): string {
  const { margin, width, height } = frame;
  const parts: string[] = [];
  const x0 = margin.left;
  const x1 = width - margin.right;
  const y0 = height - margin.bottom;
  const y1 = margin.top;
  parts.push(`<rect x="${x0}" y="${y1}" width="${x1 - x0}" height="${y0 - y1}" ` +
    `fill="none" stroke="#333" stroke-width="1"/>`);
  for (const t of ticks(frame.xMin, frame.xMax)) {
    const px = xPixel(frame, t);
    parts.push(`<line x1="${fmt(px)}" y1="${y0}" x2="${fmt(px)}" y2="${y0 + 4}" stroke="#333"/>`);
    parts.push(`<text x="${fmt(px)}" y="${y0 + 16}" font-size="10" ` +
      `text-anchor="middle" fill="#333">${Number(t.toPrecision(3))}</text>`);
  }
  for (const t of ticks(frame.yMin, frame.yMax)) {
    const py = yPixel(frame, t);
    parts.push(`<line x1="${x0 - 4}" y1="${fmt(py)}" x2="${x0}" y2="${fmt(py)}" stroke="#333"/>`);
    parts.push(`<text x="${x0 - 7}" y="${fmt(py + 3)}" font-size="10" ` +
      `text-anchor="end" fill="#333">${Number(t.toPrecision(3))}</text>`);
  }
  parts.push(`<text x="${fmt((x0 + x1) / 2)}" y="${height - 8}" font-size="12" ` +
    `text-anchor="middle" fill="#111">${xlabel}</text>`);
  parts.push(`<text x="14" y="${fmt((y0 + y1) / 2)}" font-size="12" text-anchor="middle" ` +
    `fill="#111" transform="rotate(-90 14 ${fmt((y0 + y1) / 2)})">${ylabel}</text>`);
  if (title) {
    parts.push(`<text x="${fmt((x0 + x1) / 2)}" y="${y1 - 8}" font-size="13" ` +
      `text-anchor="middle" fill="#111">${title}</text>`);
  }
  return parts.join("\n");
}

export function legend(frame: Frame, entries: Array<{ label: string; color: string }>): string {
  const parts: string[] = [];
  const x = frame.width - frame.margin.right - 90;
  let y = frame.margin.top + 14;
  for (const { label, color } of entries) {
    parts.push(`<line x1="${x}" y1="${y - 4}" x2="${x + 22}" y2="${y - 4}" ` +
      `stroke="${color}" stroke-width="2"/>`);
    parts.push(`<text x="${x + 28}" y="${y}" font-size="11" fill="#111">${label}</text>`);
    y += 16;
  }
  return parts.join("\n");
}

export function document(frame: Frame, body: string): string {
  return `<svg xmlns="http://www.w3.org/2000/svg" width="${frame.width}" ` +
    `height="${frame.height}" viewBox="0 0 ${frame.width} ${frame.height}">\n` +
    `<rect width="${frame.width}" height="${frame.height}" fill="white"/>\n` +
    `${body}\n</svg>\n`;
}
