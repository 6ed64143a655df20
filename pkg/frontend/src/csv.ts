/** Raw sample file parsing and schema validation. */

import * as fs from "fs";

export const RAW_COLUMNS = [
  "realization",
  "scheme",
  "user",
  "se_bps_hz",
  "pilot_power_w",
  "data_power_w",
  "sinr_linear",
] as const;

export interface RawRow {
  realization: number;
  scheme: string;
  user: number;
  se_bps_hz: number;
  pilot_power_w: number;
  data_power_w: number;
  sinr_linear: number;
}

/** Schema violation; `column` names the offending column. */
export class SchemaError extends Error {
  constructor(message: string, readonly column: string) {
    super(message);
    this.name = "SchemaError";
  }
}

export function parseRawCsv(path: string): RawRow[] {
  const text = fs.readFileSync(path, "utf8");
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new SchemaError(`${path}: empty file`, RAW_COLUMNS[0]);
  }
  const header = lines[0].split(",");
  for (let i = 0; i < RAW_COLUMNS.length; i++) {
    if (header[i] !== RAW_COLUMNS[i]) {
      throw new SchemaError(
        `${path}: expected column ${i + 1} to be "${RAW_COLUMNS[i]}", ` +
          `found "${header[i] ?? "<missing>"}"`,
        RAW_COLUMNS[i],
      );
    }
  }
  if (header.length !== RAW_COLUMNS.length) {
    throw new SchemaError(
      `${path}: unexpected extra column "${header[RAW_COLUMNS.length]}"`,
      header[RAW_COLUMNS.length],
    );
  }

  const rows: RawRow[] = [];
  for (let n = 1; n < lines.length; n++) {
    const cells = lines[n].split(",");
    if (cells.length !== RAW_COLUMNS.length) {
      throw new SchemaError(
        `${path}:${n + 1}: expected ${RAW_COLUMNS.length} cells, got ${cells.length}`,
        RAW_COLUMNS[Math.min(cells.length, RAW_COLUMNS.length - 1)],
      );
    }
    const numeric = (column: (typeof RAW_COLUMNS)[number], value: string): number => {
      const parsed = Number(value);
      if (!Number.isFinite(parsed)) {
        throw new SchemaError(
          `${path}:${n + 1}: column "${column}" is not numeric: "${value}"`,
          column,
        );
      }
      return parsed;
    };
    rows.push({
      realization: numeric("realization", cells[0]),
      scheme: cells[1],
      user: numeric("user", cells[2]),
      se_bps_hz: numeric("se_bps_hz", cells[3]),
      pilot_power_w: numeric("pilot_power_w", cells[4]),
      data_power_w: numeric("data_power_w", cells[5]),
      sinr_linear: numeric("sinr_linear", cells[6]),
    });
  }
  return rows;
}

/** Extract the (APs, antennas) point encoded in a sweep file name. */
export function pointFromFilename(path: string): { aps: number; antennas: number } {
  const match = /(\d+)x(\d+)/.exec(path.split("/").pop() ?? "");
  if (!match) {
    throw new Error(
      `cannot infer the AP/antenna point from "${path}"; ` +
        `sweep inputs must carry an MxN tag like raw_100x1.csv`,
    );
  }
  return { aps: Number(match[1]), antennas: Number(match[2]) };
}
