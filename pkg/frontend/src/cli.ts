#!/usr/bin/env node
/** cfpc-plot: render SE CDFs and AP-sweep charts from cfpc raw CSV files.
 *
 * Exit codes: 0 rendered, 2 bad input (usage, schema, empty selection).
 */

import * as fs from "fs";
import * as path from "path";

import { SchemaError, parseRawCsv } from "./csv";
import { DEFAULT_OPTIONS, PlotOptions, renderCdfSvg, renderSweepSvg } from "./plot";

const USAGE = `usage: cfpc-plot --input raw.csv[,raw2.csv...] --kind cdf|sweep --out fig.svg
                 [--schemes ippa,nppa,...] [--width W] [--height H]
                 [--xlabel TEXT] [--ylabel TEXT] [--title TEXT]

cdf    one monotone curve per scheme over the pooled SE samples (one input)
sweep  median SE per AP/antenna point per scheme; inputs must carry an MxN
       tag in the file name (raw_100x1.csv, ...)`;

interface Args {
  input: string[];
  kind: string;
  out: string;
  options: PlotOptions;
}

function parseArgs(argv: string[]): Args {
  const values: Record<string, string> = {};
  for (let i = 0; i < argv.length; i += 2) {
    const flag = argv[i];
    if (!flag.startsWith("--")) throw new Error(`unexpected argument "${flag}"`);
    const value = argv[i + 1];
    if (value === undefined) throw new Error(`missing value for ${flag}`);
    values[flag.slice(2)] = value;
  }
  for (const required of ["input", "kind", "out"]) {
    if (!(required in values)) throw new Error(`--${required} is required`);
  }
  if (values.kind !== "cdf" && values.kind !== "sweep") {
    throw new Error(`--kind must be cdf or sweep, got "${values.kind}"`);
  }
  const options: PlotOptions = {
    ...DEFAULT_OPTIONS,
    width: values.width ? Number(values.width) : DEFAULT_OPTIONS.width,
    height: values.height ? Number(values.height) : DEFAULT_OPTIONS.height,
    xlabel: values.xlabel,
    ylabel: values.ylabel,
    title: values.title,
    schemes: values.schemes
      ? values.schemes.split(",").map((s) => s.trim()).filter(Boolean)
      : undefined,
  };
  if (!Number.isFinite(options.width) || !Number.isFinite(options.height)
      || options.width <= 0 || options.height <= 0) {
    throw new Error("--width/--height must be positive numbers");
  }
  return {
    input: values.input.split(",").map((s) => s.trim()).filter(Boolean),
    kind: values.kind,
    out: values.out,
    options,
  };
}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (err) {
    process.stderr.write(`${(err as Error).message}\n\n${USAGE}\n`);
    return 2;
  }
  try {
    let body: string;
    if (args.kind === "cdf") {
      if (args.input.length !== 1) {
        throw new Error("--kind cdf takes exactly one input file");
      }
      body = renderCdfSvg(parseRawCsv(args.input[0]), args.options);
    } else {
      body = renderSweepSvg(args.input, args.options);
    }
    fs.mkdirSync(path.dirname(path.resolve(args.out)), { recursive: true });
    fs.writeFileSync(args.out, body);
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      process.stderr.write(
        `schema mismatch (column "${err.column}"): ${err.message}\n`);
    } else {
      process.stderr.write(`${(err as Error).message}\n`);
    }
    return 2;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
