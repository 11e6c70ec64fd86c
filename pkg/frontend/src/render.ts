#!/usr/bin/env node
/**
 * CLI: render one sweep CSV (plus its spectra sidecar) to an SVG file.
 *
 *   render --kind imag-vs-mu --in fig2_g0.15.csv --out fig2_g0.15.svg
 *
 * The sidecar path defaults to <in but .spectra.csv>; override with
 * --spectra. Exit codes: 0 ok, 1 schema/data/IO error (schema errors name
 * the offending column), 2 usage error.
 */

import { readFileSync, writeFileSync } from "fs";
import { basename } from "path";

import { SchemaError } from "./csv";
import { FIGURE_KINDS, FigureKind, buildFigure, sidecarName } from "./figure";

interface Args {
  kind: FigureKind;
  input: string;
  output: string;
  spectra: string;
}

function usage(): string {
  return (
    "usage: render --kind {real-vs-mu|imag-vs-mu|imag-vs-delta} " +
    "--in <sweep.csv> --out <figure.svg> [--spectra <sweep.spectra.csv>]"
  );
}

function parseArgs(argv: string[]): Args {
  const values = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (!flag.startsWith("--") || value === undefined) {
      throw new Error(`bad argument '${flag}'`);
    }
    values.set(flag.slice(2), value);
  }
  const kind = values.get("kind");
  const input = values.get("in");
  const output = values.get("out");
  if (!kind || !input || !output) {
    throw new Error("missing --kind, --in or --out");
  }
  if (!(FIGURE_KINDS as readonly string[]).includes(kind)) {
    throw new Error(`unknown kind '${kind}'`);
  }
  return {
    kind: kind as FigureKind,
    input,
    output,
    spectra: values.get("spectra") ?? sidecarName(input),
  };
}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (error) {
    console.error(`error: ${(error as Error).message}`);
    console.error(usage());
    return 2;
  }
  try {
    const sweepText = readFileSync(args.input, "utf8");
    const spectraText = readFileSync(args.spectra, "utf8");
    const svg = buildFigure(args.kind, sweepText, spectraText, basename(args.input));
    writeFileSync(args.output, svg);
    return 0;
  } catch (error) {
    if (error instanceof SchemaError) {
      console.error(`schema error in column '${error.column}': ${error.message}`);
    } else {
      console.error(`error: ${(error as Error).message}`);
    }
    return 1;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
