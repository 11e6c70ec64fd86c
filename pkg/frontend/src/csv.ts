/**
 * Parsers for the sweep CSV contract and its spectra sidecar.
 *
 * Main file:    mu,delta,g0,seed,max_imag,reality,zero_count,min_abs_eig
 * Sidecar:      point_index,eig_index,re,im
 *
 * The header must match the contract exactly; any deviation raises a
 * SchemaError naming the offending column.
 */

export class SchemaError extends Error {
  readonly column: string;

  constructor(message: string, column: string) {
    super(message);
    this.name = "SchemaError";
    this.column = column;
  }
}

export const SWEEP_COLUMNS = [
  "mu", "delta", "g0", "seed", "max_imag", "reality", "zero_count", "min_abs_eig",
] as const;

export const SPECTRA_COLUMNS = ["point_index", "eig_index", "re", "im"] as const;

export interface SweepRow {
  mu: number;
  delta: number;
  g0: number | null;
  seed: number | null;
  maxImag: number;
  reality: string;
  zeroCount: number;
  minAbsEig: number;
}

export interface SpectrumRow {
  pointIndex: number;
  eigIndex: number;
  re: number;
  im: number;
}

function lines(text: string): string[] {
  return text.split(/\r?\n/).filter((line) => line.length > 0);
}

export function validateHeader(header: string, expected: readonly string[]): void {
  const got = header.split(",").map((c) => c.trim());
  for (const column of expected) {
    if (!got.includes(column)) {
      throw new SchemaError(`missing column '${column}'`, column);
    }
  }
  for (const column of got) {
    if (!expected.includes(column)) {
      throw new SchemaError(`unexpected column '${column}'`, column);
    }
  }
  for (let i = 0; i < expected.length; i++) {
    if (got[i] !== expected[i]) {
      throw new SchemaError(
        `column '${got[i]}' out of order (expected '${expected[i]}' at position ${i})`,
        got[i],
      );
    }
  }
}

function parseNumber(token: string, column: string, row: number): number {
  const value = Number(token);
  if (token.trim() === "" || !Number.isFinite(value)) {
    throw new SchemaError(
      `column '${column}' has non-numeric value '${token}' at data row ${row}`,
      column,
    );
  }
  return value;
}

function parseOptional(token: string, column: string, row: number): number | null {
  return token.trim() === "" ? null : parseNumber(token, column, row);
}

export function parseSweepCsv(text: string): SweepRow[] {
  const all = lines(text);
  if (all.length === 0) {
    throw new SchemaError("empty file: missing header row", SWEEP_COLUMNS[0]);
  }
  validateHeader(all[0], SWEEP_COLUMNS);
  return all.slice(1).map((line, i) => {
    const cells = line.split(",");
    if (cells.length !== SWEEP_COLUMNS.length) {
      throw new SchemaError(
        `data row ${i + 1} has ${cells.length} cells, expected ${SWEEP_COLUMNS.length}`,
        SWEEP_COLUMNS[Math.min(cells.length, SWEEP_COLUMNS.length) - 1],
      );
    }
    return {
      mu: parseNumber(cells[0], "mu", i + 1),
      delta: parseNumber(cells[1], "delta", i + 1),
      g0: parseOptional(cells[2], "g0", i + 1),
      seed: parseOptional(cells[3], "seed", i + 1),
      maxImag: parseNumber(cells[4], "max_imag", i + 1),
      reality: cells[5],
      zeroCount: parseNumber(cells[6], "zero_count", i + 1),
      minAbsEig: parseNumber(cells[7], "min_abs_eig", i + 1),
    };
  });
}

export function parseSpectraCsv(text: string): SpectrumRow[] {
  const all = lines(text);
  if (all.length === 0) {
    throw new SchemaError("empty file: missing header row", SPECTRA_COLUMNS[0]);
  }
  validateHeader(all[0], SPECTRA_COLUMNS);
  return all.slice(1).map((line, i) => {
    const cells = line.split(",");
    if (cells.length !== SPECTRA_COLUMNS.length) {
      throw new SchemaError(
        `data row ${i + 1} has ${cells.length} cells, expected ${SPECTRA_COLUMNS.length}`,
        SPECTRA_COLUMNS[Math.min(cells.length, SPECTRA_COLUMNS.length) - 1],
      );
    }
    return {
      pointIndex: parseNumber(cells[0], "point_index", i + 1),
      eigIndex: parseNumber(cells[1], "eig_index", i + 1),
      re: parseNumber(cells[2], "re", i + 1),
      im: parseNumber(cells[3], "im", i + 1),
    };
  });
}
