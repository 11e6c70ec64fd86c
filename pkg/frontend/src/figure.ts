/**
 * Builds one figure from a sweep CSV and its spectra sidecar: every
 * eigenvalue branch scattered against the swept axis.
 */

import { SchemaError, parseSpectraCsv, parseSweepCsv } from "./csv";
import { Series, renderScatter } from "./svg";

export const FIGURE_KINDS = ["real-vs-mu", "imag-vs-mu", "imag-vs-delta"] as const;
export type FigureKind = (typeof FIGURE_KINDS)[number];

export function sidecarName(mainPath: string): string {
  return mainPath.endsWith(".csv")
    ? mainPath.slice(0, -4) + ".spectra.csv"
    : mainPath + ".spectra.csv";
}

const AXIS_LABELS: Record<FigureKind, { x: string; y: string }> = {
  "real-vs-mu": { x: "chemical potential mu", y: "Re E" },
  "imag-vs-mu": { x: "chemical potential mu", y: "Im E" },
  "imag-vs-delta": { x: "pairing delta", y: "Im E" },
};

export function buildFigure(
  kind: FigureKind,
  sweepText: string,
  spectraText: string,
  title: string,
): string {
  const rows = parseSweepCsv(sweepText);
  const spectra = parseSpectraCsv(spectraText);

  const axisValue = (pointIndex: number): number => {
    if (pointIndex < 0 || pointIndex >= rows.length) {
      throw new SchemaError(
        `column 'point_index' value ${pointIndex} has no matching sweep row`,
        "point_index",
      );
    }
    const row = rows[pointIndex];
    return kind === "imag-vs-delta" ? row.delta : row.mu;
  };

  const byBranch = new Map<number, Series>();
  for (const entry of spectra) {
    let series = byBranch.get(entry.eigIndex);
    if (!series) {
      series = { label: `branch ${entry.eigIndex}`, points: [] };
      byBranch.set(entry.eigIndex, series);
    }
    series.points.push({
      x: axisValue(entry.pointIndex),
      y: kind === "real-vs-mu" ? entry.re : entry.im,
    });
  }
  const series = [...byBranch.entries()]
    .sort((a, b) => a[0] - b[0])
    .map(([, s]) => s);

  const labels = AXIS_LABELS[kind];
  return renderScatter(series, { title, xLabel: labels.x, yLabel: labels.y });
}
