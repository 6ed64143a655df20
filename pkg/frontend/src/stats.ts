/** Small sample-statistics helpers shared by the plot kinds. */

export interface CdfPoint {
  value: number;
  fraction: number;
}

/** Empirical CDF: sorted values with fractions i/n; last point exactly 1. */
export function empiricalCdf(samples: number[]): CdfPoint[] {
  if (samples.length === 0) {
    throw new Error("empty sample set");
  }
  const sorted = [...samples].sort((a, b) => a - b);
  const n = sorted.length;
  return sorted.map((value, i) => ({ value, fraction: (i + 1) / n }));
}

/** Nearest-rank percentile, matching the experiment harness convention. */
export function percentileNearestRank(samples: number[], q: number): number {
  if (samples.length === 0) {
    throw new Error("empty sample set");
  }
  const sorted = [...samples].sort((a, b) => a - b);
  const rank = Math.max(1, Math.ceil(q * sorted.length));
  return sorted[Math.min(rank, sorted.length) - 1];
}

export function median(samples: number[]): number {
  return percentileNearestRank(samples, 0.5);
}
