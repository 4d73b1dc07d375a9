/**
 * Pure view-model builders. Every displayed score is the API's decimal
 * string passed through untouched; floats appear only for chart geometry.
 */

import type {
  CatalogDoc,
  DimensionScoreDoc,
  ProfileDoc,
  RankingDoc,
  RunDoc,
} from './api.js';

export interface DimensionRow {
  dimensionId: string;
  name: string;
  /** decimal exactly as the API rendered it, or null when not scored */
  valueDecimal: string | null;
  /** geometry-only float for charts */
  valueNumber: number | null;
  zeroWeight: boolean;
  notApplicable: boolean;
  excludedMetrics: string[];
}

export interface JudgmentControl {
  metricId: string;
  description: string;
  judged: boolean;
  currentDecimal: string | null;
}

export interface RunView {
  runId: string;
  kgId: string;
  status: RunDoc['status'];
  totalDecimal: string | null;
  dimensions: DimensionRow[];
  judgmentControls: JudgmentControl[];
  pendingJudgments: string[];
}

export interface RankingRow {
  rank: number;
  kgId: string;
  runId: string;
  totalDecimal: string;
  strongest: string | null;
  weakest: string | null;
}

export interface RankingView {
  rows: RankingRow[];
  recommendation: string | null;
}

function positiveRational(value: { num: number; den: number } | undefined): boolean {
  return !!value && value.num > 0;
}

/** Positively weighted qualitative metrics that still lack a judgment. */
export function pendingQlMetrics(
  catalog: CatalogDoc,
  profile: ProfileDoc,
  run: RunDoc
): string[] {
  const judged = new Set(run.judgment_history.map((j) => j.metric_id));
  const pending: string[] = [];
  for (const dim of catalog.dimensions) {
    if (!positiveRational(profile.beta[dim.dimension_id])) continue;
    const alphas = profile.alpha[dim.dimension_id] ?? {};
    for (const metric of dim.metrics) {
      if (metric.kind !== 'QL') continue;
      if (!positiveRational(alphas[metric.metric_id])) continue;
      if (!judged.has(metric.metric_id)) pending.push(metric.metric_id);
    }
  }
  return pending;
}

function dimensionScoreOf(run: RunDoc, dimensionId: string): DimensionScoreDoc | undefined {
  return run.dimension_scores.find((d) => d.dimension_id === dimensionId);
}

export function runView(catalog: CatalogDoc, profile: ProfileDoc, run: RunDoc): RunView {
  const dimensions: DimensionRow[] = catalog.dimensions.map((dim) => {
    const score = dimensionScoreOf(run, dim.dimension_id);
    const value = score?.value ?? null;
    return {
      dimensionId: dim.dimension_id,
      name: dim.name,
      valueDecimal: value ? value.decimal : null,
      valueNumber: value ? value.num / value.den : null,
      zeroWeight: !positiveRational(profile.beta[dim.dimension_id]),
      notApplicable: score?.not_applicable ?? true,
      excludedMetrics: score?.excluded_not_applicable ?? [],
    };
  });
  const scoreByMetric = new Map(run.metric_scores.map((s) => [s.metric_id, s]));
  const judgmentControls: JudgmentControl[] = [];
  for (const dim of catalog.dimensions) {
    for (const metric of dim.metrics) {
      if (metric.kind !== 'QL') continue; // QN metrics never get a judgment control
      const score = scoreByMetric.get(metric.metric_id);
      judgmentControls.push({
        metricId: metric.metric_id,
        description: metric.description,
        judged: !!score && !score.not_applicable,
        currentDecimal: score?.value?.decimal ?? null,
      });
    }
  }
  return {
    runId: run.run_id,
    kgId: run.kg_id,
    status: run.status,
    totalDecimal: run.total ? run.total.decimal : null,
    dimensions,
    judgmentControls,
    pendingJudgments: pendingQlMetrics(catalog, profile, run),
  };
}

export function rankingView(doc: RankingDoc): RankingView {
  return {
    rows: doc.rankings.map((entry) => ({
      rank: entry.rank,
      kgId: entry.kg_id,
      runId: entry.run_id,
      totalDecimal: entry.total.decimal,
      strongest: entry.strongest_dimension,
      weakest: entry.weakest_dimension,
    })),
    recommendation: doc.recommendation,
  };
}

// -- chart geometry (floats are fine here: layout, not score math) ------------

export interface RadarPoint {
  x: number;
  y: number;
  label: string;
  greyed: boolean;
}

export function radarPoints(rows: DimensionRow[], radius: number): RadarPoint[] {
  const count = rows.length;
  return rows.map((row, index) => {
    const angle = (Math.PI * 2 * index) / count - Math.PI / 2;
    const magnitude = (row.valueNumber ?? 0) * radius;
    return {
      x: Math.cos(angle) * magnitude,
      y: Math.sin(angle) * magnitude,
      label: row.name,
      greyed: row.zeroWeight,
    };
  });
}

export function axisPoints(count: number, radius: number): Array<{ x: number; y: number }> {
  return Array.from({ length: count }, (_, index) => {
    const angle = (Math.PI * 2 * index) / count - Math.PI / 2;
    return { x: Math.cos(angle) * radius, y: Math.sin(angle) * radius };
  });
}
