/**
 * Weight control state: raw slider importances per dimension and per metric,
 * a live normalization preview, a dirty flag and an undo stack. Raw values
 * are never sent to the API; the exact normalized fractions are.
 */

import type { CatalogDoc, ProfileDoc, RetuneBody } from './api.js';
import { Frac, frac, isZero, normalize, sum, toWire, asPercent, ZERO } from './rational.js';

export const SLIDER_MAX = 100;

export interface WeightControlState {
  rawBeta: Record<string, number>;
  rawAlpha: Record<string, Record<string, number>>;
  dirty: boolean;
}

export interface NormalizationPreview {
  betaPercent: Record<string, string>;
  alphaPercent: Record<string, Record<string, string>>;
  /** null when every beta slider sits at zero (invalid state). */
  valid: boolean;
  /** dimensions whose alpha sliders are all zero while beta is positive */
  emptyAlphaDimensions: string[];
}

export function stateFromProfile(catalog: CatalogDoc, profile: ProfileDoc): WeightControlState {
  // initialize sliders proportionally to the profile's normalized weights
  const rawBeta: Record<string, number> = {};
  const rawAlpha: Record<string, Record<string, number>> = {};
  for (const dim of catalog.dimensions) {
    const beta = profile.beta[dim.dimension_id];
    rawBeta[dim.dimension_id] = beta
      ? Math.round((beta.num / beta.den) * SLIDER_MAX)
      : 0;
    const metricRaw: Record<string, number> = {};
    const alphas = profile.alpha[dim.dimension_id] ?? {};
    for (const metric of dim.metrics) {
      const alpha = alphas[metric.metric_id];
      metricRaw[metric.metric_id] = alpha
        ? Math.round((alpha.num / alpha.den) * SLIDER_MAX)
        : 0;
    }
    rawAlpha[dim.dimension_id] = metricRaw;
  }
  return { rawBeta, rawAlpha, dirty: false };
}

export function cloneState(state: WeightControlState): WeightControlState {
  return {
    rawBeta: { ...state.rawBeta },
    rawAlpha: Object.fromEntries(
      Object.entries(state.rawAlpha).map(([d, m]) => [d, { ...m }])
    ),
    dirty: state.dirty,
  };
}

export function setBeta(state: WeightControlState, dimensionId: string, value: number): WeightControlState {
  const next = cloneState(state);
  next.rawBeta[dimensionId] = clampRaw(value);
  next.dirty = true;
  return next;
}

export function setAlpha(
  state: WeightControlState,
  dimensionId: string,
  metricId: string,
  value: number
): WeightControlState {
  const next = cloneState(state);
  const metrics = next.rawAlpha[dimensionId];
  if (metrics) metrics[metricId] = clampRaw(value);
  next.dirty = true;
  return next;
}

function clampRaw(value: number): number {
  if (!Number.isFinite(value)) return 0;
  return Math.max(0, Math.min(SLIDER_MAX, Math.round(value)));
}

function rawFracs(raw: Record<string, number>): Record<string, Frac> {
  return Object.fromEntries(
    Object.entries(raw).map(([key, value]) => [key, frac(value)])
  );
}

export function preview(state: WeightControlState): NormalizationPreview {
  const betaNorm = normalize(rawFracs(state.rawBeta));
  const betaPercent: Record<string, string> = {};
  const alphaPercent: Record<string, Record<string, string>> = {};
  const emptyAlpha: string[] = [];
  for (const [dim, rawValue] of Object.entries(state.rawBeta)) {
    betaPercent[dim] = betaNorm ? asPercent(betaNorm[dim] ?? ZERO) : '–';
    const metrics = state.rawAlpha[dim] ?? {};
    const alphaNorm = normalize(rawFracs(metrics));
    alphaPercent[dim] = {};
    for (const metricId of Object.keys(metrics)) {
      alphaPercent[dim][metricId] = alphaNorm ? asPercent(alphaNorm[metricId] ?? ZERO) : '–';
    }
    if (rawValue > 0 && alphaNorm === null) emptyAlpha.push(dim);
  }
  return {
    betaPercent,
    alphaPercent,
    valid: betaNorm !== null && emptyAlpha.length === 0,
    emptyAlphaDimensions: emptyAlpha,
  };
}

/**
 * Exact normalized weights for the retune body, or null while the control
 * state is invalid (all-zero beta, or a selected dimension with no metric
 * weight). Invalid states never reach the API.
 */
export function toRetuneBody(state: WeightControlState): RetuneBody | null {
  const betaNorm = normalize(rawFracs(state.rawBeta));
  if (!betaNorm) return null;
  const beta: Record<string, { num: number; den: number }> = {};
  const alpha: Record<string, Record<string, { num: number; den: number }>> = {};
  for (const [dim, value] of Object.entries(betaNorm)) {
    beta[dim] = toWire(value);
  }
  for (const [dim, metrics] of Object.entries(state.rawAlpha)) {
    const betaValue = state.rawBeta[dim] ?? 0;
    const alphaNorm = normalize(rawFracs(metrics));
    if (alphaNorm === null) {
      if (betaValue > 0) return null;
      continue; // zero-weight dimension with no alphas: legal to omit
    }
    alpha[dim] = {};
    for (const [metricId, value] of Object.entries(alphaNorm)) {
      alpha[dim][metricId] = toWire(value);
    }
  }
  return { beta, alpha };
}

/** Sanity mirror of the server constraint: normalized family sums are 1. */
export function sumsToOne(weights: Record<string, { num: number; den: number }>): boolean {
  const total = sum(Object.values(weights).map((w) => frac(w.num, w.den)));
  return total.num === total.den;
}

export interface UndoEntry {
  state: WeightControlState;
  /** decimal total string rendered for that state; restored verbatim on undo */
  totalDecimal: string | null;
}

export class UndoStack {
  private entries: UndoEntry[] = [];

  push(entry: UndoEntry): void {
    this.entries.push({ state: cloneState(entry.state), totalDecimal: entry.totalDecimal });
  }

  pop(): UndoEntry | undefined {
    return this.entries.pop();
  }

  get depth(): number {
    return this.entries.length;
  }
}
