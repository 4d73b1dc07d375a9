import { describe, expect, it } from 'vitest';

import { pendingQlMetrics, radarPoints, rankingView, runView } from '../src/viewmodel.js';
import { catalog, makeRanking, makeRun, profile, rat } from './helpers.js';

describe('runView', () => {
  it('copies API decimals verbatim, no recomputation', () => {
    const run = makeRun();
    const vm = runView(catalog, profile, run);
    expect(vm.totalDecimal).toBe('0.960329827295');
    const accuracy = vm.dimensions.find((d) => d.dimensionId === 'accuracy')!;
    expect(accuracy.valueDecimal).toBe('0.953836385664');
    const variety = vm.dimensions.find((d) => d.dimensionId === 'variety')!;
    expect(variety.valueDecimal).toBeNull();
    expect(variety.notApplicable).toBe(true);
  });

  it('marks zero-weight dimensions greyed, not hidden', () => {
    const zeroVariety = {
      ...profile,
      beta: { ...profile.beta, variety: rat(0, 1, '0') },
    };
    const vm = runView(catalog, zeroVariety, makeRun());
    const variety = vm.dimensions.find((d) => d.dimensionId === 'variety')!;
    expect(variety.zeroWeight).toBe(true);
    expect(vm.dimensions).toHaveLength(3);
  });

  it('renders judgment controls only for QL metrics', () => {
    const vm = runView(catalog, profile, makeRun());
    expect(vm.judgmentControls.map((c) => c.metricId)).toEqual(['variety.domain_sources']);
    expect(vm.judgmentControls[0]!.judged).toBe(false);
  });
});

describe('pendingQlMetrics', () => {
  it('lists positively weighted unjudged QL metrics', () => {
    expect(pendingQlMetrics(catalog, profile, makeRun())).toEqual(['variety.domain_sources']);
  });

  it('ignores zero-weight QL metrics', () => {
    const zeroVariety = {
      ...profile,
      beta: { ...profile.beta, variety: rat(0, 1, '0') },
    };
    expect(pendingQlMetrics(catalog, zeroVariety, makeRun())).toEqual([]);
  });

  it('clears once judged', () => {
    const judged = makeRun({
      judgment_history: [
        { metric_id: 'variety.domain_sources', value: { num: 1, den: 2 }, rater: 'r', rationale: '' },
      ],
    });
    expect(pendingQlMetrics(catalog, profile, judged)).toEqual([]);
  });
});

describe('rankingView', () => {
  it('passes totals and the recommendation through', () => {
    const vm = rankingView(makeRanking('0.960329827295'));
    expect(vm.rows[0]!.totalDecimal).toBe('0.960329827295');
    expect(vm.recommendation).toContain('kg-a');
  });
});

describe('radarPoints', () => {
  it('produces one point per dimension within the radius', () => {
    const vm = runView(catalog, profile, makeRun());
    const points = radarPoints(vm.dimensions, 100);
    expect(points).toHaveLength(3);
    for (const p of points) {
      expect(Math.hypot(p.x, p.y)).toBeLessThanOrEqual(100.0001);
    }
  });
});
