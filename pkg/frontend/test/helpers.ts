/** Shared scripted documents for controller tests. */

import type {
  CatalogDoc,
  ProfileDoc,
  RankingDoc,
  Rational,
  RunDoc,
  UseCaseDoc,
} from '../src/api.js';

export function rat(num: number, den: number, decimal: string): Rational {
  return { num, den, decimal };
}

export const catalog: CatalogDoc = {
  catalog_version: '1.0.0',
  dimensions: [
    {
      dimension_id: 'accuracy',
      name: 'Accuracy',
      metrics: [
        { metric_id: 'accuracy.syntactic_validity', kind: 'QN', evidence: ['snapshot'], description: 'typed literals parse' },
        { metric_id: 'accuracy.semantic_validity', kind: 'QN', evidence: ['snapshot'], description: 'constraints hold' },
      ],
    },
    {
      dimension_id: 'timeliness',
      name: 'Timeliness',
      metrics: [
        { metric_id: 'timeliness.up_to_date', kind: 'QN', evidence: ['snapshot'], description: 'recent changes' },
      ],
    },
    {
      dimension_id: 'variety',
      name: 'Variety',
      metrics: [
        { metric_id: 'variety.domain_sources', kind: 'QL', evidence: ['judgment'], description: 'many sources' },
      ],
    },
  ],
};

export const usecase: UseCaseDoc = {
  use_case_id: 'uc1',
  title: 'Scripted use case',
  description: '',
  default_profile_id: 'p1',
};

export const profile: ProfileDoc = {
  profile_id: 'p1',
  use_case_id: 'uc1',
  catalog_version: '1.0.0',
  beta: {
    accuracy: rat(1, 2, '0.5'),
    timeliness: rat(1, 4, '0.25'),
    variety: rat(1, 4, '0.25'),
  },
  alpha: {
    accuracy: {
      'accuracy.syntactic_validity': rat(1, 2, '0.5'),
      'accuracy.semantic_validity': rat(1, 2, '0.5'),
    },
    timeliness: { 'timeliness.up_to_date': rat(1, 1, '1') },
    variety: { 'variety.domain_sources': rat(1, 1, '1') },
  },
};

export function makeRun(overrides: Partial<RunDoc> = {}): RunDoc {
  return {
    run_id: 'run-1',
    kg_id: 'kg-a',
    use_case_id: 'uc1',
    profile_id: 'p1',
    catalog_version: '1.0.0',
    status: 'pending_judgments',
    metric_scores: [
      {
        metric_id: 'accuracy.syntactic_validity', kind: 'QN', not_applicable: false,
        evidence_summary: '', value: rat(146, 151, '0.966887417219'),
      },
      {
        metric_id: 'accuracy.semantic_validity', kind: 'QN', not_applicable: false,
        evidence_summary: '', value: rat(16, 17, '0.941176470588'),
      },
      {
        metric_id: 'timeliness.up_to_date', kind: 'QN', not_applicable: false,
        evidence_summary: '', value: rat(1, 1, '1'),
      },
      {
        metric_id: 'variety.domain_sources', kind: 'QL', not_applicable: true,
        evidence_summary: 'no judgment recorded',
      },
    ],
    dimension_scores: [
      {
        dimension_id: 'accuracy', not_applicable: false, contributing: [],
        excluded_not_applicable: [], value: rat(4897, 5134, '0.953836385664'),
      },
      {
        dimension_id: 'timeliness', not_applicable: false, contributing: [],
        excluded_not_applicable: [], value: rat(1, 1, '1'),
      },
      {
        dimension_id: 'variety', not_applicable: true, contributing: [],
        excluded_not_applicable: ['variety.domain_sources'],
      },
    ],
    total: rat(14791, 15402, '0.960329827295'),
    effective_beta: {
      accuracy: rat(2, 3, '0.666666666667'),
      timeliness: rat(1, 3, '0.333333333333'),
    },
    excluded_dimensions: ['variety'],
    judgment_history: [],
    parent_run_id: null,
    ...overrides,
  };
}

export function makeRanking(totalDecimal: string): RankingDoc {
  return {
    use_case_id: 'uc1',
    profile_id: 'p1',
    rankings: [
      {
        rank: 1, kg_id: 'kg-a', run_id: 'run-1',
        total: { num: 1, den: 1, decimal: totalDecimal },
        strongest_dimension: 'timeliness', weakest_dimension: 'accuracy',
        dimensions: {},
      },
    ],
    recommendation: `Use kg-a for use case uc1: total score ${totalDecimal}, ` +
      'strongest dimension timeliness, weakest dimension accuracy.',
  };
}
