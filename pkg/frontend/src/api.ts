/**
 * Typed client for the /v1 assessment API.
 *
 * Every score travels as an exact rational with a pre-rendered decimal
 * string; the client never recomputes score math, it only passes the
 * server's numbers through to the view layer.
 */

export interface Rational {
  num: number;
  den: number;
  decimal: string;
}

export interface MetricSpecDoc {
  metric_id: string;
  kind: 'QN' | 'QL';
  evidence: string[];
  description: string;
}

export interface DimensionSpecDoc {
  dimension_id: string;
  name: string;
  metrics: MetricSpecDoc[];
}

export interface CatalogDoc {
  catalog_version: string;
  dimensions: DimensionSpecDoc[];
}

export interface MetricScoreDoc {
  metric_id: string;
  kind: 'QN' | 'QL';
  not_applicable: boolean;
  evidence_summary: string;
  value?: Rational;
  numerator?: number;
  denominator?: number;
}

export interface ContributingDoc {
  metric_id: string;
  value: Rational;
  alpha: Rational;
  effective_alpha: Rational;
}

export interface DimensionScoreDoc {
  dimension_id: string;
  not_applicable: boolean;
  contributing: ContributingDoc[];
  excluded_not_applicable: string[];
  value?: Rational;
}

export interface JudgmentDoc {
  metric_id: string;
  value: { num: number; den: number; decimal?: string };
  rater: string;
  rationale: string;
  recorded_at?: string;
}

export interface RunDoc {
  run_id: string;
  kg_id: string;
  use_case_id: string;
  profile_id: string;
  catalog_version: string;
  status: 'pending_evidence' | 'pending_judgments' | 'complete';
  metric_scores: MetricScoreDoc[];
  dimension_scores: DimensionScoreDoc[];
  total: Rational | null;
  effective_beta: Record<string, Rational>;
  excluded_dimensions: string[];
  judgment_history: JudgmentDoc[];
  parent_run_id: string | null;
}

export interface ProfileDoc {
  profile_id: string;
  use_case_id: string | null;
  catalog_version: string;
  beta: Record<string, Rational>;
  alpha: Record<string, Record<string, Rational>>;
}

export interface UseCaseDoc {
  use_case_id: string;
  title: string;
  description: string;
  default_profile_id: string | null;
}

export interface RankingEntryDoc {
  rank: number;
  kg_id: string;
  run_id: string;
  total: Rational;
  strongest_dimension: string | null;
  weakest_dimension: string | null;
  dimensions: Record<string, Rational>;
}

export interface RankingDoc {
  use_case_id: string;
  profile_id: string;
  rankings: RankingEntryDoc[];
  recommendation: string | null;
}

export interface RetuneBody {
  profile_id?: string;
  beta?: Record<string, { num: number; den: number }>;
  alpha?: Record<string, Record<string, { num: number; den: number }>>;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly details?: unknown
  ) {
    super(message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly base: string,
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init)
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: {} };
    if (body !== undefined) {
      init.headers = { 'Content-Type': 'application/json' };
      init.body = JSON.stringify(body);
    }
    let response: Response;
    try {
      response = await this.fetchImpl(this.base + path, init);
    } catch (err) {
      throw new ApiError(0, 'network', `API unreachable: ${String(err)}`);
    }
    const payload = await response.json().catch(() => ({}));
    if (!response.ok) {
      throw new ApiError(
        response.status,
        (payload as { code?: string }).code ?? 'http-error',
        (payload as { message?: string }).message ?? `HTTP ${response.status}`,
        (payload as { details?: unknown }).details
      );
    }
    return payload as T;
  }

  catalog(): Promise<CatalogDoc> {
    return this.request('GET', '/catalog');
  }

  usecases(): Promise<{ usecases: UseCaseDoc[] }> {
    return this.request('GET', '/usecases');
  }

  usecase(id: string): Promise<UseCaseDoc> {
    return this.request('GET', `/usecases/${encodeURIComponent(id)}`);
  }

  profile(id: string): Promise<ProfileDoc> {
    return this.request('GET', `/profiles/${encodeURIComponent(id)}`);
  }

  runs(useCaseId: string): Promise<{ runs: RunDoc[] }> {
    return this.request('GET', `/runs?usecase=${encodeURIComponent(useCaseId)}`);
  }

  run(id: string): Promise<RunDoc> {
    return this.request('GET', `/runs/${encodeURIComponent(id)}`);
  }

  ranking(useCaseId: string, profileId: string): Promise<RankingDoc> {
    const qs = `?profile=${encodeURIComponent(profileId)}`;
    return this.request('GET', `/usecases/${encodeURIComponent(useCaseId)}/ranking${qs}`);
  }

  retune(runId: string, body: RetuneBody): Promise<RunDoc> {
    return this.request('POST', `/runs/${encodeURIComponent(runId)}/retune`, body);
  }

  postJudgment(
    runId: string,
    body: { metric_id: string; value: string; rater: string; rationale: string }
  ): Promise<RunDoc> {
    return this.request('POST', `/runs/${encodeURIComponent(runId)}/judgments`, body);
  }
}
