/**
 * Workspace controller: the DOM-free core of the dashboard.
 *
 * Owns the loaded catalog/profile/runs, the weight control state, the retune
 * scheduler and the undo stack. A View implementation (real DOM or a test
 * double) receives fully built view models; no score arithmetic happens on
 * the way out.
 */

import {
  ApiClient,
  ApiError,
  type CatalogDoc,
  type ProfileDoc,
  type RunDoc,
  type UseCaseDoc,
} from './api.js';

/** structural surface so tests can drive the controller with a scripted API */
export type ApiSurface = Pick<
  ApiClient,
  'catalog' | 'usecase' | 'profile' | 'runs' | 'ranking' | 'retune' | 'postJudgment'
>;
import { Clock, realClock, RetuneScheduler } from './debounce.js';
import {
  cloneState,
  preview,
  setAlpha,
  setBeta,
  stateFromProfile,
  toRetuneBody,
  UndoStack,
  type NormalizationPreview,
  type WeightControlState,
} from './weights.js';
import {
  rankingView,
  runView,
  type RankingView,
  type RunView,
} from './viewmodel.js';
import { buildReport } from './report.js';

export interface WorkspaceViewModel {
  useCase: UseCaseDoc | null;
  run: RunView | null;
  ranking: RankingView;
  preview: NormalizationPreview;
  weights: WeightControlState;
  weightsValid: boolean;
  canUndo: boolean;
  emptyState: boolean;
}

export interface View {
  renderWorkspace(vm: WorkspaceViewModel): void;
  renderError(message: string): void;
  announce(text: string): void;
  downloadReport(html: string, filename: string): void;
}

export class WorkspaceController {
  private catalog: CatalogDoc | null = null;
  private useCase: UseCaseDoc | null = null;
  private profile: ProfileDoc | null = null;
  private run: RunDoc | null = null;
  private ranking: RankingView = { rows: [], recommendation: null };
  private weights: WeightControlState = { rawBeta: {}, rawAlpha: {}, dirty: false };
  private readonly undo = new UndoStack();
  private readonly scheduler: RetuneScheduler;
  /** run the current weights derive from (retunes chain off it) */
  private baseRunId: string | null = null;

  constructor(
    private readonly api: ApiSurface,
    private readonly view: View,
    clock: Clock = realClock,
    debounceMs = 300
  ) {
    this.scheduler = new RetuneScheduler(debounceMs, clock);
  }

  async loadWorkspace(useCaseId: string): Promise<void> {
    try {
      this.catalog = await this.api.catalog();
      this.useCase = await this.api.usecase(useCaseId);
      const profileId = this.useCase.default_profile_id;
      if (!profileId) {
        this.view.renderError(`use case ${useCaseId} has no default profile`);
        return;
      }
      this.profile = await this.api.profile(profileId);
      const runs = (await this.api.runs(useCaseId)).runs;
      this.run = runs.length ? runs[0] ?? null : null;
      this.baseRunId = this.run?.run_id ?? null;
      this.weights = stateFromProfile(this.catalog, this.profile);
      this.ranking = rankingView(await this.api.ranking(useCaseId, profileId));
      this.render();
    } catch (err) {
      this.view.renderError(err instanceof ApiError ? err.message : String(err));
    }
  }

  private render(): void {
    if (!this.catalog || !this.profile) return;
    const vm: WorkspaceViewModel = {
      useCase: this.useCase,
      run: this.run ? runView(this.catalog, this.profile, this.run) : null,
      ranking: this.ranking,
      preview: preview(this.weights),
      weights: cloneState(this.weights),
      weightsValid: preview(this.weights).valid,
      canUndo: this.undo.depth > 0,
      emptyState: this.run === null,
    };
    this.view.renderWorkspace(vm);
  }

  onBetaChange(dimensionId: string, raw: number): void {
    this.pushUndo();
    this.weights = setBeta(this.weights, dimensionId, raw);
    this.afterWeightChange();
  }

  onAlphaChange(dimensionId: string, metricId: string, raw: number): void {
    this.pushUndo();
    this.weights = setAlpha(this.weights, dimensionId, metricId, raw);
    this.afterWeightChange();
  }

  private pushUndo(): void {
    this.undo.push({
      state: this.weights,
      totalDecimal: this.run?.total?.decimal ?? null,
    });
  }

  private afterWeightChange(): void {
    const normalized = preview(this.weights);
    this.render();
    this.announceSums(normalized);
    if (!normalized.valid) {
      return; // inline error state; the API is never called with bad weights
    }
    const body = toRetuneBody(this.weights);
    if (!body || !this.baseRunId) return;
    const runId = this.baseRunId;
    this.scheduler.schedule((generation) => {
      void this.issueRetune(runId, body, generation);
    });
  }

  private announceSums(normalized: NormalizationPreview): void {
    this.view.announce(
      normalized.valid
        ? 'weights renormalized to 100%'
        : 'invalid weights: all importance sliders are zero'
    );
  }

  private async issueRetune(
    runId: string,
    body: NonNullable<ReturnType<typeof toRetuneBody>>,
    generation: number
  ): Promise<void> {
    try {
      const derived = await this.api.retune(runId, body);
      if (!this.scheduler.isCurrent(generation)) {
        return; // superseded while in flight; discard
      }
      this.run = derived;
      await this.refreshRanking();
      this.render();
    } catch (err) {
      this.view.renderError(err instanceof ApiError ? err.message : String(err));
    }
  }

  private async refreshRanking(): Promise<void> {
    if (!this.useCase?.default_profile_id) return;
    try {
      this.ranking = rankingView(
        await this.api.ranking(this.useCase.use_case_id, this.useCase.default_profile_id)
      );
    } catch {
      // ranking pane keeps its previous content when the call fails
    }
  }

  onUndo(): void {
    const entry = this.undo.pop();
    if (!entry) return;
    this.weights = entry.state;
    if (this.run && entry.totalDecimal !== null && this.run.total) {
      // the restored total is exactly the one previously rendered
      this.run = {
        ...this.run,
        total: { ...this.run.total, decimal: entry.totalDecimal },
      };
    }
    this.render();
    const body = toRetuneBody(this.weights);
    if (body && this.baseRunId) {
      const runId = this.baseRunId;
      this.scheduler.schedule((generation) => {
        void this.issueRetune(runId, body, generation);
      });
    }
  }

  async submitJudgment(metricId: string, value: string, rater: string, rationale: string): Promise<void> {
    if (!this.run) return;
    try {
      this.run = await this.api.postJudgment(this.run.run_id, {
        metric_id: metricId,
        value,
        rater,
        rationale,
      });
      this.baseRunId = this.run.run_id;
      await this.refreshRanking(); // no page reload: state refresh only
      this.render();
    } catch (err) {
      this.view.renderError(err instanceof ApiError ? err.message : String(err));
    }
  }

  exportReport(now: () => string = () => new Date().toISOString()): void {
    if (!this.catalog || !this.profile || !this.run) return;
    const html = buildReport({
      useCaseId: this.useCase?.use_case_id ?? '',
      profileLabel: this.profile.profile_id,
      unsavedDraft: this.weights.dirty,
      ranking: this.ranking,
      runs: [runView(this.catalog, this.profile, this.run)],
      generatedAt: now(),
    });
    this.view.downloadReport(html, `kgqa-report-${this.useCase?.use_case_id ?? 'run'}.html`);
  }

  /** current state snapshot for tests and the DOM layer */
  snapshot(): { run: RunDoc | null; ranking: RankingView; weights: WeightControlState } {
    return { run: this.run, ranking: this.ranking, weights: cloneState(this.weights) };
  }
}
