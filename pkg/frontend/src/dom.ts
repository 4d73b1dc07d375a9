/**
 * Real-DOM View implementation: renders the workspace view model into the
 * page skeleton from index.html. Sliders are native range inputs, so they
 * stay keyboard operable; weight sums are announced via an aria-live node.
 */

import type { WorkspaceViewModel, View } from './app.js';
import type { WorkspaceController } from './app.js';
import { radarSvg } from './charts.js';
import { SLIDER_MAX } from './weights.js';

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function esc(text: string): string {
  const div = document.createElement('div');
  div.textContent = text;
  return div.innerHTML;
}

export class DomView implements View {
  private controller: WorkspaceController | null = null;

  bind(controller: WorkspaceController): void {
    this.controller = controller;
    el('undo-button').addEventListener('click', () => controller.onUndo());
    el('export-button').addEventListener('click', () => controller.exportReport());
  }

  renderError(message: string): void {
    const banner = el('error-banner');
    banner.textContent = message;
    banner.hidden = false;
  }

  announce(text: string): void {
    el('live-region').textContent = text;
  }

  downloadReport(html: string, filename: string): void {
    const blob = new Blob([html], { type: 'text/html' });
    const url = URL.createObjectURL(blob);
    const link = document.createElement('a');
    link.href = url;
    link.download = filename;
    link.click();
    URL.revokeObjectURL(url);
  }

  renderWorkspace(vm: WorkspaceViewModel): void {
    el('error-banner').hidden = true;
    el('workspace').hidden = false;
    this.renderHeader(vm);
    this.renderWeights(vm);
    this.renderDimensions(vm);
    this.renderJudgments(vm);
    this.renderRanking(vm);
  }

  private renderHeader(vm: WorkspaceViewModel): void {
    el('usecase-title').textContent = vm.useCase
      ? `${vm.useCase.title} (${vm.useCase.use_case_id})`
      : 'No use case';
    const total = el('total-score');
    if (vm.emptyState) {
      total.textContent = 'No runs yet — assess a KG to get started.';
    } else {
      total.textContent = vm.run?.totalDecimal
        ? `Total score ${vm.run.totalDecimal}`
        : 'Total pending evidence';
    }
    const badge = el('status-badge');
    badge.textContent = vm.run ? vm.run.status.replace('_', ' ') : '';
    badge.className = `badge ${vm.run?.status ?? ''}`;
    (el('undo-button') as HTMLButtonElement).disabled = !vm.canUndo;
    (el('export-button') as HTMLButtonElement).disabled =
      !vm.run || vm.run.status !== 'complete';
    const sumNote = el('weight-validity');
    sumNote.textContent = vm.weightsValid
      ? 'effective weights sum to 100%'
      : 'invalid: raise at least one importance slider';
    sumNote.className = vm.weightsValid ? 'ok' : 'error';
  }

  private renderWeights(vm: WorkspaceViewModel): void {
    const host = el('weight-controls');
    const controller = this.controller;
    if (!controller) return;
    host.replaceChildren();
    for (const row of vm.run?.dimensions ?? []) {
      const raw = vm.weights.rawBeta[row.dimensionId] ?? 0;
      const pct = vm.preview.betaPercent[row.dimensionId] ?? '–';
      const wrapper = document.createElement('div');
      wrapper.className = row.zeroWeight ? 'weight-row greyed' : 'weight-row';
      wrapper.innerHTML =
        `<label for="beta-${esc(row.dimensionId)}">${esc(row.name)}</label>` +
        `<input type="range" id="beta-${esc(row.dimensionId)}" min="0" max="${SLIDER_MAX}" ` +
        `step="1" value="${raw}" aria-label="importance of ${esc(row.name)}">` +
        `<span class="pct">${esc(pct)}</span>`;
      const slider = wrapper.querySelector('input');
      slider?.addEventListener('input', () => {
        controller.onBetaChange(row.dimensionId, Number(slider.value));
      });
      host.appendChild(wrapper);
    }
  }

  private renderDimensions(vm: WorkspaceViewModel): void {
    const table = el('dimension-table');
    const rows = (vm.run?.dimensions ?? [])
      .map((row) => {
        const cls = row.zeroWeight ? 'greyed' : '';
        const value = row.valueDecimal ?? (row.notApplicable ? 'n/a' : '–');
        return `<tr class="${cls}"><td>${esc(row.name)}</td><td class="num">${esc(value)}</td></tr>`;
      })
      .join('');
    table.innerHTML =
      '<thead><tr><th>Dimension</th><th>Score</th></tr></thead>' +
      `<tbody>${rows}</tbody>`;
    el('radar-host').innerHTML = vm.run
      ? radarSvg(vm.run.dimensions, `Dimension scores for ${vm.run.kgId}`)
      : '';
  }

  private renderJudgments(vm: WorkspaceViewModel): void {
    const host = el('judgment-forms');
    const controller = this.controller;
    if (!controller || !vm.run) {
      host.replaceChildren();
      return;
    }
    const pending = new Set(vm.run.pendingJudgments);
    el('pending-badge').textContent = pending.size
      ? `${pending.size} judgment(s) pending`
      : 'all weighted judgments recorded';
    host.replaceChildren();
    for (const control of vm.run.judgmentControls) {
      const wrapper = document.createElement('form');
      wrapper.className = pending.has(control.metricId) ? 'judgment pending' : 'judgment';
      wrapper.innerHTML =
        `<span class="metric">${esc(control.metricId)}</span>` +
        `<span class="desc">${esc(control.description)}</span>` +
        `<input type="range" min="0" max="100" step="1" ` +
        `value="${control.currentDecimal ? Math.round(Number(control.currentDecimal) * 100) : 50}" ` +
        `aria-label="judgment for ${esc(control.metricId)}">` +
        `<input type="text" placeholder="rationale" aria-label="rationale for ${esc(control.metricId)}">` +
        `<button type="submit">Record</button>` +
        (control.currentDecimal ? `<span class="current">now ${esc(control.currentDecimal)}</span>` : '');
      wrapper.addEventListener('submit', (event) => {
        event.preventDefault();
        const slider = wrapper.querySelector<HTMLInputElement>('input[type=range]');
        const rationale = wrapper.querySelector<HTMLInputElement>('input[type=text]');
        if (!rationale?.value) rationale?.classList.add('flagged'); // allowed, but flagged
        const hundredths = Number(slider?.value ?? '50');
        void controller.submitJudgment(
          control.metricId,
          `${(hundredths / 100).toFixed(2)}`,
          'dashboard-user',
          rationale?.value ?? ''
        );
      });
      host.appendChild(wrapper);
    }
  }

  private renderRanking(vm: WorkspaceViewModel): void {
    const table = el('ranking-table');
    if (!vm.ranking.rows.length) {
      table.innerHTML = '<tbody><tr><td>No complete runs for this use case yet.</td></tr></tbody>';
      el('recommendation').textContent = '';
      return;
    }
    const rows = vm.ranking.rows
      .map(
        (row) =>
          `<tr><td>${row.rank}</td><td>${esc(row.kgId)}</td>` +
          `<td class="num">${esc(row.totalDecimal)}</td>` +
          `<td>${esc(row.strongest ?? '–')}</td><td>${esc(row.weakest ?? '–')}</td></tr>`
      )
      .join('');
    table.innerHTML =
      '<thead><tr><th>#</th><th>KG</th><th>Total</th><th>Strongest</th><th>Weakest</th></tr></thead>' +
      `<tbody>${rows}</tbody>`;
    el('recommendation').textContent = vm.ranking.recommendation ?? '';
  }
}
