/**
 * Self-contained HTML report: ranking, per-dimension charts, the weight
 * profile used and the API's recommendation line verbatim.
 */

import type { RankingView, RunView } from './viewmodel.js';
import { radarSvg } from './charts.js';

export interface ReportInput {
  useCaseId: string;
  profileLabel: string;
  /** weights were edited but not saved as a profile */
  unsavedDraft: boolean;
  ranking: RankingView;
  runs: RunView[];
  generatedAt: string;
}

function esc(text: string): string {
  return text.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;');
}

export function buildReport(input: ReportInput): string {
  const profileNote = input.unsavedDraft
    ? `${esc(input.profileLabel)} <em>(unsaved draft)</em>`
    : esc(input.profileLabel);
  const rankingRows = input.ranking.rows
    .map(
      (row) =>
        `<tr><td>${row.rank}</td><td>${esc(row.kgId)}</td>` +
        `<td class="num">${esc(row.totalDecimal)}</td>` +
        `<td>${esc(row.strongest ?? '–')}</td><td>${esc(row.weakest ?? '–')}</td></tr>`
    )
    .join('\n');
  const charts = input.runs
    .map(
      (run) =>
        `<section><h3>${esc(run.kgId)} — total ${esc(run.totalDecimal ?? 'n/a')}</h3>` +
        radarSvg(run.dimensions, `Dimension scores for ${run.kgId}`) +
        '</section>'
    )
    .join('\n');
  const recommendation = input.ranking.recommendation
    ? `<p class="recommendation">${esc(input.ranking.recommendation)}</p>`
    : '<p class="recommendation">No complete runs to recommend from.</p>';
  return `<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>KG quality report — ${esc(input.useCaseId)}</title>
<style>
body { font-family: system-ui, sans-serif; margin: 2rem auto; max-width: 60rem; color: #1c2733; }
table { border-collapse: collapse; width: 100%; margin: 1rem 0; }
th, td { border: 1px solid #ccd2da; padding: 0.4rem 0.6rem; text-align: left; }
td.num { font-variant-numeric: tabular-nums; }
.recommendation { background: #eef4fb; padding: 0.8rem; border-left: 4px solid #2e6eb4; }
svg { max-width: 420px; display: block; }
.radar-label.greyed { fill: #9aa4b0; }
</style>
</head>
<body>
<h1>Knowledge graph quality report</h1>
<p>Use case <strong>${esc(input.useCaseId)}</strong>, weights: ${profileNote}.
Generated ${esc(input.generatedAt)}.</p>
${recommendation}
<h2>Ranking</h2>
<table>
<thead><tr><th>Rank</th><th>KG</th><th>Total</th><th>Strongest</th><th>Weakest</th></tr></thead>
<tbody>
${rankingRows}
</tbody>
</table>
<h2>Per-dimension profiles</h2>
${charts}
</body>
</html>
`;
}
