/**
 * Dependency-free SVG chart builders: a radar over the 20 dimensions and
 * grouped bars for head-to-head comparison. Pure string generators so they
 * render identically in the app and in exported reports.
 */

import { axisPoints, radarPoints, type DimensionRow } from './viewmodel.js';

const SIZE = 420;
const RADIUS = 150;
const CENTER = SIZE / 2;

function esc(text: string): string {
  return text.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

export function radarSvg(rows: DimensionRow[], title: string): string {
  if (rows.length === 0) return '<svg xmlns="http://www.w3.org/2000/svg"></svg>';
  const axes = axisPoints(rows.length, RADIUS);
  const rings = [0.25, 0.5, 0.75, 1].map((f) => {
    const ring = axisPoints(rows.length, RADIUS * f)
      .map((p) => `${(CENTER + p.x).toFixed(1)},${(CENTER + p.y).toFixed(1)}`)
      .join(' ');
    return `<polygon points="${ring}" fill="none" stroke="#d5d9e0" stroke-width="1"/>`;
  });
  const spokes = axes.map(
    (p) =>
      `<line x1="${CENTER}" y1="${CENTER}" x2="${(CENTER + p.x).toFixed(1)}" ` +
      `y2="${(CENTER + p.y).toFixed(1)}" stroke="#d5d9e0" stroke-width="1"/>`
  );
  const points = radarPoints(rows, RADIUS);
  const polygon = points
    .map((p) => `${(CENTER + p.x).toFixed(1)},${(CENTER + p.y).toFixed(1)}`)
    .join(' ');
  const labels = axes.map((p, index) => {
    const row = rows[index];
    if (!row) return '';
    const lx = CENTER + p.x * 1.22;
    const ly = CENTER + p.y * 1.22;
    const cls = row.zeroWeight ? 'radar-label greyed' : 'radar-label';
    const anchor = Math.abs(p.x) < 1 ? 'middle' : p.x > 0 ? 'start' : 'end';
    return (
      `<text x="${lx.toFixed(1)}" y="${ly.toFixed(1)}" class="${cls}" ` +
      `text-anchor="${anchor}" font-size="9">${esc(row.name)}</text>`
    );
  });
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${SIZE} ${SIZE}" role="img" aria-label="${esc(title)}">`,
    `<title>${esc(title)}</title>`,
    ...rings,
    ...spokes,
    `<polygon points="${polygon}" fill="rgba(46,110,180,0.25)" stroke="#2e6eb4" stroke-width="2"/>`,
    ...labels,
    '</svg>',
  ].join('');
}

export interface BarSeries {
  name: string;
  /** geometry values in [0,1], one per category */
  values: Array<number | null>;
  /** exact decimals shown in tooltips/labels */
  decimals: Array<string | null>;
}

export function groupedBarsSvg(categories: string[], series: BarSeries[], title: string): string {
  const barWidth = 14;
  const groupGap = 18;
  const groupWidth = series.length * barWidth + groupGap;
  const width = Math.max(categories.length * groupWidth + 60, 300);
  const height = 240;
  const plotHeight = 170;
  const palette = ['#2e6eb4', '#c96a2d', '#4d9a66', '#8458a8'];
  const bars: string[] = [];
  categories.forEach((category, ci) => {
    series.forEach((s, si) => {
      const value = s.values[ci];
      if (value === null || value === undefined) return;
      const h = value * plotHeight;
      const x = 40 + ci * groupWidth + si * barWidth;
      const y = 20 + plotHeight - h;
      const label = `${s.name} ${category}: ${s.decimals[ci] ?? ''}`;
      bars.push(
        `<rect x="${x}" y="${y.toFixed(1)}" width="${barWidth - 2}" height="${h.toFixed(1)}" ` +
        `fill="${palette[si % palette.length]}"><title>${esc(label)}</title></rect>`
      );
    });
    bars.push(
      `<text x="${40 + ci * groupWidth + (groupWidth - groupGap) / 2}" y="${height - 24}" ` +
      `font-size="9" text-anchor="middle">${esc(category)}</text>`
    );
  });
  const legend = series.map((s, si) => (
    `<rect x="${40 + si * 130}" y="${height - 14}" width="10" height="10" ` +
    `fill="${palette[si % palette.length]}"/>` +
    `<text x="${54 + si * 130}" y="${height - 5}" font-size="10">${esc(s.name)}</text>`
  ));
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" role="img" aria-label="${esc(title)}">`,
    `<title>${esc(title)}</title>`,
    `<line x1="40" y1="${20 + plotHeight}" x2="${width - 10}" y2="${20 + plotHeight}" stroke="#666"/>`,
    ...bars,
    ...legend,
    '</svg>',
  ].join('');
}
