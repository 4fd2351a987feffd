import type { ResultEntry } from './api';

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

// Numbers arrive already rounded to three decimals; toFixed only restores
// trailing zeros the JSON number form cannot carry. Nothing is recomputed.
function show(value: number): string {
  return value.toFixed(3);
}

export function renderResults(root: HTMLElement, results: ResultEntry[]): void {
  if (results.length === 0) {
    root.innerHTML =
      '<p class="empty-results">No likely condition found for the answers given.</p>';
    return;
  }
  root.innerHTML = results
    .map((r) => {
      const name = escapeHtml(r.display_name);
      const label = escapeHtml(r.label);
      return `
  <div class="result-row" data-disease-id="${escapeHtml(r.disease_id)}" data-rank="${r.rank}">
    <div class="result-head">
      <span class="result-rank">#${r.rank}</span>
      <span class="result-name">${name}</span>
      <span class="result-label">${label}</span>
      <span class="result-probability">${show(r.final_probability)}%</span>
    </div>
    <div class="bar-track">
      <div class="bar-fill probability-bar" style="width:${r.final_probability}%"></div>
    </div>
    <div class="confidence-pair">
      <div class="confidence-line">
        <span class="confidence-caption">full confidence</span>
        <div class="bar-track small">
          <div class="bar-fill full-confidence-bar" style="width:100%"></div>
        </div>
        <span class="confidence-value">100.000</span>
      </div>
      <div class="confidence-line">
        <span class="confidence-caption">system confidence</span>
        <div class="bar-track small">
          <div class="bar-fill system-confidence-bar" style="width:${r.confidence}%"></div>
        </div>
        <span class="confidence-value confidence-badge">${show(r.confidence)}</span>
      </div>
    </div>
  </div>`;
    })
    .join('\n');
}
