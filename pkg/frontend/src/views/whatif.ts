import { fmt } from "../stats.js";
import { esc } from "../svg.js";
import type { ForecastPayload, WhatIfResponse } from "../types.js";
import { profileChip } from "./overview.js";

export interface WhatIfDraft {
    caseId: string;
    activity: number;
    overrides: Record<string, number | string>;
    allowList: string[] | null;
    error?: string;
}

/** Reject invalid categorical overrides client-side before any request. */
export function validateOverrides(draft: WhatIfDraft,
                                  levels: Record<string, string[]>): string | null {
    for (const [feature, value] of Object.entries(draft.overrides)) {
        const known = levels[feature];
        if (known && !known.includes(String(value))) {
            return `'${value}' is not a known level of ${feature}`;
        }
    }
    return null;
}

function forecastCells(f: ForecastPayload): string {
    return `<td class="num">${fmt(f.predicted_minutes)}</td>` +
        `<td class="num">[${fmt(f.summary.interval_low)}, ${fmt(f.summary.interval_high)}]</td>` +
        `<td>${profileChip(f.profile)}</td>`;
}

/**
 * What-if comparison: staged overrides, baseline vs hypothetical forecast,
 * and the delta row.  "Apply to plan" only updates the local plan view.
 */
export function renderWhatIf(draft: WhatIfDraft, result: WhatIfResponse | null): string {
    const staged = Object.entries(draft.overrides)
        .map(([k, v]) => `<span class="override-chip" data-feature="${esc(k)}">` +
            `${esc(k)} &rarr; ${esc(String(v))} &times;</span>`)
        .join(" ") || "<span class='muted'>no overrides staged</span>";
    const error = draft.error
        ? `<p class="field-error">${esc(draft.error)}</p>` : "";
    const comparison = result
        ? `<table class="data-table compare-table">
            <thead><tr><th></th><th>pred [min]</th><th>95 % interval</th><th>profile</th></tr></thead>
            <tbody>
              <tr><td>baseline</td>${forecastCells(result.baseline)}</tr>
              <tr><td>hypothetical</td>${forecastCells(result.hypothetical)}</tr>
              <tr class="delta-row"><td>delta</td>
                <td class="num">${result.delta.predicted_minutes >= 0 ? "+" : ""}${fmt(result.delta.predicted_minutes)}</td>
                <td class="num">variance ${result.delta.variance >= 0 ? "+" : ""}${fmt(result.delta.variance)}</td>
                <td>${result.delta.profile_changed ? "profile changed" : "profile unchanged"}</td></tr>
            </tbody></table>
           <button id="apply-plan">apply to plan (local only)</button>`
        : "<p class='muted'>submit to compare against the stored forecast</p>";
    return `
<div class="panel whatif-panel">
  <h3>what-if: activity ${draft.activity + 1} of ${esc(draft.caseId)}</h3>
  <div class="staged">${staged}</div>
  ${error}
  <button id="whatif-submit" ${draft.error ? "disabled" : ""}>run what-if</button>
  ${comparison}
</div>`;
}
