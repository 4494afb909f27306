import { activityStrip, ganttSvg } from "../charts/gantt.js";
import { colorOf } from "../palette.js";
import { fmt } from "../stats.js";
import { esc } from "../svg.js";
import type { CaseDetailPayload, CaseSummaryPayload, Profile } from "../types.js";

export function profileChip(profile: Profile): string {
    return `<span class="chip" style="background:${colorOf(profile)}">${profile}</span>`;
}

/**
 * General overview: case drop-down, order attributes, activity table with
 * forecasts and profiles, a static activity-sequence strip, and the Gantt.
 * Activity rows are clickable and switch to the uncertainty view.
 */
export function renderOverview(cases: CaseSummaryPayload[],
                               detail: CaseDetailPayload): string {
    const options = cases
        .map((c) => `<option value="${esc(c.case_id)}" ${c.case_id === detail.case_id ? "selected" : ""}>` +
            `${esc(c.case_id)} (${c.n_activities} activities)</option>`)
        .join("");
    const attrs = Object.entries(detail.order_attrs)
        .map(([k, v]) => `<div class="attr"><span>${esc(k)}</span><b>${esc(String(v))}</b></div>`)
        .join("") || "<div class='attr muted'>no order attributes</div>";
    const rows = detail.forecasts
        .map((f) => `<tr class="activity-row" data-activity="${f.activity_index}">` +
            `<td>${f.activity_index + 1}</td>` +
            `<td>${esc(f.activity_name)}</td>` +
            `<td class="num">${fmt(f.predicted_minutes)}</td>` +
            `<td class="num">${fmt(f.summary.std)}</td>` +
            `<td class="num">[${fmt(f.summary.interval_low)}, ${fmt(f.summary.interval_high)}]</td>` +
            `<td>${profileChip(f.profile)}</td></tr>`)
        .join("");

    return `
<section class="view view-overview">
  <div class="toolbar">
    <label>production case
      <select id="case-select">${options}</select>
    </label>
    <div class="case-total">total: <b>${fmt(detail.total_predicted_minutes)} min</b>
      &nbsp; worst profile: ${profileChip(detail.worst_profile)}</div>
  </div>
  <div class="panel order-panel"><h3>order specification</h3>${attrs}</div>
  <div class="panel">
    <h3>activity sequence</h3>
    ${activityStrip(detail.activities.map((a) => a.name))}
  </div>
  <div class="panel">
    <h3>duration forecasts</h3>
    <table class="data-table">
      <thead><tr><th>#</th><th>activity</th><th>pred [min]</th><th>std</th>
      <th>95 % interval</th><th>profile</th></tr></thead>
      <tbody>${rows}</tbody>
    </table>
  </div>
  <div class="panel">
    <h3>cycle-time plan</h3>
    ${ganttSvg(detail.gantt, detail.forecasts)}
  </div>
</section>`;
}
