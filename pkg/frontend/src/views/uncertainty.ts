import { boxplotSvg } from "../charts/boxplot.js";
import { densitySvg } from "../charts/density.js";
import { fmt } from "../stats.js";
import { esc } from "../svg.js";
import type { UncertaintyPayload } from "../types.js";
import { profileChip } from "./overview.js";

/**
 * Instance-level uncertainty: MC-sample density with 95% interval markers,
 * box plot, the textual description verbatim, and a detail table.  With
 * fewer than two samples the density is hidden and only the table renders.
 */
export function renderUncertainty(payload: UncertaintyPayload): string {
    const s = payload.summary;
    const plots = s.t >= 2
        ? `<div class="panel"><h3>distribution of MC dropout predictions</h3>
             ${densitySvg(payload.samples, s.interval_low, s.interval_high, payload.profile)}
           </div>
           <div class="panel"><h3>box plot</h3>
             ${boxplotSvg(payload.samples, payload.profile)}
           </div>`
        : `<div class="panel muted">not enough stochastic samples for a density plot</div>`;
    return `
<section class="view view-uncertainty">
  <h2>${esc(payload.activity_name)} (activity ${payload.activity_index + 1}
      of ${esc(payload.case_id)}) ${profileChip(payload.profile)}</h2>
  ${plots}
  <div class="panel description-panel"><h3>interpretation</h3>
    <p class="describe-text">${esc(payload.text)}</p>
  </div>
  <div class="panel"><h3>details</h3>
    <table class="data-table kv-table"><tbody>
      <tr><td>prediction</td><td class="num">${fmt(s.mean)} min</td></tr>
      <tr><td>standard deviation</td><td class="num">${fmt(s.std)} min</td></tr>
      <tr><td>variance</td><td class="num">${fmt(s.variance)} min&sup2;</td></tr>
      <tr><td>95 % interval</td><td class="num">[${fmt(s.interval_low)}, ${fmt(s.interval_high)}] min</td></tr>
      <tr><td>stochastic passes</td><td class="num">${s.t}</td></tr>
      <tr><td>profile</td><td>${profileChip(payload.profile)}</td></tr>
    </tbody></table>
  </div>
</section>`;
}
