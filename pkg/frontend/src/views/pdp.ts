import { doughnutSvg } from "../charts/doughnut.js";
import { histAreaSvg } from "../charts/histogram.js";
import { importanceSvg, pdpSvg } from "../charts/pdp.js";
import { fmt } from "../stats.js";
import { esc } from "../svg.js";
import type { ImportancePayload, PdpCurvePayload } from "../types.js";
import type { FeatureChoice } from "./ice.js";
import { featureControls } from "./ice.js";

/**
 * Global explanations: permutation importance, the uncertainty-aware PDP,
 * and the two panels linked to the selected grid point (prediction density
 * with its 95% band, and the profile-membership doughnut).
 */
export function renderPdp(curve: PdpCurvePayload, importance: ImportancePayload,
                          features: FeatureChoice[], selected: number): string {
    const idx = Math.min(Math.max(selected, 0), curve.points.length - 1);
    const point = curve.points[idx];
    const kind = curve.kind === "numeric" ? "numeric" : "categorical";
    return `
<section class="view view-pdp">
  ${featureControls(features, kind, curve.feature)}
  <div class="pdp-grid">
    <div class="panel"><h3>feature importance</h3>${importanceSvg(importance)}</div>
    <div class="panel"><h3>uncertainty-aware PDP: ${esc(curve.feature)}</h3>
      ${pdpSvg(curve, idx)}
      <p class="hint">click a point to update the linked charts</p>
    </div>
    <div class="panel"><h3>predictions at ${esc(String(point.grid_value))}
        (mean ${fmt(point.mean_prediction)} min)</h3>
      ${histAreaSvg(point.prediction_hist, point.prediction_interval)}
      <p class="hint">shaded band: 95 % of per-row predictions
        [${fmt(point.prediction_interval[0])}, ${fmt(point.prediction_interval[1])}]</p>
    </div>
    <div class="panel"><h3>profile membership at ${esc(String(point.grid_value))}</h3>
      ${doughnutSvg(point.distribution)}
    </div>
  </div>
</section>`;
}
