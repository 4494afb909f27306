import { stackedHistSvg } from "../charts/histogram.js";
import { iceSvg } from "../charts/ice.js";
import { esc } from "../svg.js";
import type { IceCurvePayload } from "../types.js";

export interface FeatureChoice {
    name: string;
    kind: "numeric" | "categorical";
}

export function featureControls(features: FeatureChoice[], kind: string,
                                selected: string): string {
    const toggle = ["numerical", "categorical"]
        .map((label) => {
            const value = label === "numerical" ? "numeric" : "categorical";
            return `<label class="toggle"><input type="radio" name="var-kind" value="${value}"
                ${value === kind ? "checked" : ""}/> ${label}</label>`;
        })
        .join("");
    const options = features
        .filter((f) => f.kind === kind)
        .map((f) => `<option value="${esc(f.name)}" ${f.name === selected ? "selected" : ""}>${esc(f.name)}</option>`)
        .join("");
    return `<div class="toolbar">
      <span>variable type: ${toggle}</span>
      <label>variable <select id="feature-select">${options}</select></label>
    </div>`;
}

/**
 * Uncertainty-aware ICE view: the profile-colored curve with the original
 * value marked in red, plus marginal stacked histograms (the value histogram
 * is omitted for categorical features, where each level occurs once).
 * Clicking a categorical level stages a what-if override.
 */
export function renderIce(curve: IceCurvePayload, features: FeatureChoice[],
                          allowList: string[] | null): string {
    const margins = curve.kind === "numeric" && curve.value_hist
        ? `<div class="ice-margins">
             <div><h4>feature values by profile</h4>${stackedHistSvg(curve.value_hist, "x")}</div>
             <div><h4>predictions by profile</h4>${stackedHistSvg(curve.prediction_hist, "x")}</div>
           </div>`
        : `<div class="ice-margins">
             <div><h4>predictions by profile</h4>${stackedHistSvg(curve.prediction_hist, "x")}</div>
           </div>`;
    const allowHint = curve.kind === "categorical"
        ? `<p class="hint">click a level to stage a what-if override;
             allow-list ${allowList ? `active (${allowList.map(esc).join(", ")})` : "off"}</p>`
        : "";
    return `
<section class="view view-ice">
  ${featureControls(features, curve.kind, curve.feature)}
  <div class="panel">
    <h3>uncertainty-aware ICE: ${esc(curve.feature)}</h3>
    ${iceSvg(curve, allowList)}
    ${allowHint}
  </div>
  ${margins}
</section>`;
}
