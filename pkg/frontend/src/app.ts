import { ApiClient, ApiError } from "./api.js";
import { initialState, stateFromHash, stateToHash, type Tab, type ViewState } from "./state.js";
import type { CaseDetailPayload, CaseSummaryPayload } from "./types.js";
import { renderIce, type FeatureChoice } from "./views/ice.js";
import { renderOverview } from "./views/overview.js";
import { renderPdp } from "./views/pdp.js";
import { renderUncertainty } from "./views/uncertainty.js";
import { renderWhatIf, validateOverrides, type WhatIfDraft } from "./views/whatif.js";

const TABS: { id: Tab; label: string }[] = [
    { id: "overview", label: "General Overview" },
    { id: "uncertainty", label: "Uncertainty" },
    { id: "ice", label: "Local Explanations (ICE)" },
    { id: "pdp", label: "Global Explanations (PDP)" },
];

/** Infer the selectable features (and their kind) from an activity row. */
export function featureChoices(detail: CaseDetailPayload): FeatureChoice[] {
    const sample = detail.activities[0]?.features ?? {};
    return Object.entries(sample).map(([name, value]) => ({
        name,
        kind: typeof value === "number" ? "numeric" : "categorical",
    }));
}

class Dashboard {
    private state: ViewState = initialState();
    private cases: CaseSummaryPayload[] = [];
    private detail: CaseDetailPayload | null = null;
    private version = 0;  // stale async responses are discarded by version
    private whatIfResult: import("./types.js").WhatIfResponse | null = null;
    private localPlanNote = "";
    private knownLevels: Record<string, string[]> = {};

    constructor(private api: ApiClient, private root: HTMLElement) {}

    async start(): Promise<void> {
        Object.assign(this.state, stateFromHash(location.hash));
        const listing = await this.api.listCases();
        this.cases = listing.cases;
        if (!this.state.caseId && this.cases.length) {
            this.state.caseId = this.cases[0].case_id;
        }
        this.root.addEventListener("click", (e) => this.onClick(e));
        this.root.addEventListener("change", (e) => this.onChange(e));
        await this.refresh();
    }

    private setState(patch: Partial<ViewState>): void {
        Object.assign(this.state, patch);
        history.replaceState(null, "", stateToHash(this.state));
        void this.refresh();
    }

    private async refresh(): Promise<void> {
        const version = ++this.version;
        try {
            const html = await this.renderActive();
            if (version !== this.version) return;  // a newer refresh superseded us
            this.root.innerHTML = this.chrome() + html + this.planNote();
        } catch (err) {
            if (version !== this.version) return;
            const message = err instanceof ApiError
                ? `${err.code}: ${err.message}` : String(err);
            this.root.innerHTML = this.chrome() +
                `<div class="panel error-banner">request failed (${message})
                   <button id="retry">retry</button></div>`;
        }
    }

    private chrome(): string {
        const tabs = TABS.map((t) =>
            `<button class="tab ${t.id === this.state.tab ? "active" : ""}" data-tab="${t.id}">
               ${t.label}</button>`).join("");
        return `<nav class="tabs">${tabs}</nav>`;
    }

    private planNote(): string {
        return this.localPlanNote
            ? `<div class="panel plan-note">${this.localPlanNote}</div>` : "";
    }

    private async renderActive(): Promise<string> {
        this.detail = await this.api.caseDetail(this.state.caseId);
        const features = featureChoices(this.detail);
        if (!this.state.feature
            || !features.some((f) => f.name === this.state.feature
                                  && f.kind === this.state.featureKind)) {
            const first = features.find((f) => f.kind === this.state.featureKind);
            this.state.feature = first ? first.name : features[0]?.name ?? "";
        }
        switch (this.state.tab) {
            case "overview":
                return renderOverview(this.cases, this.detail);
            case "uncertainty": {
                const payload = await this.api.uncertainty(this.state.caseId, this.state.activity);
                return renderUncertainty(payload);
            }
            case "ice": {
                const curve = await this.api.ice(this.state.caseId, this.state.activity,
                                                 this.state.feature);
                if (curve.kind === "categorical") {
                    this.knownLevels[curve.feature] =
                        curve.points.map((p) => String(p.grid_value));
                }
                const draft = this.draft();
                return renderIce(curve, features, this.state.allowList)
                    + renderWhatIf(draft, this.whatIfResult);
            }
            case "pdp": {
                const [curve, importance] = await Promise.all(
                    [this.api.pdp(this.state.feature), this.api.importance()]);
                return renderPdp(curve, importance, features, this.state.pdpSelected);
            }
        }
    }

    private draft(): WhatIfDraft {
        const draft: WhatIfDraft = {
            caseId: this.state.caseId,
            activity: this.state.activity,
            overrides: this.state.overrides,
            allowList: this.state.allowList,
        };
        const error = validateOverrides(draft, this.knownLevels);
        if (error) draft.error = error;
        return draft;
    }

    private onClick(e: Event): void {
        const target = e.target as HTMLElement;
        const tab = target.closest(".tab") as HTMLElement | null;
        if (tab) { this.setState({ tab: tab.dataset.tab as Tab }); return; }
        const row = target.closest(".activity-row") as HTMLElement | null;
        if (row) {
            this.setState({ activity: Number(row.dataset.activity), tab: "uncertainty" });
            return;
        }
        const bar = target.closest(".gantt-bar") as HTMLElement | null;
        if (bar) {
            this.setState({ activity: Number(bar.dataset.activity), tab: "uncertainty" });
            return;
        }
        const icePoint = target.closest(".ice-point") as SVGElement | null;
        if (icePoint && this.state.tab === "ice") {
            const feature = icePoint.getAttribute("data-feature")!;
            const value = icePoint.getAttribute("data-value")!;
            this.whatIfResult = null;
            this.state.overrides = { ...this.state.overrides, [feature]: value };
            this.setState({});
            return;
        }
        const pdpPoint = target.closest(".pdp-point") as SVGElement | null;
        if (pdpPoint) {
            this.setState({ pdpSelected: Number(pdpPoint.getAttribute("data-index")) });
            return;
        }
        const chip = target.closest(".override-chip") as HTMLElement | null;
        if (chip) {
            const overrides = { ...this.state.overrides };
            delete overrides[chip.dataset.feature!];
            this.whatIfResult = null;
            this.setState({ overrides });
            return;
        }
        if (target.id === "whatif-submit") { void this.submitWhatIf(); return; }
        if (target.id === "apply-plan" && this.whatIfResult) {
            this.localPlanNote =
                `local plan updated: activity ${this.state.activity + 1} now planned at ` +
                `${this.whatIfResult.hypothetical.predicted_minutes.toFixed(1)} min ` +
                `(profile ${this.whatIfResult.hypothetical.profile})`;
            this.setState({});
            return;
        }
        if (target.id === "retry") { void this.refresh(); }
    }

    private onChange(e: Event): void {
        const target = e.target as HTMLInputElement | HTMLSelectElement;
        if (target.id === "case-select") {
            this.whatIfResult = null;
            this.setState({ caseId: target.value, overrides: {}, activity: 0 });
        } else if (target.id === "feature-select") {
            this.setState({ feature: target.value, pdpSelected: 0 });
        } else if (target.name === "var-kind") {
            this.setState({ featureKind: target.value as "numeric" | "categorical",
                            feature: "" });
        }
    }

    private async submitWhatIf(): Promise<void> {
        try {
            this.whatIfResult = await this.api.whatIf(
                this.state.caseId, this.state.activity, this.state.overrides,
                this.state.allowList ?? undefined);
        } catch (err) {
            this.whatIfResult = null;
            this.localPlanNote = err instanceof ApiError
                ? `what-if rejected (${err.code}): ${err.message}` : String(err);
        }
        void this.refresh();
    }
}

export function bootstrap(): void {
    const params = new URLSearchParams(location.search);
    const api = new ApiClient(params.get("api") ?? "");
    const root = document.getElementById("app");
    if (root) void new Dashboard(api, root).start();
}

if (typeof document !== "undefined" && document.getElementById("app")) {
    bootstrap();
}
