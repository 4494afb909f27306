import type { Profile } from "./types.js";

export type Tab = "overview" | "uncertainty" | "ice" | "pdp";

/** The dashboard's explicit view state; serialized into the URL hash. */
export interface ViewState {
    tab: Tab;
    caseId: string;
    activity: number;
    featureKind: "numeric" | "categorical";
    feature: string;
    pdpSelected: number;
    overrides: Record<string, number | string>;
    allowList: string[] | null;
}

export function initialState(): ViewState {
    return {
        tab: "overview",
        caseId: "",
        activity: 0,
        featureKind: "numeric",
        feature: "",
        pdpSelected: 0,
        overrides: {},
        allowList: null,
    };
}

export function stateToHash(state: ViewState): string {
    const params = new URLSearchParams({
        tab: state.tab,
        case: state.caseId,
        activity: String(state.activity),
        kind: state.featureKind,
        feature: state.feature,
        point: String(state.pdpSelected),
    });
    if (state.allowList) params.set("allow", state.allowList.join(","));
    return "#" + params.toString();
}

export function stateFromHash(hash: string): Partial<ViewState> {
    const params = new URLSearchParams(hash.replace(/^#/, ""));
    const out: Partial<ViewState> = {};
    const tab = params.get("tab");
    if (tab === "overview" || tab === "uncertainty" || tab === "ice" || tab === "pdp") {
        out.tab = tab;
    }
    if (params.get("case")) out.caseId = params.get("case")!;
    if (params.get("activity")) out.activity = Number(params.get("activity"));
    const kind = params.get("kind");
    if (kind === "numeric" || kind === "categorical") out.featureKind = kind;
    if (params.get("feature")) out.feature = params.get("feature")!;
    if (params.get("point")) out.pdpSelected = Number(params.get("point"));
    if (params.get("allow")) out.allowList = params.get("allow")!.split(",");
    return out;
}
