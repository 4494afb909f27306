import type {
    CaseDetailPayload, CaseSummaryPayload, IceCurvePayload, ImportancePayload,
    PdpCurvePayload, UncertaintyPayload, WhatIfResponse,
} from "./types.js";

export class ApiError extends Error {
    constructor(public status: number, public code: string, message: string) {
        super(message);
    }
}

/** Typed client for the uaexplain service; base "" means same origin. */
export class ApiClient {
    constructor(private base: string = "") {}

    private async request<T>(path: string, init?: RequestInit): Promise<T> {
        const response = await fetch(this.base + path, init);
        const body = await response.json();
        if (!response.ok) {
            throw new ApiError(response.status, body.code ?? "unknown", body.message ?? "");
        }
        return body as T;
    }

    listCases(): Promise<{ cases: CaseSummaryPayload[] }> {
        return this.request("/api/cases");
    }

    caseDetail(caseId: string): Promise<CaseDetailPayload> {
        return this.request(`/api/cases/${encodeURIComponent(caseId)}`);
    }

    uncertainty(caseId: string, activity: number): Promise<UncertaintyPayload> {
        return this.request(
            `/api/cases/${encodeURIComponent(caseId)}/activities/${activity}/uncertainty`);
    }

    ice(caseId: string, activity: number, feature: string): Promise<IceCurvePayload> {
        const q = new URLSearchParams({ case: caseId, activity: String(activity), feature });
        return this.request(`/api/explain/ice?${q}`);
    }

    pdp(feature: string): Promise<PdpCurvePayload> {
        return this.request(`/api/explain/pdp?${new URLSearchParams({ feature })}`);
    }

    importance(): Promise<ImportancePayload> {
        return this.request("/api/model/importance");
    }

    whatIf(caseId: string, activity: number, overrides: Record<string, number | string>,
           allowList?: string[]): Promise<WhatIfResponse> {
        return this.request("/api/whatif", {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify({
                case_id: caseId,
                activity,
                overrides,
                ...(allowList ? { allow_list: allowList } : {}),
            }),
        });
    }
}
