/** Payload shapes of the uaexplain HTTP API. */

export type Profile = "low" | "medium" | "high";

export interface McSummaryPayload {
    mean: number;
    variance: number;
    std: number;
    interval_low: number;
    interval_high: number;
    t: number;
}

export interface ForecastPayload {
    activity_index: number;
    activity_name: string;
    predicted_minutes: number;
    summary: McSummaryPayload;
    profile: Profile;
    color: string;
}

export interface GanttPayload {
    activity: string;
    start: number;
    end: number;
    color: string;
}

export interface CaseSummaryPayload {
    case_id: string;
    n_activities: number;
    total_predicted_minutes: number;
    worst_profile: Profile;
}

export interface ActivityPayload {
    index: number;
    name: string;
    features: Record<string, number | string>;
}

export interface CaseDetailPayload {
    case_id: string;
    order_attrs: Record<string, number | string>;
    activities: ActivityPayload[];
    forecasts: ForecastPayload[];
    gantt: GanttPayload[];
    total_predicted_minutes: number;
    worst_profile: Profile;
}

export interface UncertaintyPayload {
    case_id: string;
    activity_index: number;
    activity_name: string;
    summary: McSummaryPayload;
    profile: Profile;
    color: string;
    text: string;
    samples: number[];
}

export interface StackedHistPayload {
    edges: number[];
    counts: Record<Profile, number[]>;
}

export interface IcePointPayload {
    grid_value: number | string;
    prediction: number;
    variance: number;
    profile: Profile;
}

export interface IceCurvePayload {
    instance_id: string | null;
    feature: string;
    kind: "numeric" | "categorical";
    original_value: number | string;
    points: IcePointPayload[];
    prediction_hist: StackedHistPayload;
    value_hist: StackedHistPayload | null;
}

export interface HistPayload {
    edges: number[];
    counts: number[];
}

export interface DistributionPayload {
    counts: Record<Profile, number>;
    dominant: Profile;
}

export interface PdpPointPayload {
    grid_value: number | string;
    mean_prediction: number;
    dominant: Profile;
    distribution: DistributionPayload;
    prediction_interval: [number, number];
    prediction_hist: HistPayload;
    variance_hist: HistPayload;
}

export interface PdpCurvePayload {
    feature: string;
    kind: string;
    n_train: number;
    points: PdpPointPayload[];
}

export interface ImportanceEntryPayload {
    feature: string;
    importance: number;
    std: number;
}

export interface ImportancePayload {
    baseline_rmse: number;
    repeats: number;
    seed: number;
    features: ImportanceEntryPayload[];
}

export interface WhatIfDelta {
    predicted_minutes: number;
    variance: number;
    profile_changed: boolean;
}

export interface WhatIfResponse {
    baseline: ForecastPayload;
    hypothetical: ForecastPayload;
    delta: WhatIfDelta;
}

export interface ApiErrorPayload {
    code: string;
    message: string;
}
