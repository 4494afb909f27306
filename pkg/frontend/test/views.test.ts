import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { PROFILE_COLORS } from "../src/palette.js";
import type {
    CaseDetailPayload, CaseSummaryPayload, IceCurvePayload, ImportancePayload,
    PdpCurvePayload, UncertaintyPayload, WhatIfResponse,
} from "../src/types.js";
import { featureChoices } from "../src/app.js";
import { renderIce } from "../src/views/ice.js";
import { renderOverview } from "../src/views/overview.js";
import { renderPdp } from "../src/views/pdp.js";
import { renderUncertainty } from "../src/views/uncertainty.js";
import { renderWhatIf, validateOverrides } from "../src/views/whatif.js";
import { startFixtureServer, type FixtureServer } from "./fixture_server.js";

let server: FixtureServer;
let client: ApiClient;
let cases: CaseSummaryPayload[];
let detail: CaseDetailPayload;
let uncertainty: UncertaintyPayload;
let iceNumeric: IceCurvePayload;
let iceCategorical: IceCurvePayload;
let pdp: PdpCurvePayload;
let importance: ImportancePayload;
let whatIfEmpty: WhatIfResponse;

beforeAll(async () => {
    server = await startFixtureServer();
    client = new ApiClient(server.base);
    cases = (await client.listCases()).cases;
    detail = await client.caseDetail("case-001");
    uncertainty = await client.uncertainty("case-001", 0);
    iceNumeric = await client.ice("case-001", 0, "x1");
    iceCategorical = await client.ice("case-001", 0, "crew");
    pdp = await client.pdp("crew");
    importance = await client.importance();
    whatIfEmpty = await client.whatIf("case-001", 0, {});
});

afterAll(async () => {
    await server.close();
});

function attrValues(svg: string, selectorClass: string, attr: string): string[] {
    const out: string[] = [];
    const tagRe = /<(circle|line|rect|path)\s[^>]*\/?>(?:<title[^>]*>.*?<\/title><\/\1>)?/gs;
    for (const match of svg.matchAll(tagRe)) {
        const element = match[0];
        if (!element.includes(`class="${selectorClass}"`)) continue;
        const m = element.match(new RegExp(`${attr}="([^"]+)"`));
        if (m) out.push(m[1]);
    }
    return out;
}

describe("the four views render from golden payloads", () => {
    it("overview: dropdown, table, strip, gantt", () => {
        const html = renderOverview(cases, detail);
        expect(html).toContain("case-select");
        expect(html).toContain("activity-row");
        expect(html).toContain("activity-strip");
        expect(html).toContain("chart-gantt");
        expect((html.match(/gantt-bar/g) ?? []).length).toBe(detail.gantt.length);
    });

    it("uncertainty: density, box, text, table", () => {
        const html = renderUncertainty(uncertainty);
        expect(html).toContain("chart-density");
        expect(html).toContain("chart-box");
        expect(html).toContain(uncertainty.text.slice(0, 40));
        expect(html).toContain("95 % interval");
    });

    it("uncertainty with a single sample hides the density", () => {
        const single: UncertaintyPayload = {
            ...uncertainty,
            samples: [5.0],
            summary: { ...uncertainty.summary, t: 1 },
        };
        const html = renderUncertainty(single);
        expect(html).not.toContain("chart-density");
        expect(html).toContain("details");
    });

    it("ice: numeric curve with both marginal histograms", () => {
        const html = renderIce(iceNumeric, featureChoices(detail), null);
        expect(html).toContain("chart-ice");
        expect(html).toContain("chart-hist-x");
        expect(html).toContain("feature values by profile");
        expect(html).toContain("original-marker");
    });

    it("ice: categorical curve omits the value histogram", () => {
        const html = renderIce(iceCategorical, featureChoices(detail), null);
        expect(html).not.toContain("feature values by profile");
        expect(html).toContain("predictions by profile");
    });

    it("pdp: importance, curve, linked density and doughnut", () => {
        const html = renderPdp(pdp, importance, featureChoices(detail), 0);
        expect(html).toContain("chart-importance");
        expect(html).toContain("chart-pdp");
        expect(html).toContain("chart-hist-area");
        expect(html).toContain("chart-doughnut");
        expect(html).toContain("band-95");
    });
});

describe("acceptance invariants", () => {
    it("doughnut label percentages sum to 100.0 within 0.1", () => {
        for (let idx = 0; idx < pdp.points.length; idx++) {
            const html = renderPdp(pdp, importance, featureChoices(detail), idx);
            const labels = [...html.matchAll(/class="doughnut-label"[^>]*>[a-z]+ ([0-9.]+)%</g)]
                .map((m) => Number(m[1]));
            expect(labels.length).toBeGreaterThan(0);
            const total = labels.reduce((a, b) => a + b, 0);
            expect(Math.abs(total - 100.0)).toBeLessThanOrEqual(0.1);
        }
    });

    it("ICE original-value marker lies on a plotted point (numeric)", () => {
        const svg = renderIce(iceNumeric, featureChoices(detail), null);
        const markerX = attrValues(svg, "original-marker", "x1");
        const pointXs = attrValues(svg, "ice-point", "cx");
        expect(markerX.length).toBe(1);
        expect(pointXs).toContain(markerX[0]);
    });

    it("ICE original-value marker lies on a plotted point (categorical)", () => {
        const svg = renderIce(iceCategorical, featureChoices(detail), null);
        const markerX = attrValues(svg, "original-marker", "x1");
        const pointXs = attrValues(svg, "ice-point", "cx");
        expect(pointXs).toContain(markerX[0]);
    });

    it("ICE marker still lies on a plotted point under an allow-list", () => {
        const allowed = [String(iceCategorical.points[0].grid_value)];
        const svg = renderIce(iceCategorical, featureChoices(detail), allowed);
        const markerX = attrValues(svg, "original-marker", "x1");
        const pointXs = attrValues(svg, "ice-point", "cx");
        expect(pointXs).toContain(markerX[0]);
    });

    it("what-if with empty overrides displays delta 0", () => {
        const html = renderWhatIf(
            { caseId: "case-001", activity: 0, overrides: {}, allowList: null },
            whatIfEmpty);
        expect(html).toContain("delta-row");
        expect(html).toMatch(/delta<\/td>\s*<td class="num">\+0\.0</);
        expect(html).toContain("profile unchanged");
    });

    it("every rendered point color comes from the palette map", () => {
        const svg = renderIce(iceNumeric, featureChoices(detail), null);
        const fills = attrValues(svg, "ice-point", "fill");
        const palette = Object.values(PROFILE_COLORS);
        expect(fills.length).toBe(iceNumeric.points.length);
        for (const fill of fills) expect(palette).toContain(fill);
        // and they match the payload profiles pointwise
        iceNumeric.points.forEach((p, i) => {
            expect(fills[i]).toBe(PROFILE_COLORS[p.profile]);
        });
    });

    it("allow-list hides filtered levels but keeps the original", () => {
        const original = String(iceCategorical.original_value);
        const other = iceCategorical.points
            .map((p) => String(p.grid_value))
            .find((v) => v !== original)!;
        const svg = renderIce(iceCategorical, featureChoices(detail), [other]);
        const shown = attrValues(svg, "ice-point", "data-value");
        expect(shown.sort()).toEqual([original, other].sort());
    });

    it("invalid override levels are rejected before any request", () => {
        const error = validateOverrides(
            { caseId: "c", activity: 0, overrides: { crew: "zz" }, allowList: null },
            { crew: ["a", "b", "c", "d"] });
        expect(error).toContain("zz");
        const html = renderWhatIf(
            { caseId: "c", activity: 0, overrides: { crew: "zz" }, allowList: null,
              error: error! }, null);
        expect(html).toContain("field-error");
        expect(html).toContain("disabled");
    });
});
