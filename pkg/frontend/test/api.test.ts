import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { startFixtureServer, type FixtureServer } from "./fixture_server.js";

let server: FixtureServer;
let client: ApiClient;

beforeAll(async () => {
    server = await startFixtureServer();
    client = new ApiClient(server.base);
});

afterAll(async () => {
    await server.close();
});

describe("ApiClient against the fixture server", () => {
    it("lists cases", async () => {
        const { cases } = await client.listCases();
        expect(cases.length).toBeGreaterThan(0);
        expect(cases[0].case_id).toBe("case-001");
    });

    it("fetches case detail with aligned forecasts and gantt", async () => {
        const detail = await client.caseDetail("case-001");
        expect(detail.forecasts.length).toBe(detail.gantt.length);
        expect(detail.gantt[0].start).toBe(0);
    });

    it("fetches uncertainty with raw samples", async () => {
        const u = await client.uncertainty("case-001", 0);
        expect(u.samples.length).toBe(u.summary.t);
        expect(u.text).toContain("95 %");
    });

    it("fetches ICE curves of both kinds", async () => {
        const numeric = await client.ice("case-001", 0, "x1");
        expect(numeric.kind).toBe("numeric");
        expect(numeric.value_hist).not.toBeNull();
        const categorical = await client.ice("case-001", 0, "crew");
        expect(categorical.kind).toBe("categorical");
        expect(categorical.value_hist).toBeNull();
    });

    it("fetches the PDP with distributions summing to n_train", async () => {
        const curve = await client.pdp("crew");
        for (const point of curve.points) {
            const total = Object.values(point.distribution.counts)
                .reduce((a, b) => a + b, 0);
            expect(total).toBe(curve.n_train);
        }
    });

    it("posts what-if requests", async () => {
        const result = await client.whatIf("case-001", 0, {});
        expect(result.delta.predicted_minutes).toBe(0);
        const changed = await client.whatIf("case-001", 0, { crew: "a" });
        expect(changed.hypothetical.profile).toBeDefined();
    });

    it("surfaces error payloads as ApiError", async () => {
        await expect(client.pdp("missing")).rejects.toBeInstanceOf(ApiError);
    });
});
