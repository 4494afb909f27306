import { colorOf } from "../palette.js";
import { fmt } from "../stats.js";
import { el, esc, extent, linearScale, padDomain, svgRoot } from "../svg.js";
import type { IceCurvePayload, IcePointPayload } from "../types.js";

const W = 560;
const H = 340;
const PLOT = { x0: 46, x1: W - 16, y0: 16, y1: H - 40 };

function pointTitle(p: IcePointPayload): string {
    return `${p.grid_value}: ${fmt(p.prediction)} min, variance ${fmt(p.variance, 2)}, ${p.profile}`;
}

/**
 * Uncertainty-aware ICE plot.  Numeric features: profile-colored points on a
 * line with the instance's original value marked by a red vertical line.
 * Categorical features: one point per level (filtered by the allow list,
 * keeping the original level so the marker always sits on a plotted point);
 * clicking a level stages a what-if override.
 */
export function iceSvg(curve: IceCurvePayload, allowList: string[] | null = null): string {
    let points = curve.points;
    if (curve.kind === "categorical" && allowList) {
        const allowed = new Set<string>([...allowList, String(curve.original_value)]);
        points = points.filter((p) => allowed.has(String(p.grid_value)));
    }
    const preds = points.map((p) => p.prediction);
    const y = linearScale(padDomain(extent(preds)), [PLOT.y1, PLOT.y0]);

    let body = "";
    let markerX: number;
    let positionOf: (p: IcePointPayload, i: number) => number;

    if (curve.kind === "numeric") {
        const xs = points.map((p) => Number(p.grid_value));
        const x = linearScale(padDomain(extent(xs), 0.03), [PLOT.x0, PLOT.x1]);
        positionOf = (p) => x(Number(p.grid_value));
        markerX = x(Number(curve.original_value));
        const path = points
            .map((p, i) => `${i === 0 ? "M" : "L"} ${x(Number(p.grid_value)).toFixed(2)} ${y(p.prediction).toFixed(2)}`)
            .join(" ");
        body += el("path", { d: path, fill: "none", stroke: "#bbb", "stroke-width": 1 });
    } else {
        const step = (PLOT.x1 - PLOT.x0) / Math.max(points.length, 1);
        positionOf = (_p, i) => PLOT.x0 + step * (i + 0.5);
        const originalIdx = points.findIndex(
            (p) => String(p.grid_value) === String(curve.original_value));
        markerX = positionOf(points[Math.max(originalIdx, 0)], Math.max(originalIdx, 0));
        points.forEach((p, i) => {
            body += el("text", {
                x: positionOf(p, i), y: PLOT.y1 + 16, "font-size": 10,
                "text-anchor": "middle", fill: "#444",
            }, esc(String(p.grid_value)));
        });
    }

    body += el("line", {
        x1: markerX.toFixed(2), x2: markerX.toFixed(2), y1: PLOT.y0, y2: PLOT.y1,
        stroke: "#d6382c", "stroke-width": 1.6, class: "original-marker",
    }, el("title", {}, esc(`original value: ${curve.original_value}`)));

    points.forEach((p, i) => {
        body += el("circle", {
            cx: positionOf(p, i).toFixed(2), cy: y(p.prediction).toFixed(2),
            r: curve.kind === "numeric" ? 4 : 7,
            fill: colorOf(p.profile), stroke: "#fff", "stroke-width": 1,
            class: "ice-point",
            "data-feature": curve.feature, "data-value": String(p.grid_value),
        }, el("title", {}, esc(pointTitle(p))));
    });

    body += el("text", { x: (PLOT.x0 + PLOT.x1) / 2, y: H - 6, "text-anchor": "middle",
                         "font-size": 11, fill: "#333" }, esc(curve.feature));
    body += el("text", { x: 12, y: (PLOT.y0 + PLOT.y1) / 2, "font-size": 11,
                         fill: "#333", transform: `rotate(-90 12 ${(PLOT.y0 + PLOT.y1) / 2})`,
                         "text-anchor": "middle" }, "predicted minutes");
    return svgRoot(W, H, body, "chart-ice");
}
