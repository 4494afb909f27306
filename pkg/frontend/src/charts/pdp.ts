import { colorOf } from "../palette.js";
import { fmt } from "../stats.js";
import { el, esc, extent, linearScale, padDomain, svgRoot } from "../svg.js";
import type { ImportancePayload, PdpCurvePayload } from "../types.js";

/**
 * Uncertainty-aware PDP: mean prediction per grid value, each point colored
 * by its dominant profile.  Hover shows the mean and the dominant group;
 * clicking a point drives the linked density and doughnut panels.
 */
export function pdpSvg(curve: PdpCurvePayload, selected = 0,
                       width = 560, height = 300): string {
    const plot = { x0: 46, x1: width - 16, y0: 14, y1: height - 38 };
    const preds = curve.points.map((p) => p.mean_prediction);
    const y = linearScale(padDomain(extent(preds)), [plot.y1, plot.y0]);
    const numeric = curve.kind === "numeric";
    let xPos: (i: number) => number;
    if (numeric) {
        const xs = curve.points.map((p) => Number(p.grid_value));
        const x = linearScale(padDomain(extent(xs), 0.03), [plot.x0, plot.x1]);
        xPos = (i) => x(Number(curve.points[i].grid_value));
    } else {
        const step = (plot.x1 - plot.x0) / Math.max(curve.points.length, 1);
        xPos = (i) => plot.x0 + step * (i + 0.5);
    }

    let body = "";
    if (numeric) {
        const path = curve.points
            .map((p, i) => `${i === 0 ? "M" : "L"} ${xPos(i).toFixed(2)} ${y(p.mean_prediction).toFixed(2)}`)
            .join(" ");
        body += el("path", { d: path, fill: "none", stroke: "#bbb" });
    } else {
        curve.points.forEach((p, i) => {
            body += el("text", { x: xPos(i), y: plot.y1 + 16, "font-size": 10,
                                 "text-anchor": "middle", fill: "#444" },
                       esc(String(p.grid_value)));
        });
    }
    curve.points.forEach((p, i) => {
        body += el("circle", {
            cx: xPos(i).toFixed(2), cy: y(p.mean_prediction).toFixed(2),
            r: i === selected ? 8 : numeric ? 4.5 : 7,
            fill: colorOf(p.dominant),
            stroke: i === selected ? "#222" : "#fff", "stroke-width": 1.4,
            class: "pdp-point", "data-index": i,
        }, el("title", {}, esc(`${p.grid_value}: mean ${fmt(p.mean_prediction)} min, dominant ${p.dominant}`)));
    });
    body += el("text", { x: (plot.x0 + plot.x1) / 2, y: height - 6,
                         "text-anchor": "middle", "font-size": 11, fill: "#333" },
               esc(`${curve.feature} (averaged over ${curve.n_train} training rows)`));
    return svgRoot(width, height, body, "chart-pdp");
}

/** Horizontal permutation-importance bars (RMSE increase in minutes). */
export function importanceSvg(report: ImportancePayload, width = 420): string {
    const rowH = 24;
    const height = report.features.length * rowH + 30;
    const maxImp = Math.max(...report.features.map((f) => f.importance), 1e-9);
    const x = linearScale([0, maxImp], [120, width - 60]);
    let body = "";
    report.features.forEach((entry, i) => {
        const yMid = 14 + i * rowH;
        body += el("text", { x: 112, y: yMid + 4, "text-anchor": "end",
                             "font-size": 11, fill: "#333" }, esc(entry.feature));
        body += el("rect", { x: 120, y: yMid - 7, width: Math.max(x(entry.importance) - 120, 1),
                             height: 14, fill: "#5b7fa6", class: "importance-bar" },
                   el("title", {}, esc(`${entry.feature}: +${fmt(entry.importance, 2)} RMSE (std ${fmt(entry.std, 2)})`)));
        body += el("text", { x: x(entry.importance) + 4, y: yMid + 4, "font-size": 10,
                             fill: "#555" }, esc(fmt(entry.importance, 2)));
    });
    body += el("text", { x: width / 2, y: height - 6, "text-anchor": "middle",
                         "font-size": 11, fill: "#333" },
               "permutation importance (RMSE increase, min)");
    return svgRoot(width, height, body, "chart-importance");
}
