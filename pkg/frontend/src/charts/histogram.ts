import { PROFILE_ORDER, colorOf } from "../palette.js";
import { el, linearScale, svgRoot } from "../svg.js";
import type { HistPayload, StackedHistPayload } from "../types.js";

/**
 * Stacked histogram strip (profile-colored) for the ICE plot margins.
 * orientation "x": bars rise from the bottom; "y": bars extend rightward.
 */
export function stackedHistSvg(hist: StackedHistPayload, orientation: "x" | "y",
                               length = 420, thickness = 60): string {
    const bins = hist.edges.length - 1;
    const totals = Array.from({ length: bins }, (_, i) =>
        PROFILE_ORDER.reduce((a, l) => a + hist.counts[l][i], 0));
    const maxTotal = Math.max(...totals, 1);
    const along = linearScale([0, bins], [4, length - 4]);
    const across = linearScale([0, maxTotal], [0, thickness - 8]);
    let body = "";
    for (let i = 0; i < bins; i++) {
        let acc = 0;
        for (const label of PROFILE_ORDER) {
            const count = hist.counts[label][i];
            if (count === 0) continue;
            const size = across(count);
            const offset = across(acc);
            if (orientation === "x") {
                body += el("rect", {
                    x: along(i), y: thickness - 4 - offset - size,
                    width: Math.max(along(i + 1) - along(i) - 1, 1), height: size,
                    fill: colorOf(label),
                });
            } else {
                body += el("rect", {
                    x: 4 + offset, y: along(i),
                    width: size, height: Math.max(along(i + 1) - along(i) - 1, 1),
                    fill: colorOf(label),
                });
            }
            acc += count;
        }
    }
    const [w, h] = orientation === "x" ? [length, thickness] : [thickness, length];
    return svgRoot(w, h, body, `chart-hist-${orientation}`);
}

/** Plain histogram as an area silhouette (used for PDP per-point panels). */
export function histAreaSvg(hist: HistPayload, band?: [number, number],
                            width = 420, height = 150, cls = "chart-hist-area"): string {
    const maxCount = Math.max(...hist.counts, 1);
    const x = linearScale([hist.edges[0], hist.edges[hist.edges.length - 1]],
                          [30, width - 10]);
    const y = linearScale([0, maxCount], [height - 24, 10]);
    let body = "";
    if (band) {
        body += el("rect", { x: x(band[0]), y: 10,
                             width: Math.max(x(band[1]) - x(band[0]), 1),
                             height: height - 34, fill: "#d6382c",
                             "fill-opacity": 0.08, class: "band-95" });
        for (const bound of band) {
            body += el("line", { x1: x(bound), x2: x(bound), y1: 10, y2: height - 24,
                                 stroke: "#d6382c", "stroke-dasharray": "4 3" });
        }
    }
    let path = `M ${x(hist.edges[0])} ${y(0)}`;
    hist.counts.forEach((count, i) => {
        path += ` L ${x(hist.edges[i]).toFixed(2)} ${y(count).toFixed(2)}`;
        path += ` L ${x(hist.edges[i + 1]).toFixed(2)} ${y(count).toFixed(2)}`;
    });
    path += ` L ${x(hist.edges[hist.edges.length - 1])} ${y(0)} Z`;
    body += el("path", { d: path, fill: "#5b7fa6", "fill-opacity": 0.5,
                         stroke: "#44618a" });
    return svgRoot(width, height, body, cls);
}
