import { colorOf } from "../palette.js";
import { boxStats } from "../stats.js";
import { el, extent, linearScale, padDomain, svgRoot } from "../svg.js";
import type { Profile } from "../types.js";

/** Horizontal box plot: median line, IQR hinges, whiskers at 1.5 * IQR. */
export function boxplotSvg(samples: number[], profile: Profile,
                           width = 460, height = 90): string {
    const s = boxStats(samples);
    const x = linearScale(padDomain(extent(samples), 0.04), [36, width - 12]);
    const mid = 40;
    const half = 16;
    const fill = colorOf(profile);
    let body = "";
    body += el("line", { x1: x(s.whiskerLow), x2: x(s.q1), y1: mid, y2: mid,
                         stroke: "#444" });
    body += el("line", { x1: x(s.q3), x2: x(s.whiskerHigh), y1: mid, y2: mid,
                         stroke: "#444" });
    for (const w of [s.whiskerLow, s.whiskerHigh]) {
        body += el("line", { x1: x(w), x2: x(w), y1: mid - 8, y2: mid + 8, stroke: "#444" });
    }
    body += el("rect", { x: x(s.q1), y: mid - half, width: Math.max(x(s.q3) - x(s.q1), 1),
                         height: 2 * half, fill, "fill-opacity": 0.4, stroke: fill });
    body += el("line", { x1: x(s.median), x2: x(s.median), y1: mid - half, y2: mid + half,
                         stroke: "#222", "stroke-width": 2, class: "box-median" });
    return svgRoot(width, height, body, "chart-box");
}
