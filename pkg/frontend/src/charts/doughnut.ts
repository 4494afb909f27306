import { PROFILE_ORDER, colorOf } from "../palette.js";
import { percentLabels } from "../stats.js";
import { el, esc, svgRoot } from "../svg.js";
import type { DistributionPayload } from "../types.js";

function arcPath(cx: number, cy: number, r0: number, r1: number,
                 a0: number, a1: number): string {
    const p = (r: number, a: number) => [cx + r * Math.cos(a), cy + r * Math.sin(a)];
    const [x0, y0] = p(r1, a0);
    const [x1, y1] = p(r1, a1);
    const [x2, y2] = p(r0, a1);
    const [x3, y3] = p(r0, a0);
    const large = a1 - a0 > Math.PI ? 1 : 0;
    return `M ${x0} ${y0} A ${r1} ${r1} 0 ${large} 1 ${x1} ${y1} ` +
           `L ${x2} ${y2} A ${r0} ${r0} 0 ${large} 0 ${x3} ${y3} Z`;
}

/** Profile membership shares as a doughnut with one-decimal percent labels. */
export function doughnutSvg(distribution: DistributionPayload, size = 200): string {
    const counts = distribution.counts;
    const total = PROFILE_ORDER.reduce((a, l) => a + counts[l], 0);
    const labels = percentLabels(counts);
    const cx = size / 2;
    const cy = size / 2 - 4;
    let angle = -Math.PI / 2;
    let body = "";
    for (const label of PROFILE_ORDER) {
        if (counts[label] === 0) continue;
        const frac = counts[label] / total;
        const a1 = angle + frac * 2 * Math.PI;
        const sweep = frac >= 1.0
            ? el("circle", { cx, cy, r: 62, fill: "none", stroke: colorOf(label),
                             "stroke-width": 30, class: `arc-${label}` })
            : el("path", { d: arcPath(cx, cy, 46, 77, angle, a1), fill: colorOf(label),
                           class: `arc-${label}` });
        body += sweep;
        const mid = (angle + a1) / 2;
        const lx = cx + 92 * Math.cos(mid);
        const ly = cy + 92 * Math.sin(mid);
        body += el("text", { x: lx, y: ly, "font-size": 11, "text-anchor": "middle",
                             class: "doughnut-label" },
                   esc(`${label} ${labels[label]}`));
        angle = a1;
    }
    body += el("text", { x: cx, y: cy + 4, "text-anchor": "middle", "font-size": 12,
                         fill: "#333" }, esc(distribution.dominant));
    return svgRoot(size, size, body, "chart-doughnut");
}
