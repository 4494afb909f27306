import { colorOf } from "../palette.js";
import { fmt, kde } from "../stats.js";
import { el, esc, extent, linearScale, padDomain, svgRoot } from "../svg.js";
import type { Profile } from "../types.js";

/**
 * Kernel density of the MC samples (Silverman bandwidth) with red vertical
 * lines at the 95% interval bounds and a labeled bracket underneath.
 */
export function densitySvg(samples: number[], intervalLow: number,
                           intervalHigh: number, profile: Profile,
                           width = 460, height = 180): string {
    const { xs, ys } = kde(samples);
    const x = linearScale(padDomain(extent(xs), 0.02), [36, width - 12]);
    const y = linearScale([0, Math.max(...ys) || 1], [height - 46, 14]);
    let path = `M ${x(xs[0])} ${y(0)}`;
    xs.forEach((v, i) => { path += ` L ${x(v).toFixed(2)} ${y(ys[i]).toFixed(2)}`; });
    path += ` L ${x(xs[xs.length - 1])} ${y(0)} Z`;

    let body = el("path", { d: path, fill: colorOf(profile), "fill-opacity": 0.35,
                            stroke: colorOf(profile), "stroke-width": 1.5 });
    for (const bound of [intervalLow, intervalHigh]) {
        body += el("line", { x1: x(bound), x2: x(bound), y1: 10, y2: height - 44,
                             stroke: "#d6382c", "stroke-width": 1.6,
                             class: "interval-bound" });
    }
    // bracket with arrows under the axis, labeling the 95% interval
    const bx0 = x(intervalLow);
    const bx1 = x(intervalHigh);
    const by = height - 34;
    body += el("path", {
        d: `M ${bx0} ${by - 6} L ${bx0} ${by} L ${bx1} ${by} L ${bx1} ${by - 6}`,
        fill: "none", stroke: "#444", class: "interval-bracket",
    });
    body += el("text", { x: (bx0 + bx1) / 2, y: by + 12, "text-anchor": "middle",
                         "font-size": 11, class: "interval-label" },
               esc(`95 % interval [${fmt(intervalLow)}, ${fmt(intervalHigh)}] min`));
    return svgRoot(width, height, body, "chart-density");
}
