import { colorOf } from "../palette.js";
import { el, esc, linearScale, svgRoot } from "../svg.js";
import type { ForecastPayload, GanttPayload } from "../types.js";

/** Contiguous Gantt bars colored by each activity's uncertainty profile. */
export function ganttSvg(entries: GanttPayload[], forecasts: ForecastPayload[],
                         width = 720): string {
    const height = 64;
    const total = entries.length ? entries[entries.length - 1].end : 1;
    const x = linearScale([0, total || 1], [10, width - 10]);
    let body = "";
    entries.forEach((entry, i) => {
        const fill = colorOf(forecasts[i].profile);
        const x0 = x(entry.start);
        const w = Math.max(x(entry.end) - x0, 0.5);
        body += el("rect", {
            x: x0, y: 14, width: w, height: 26, fill, stroke: "#fff",
            class: "gantt-bar", "data-activity": i,
        }, el("title", {}, esc(`${entry.activity}: ${entry.start.toFixed(1)} - ${entry.end.toFixed(1)} min`)));
        if (w > 34) {
            body += el("text", { x: x0 + 3, y: 31, "font-size": 10, fill: "#fff" },
                       esc(entry.activity));
        }
    });
    body += el("text", { x: width - 10, y: 58, "font-size": 10, "text-anchor": "end",
                         fill: "#555" }, esc(`total ${total.toFixed(1)} min`));
    return svgRoot(width, height, body, "chart-gantt");
}

/** Static ordered activity strip (replaces the animated process map). */
export function activityStrip(names: string[]): string {
    const boxes = names
        .map((name, i) => `<span class="strip-step">${i + 1}. ${esc(name)}</span>`)
        .join('<span class="strip-arrow">&#8594;</span>');
    return `<div class="activity-strip">${boxes}</div>`;
}
