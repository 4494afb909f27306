/** Tiny SVG string helpers shared by the chart builders. */

export function esc(text: string | number): string {
    return String(text)
        .replace(/&/g, "&amp;")
        .replace(/</g, "&lt;")
        .replace(/>/g, "&gt;")
        .replace(/"/g, "&quot;");
}

export function el(tag: string, attrs: Record<string, string | number>, children = ""): string {
    const parts = Object.entries(attrs)
        .map(([k, v]) => `${k}="${esc(v)}"`)
        .join(" ");
    return children === "" && tag !== "text" && tag !== "title"
        ? `<${tag} ${parts}/>`
        : `<${tag} ${parts}>${children}</${tag}>`;
}

export interface Scale {
    (v: number): number;
    domain: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
    const [d0, d1] = domain;
    const [r0, r1] = range;
    const span = d1 - d0 || 1;
    const fn = ((v: number) => r0 + ((v - d0) / span) * (r1 - r0)) as Scale;
    fn.domain = domain;
    return fn;
}

export function extent(values: number[]): [number, number] {
    return [Math.min(...values), Math.max(...values)];
}

/** Pad a numeric domain so strokes at the border stay visible. */
export function padDomain([lo, hi]: [number, number], frac = 0.06): [number, number] {
    const pad = (hi - lo || 1) * frac;
    return [lo - pad, hi + pad];
}

export function svgRoot(width: number, height: number, body: string, cls = ""): string {
    return `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" ` +
        `width="${width}" height="${height}" class="${esc(cls)}" role="img">${body}</svg>`;
}
