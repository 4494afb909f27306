/** Small client-side statistics: quantiles, box stats, KDE, percent labels. */

export function quantile(values: number[], p: number): number {
    const sorted = [...values].sort((a, b) => a - b);
    const h = (sorted.length - 1) * p;
    const lo = Math.floor(h);
    const hi = Math.min(lo + 1, sorted.length - 1);
    return sorted[lo] + (h - lo) * (sorted[hi] - sorted[lo]);
}

export interface BoxStats {
    median: number;
    q1: number;
    q3: number;
    whiskerLow: number;
    whiskerHigh: number;
}

/** Median, IQR hinges, whiskers at the last points within 1.5 * IQR. */
export function boxStats(values: number[]): BoxStats {
    const q1 = quantile(values, 0.25);
    const q3 = quantile(values, 0.75);
    const iqr = q3 - q1;
    const loLimit = q1 - 1.5 * iqr;
    const hiLimit = q3 + 1.5 * iqr;
    const inside = values.filter((v) => v >= loLimit && v <= hiLimit);
    return {
        median: quantile(values, 0.5),
        q1,
        q3,
        whiskerLow: Math.min(...inside),
        whiskerHigh: Math.max(...inside),
    };
}

function std(values: number[]): number {
    const mean = values.reduce((a, b) => a + b, 0) / values.length;
    const variance = values.reduce((a, b) => a + (b - mean) ** 2, 0) / values.length;
    return Math.sqrt(variance);
}

/** Silverman's rule of thumb; falls back to a token width for degenerate data. */
export function silvermanBandwidth(values: number[]): number {
    const sigma = std(values);
    const iqr = quantile(values, 0.75) - quantile(values, 0.25);
    const scale = iqr > 0 ? Math.min(sigma, iqr / 1.34) : sigma;
    const bw = 0.9 * scale * Math.pow(values.length, -0.2);
    return bw > 0 ? bw : 1.0;
}

/** Gaussian KDE evaluated on a regular grid spanning the data (plus margin). */
export function kde(values: number[], points = 120): { xs: number[]; ys: number[] } {
    const bw = silvermanBandwidth(values);
    const lo = Math.min(...values) - 3 * bw;
    const hi = Math.max(...values) + 3 * bw;
    const xs: number[] = [];
    const ys: number[] = [];
    const norm = 1 / (values.length * bw * Math.sqrt(2 * Math.PI));
    for (let i = 0; i < points; i++) {
        const x = lo + ((hi - lo) * i) / (points - 1);
        let acc = 0;
        for (const v of values) {
            const z = (x - v) / bw;
            acc += Math.exp(-0.5 * z * z);
        }
        xs.push(x);
        ys.push(acc * norm);
    }
    return { xs, ys };
}

/** One-decimal percentage labels for a count map; sums to 100.0 within 0.1. */
export function percentLabels(counts: Record<string, number>): Record<string, string> {
    const total = Object.values(counts).reduce((a, b) => a + b, 0);
    const out: Record<string, string> = {};
    for (const [key, value] of Object.entries(counts)) {
        const pct = total > 0 ? (100 * value) / total : 0;
        out[key] = `${pct.toFixed(1)}%`;
    }
    return out;
}

export function fmt(x: number, digits = 1): string {
    return x.toFixed(digits);
}
