import type { Profile } from "./types.js";

/**
 * The single profile -> color map. Every colored element in the UI derives
 * its color from a payload profile label through this map; the frontend
 * never thresholds variances itself.
 */
export const PROFILE_COLORS: Record<Profile, string> = {
    low: "#2f9e44",    // green
    medium: "#e8a013", // amber
    high: "#d6382c",   // red
};

export const PROFILE_ORDER: Profile[] = ["low", "medium", "high"];

export function colorOf(profile: Profile): string {
    return PROFILE_COLORS[profile];
}
