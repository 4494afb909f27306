"""Uncertainty-aware ICE curves for one instance.

Shows how one activity's predicted duration responds to a numeric feature
(x1) and a categorical one (crew), with every synthetic point colored by its
uncertainty profile and the marginal distributions stacked by profile.

Run:  python demos/02_ice_curves.py
"""

from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from uaexplain import (TrainConfig, build_grid, compute_ice,
                       generate_synthetic, train_pipeline)

PALETTE = {"low": "tab:green", "medium": "orange", "high": "tab:red"}
OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

ds = generate_synthetic(1000, seed=3)
result = train_pipeline(ds, train_cfg=TrainConfig(epochs=200, seed=3), T=50, seed=3)
instance = ds.rows[5]
print(f"instance under analysis: { {k: round(v, 3) if isinstance(v, float) else v for k, v in instance.items()} }")

fig, axes = plt.subplots(1, 2, figsize=(12, 4.5))
for ax, feature in zip(axes, ("x1", "crew")):
    grid = build_grid(result.split.train, feature, max_points=40)
    curve = compute_ice(result.predictor, instance, feature, grid, T=50,
                        cfg=result.profiles, seed=42)
    xs = [p.grid_value for p in curve.points]
    ys = [p.prediction for p in curve.points]
    colors = [PALETTE[p.profile] for p in curve.points]
    if curve.kind == "numeric":
        ax.plot(xs, ys, color="lightgray", zorder=1)
        ax.axvline(curve.original_value, color="red", linewidth=1.2,
                   label=f"original value {curve.original_value:.2f}")
        ax.scatter(xs, ys, c=colors, zorder=2, s=30)
    else:
        positions = range(len(xs))
        ax.scatter(positions, ys, c=colors, s=60)
        ax.set_xticks(positions, xs)
        original = xs.index(curve.original_value)
        ax.axvline(original, color="red", linewidth=1.2,
                   label=f"original value {curve.original_value!r}")
    ax.set_title(f"uncertainty-aware ICE: {feature}")
    ax.set_xlabel(feature)
    ax.set_ylabel("predicted duration [min]")
    ax.legend()
    profile_counts = {lbl: sum(1 for p in curve.points if p.profile == lbl)
                      for lbl in ("low", "medium", "high")}
    print(f"{feature}: {len(curve.points)} grid points, profiles {profile_counts}")

fig.tight_layout()
fig.savefig(OUT / "ice_curves.png", dpi=120)
print(f"wrote {OUT / 'ice_curves.png'}")
