"""Per-prediction uncertainty from MC dropout.

Trains a dropout network on synthetic activity durations, then inspects one
prediction the way a process expert would: the distribution of stochastic
passes, its 95% interval, and the fitted low/medium/high profile.

Run:  python demos/01_mc_dropout_uncertainty.py
"""

from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from uaexplain import (Encoder, TrainConfig, assign_profile, describe,
                       generate_synthetic, mc_sample, summarize,
                       train_pipeline)
from uaexplain.uncertainty import COLORS

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

print("== training on synthetic activity durations ==")
ds = generate_synthetic(1000, seed=7)
result = train_pipeline(ds, train_cfg=TrainConfig(epochs=200, seed=7), T=50, seed=7)
print(f"final train MSE {result.history[-1]['train_mse']:.2f}, "
      f"val MSE {result.history[-1]['val_mse']:.2f}")
print(f"profile thresholds (minutes^2): low <= {result.profiles.t_low:.2f} "
      f"< medium <= {result.profiles.t_high:.2f} < high")

# one interesting instance: large x1 means noisy conditions by construction
instance = max(ds.rows, key=lambda r: r["x1"])
encoder = Encoder(ds.schema, result.predictor.norm_stats)
samples = mc_sample(result.predictor, encoder.encode_row(instance), T=50, seed=123)
summary = summarize(samples)
profile = assign_profile(summary.variance, result.profiles)

print("\n== one activity, fifty stochastic passes ==")
print(describe(summary, profile, result.profiles))

fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(7, 5), sharex=True,
                               gridspec_kw={"height_ratios": [3, 1]})
color = {"green": "tab:green", "amber": "orange", "red": "tab:red"}[COLORS[profile]]
ax1.hist(samples.values, bins=15, density=True, color=color, alpha=0.6)
for bound in (summary.interval_low, summary.interval_high):
    ax1.axvline(bound, color="red", linewidth=1.5)
ax1.axvline(summary.mean, color="black", linestyle="--", label=f"mean {summary.mean:.1f}")
ax1.set_title(f"MC dropout predictions (T=50), profile `{profile}`")
ax1.legend()
ax2.boxplot(samples.values, vert=False, widths=0.5)
ax2.set_xlabel("predicted duration [min]")
fig.tight_layout()
fig.savefig(OUT / "mc_dropout_uncertainty.png", dpi=120)
print(f"\nwrote {OUT / 'mc_dropout_uncertainty.png'}")
