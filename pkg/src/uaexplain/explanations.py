"""Uncertainty-aware ICE and PDP curves plus permutation importance.

Both explanation kinds walk a feature grid.  At grid point k the point-level
prediction comes from a deterministic forward pass, while uncertainty comes
from T dropout passes whose masks are seeded with ``mix(seed, k)`` (ICE) or
``mix(mix(seed, k), row)`` (PDP).  Grid points are therefore independent,
reproducible work units.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass

import numpy as np

from .dataset import Dataset, Encoder, Grid, UnknownFeature, _check_value
from .predictor import Predictor, forward, mc_sample, mc_samples_matrix, predict
from .seeding import mix, mix_many
from .uncertainty import (LABELS, ProfileConfig, ProfileDistribution,
                          assign_profile, mc_variance, mc_variance_rows,
                          profile_distribution)


class ExplanationError(ValueError):
    pass


class EmptyData(ExplanationError):
    pass


@dataclass(frozen=True)
class StackedHistogram:
    """Equal-width bin counts split by profile label (for stacked bars)."""

    edges: tuple  # n_bins + 1 boundaries
    counts: dict  # label -> tuple of n_bins counts

    def to_dict(self) -> dict:
        return {"edges": list(self.edges),
                "counts": {l: list(self.counts[l]) for l in LABELS}}


def stacked_histogram(values, labels, n_bins: int = 20) -> StackedHistogram:
    v = np.asarray(values, dtype=np.float64)
    lo, hi = float(np.min(v)), float(np.max(v))
    if lo == hi:  # degenerate range: one centered bin span
        lo, hi = lo - 0.5, hi + 0.5
    edges = np.linspace(lo, hi, n_bins + 1)
    counts = {label: [0] * n_bins for label in LABELS}
    for value, label in zip(v, labels):
        idx = min(int(np.searchsorted(edges, value, side="right")) - 1, n_bins - 1)
        counts[label][max(idx, 0)] += 1
    return StackedHistogram(edges=tuple(float(e) for e in edges),
                            counts={l: tuple(c) for l, c in counts.items()})


def plain_histogram(values, n_bins: int = 50) -> dict:
    v = np.asarray(values, dtype=np.float64)
    lo, hi = float(np.min(v)), float(np.max(v))
    if lo == hi:
        lo, hi = lo - 0.5, hi + 0.5
    counts, edges = np.histogram(v, bins=n_bins, range=(lo, hi))
    return {"edges": [float(e) for e in edges], "counts": [int(c) for c in counts]}


@dataclass(frozen=True)
class IcePoint:
    grid_value: object
    prediction: float
    variance: float
    profile: str

    def to_dict(self) -> dict:
        return {"grid_value": self.grid_value, "prediction": self.prediction,
                "variance": self.variance, "profile": self.profile}


@dataclass(frozen=True)
class IceCurve:
    instance_id: str | None
    feature: str
    kind: str  # numeric | categorical
    points: tuple
    original_value: object
    prediction_hist: StackedHistogram
    value_hist: StackedHistogram | None  # omitted for categorical features

    def to_dict(self) -> dict:
        return {
            "instance_id": self.instance_id,
            "feature": self.feature,
            "kind": self.kind,
            "original_value": self.original_value,
            "points": [p.to_dict() for p in self.points],
            "prediction_hist": self.prediction_hist.to_dict(),
            "value_hist": self.value_hist.to_dict() if self.value_hist else None,
        }


@dataclass(frozen=True)
class PdpPoint:
    grid_value: object
    mean_prediction: float
    predictions: np.ndarray  # deterministic per-row predictions, length n_train
    variances: np.ndarray  # per-row MC variance, length n_train
    distribution: ProfileDistribution
    dominant: str

    def to_dict(self, include_vectors: bool = False, hist_bins: int = 50) -> dict:
        lo, hi = (float(x) for x in np.percentile(self.predictions, [2.5, 97.5]))
        out = {
            "grid_value": self.grid_value,
            "mean_prediction": self.mean_prediction,
            "dominant": self.dominant,
            "distribution": self.distribution.to_dict(),
            "prediction_interval": [lo, hi],
            "prediction_hist": plain_histogram(self.predictions, hist_bins),
            "variance_hist": plain_histogram(self.variances, hist_bins),
        }
        if include_vectors:
            out["predictions"] = [float(p) for p in self.predictions]
            out["variances"] = [float(v) for v in self.variances]
        return out


@dataclass(frozen=True)
class PdpCurve:
    feature: str
    kind: str
    points: tuple
    n_train: int

    def to_dict(self, include_vectors: bool = False) -> dict:
        return {
            "feature": self.feature,
            "kind": self.kind,
            "n_train": self.n_train,
            "points": [p.to_dict(include_vectors) for p in self.points],
        }


@dataclass(frozen=True)
class ImportanceReport:
    """Per-feature RMSE increase after shuffling, descending by mean."""

    features: tuple
    importances: tuple
    stds: tuple
    baseline_rmse: float
    repeats: int
    seed: int

    def to_dict(self) -> dict:
        return {
            "baseline_rmse": self.baseline_rmse,
            "repeats": self.repeats,
            "seed": self.seed,
            "features": [
                {"feature": f, "importance": m, "std": s}
                for f, m, s in zip(self.features, self.importances, self.stds)
            ],
        }


def _grid_with_original(grid: Grid, spec, original):
    """Grid values with the instance's own value injected if binned out."""
    values = list(grid.values)
    if original in values:
        return values
    if spec.kind == "numeric":
        bisect.insort(values, original)
    else:
        values.append(original)
        values.sort(key=spec.levels.index)
    return values


def compute_ice(model: Predictor, instance: dict, feature: str, grid: Grid,
                T: int, cfg: ProfileConfig, seed: int,
                instance_id: str | None = None, n_bins: int = 20) -> IceCurve:
    """Uncertainty-aware ICE curve for one instance and one feature.

    Grid point k: copy the instance, force the feature to the grid value,
    predict deterministically, and take the population variance of T
    stochastic passes seeded with mix(seed, k).  Histograms of the grid
    values and predictions are stacked by profile membership.
    """
    schema = model.schema
    if schema is None or model.norm_stats is None:
        raise ExplanationError("model carries no schema/norm stats; train it through the pipeline")
    spec = schema.feature(feature)
    if grid.feature != feature:
        raise UnknownFeature(f"grid is for {grid.feature!r}, not {feature!r}")
    encoder = Encoder(schema, model.norm_stats)
    original = _check_value(spec, instance[feature], row_idx=0)
    values = _grid_with_original(grid, spec, original)

    points = []
    for k, value in enumerate(values):
        row = dict(instance)
        row[feature] = value
        x = encoder.encode_row(row)
        pred = forward(model, x)
        samples = mc_sample(model, x, T, mix(seed, k))
        variance = mc_variance(samples.values)
        points.append(IcePoint(grid_value=value, prediction=pred, variance=variance,
                               profile=assign_profile(variance, cfg)))

    labels = [p.profile for p in points]
    pred_hist = stacked_histogram([p.prediction for p in points], labels, n_bins)
    value_hist = None
    if spec.kind == "numeric":
        value_hist = stacked_histogram([p.grid_value for p in points], labels, n_bins)
    return IceCurve(instance_id=instance_id, feature=feature, kind=spec.kind,
                    points=tuple(points), original_value=original,
                    prediction_hist=pred_hist, value_hist=value_hist)


def compute_pdp(model: Predictor, train: Dataset, feature: str, grid: Grid,
                T: int, cfg: ProfileConfig, seed: int) -> PdpCurve:
    """Uncertainty-aware PDP over the training set.

    Grid point k: force the feature to the grid value in every training row,
    average the deterministic predictions, and compute each row's MC variance
    from T passes seeded with mix(mix(seed, k), row_index).  The dominant
    profile of those per-row variances colors the point.
    """
    if train.n == 0:
        raise EmptyData("training set is empty")
    spec = train.schema.feature(feature)
    if grid.feature != feature:
        raise UnknownFeature(f"grid is for {grid.feature!r}, not {feature!r}")
    if model.norm_stats is None:
        raise ExplanationError("model carries no norm stats; train it through the pipeline")
    encoder = Encoder(train.schema, model.norm_stats)
    X_base = encoder.encode_rows(train.rows)

    points = []
    for k, value in enumerate(grid.values):
        X_k = encoder.set_feature(X_base, feature, value)
        preds = predict(model, X_k)
        point_seed = mix(seed, k)
        row_seeds = mix_many(point_seed, train.n)
        samples = mc_samples_matrix(model, X_k, T, row_seeds)
        variances = mc_variance_rows(samples)
        dist = profile_distribution(variances, cfg)
        points.append(PdpPoint(grid_value=value, mean_prediction=float(np.mean(preds)),
                               predictions=preds, variances=variances,
                               distribution=dist, dominant=dist.dominant))
    return PdpCurve(feature=feature, kind=spec.kind, points=tuple(points), n_train=train.n)


def _rmse(pred: np.ndarray, y: np.ndarray) -> float:
    err = pred - y
    return float(np.sqrt(np.mean(err * err)))


def permutation_importance(model: Predictor, data: Dataset, repeats: int,
                           seed: int) -> ImportanceReport:
    """Mean RMSE increase when one feature column is shuffled.

    The shuffle of feature f, repeat r permutes the raw column with
    ``default_rng(mix(mix(seed, f), r))`` before encoding (realized as a
    permutation of the feature's encoded block, which is equivalent).
    """
    if data.n == 0:
        raise EmptyData("dataset is empty")
    if repeats < 1:
        raise ExplanationError("repeats must be >= 1")
    if model.norm_stats is None:
        raise ExplanationError("model carries no norm stats; train it through the pipeline")
    encoder = Encoder(data.schema, model.norm_stats)
    X = encoder.encode_rows(data.rows)
    y = data.y
    baseline = _rmse(predict(model, X), y)

    rows = []
    for f_idx, spec in enumerate(data.schema.features):
        off, width = encoder.offsets[spec.name], encoder.widths[spec.name]
        deltas = []
        for r in range(repeats):
            perm = np.random.default_rng(mix(mix(seed, f_idx), r)).permutation(data.n)
            Xp = X.copy()
            Xp[:, off:off + width] = X[perm, off:off + width]
            deltas.append(_rmse(predict(model, Xp), y) - baseline)
        deltas = np.asarray(deltas)
        rows.append((spec.name, float(np.mean(deltas)), float(np.std(deltas))))

    rows.sort(key=lambda item: -item[1])
    return ImportanceReport(
        features=tuple(r[0] for r in rows),
        importances=tuple(r[1] for r in rows),
        stds=tuple(r[2] for r in rows),
        baseline_rmse=baseline,
        repeats=repeats,
        seed=seed,
    )
