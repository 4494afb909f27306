"""End-to-end training pipeline: split, normalize, encode, train, profile.

This is the glue the CLI and the HTTP service share.  Profile thresholds are
fitted on the MC variances of the training split, with per-row seeds derived
from ``stable_seed("uaexplain/profile-fit", seed)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import Dataset, Encoder, SplitDataset, compute_norm_stats, split_dataset
from .predictor import (NetworkArch, Predictor, TrainConfig, init_predictor,
                        mc_samples_matrix, train)
from .seeding import mix_many, stable_seed
from .uncertainty import ProfileConfig, fit_profiles, mc_variance_rows


@dataclass
class TrainResult:
    predictor: Predictor
    history: list
    profiles: ProfileConfig
    split: SplitDataset
    train_variances: np.ndarray


def profile_fit_variances(p: Predictor, X: np.ndarray, T: int, seed: int) -> np.ndarray:
    """Per-row MC variances used to fit the uncertainty profiles."""
    row_seeds = mix_many(stable_seed("uaexplain/profile-fit", seed), X.shape[0])
    samples = mc_samples_matrix(p, X, T, row_seeds)
    return mc_variance_rows(samples)


def train_pipeline(ds: Dataset, ratios=(0.6, 0.2, 0.2), hidden=(64, 64),
                   activation: str = "relu", dropout_rate: float = 0.1,
                   train_cfg: TrainConfig | None = None, T: int = 50,
                   seed: int = 0) -> TrainResult:
    split = split_dataset(ds, ratios, seed)
    norm = compute_norm_stats(split.train)
    encoder = Encoder(ds.schema, norm)
    X_train = encoder.encode_rows(split.train.rows)
    X_val = encoder.encode_rows(split.val.rows)

    arch = NetworkArch(input_dim=encoder.dim, hidden=tuple(hidden),
                       activation=activation, dropout_rate=dropout_rate)
    cfg = train_cfg or TrainConfig(seed=seed)
    p0 = init_predictor(arch, seed, norm_stats=norm, schema=ds.schema)
    p, history = train(p0, (X_train, split.train.y), (X_val, split.val.y), cfg)

    variances = profile_fit_variances(p, X_train, T, seed)
    if variances.size >= 2:
        profiles = fit_profiles(variances)
    else:
        profiles = ProfileConfig.expert(float(variances[0]), float(variances[0]))
    return TrainResult(predictor=p, history=history, profiles=profiles,
                       split=split, train_variances=variances)
