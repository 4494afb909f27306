"""Uncertainty-aware explanations for tabular duration models.

MC-dropout uncertainty, uncertainty-aware ICE/PDP curves, permutation
importance, and a process-monitoring layer with what-if forecasts.
"""

from .dataset import (Dataset, Encoder, FeatureSpec, Grid, NormStats, Schema,
                      SplitDataset, build_grid, compute_norm_stats, encode_row,
                      generate_synthetic, load_dataset, load_schema,
                      split_dataset, synthetic_schema)
from .explanations import (IceCurve, IcePoint, ImportanceReport, PdpCurve,
                           PdpPoint, compute_ice, compute_pdp,
                           permutation_importance)
from .pipeline import TrainResult, train_pipeline
from .predictor import (McSamples, NetworkArch, Predictor, TrainConfig,
                        forward, init_predictor, load_predictor, mc_sample,
                        mc_samples_matrix, mse_gradients, mse_loss, predict,
                        save_predictor, train)
from .process_monitor import (Activity, ActivityForecast, CaseStore,
                              GanttEntry, ProcessCase, WhatIfRequest,
                              forecast_case, load_cases, what_if)
from .seeding import mix, mix_many, stable_seed
from .uncertainty import (COLORS, LABELS, McSummary, ProfileConfig,
                          ProfileDistribution, assign_profile, describe,
                          fit_profiles, profile_distribution, summarize)

__version__ = "0.1.0"
