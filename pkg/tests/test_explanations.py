import numpy as np
import pytest

from _builders import identity_norm, linear_predictor, numeric_schema
from uaexplain.dataset import (Dataset, Encoder, Grid, UnknownFeature,
                               build_grid, encode_row, generate_synthetic)
from uaexplain.explanations import (EmptyData, compute_ice, compute_pdp,
                                    permutation_importance, plain_histogram,
                                    stacked_histogram)
from uaexplain.predictor import forward, mc_sample, predict
from uaexplain.seeding import mix
from uaexplain.uncertainty import (ProfileConfig, fit_profiles,
                                   profile_distribution)

CFG0 = ProfileConfig.expert(0.0, 0.0)  # fitted on all-zero variances


def dataset_from_rows(schema, rows):
    return Dataset(schema, rows, np.zeros(len(rows)))


class TestIce:
    def test_linear_unit_hand_evaluated(self):
        # f = 2*x1 with identity encoding; grid {0, 1, 2}
        p = linear_predictor([2.0, 0.0])
        grid = Grid("x1", (0.0, 1.0, 2.0))
        instance = {"x1": 0.0, "x2": 0.5}
        curve = compute_ice(p, instance, "x1", grid, T=5, cfg=CFG0, seed=1)
        assert [pt.prediction for pt in curve.points] == [0.0, 2.0, 4.0]
        assert [pt.variance for pt in curve.points] == [0.0, 0.0, 0.0]
        assert all(pt.profile == "low" for pt in curve.points)

    def test_model_ignoring_feature_is_flat(self):
        p = linear_predictor([0.0, 3.0])
        grid = Grid("x1", (0.0, 1.0, 2.0))
        curve = compute_ice(p, {"x1": 1.0, "x2": 2.0}, "x1", grid, T=5, cfg=CFG0, seed=0)
        preds = {pt.prediction for pt in curve.points}
        assert preds == {6.0}
        assert all(pt.variance == 0.0 for pt in curve.points)

    def test_original_value_point_matches_direct_prediction(self, trained_small):
        result = trained_small
        ds = result.split.train
        instance = ds.rows[3]
        grid = build_grid(ds, "x2", max_points=10)
        curve = compute_ice(result.predictor, instance, "x2", grid, T=5,
                            cfg=result.profiles, seed=9)
        enc = Encoder(ds.schema, result.predictor.norm_stats)
        direct = forward(result.predictor, enc.encode_row(instance))
        at_original = [pt for pt in curve.points if pt.grid_value == curve.original_value]
        assert len(at_original) == 1
        assert at_original[0].prediction == direct

    def test_original_value_injected_into_binned_grid(self, trained_small):
        result = trained_small
        ds = result.split.train
        grid = build_grid(ds, "x1", max_points=5)
        assert grid.binned
        instance = ds.rows[0]
        curve = compute_ice(result.predictor, instance, "x1", grid, T=3,
                            cfg=result.profiles, seed=2)
        values = [pt.grid_value for pt in curve.points]
        assert curve.original_value in values
        assert values == sorted(values)
        assert len(curve.points) in (len(grid.values), len(grid.values) + 1)

    def test_categorical_curve_omits_value_hist(self, trained_small):
        result = trained_small
        ds = result.split.train
        grid = build_grid(ds, "crew", max_points=10)
        curve = compute_ice(result.predictor, ds.rows[1], "crew", grid, T=5,
                            cfg=result.profiles, seed=4)
        assert curve.kind == "categorical"
        assert curve.value_hist is None
        assert curve.prediction_hist is not None
        assert len(curve.points) == len(grid.values)

    def test_histograms_have_twenty_bins_and_count_all_points(self, trained_small):
        result = trained_small
        ds = result.split.train
        grid = build_grid(ds, "x3", max_points=12)
        curve = compute_ice(result.predictor, ds.rows[2], "x3", grid, T=5,
                            cfg=result.profiles, seed=5)
        hist = curve.prediction_hist
        assert len(hist.edges) == 21
        total = sum(sum(c) for c in hist.counts.values())
        assert total == len(curve.points)

    def test_unknown_feature(self, trained_small):
        grid = Grid("x1", (0.0,))
        with pytest.raises(UnknownFeature):
            compute_ice(trained_small.predictor, {"x1": 0.0}, "nope", grid,
                        T=2, cfg=CFG0, seed=0)


class TestPdp:
    def test_hand_averaged_linear_model(self):
        # f(x) = x1 + x2; train x2 in {0, 2}; grid x1 in {0, 1}
        schema = numeric_schema(2)
        p = linear_predictor([1.0, 1.0], schema=schema)
        train = dataset_from_rows(schema, [{"x1": 9.0, "x2": 0.0},
                                           {"x1": -4.0, "x2": 2.0}])
        grid = Grid("x1", (0.0, 1.0))
        curve = compute_pdp(p, train, "x1", grid, T=3, cfg=CFG0, seed=0)
        assert [pt.mean_prediction for pt in curve.points] == [1.0, 2.0]
        assert curve.n_train == 2
        assert all(pt.variances.shape == (2,) for pt in curve.points)

    def test_constant_model_flat(self):
        schema = numeric_schema(2)
        p = linear_predictor([0.0, 0.0], bias=7.5, schema=schema)
        train = dataset_from_rows(schema, [{"x1": float(i), "x2": float(-i)}
                                           for i in range(5)])
        grid = Grid("x1", (0.0, 1.0, 2.0))
        curve = compute_pdp(p, train, "x1", grid, T=4, cfg=CFG0, seed=3)
        assert {pt.mean_prediction for pt in curve.points} == {7.5}
        assert all(np.all(pt.variances == 0.0) for pt in curve.points)
        assert all(pt.dominant == "low" for pt in curve.points)

    def test_pdp_equals_mean_of_ice_predictions(self, trained_small):
        result = trained_small
        train = result.split.train.subset(range(40))
        grid = build_grid(train, "x4", max_points=6)
        curve = compute_pdp(result.predictor, train, "x4", grid, T=2,
                            cfg=result.profiles, seed=8)
        for k, value in enumerate(grid.values):
            ice_preds = []
            for row in train.rows:
                ice = compute_ice(result.predictor, row, "x4", grid, T=1,
                                  cfg=result.profiles, seed=8)
                ice_preds.append([pt.prediction for pt in ice.points
                                  if pt.grid_value == value][0])
            mean_ice = float(np.mean(np.asarray(ice_preds)))
            rel = abs(mean_ice - curve.points[k].mean_prediction) / max(abs(mean_ice), 1e-12)
            assert rel < 1e-9

    def test_brute_force_oracle_bit_exact(self, trained_small):
        # independent double-loop PDP following the documented seed rule
        result = trained_small
        train = result.split.train.subset(range(20))
        grid = build_grid(train, "x2", max_points=5)
        assert len(grid.values) == 5
        seed = 1234
        curve = compute_pdp(result.predictor, train, "x2", grid, T=10,
                            cfg=result.profiles, seed=seed)

        enc = Encoder(train.schema, result.predictor.norm_stats)
        for k, value in enumerate(grid.values):
            preds, variances = [], []
            for i, row in enumerate(train.rows):
                modified = dict(row)
                modified["x2"] = value
                x = encode_row(train.schema, modified, result.predictor.norm_stats)
                preds.append(forward(result.predictor, x))
                samples = mc_sample(result.predictor, x, 10, mix(mix(seed, k), i))
                # documented variance rule: exactly 0 when all passes agree
                all_equal = float(np.max(samples.values)) == float(np.min(samples.values))
                variances.append(0.0 if all_equal else float(np.var(samples.values)))
            point = curve.points[k]
            assert float(np.mean(np.asarray(preds))) == point.mean_prediction
            assert np.array_equal(np.asarray(variances), point.variances)
            assert np.array_equal(np.asarray(preds), point.predictions)
            oracle_dist = profile_distribution(variances, result.profiles)
            assert oracle_dist == point.distribution
            assert point.dominant == oracle_dist.dominant

    def test_zero_dropout_concentrates_low(self, synth400):
        from uaexplain import TrainConfig, train_pipeline
        result = train_pipeline(synth400, hidden=(8,), dropout_rate=0.0,
                                train_cfg=TrainConfig(epochs=5, seed=1), T=5, seed=1)
        assert np.all(result.train_variances == 0.0)
        cfg = fit_profiles(result.train_variances)
        train = result.split.train.subset(range(30))
        grid = build_grid(train, "x5", max_points=4)
        curve = compute_pdp(result.predictor, train, "x5", grid, T=5, cfg=cfg, seed=0)
        for pt in curve.points:
            assert pt.distribution.counts == {"low": 30, "medium": 0, "high": 0}
            assert pt.dominant == "low"

    def test_deterministic(self, trained_small):
        result = trained_small
        train = result.split.train.subset(range(15))
        grid = build_grid(train, "x1", max_points=4)
        a = compute_pdp(result.predictor, train, "x1", grid, T=6,
                        cfg=result.profiles, seed=5)
        b = compute_pdp(result.predictor, train, "x1", grid, T=6,
                        cfg=result.profiles, seed=5)
        for pa, pb in zip(a.points, b.points):
            assert pa.mean_prediction == pb.mean_prediction
            assert np.array_equal(pa.variances, pb.variances)

    def test_grid_coverage(self, trained_small):
        result = trained_small
        train = result.split.train.subset(range(10))
        grid = build_grid(train, "crew", max_points=9)
        curve = compute_pdp(result.predictor, train, "crew", grid, T=2,
                            cfg=result.profiles, seed=0)
        assert len(curve.points) == len(grid.values)

    def test_empty_train_rejected(self):
        schema = numeric_schema(1)
        p = linear_predictor([1.0], schema=schema)
        empty = dataset_from_rows(schema, [])
        with pytest.raises(EmptyData):
            compute_pdp(p, empty, "x1", Grid("x1", (0.0,)), T=2, cfg=CFG0, seed=0)


class TestPermutationImportance:
    def test_zero_weight_feature_importance_exactly_zero(self):
        schema = numeric_schema(3)
        p = linear_predictor([1.5, 0.0, -2.0], schema=schema)
        rng = np.random.default_rng(0)
        rows = [{"x1": float(a), "x2": float(b), "x3": float(c)}
                for a, b, c in rng.normal(size=(50, 3))]
        y = np.array([1.5 * r["x1"] - 2.0 * r["x3"] for r in rows])
        data = Dataset(schema, rows, y)
        report = permutation_importance(p, data, repeats=3, seed=5)
        by_name = dict(zip(report.features, report.importances))
        assert by_name["x2"] == 0.0
        assert by_name["x1"] > 0.0 and by_name["x3"] > 0.0

    def test_signal_feature_matches_brute_force_oracle(self):
        # f = x1 and y is generated by x1, so shuffling x1 must hurt
        schema = numeric_schema(2)
        p = linear_predictor([1.0, 0.0], schema=schema)
        rng = np.random.default_rng(1)
        rows = [{"x1": float(a), "x2": float(b)} for a, b in rng.normal(size=(40, 2))]
        y = np.array([r["x1"] for r in rows])
        data = Dataset(schema, rows, y)
        seed, repeats = 77, 4
        report = permutation_importance(p, data, repeats=repeats, seed=seed)

        enc = Encoder(schema, p.norm_stats)
        X = enc.encode_rows(rows)
        baseline = float(np.sqrt(np.mean((predict(p, X) - y) ** 2)))
        for f_idx, name in enumerate(["x1", "x2"]):
            deltas = []
            for r in range(repeats):
                perm = np.random.default_rng(mix(mix(seed, f_idx), r)).permutation(40)
                Xp = X.copy()
                off = enc.offsets[name]
                Xp[:, off:off + 1] = X[perm, off:off + 1]
                rmse = float(np.sqrt(np.mean((predict(p, Xp) - y) ** 2)))
                deltas.append(rmse - baseline)
            expected_mean = float(np.mean(np.asarray(deltas)))
            got = dict(zip(report.features, report.importances))[name]
            assert got == expected_mean
        assert dict(zip(report.features, report.importances))["x1"] > 0.0

    def test_repeats_aggregation(self, trained_small):
        result = trained_small
        data = result.split.val
        report = permutation_importance(result.predictor, data, repeats=3, seed=2)
        assert report.repeats == 3
        assert all(s >= 0.0 for s in report.stds)
        assert list(report.importances) == sorted(report.importances, reverse=True)
        assert set(report.features) == set(data.schema.feature_names)

    def test_empty_data_rejected(self):
        schema = numeric_schema(1)
        p = linear_predictor([1.0], schema=schema)
        with pytest.raises(EmptyData):
            permutation_importance(p, dataset_from_rows(schema, []), repeats=1, seed=0)


class TestHistograms:
    def test_stacked_histogram_degenerate_range(self):
        h = stacked_histogram([2.0, 2.0], ["low", "high"], n_bins=4)
        assert len(h.edges) == 5
        assert sum(sum(c) for c in h.counts.values()) == 2

    def test_plain_histogram_counts(self):
        h = plain_histogram(np.arange(100.0), n_bins=50)
        assert sum(h["counts"]) == 100 and len(h["edges"]) == 51
