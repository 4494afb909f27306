import math

import numpy as np
import pytest

from uaexplain.dataset import (BadRatios, Dataset, Encoder, FeatureSpec,
                               MissingColumn, NonNumericValue, NormStats,
                               Schema, UnknownFeature, UnknownLevel,
                               build_grid, compute_norm_stats, encode_row,
                               generate_synthetic, load_dataset, load_schema,
                               split_dataset, synthetic_schema)

SCHEMA = Schema(
    features=(
        FeatureSpec("dur", "numeric", unit="min"),
        FeatureSpec("worker", "categorical", levels=("A", "B")),
    ),
    target="y",
)


def make_csv(rows, header="dur,worker,y"):
    return ("\n".join([header] + rows) + "\n").encode("utf-8")


class TestLoadDataset:
    def test_row_count_preserved(self):
        ds = load_dataset(make_csv(["1,A,10", "2,B,20", "3,A,30"]), SCHEMA)
        assert ds.n == 3
        assert ds.rows[1] == {"dur": 2.0, "worker": "B"}
        assert ds.y.tolist() == [10.0, 20.0, 30.0]

    def test_missing_target_column(self):
        csv = "dur,worker\n1,A\n".encode()
        with pytest.raises(MissingColumn):
            load_dataset(csv, SCHEMA)

    def test_unknown_level(self):
        with pytest.raises(UnknownLevel):
            load_dataset(make_csv(["1,X,10"]), SCHEMA)

    def test_non_numeric_value(self):
        with pytest.raises(NonNumericValue):
            load_dataset(make_csv(["abc,A,10"]), SCHEMA)

    def test_extraneous_columns_ignored(self):
        csv = "extra,dur,worker,y\nfoo,1,A,10\n".encode()
        ds = load_dataset(csv, SCHEMA)
        assert ds.n == 1 and "extra" not in ds.rows[0]


class TestSplit:
    def test_floor_sizes(self):
        ds = load_dataset(make_csv([f"{i},A,{i}" for i in range(10)]), SCHEMA)
        sp = split_dataset(ds, (0.6, 0.2, 0.2), seed=7)
        assert (sp.train.n, sp.val.n, sp.test.n) == (6, 2, 2)

    def test_deterministic(self):
        ds = generate_synthetic(50, seed=1)
        a = split_dataset(ds, (0.6, 0.2, 0.2), seed=7)
        b = split_dataset(ds, (0.6, 0.2, 0.2), seed=7)
        assert a.train.rows == b.train.rows
        assert a.test.rows == b.test.rows

    def test_bad_ratios(self):
        ds = generate_synthetic(10, seed=1)
        with pytest.raises(BadRatios):
            split_dataset(ds, (0.5, 0.5, 0.5), seed=0)

    def test_partition_covers_all_rows(self):
        ds = generate_synthetic(37, seed=3)
        for seed in (0, 1, 99):
            sp = split_dataset(ds, (0.5, 0.25, 0.25), seed=seed)
            merged = sorted([repr(r) for part in (sp.train, sp.val, sp.test)
                             for r in part.rows])
            assert merged == sorted(repr(r) for r in ds.rows)
            assert sp.train.n + sp.val.n + sp.test.n == ds.n


class TestEncodeRow:
    NORM = NormStats(means={"dur": 10.0}, stds={"dur": 2.0})

    def test_mean_encodes_to_zero(self):
        vec = encode_row(SCHEMA, {"dur": 10.0, "worker": "A"}, self.NORM)
        assert vec[0] == 0.0

    def test_one_hot_block(self):
        schema = Schema(features=(FeatureSpec("c", "categorical",
                                              levels=("p", "q", "r", "s")),),
                        target="y")
        norm = NormStats(means={}, stds={})
        vec = encode_row(schema, {"c": "r"}, norm)
        assert vec.tolist() == [0.0, 0.0, 1.0, 0.0]

    def test_zero_variance_column_encodes_zero(self):
        norm = NormStats(means={"dur": 5.0}, stds={"dur": 0.0})
        vec = encode_row(SCHEMA, {"dur": 123.0, "worker": "B"}, norm)
        assert vec[0] == 0.0

    def test_length_constant_across_rows(self):
        ds = generate_synthetic(30, seed=5)
        norm = compute_norm_stats(ds)
        lengths = {encode_row(ds.schema, r, norm).size for r in ds.rows}
        assert lengths == {5 + 4}  # five numerics + four crew levels

    def test_unknown_level_raises(self):
        with pytest.raises(UnknownLevel):
            encode_row(SCHEMA, {"dur": 1.0, "worker": "Z"}, self.NORM)

    def test_encoder_set_feature_matches_reencode(self):
        ds = generate_synthetic(20, seed=9)
        norm = compute_norm_stats(ds)
        enc = Encoder(ds.schema, norm)
        X = enc.encode_rows(ds.rows)
        for feature, value in (("x3", 0.77), ("crew", "c")):
            forced = enc.set_feature(X, feature, value)
            for i, row in enumerate(ds.rows):
                row2 = dict(row)
                row2[feature] = value
                assert np.array_equal(forced[i], enc.encode_row(row2))


def interp_percentiles(sorted_values, probs):
    """Independent h=(n-1)p percentile oracle (linear interpolation)."""
    n = len(sorted_values)
    out = []
    for p in probs:
        h = (n - 1) * p
        lo = math.floor(h)
        hi = min(lo + 1, n - 1)
        out.append(sorted_values[lo] + (h - lo) * (sorted_values[hi] - sorted_values[lo]))
    return out


class TestBuildGrid:
    def base(self, values):
        rows = [{"dur": v, "worker": "A"} for v in values]
        return Dataset(SCHEMA, rows, np.zeros(len(values)))

    def test_sorted_unique_small(self):
        grid = build_grid(self.base([3, 1, 2, 2]), "dur", max_points=50)
        assert list(grid.values) == [1.0, 2.0, 3.0]
        assert not grid.binned

    def test_quantile_binning_against_oracle(self):
        rng = np.random.default_rng(0)
        values = rng.uniform(0, 100, size=1000)
        grid = build_grid(self.base(values), "dur", max_points=50)
        assert grid.binned and len(grid.values) == 50
        expected = interp_percentiles(sorted(values), [i / 49 for i in range(50)])
        assert np.allclose(grid.values, expected, rtol=0, atol=1e-12)
        assert all(a < b for a, b in zip(grid.values, grid.values[1:]))

    def test_categorical_levels_schema_order(self):
        schema = Schema(features=(FeatureSpec("w", "categorical",
                                              levels=("751", "114")),), target="y")
        ds = Dataset(schema, [{"w": "114"}, {"w": "751"}], np.zeros(2))
        grid = build_grid(ds, "w", max_points=50)
        assert list(grid.values) == ["751", "114"]  # schema order, not observed order

    def test_unknown_feature(self):
        with pytest.raises(UnknownFeature):
            build_grid(self.base([1.0]), "nope", max_points=10)

    def test_grid_values_subset_of_observed_when_unbinned(self):
        ds = generate_synthetic(40, seed=2)
        grid = build_grid(ds, "x1", max_points=100)
        observed = {r["x1"] for r in ds.rows}
        assert not grid.binned and set(grid.values) <= observed


def synthetic_oracle(n, seed):
    """Independent reimplementation of the synthetic generator's draw order."""
    rng = np.random.default_rng(seed)
    X = rng.random((n, 5))
    crew = rng.integers(0, 4, size=n)
    eps = rng.standard_normal(n) * (1.0 + 4.0 * X[:, 0])
    shifts = [0.0, 5.0, 10.0, 15.0]
    ys = []
    for i in range(n):
        x1, x2, x3, x4, x5 = (float(X[i, j]) for j in range(5))
        ys.append(10.0 * math.sin(math.pi * x1 * x2) + 20.0 * (x3 - 0.5) ** 2
                  + 10.0 * x4 + 5.0 * x5 + shifts[int(crew[i])] + float(eps[i]))
    return X, crew, eps, ys


class TestGenerateSynthetic:
    def test_n_must_be_positive(self):
        with pytest.raises(ValueError):
            generate_synthetic(0, seed=1)

    def test_analytic_zero_of_the_formula(self):
        # x1=x2=0, x3=0.5, x4=x5=0, crew level 0, eps=0 -> y = 0
        _, _, _, ys = synthetic_oracle(1, seed=0)
        x = dict(x1=0.0, x2=0.0, x3=0.5, x4=0.0, x5=0.0)
        y = (10.0 * math.sin(math.pi * x["x1"] * x["x2"])
             + 20.0 * (x["x3"] - 0.5) ** 2 + 10.0 * x["x4"] + 5.0 * x["x5"] + 0.0)
        assert y == 0.0

    def test_matches_independent_oracle(self):
        ds = generate_synthetic(1000, seed=2024)
        _, _, _, ys = synthetic_oracle(1000, seed=2024)
        mean = sum(ys) / 1000
        var = sum((v - mean) ** 2 for v in ys) / 1000
        # frozen oracle values
        assert abs(mean - 22.1186793965566) < 1e-9
        assert abs(var - 63.43207201718961) < 1e-9
        assert abs(float(np.mean(ds.y)) - mean) < 1e-9
        assert abs(float(np.var(ds.y)) - var) < 1e-9

    def test_determinism(self):
        a = generate_synthetic(100, seed=5)
        b = generate_synthetic(100, seed=5)
        assert a.rows == b.rows and np.array_equal(a.y, b.y)

    def test_heteroscedastic_noise_grows_with_x1(self):
        X, _, eps, _ = synthetic_oracle(2000, seed=31)
        corr = np.corrcoef(X[:, 0], np.abs(eps))[0, 1]
        assert corr > 0.2

    def test_schema_round_trip(self, tmp_path):
        schema = synthetic_schema()
        path = tmp_path / "schema.json"
        path.write_text(__import__("json").dumps(schema.to_dict()))
        assert load_schema(path) == schema
