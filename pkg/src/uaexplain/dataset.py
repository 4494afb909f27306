"""Tabular datasets: schema, CSV loading, splits, encoding, grids, synthesis.

A dataset is a list of raw feature rows (dict of feature name -> value) plus
a numeric target in minutes.  Numeric features are standardized with
training-split statistics; categoricals are one-hot encoded in level order.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .seeding import mix

Row = dict


class DatasetError(ValueError):
    """Base class for schema and data validation failures."""


class MissingColumn(DatasetError):
    def __init__(self, name):
        super().__init__(f"required column {name!r} is missing from the CSV header")
        self.name = name


class NonNumericValue(DatasetError):
    """A numeric column holds a value that does not parse to a finite float."""

    def __init__(self, row, column, value=None):
        super().__init__(f"row {row}, column {column!r}: not a finite number ({value!r})")
        self.row = row
        self.column = column


class UnknownLevel(DatasetError):
    def __init__(self, row, column, value):
        super().__init__(f"row {row}, column {column!r}: level {value!r} is not in the schema")
        self.row = row
        self.column = column
        self.value = value


class BadRatios(DatasetError):
    pass


class UnknownFeature(DatasetError):
    def __init__(self, name):
        super().__init__(f"unknown feature {name!r}")
        self.name = name


@dataclass(frozen=True)
class FeatureSpec:
    """One predictor variable: numeric, or categorical with ordered levels."""

    name: str
    kind: str  # "numeric" | "categorical"
    levels: tuple = ()
    unit: str | None = None

    def __post_init__(self):
        if self.kind not in ("numeric", "categorical"):
            raise DatasetError(f"feature {self.name!r}: bad kind {self.kind!r}")
        object.__setattr__(self, "levels", tuple(self.levels))
        if self.kind == "categorical":
            if len(self.levels) < 1:
                raise DatasetError(f"categorical feature {self.name!r} needs at least one level")
            if len(set(self.levels)) != len(self.levels):
                raise DatasetError(f"categorical feature {self.name!r} has duplicate levels")
        elif self.levels:
            raise DatasetError(f"numeric feature {self.name!r} must not declare levels")


@dataclass(frozen=True)
class Schema:
    """Ordered feature specs plus the (numeric) target column name."""

    features: tuple
    target: str

    def __post_init__(self):
        object.__setattr__(self, "features", tuple(self.features))
        if not self.features:
            raise DatasetError("schema needs at least one feature")
        names = [f.name for f in self.features]
        if len(set(names)) != len(names):
            raise DatasetError("duplicate feature names in schema")
        if self.target in names:
            raise DatasetError(f"target {self.target!r} collides with a feature name")

    @property
    def feature_names(self):
        return [f.name for f in self.features]

    def feature(self, name: str) -> FeatureSpec:
        for f in self.features:
            if f.name == name:
                return f
        raise UnknownFeature(name)

    def has_feature(self, name: str) -> bool:
        return any(f.name == name for f in self.features)

    def to_dict(self) -> dict:
        feats = []
        for f in self.features:
            d = {"name": f.name, "kind": f.kind}
            if f.kind == "categorical":
                d["levels"] = list(f.levels)
            if f.unit is not None:
                d["unit"] = f.unit
            feats.append(d)
        return {"target": self.target, "features": feats}

    @classmethod
    def from_dict(cls, obj: dict) -> "Schema":
        try:
            feats = tuple(
                FeatureSpec(
                    name=f["name"],
                    kind=f["kind"],
                    levels=tuple(f.get("levels", ())),
                    unit=f.get("unit"),
                )
                for f in obj["features"]
            )
            return cls(features=feats, target=obj["target"])
        except (KeyError, TypeError) as exc:
            raise DatasetError(f"malformed schema object: {exc}") from exc


def load_schema(source) -> Schema:
    """Parse a schema JSON file: {"target": ..., "features": [...]}."""
    if isinstance(source, (bytes, bytearray)):
        source = source.decode("utf-8")
    if isinstance(source, str) and source.lstrip().startswith("{"):
        text = source
    else:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    return Schema.from_dict(json.loads(text))


@dataclass(frozen=True)
class Dataset:
    schema: Schema
    rows: tuple  # tuple of feature dicts
    y: np.ndarray  # target values, minutes

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        object.__setattr__(self, "y", np.asarray(self.y, dtype=np.float64))
        if len(self.rows) != self.y.shape[0]:
            raise DatasetError("row count and target count differ")

    @property
    def n(self) -> int:
        return len(self.rows)

    def feature_column(self, name: str) -> list:
        self.schema.feature(name)
        return [r[name] for r in self.rows]

    def subset(self, indices: Sequence[int]) -> "Dataset":
        idx = list(indices)
        return Dataset(self.schema, [self.rows[i] for i in idx], self.y[idx])


@dataclass(frozen=True)
class SplitDataset:
    train: Dataset
    val: Dataset
    test: Dataset
    seed: int


@dataclass(frozen=True)
class Grid:
    """Evaluation points for one feature; quantile-binned when downsampled."""

    feature: str
    values: tuple
    binned: bool = False

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if len(set(self.values)) != len(self.values):
            raise DatasetError(f"grid for {self.feature!r} has duplicate values")


def _check_value(spec: FeatureSpec, value, row_idx):
    """Validate and normalize one raw value against its feature spec."""
    if spec.kind == "numeric":
        try:
            v = float(value)
        except (TypeError, ValueError):
            raise NonNumericValue(row_idx, spec.name, value) from None
        if not math.isfinite(v):
            raise NonNumericValue(row_idx, spec.name, value)
        return v
    v = str(value)
    if v not in spec.levels:
        raise UnknownLevel(row_idx, spec.name, v)
    return v


def validate_row(schema: Schema, row: Row, row_idx=0) -> Row:
    """Return a clean copy of ``row`` with values coerced per the schema."""
    clean = {}
    for spec in schema.features:
        if spec.name not in row:
            raise MissingColumn(spec.name)
        clean[spec.name] = _check_value(spec, row[spec.name], row_idx)
    return clean


def load_dataset(csv_source, schema: Schema) -> Dataset:
    """Load a comma-separated, header-first CSV against ``schema``.

    ``csv_source`` may be bytes, a readable stream, or a filesystem path.
    Extraneous columns are ignored; rows keep file order.
    """
    if isinstance(csv_source, (bytes, bytearray)):
        stream = io.StringIO(bytes(csv_source).decode("utf-8"))
    elif hasattr(csv_source, "read"):
        data = csv_source.read()
        stream = io.StringIO(data.decode("utf-8") if isinstance(data, bytes) else data)
    else:
        with open(csv_source, "r", encoding="utf-8", newline="") as fh:
            stream = io.StringIO(fh.read())

    reader = csv.DictReader(stream)
    header = reader.fieldnames or []
    for name in schema.feature_names + [schema.target]:
        if name not in header:
            raise MissingColumn(name)

    rows, targets = [], []
    for i, record in enumerate(reader):
        rows.append(validate_row(schema, record, row_idx=i))
        try:
            t = float(record[schema.target])
        except (TypeError, ValueError):
            raise NonNumericValue(i, schema.target, record[schema.target]) from None
        if not math.isfinite(t):
            raise NonNumericValue(i, schema.target, record[schema.target])
        targets.append(t)
    return Dataset(schema, rows, np.array(targets, dtype=np.float64))


def split_dataset(ds: Dataset, ratios, seed: int) -> SplitDataset:
    """Deterministic shuffled split; sizes floor(n*r_train), floor(n*r_val), rest."""
    r = tuple(float(x) for x in ratios)
    if len(r) != 3 or any(x <= 0 for x in r) or abs(sum(r) - 1.0) > 1e-9:
        raise BadRatios(f"ratios must be three positive fractions summing to 1, got {ratios}")
    perm = np.random.default_rng(seed).permutation(ds.n)
    n_train = int(math.floor(ds.n * r[0]))
    n_val = int(math.floor(ds.n * r[1]))
    idx_train = perm[:n_train]
    idx_val = perm[n_train:n_train + n_val]
    idx_test = perm[n_train + n_val:]
    return SplitDataset(
        train=ds.subset(idx_train),
        val=ds.subset(idx_val),
        test=ds.subset(idx_test),
        seed=seed,
    )


@dataclass(frozen=True)
class NormStats:
    """Per-numeric-feature mean/std computed on the training split only."""

    means: dict
    stds: dict

    def to_dict(self) -> dict:
        names = sorted(self.means)
        return {"means": {k: self.means[k] for k in names},
                "stds": {k: self.stds[k] for k in names}}

    @classmethod
    def from_dict(cls, obj: dict) -> "NormStats":
        return cls(means=dict(obj["means"]), stds=dict(obj["stds"]))


def compute_norm_stats(train: Dataset) -> NormStats:
    means, stds = {}, {}
    for spec in train.schema.features:
        if spec.kind != "numeric":
            continue
        col = np.array([r[spec.name] for r in train.rows], dtype=np.float64)
        means[spec.name] = float(np.mean(col)) if col.size else 0.0
        stds[spec.name] = float(np.std(col)) if col.size else 0.0
    return NormStats(means=means, stds=stds)


def encode_row(schema: Schema, row: Row, norm: NormStats) -> np.ndarray:
    """Encode one raw row: standardized numerics, one-hot categoricals.

    Features contribute in schema order.  Zero-variance numeric columns
    encode to 0.0 for every row.
    """
    parts = []
    for spec in schema.features:
        v = _check_value(spec, row[spec.name], row_idx=0)
        if spec.kind == "numeric":
            std = norm.stds[spec.name]
            parts.append(0.0 if std == 0.0 else (v - norm.means[spec.name]) / std)
        else:
            block = [0.0] * len(spec.levels)
            block[spec.levels.index(v)] = 1.0
            parts.extend(block)
    return np.array(parts, dtype=np.float64)


class Encoder:
    """Schema + norm stats bundled with the encoded column layout.

    ``set_feature`` rewrites a single feature's block on an already encoded
    matrix; the block values are computed with the same scalar arithmetic as
    ``encode_row``, so the result is bit-identical to re-encoding every row.
    """

    def __init__(self, schema: Schema, norm: NormStats):
        self.schema = schema
        self.norm = norm
        self.offsets = {}
        self.widths = {}
        off = 0
        for spec in schema.features:
            w = 1 if spec.kind == "numeric" else len(spec.levels)
            self.offsets[spec.name] = off
            self.widths[spec.name] = w
            off += w
        self.dim = off

    def encode_row(self, row: Row) -> np.ndarray:
        return encode_row(self.schema, row, self.norm)

    def encode_rows(self, rows: Iterable[Row]) -> np.ndarray:
        rows = list(rows)
        if not rows:
            return np.zeros((0, self.dim), dtype=np.float64)
        return np.stack([self.encode_row(r) for r in rows])

    def encode_value(self, feature: str, value) -> np.ndarray:
        """The encoded block a single feature value occupies."""
        spec = self.schema.feature(feature)
        v = _check_value(spec, value, row_idx=0)
        if spec.kind == "numeric":
            std = self.norm.stds[feature]
            enc = 0.0 if std == 0.0 else (v - self.norm.means[feature]) / std
            return np.array([enc], dtype=np.float64)
        block = np.zeros(len(spec.levels), dtype=np.float64)
        block[spec.levels.index(v)] = 1.0
        return block

    def set_feature(self, X: np.ndarray, feature: str, value) -> np.ndarray:
        """Copy of encoded matrix ``X`` with ``feature`` forced to ``value``."""
        block = self.encode_value(feature, value)
        off = self.offsets[feature]
        out = X.copy()
        out[:, off:off + block.size] = block
        return out


def build_grid(train: Dataset, feature: str, max_points: int) -> Grid:
    """Evaluation grid from observed training values.

    Categorical: every observed level in schema level order.  Numeric: the
    sorted unique values, or ``max_points`` interpolated quantiles when there
    are more unique values than that (duplicate quantiles collapse).
    """
    if max_points < 2:
        raise DatasetError("max_points must be >= 2")
    spec = train.schema.feature(feature)
    col = [r[feature] for r in train.rows]
    if spec.kind == "categorical":
        observed = set(col)
        return Grid(feature, tuple(l for l in spec.levels if l in observed), binned=False)
    values = np.asarray(col, dtype=np.float64)
    uniques = np.unique(values)
    if uniques.size <= max_points:
        return Grid(feature, tuple(float(v) for v in uniques), binned=False)
    qs = np.percentile(values, np.linspace(0.0, 100.0, max_points))
    return Grid(feature, tuple(float(v) for v in np.unique(qs)), binned=True)


CREW_LEVELS = ("a", "b", "c", "d")
CREW_SHIFTS = {"a": 0.0, "b": 5.0, "c": 10.0, "d": 15.0}


def synthetic_schema() -> Schema:
    feats = tuple(FeatureSpec(f"x{i}", "numeric") for i in range(1, 6))
    feats = feats + (FeatureSpec("crew", "categorical", levels=CREW_LEVELS),)
    return Schema(features=feats, target="duration_min")


def generate_synthetic(n: int, seed: int) -> Dataset:
    """Friedman-style activity durations with noise that grows with x1.

    Draw order (all from one ``default_rng(seed)``): the (n, 5) uniform
    feature matrix, then n crew indices, then n standard normals.
    y = 10*sin(pi*x1*x2) + 20*(x3-0.5)**2 + 10*x4 + 5*x5 + crew_shift
    + eps, with eps scaled by (1 + 4*x1).
    """
    if n < 1:
        raise DatasetError("n must be >= 1")
    rng = np.random.default_rng(seed)
    X = rng.random((n, 5))
    crew_idx = rng.integers(0, len(CREW_LEVELS), size=n)
    eps = rng.standard_normal(n) * (1.0 + 4.0 * X[:, 0])

    shifts = np.array([CREW_SHIFTS[l] for l in CREW_LEVELS])
    y = (10.0 * np.sin(np.pi * X[:, 0] * X[:, 1])
         + 20.0 * (X[:, 2] - 0.5) ** 2
         + 10.0 * X[:, 3]
         + 5.0 * X[:, 4]
         + shifts[crew_idx]
         + eps)

    schema = synthetic_schema()
    rows = []
    for i in range(n):
        row = {f"x{j + 1}": float(X[i, j]) for j in range(5)}
        row["crew"] = CREW_LEVELS[int(crew_idx[i])]
        rows.append(row)
    return Dataset(schema, rows, y)


def dataset_to_csv(ds: Dataset) -> str:
    """Render a dataset back to CSV text (used by the data generator CLI)."""
    buf = io.StringIO()
    names = ds.schema.feature_names + [ds.schema.target]
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(names)
    for row, t in zip(ds.rows, ds.y):
        writer.writerow([repr(row[n]) if isinstance(row[n], float) else row[n]
                         for n in ds.schema.feature_names] + [repr(float(t))])
    return buf.getvalue()
