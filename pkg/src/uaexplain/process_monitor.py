"""Cases, per-activity duration forecasts, Gantt layout, and what-if runs.

A case is an ordered activity sequence; each activity carries a feature row
matching the model schema.  Forecasting an activity is: deterministic
prediction, T stochastic passes, summary, profile.  The activity at index k
draws its MC masks from ``mix(seed, k)``, so a what-if on the same activity
with the same seed and no overrides reproduces the stored forecast exactly.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np

from .dataset import Encoder, Schema, _check_value, validate_row
from .predictor import Predictor, forward, mc_sample
from .seeding import mix
from .uncertainty import COLORS, McSummary, ProfileConfig, assign_profile, summarize


class ProcessError(ValueError):
    pass


class BadFormat(ProcessError):
    pass


class UnknownCase(ProcessError):
    def __init__(self, case_id, detail=""):
        super().__init__(f"unknown case {case_id!r}" + (f": {detail}" if detail else ""))
        self.case_id = case_id


@dataclass(frozen=True)
class Activity:
    name: str
    features: dict


@dataclass(frozen=True)
class ProcessCase:
    case_id: str
    order_attrs: dict
    activities: tuple

    def __post_init__(self):
        object.__setattr__(self, "activities", tuple(self.activities))
        if not self.activities:
            raise BadFormat(f"case {self.case_id!r} has no activities")


@dataclass(frozen=True)
class ActivityForecast:
    activity_index: int
    activity_name: str
    predicted_duration: float  # minutes, deterministic forward pass
    summary: McSummary
    profile: str

    @property
    def color(self) -> str:
        return COLORS[self.profile]

    def to_dict(self) -> dict:
        return {
            "activity_index": self.activity_index,
            "activity_name": self.activity_name,
            "predicted_minutes": self.predicted_duration,
            "summary": self.summary.to_dict(),
            "profile": self.profile,
            "color": self.color,
        }


@dataclass(frozen=True)
class GanttEntry:
    activity: str
    start: float  # minutes from case start
    end: float
    color: str

    def to_dict(self) -> dict:
        return {"activity": self.activity, "start": self.start, "end": self.end,
                "color": self.color}


@dataclass(frozen=True)
class WhatIfRequest:
    case_id: str
    activity_index: int
    overrides: dict


class CaseStore:
    """Cases keyed by id; reads are lock-free over the immutable mapping."""

    def __init__(self, cases):
        self._cases = {}
        for case in cases:
            if case.case_id in self._cases:
                raise BadFormat(f"duplicate case_id {case.case_id!r}")
            self._cases[case.case_id] = case

    def __len__(self):
        return len(self._cases)

    def case_ids(self):
        return list(self._cases)

    def get(self, case_id: str) -> ProcessCase:
        try:
            return self._cases[case_id]
        except KeyError:
            raise UnknownCase(case_id) from None

    def state_hash(self) -> str:
        """Digest of all stored cases; used to assert what-if purity."""
        payload = json.dumps(
            [{"case_id": c.case_id, "order_attrs": c.order_attrs,
              "activities": [{"name": a.name, "features": a.features}
                             for a in c.activities]}
             for c in self._cases.values()],
            sort_keys=True)
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def load_cases(source, schema: Schema) -> CaseStore:
    """Parse the case file: {"cases": [{case_id, order_attrs, activities}]}.

    Every activity feature row is validated against the model schema.
    """
    if isinstance(source, (bytes, bytearray)):
        source = bytes(source).decode("utf-8")
    if not isinstance(source, (str, dict)):
        source = source.read()
        if isinstance(source, bytes):
            source = source.decode("utf-8")
    try:
        obj = json.loads(source) if isinstance(source, str) else source
    except json.JSONDecodeError as exc:
        raise BadFormat(f"case file is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict) or not isinstance(obj.get("cases"), list):
        raise BadFormat('case file must be an object with a "cases" list')

    cases = []
    for entry in obj["cases"]:
        try:
            case_id = entry["case_id"]
            raw_activities = entry["activities"]
        except (TypeError, KeyError) as exc:
            raise BadFormat(f"case entry missing {exc}") from exc
        if not isinstance(raw_activities, list) or not raw_activities:
            raise BadFormat(f"case {case_id!r} needs a nonempty activity list")
        activities = []
        for a in raw_activities:
            try:
                name, feats = a["name"], a["features"]
            except (TypeError, KeyError) as exc:
                raise BadFormat(f"case {case_id!r}: activity missing {exc}") from exc
            activities.append(Activity(name=name, features=validate_row(schema, feats)))
        cases.append(ProcessCase(case_id=case_id,
                                 order_attrs=dict(entry.get("order_attrs", {})),
                                 activities=activities))
    return CaseStore(cases)


def _forecast_activity(model: Predictor, encoder: Encoder, activity: Activity,
                       index: int, T: int, cfg: ProfileConfig,
                       activity_seed: int) -> ActivityForecast:
    x = encoder.encode_row(activity.features)
    pred = forward(model, x)
    samples = mc_sample(model, x, T, activity_seed)
    summary = summarize(samples)
    return ActivityForecast(
        activity_index=index,
        activity_name=activity.name,
        predicted_duration=pred,
        summary=summary,
        profile=assign_profile(summary.variance, cfg),
    )


def forecast_case(model: Predictor, case: ProcessCase, T: int,
                  cfg: ProfileConfig, seed: int):
    """Forecast every activity and lay the case out as a contiguous Gantt.

    Returns (forecasts, gantt_entries).  Activity k uses seed mix(seed, k).
    Negative predictions clamp to zero-length Gantt bars.
    """
    encoder = Encoder(model.schema, model.norm_stats)
    forecasts = [
        _forecast_activity(model, encoder, act, k, T, cfg, mix(seed, k))
        for k, act in enumerate(case.activities)
    ]
    gantt = []
    clock = 0.0
    for fc in forecasts:
        duration = max(fc.predicted_duration, 0.0)
        gantt.append(GanttEntry(activity=fc.activity_name, start=clock,
                                end=clock + duration, color=fc.color))
        clock = clock + duration
    return forecasts, gantt


_ACTIVITY_NAMES = ("cutting", "pressing", "beading", "forging", "edge_finishing")


def generate_cases(ds, n_cases: int, n_activities: int, seed: int) -> dict:
    """Sample case files from a dataset's feature rows (JSON-ready dict)."""
    rng = np.random.default_rng(seed)
    cases = []
    for c in range(n_cases):
        picks = rng.choice(ds.n, size=min(n_activities, ds.n), replace=False)
        activities = [
            {"name": _ACTIVITY_NAMES[j % len(_ACTIVITY_NAMES)],
             "features": dict(ds.rows[int(i)])}
            for j, i in enumerate(picks)
        ]
        cases.append({
            "case_id": f"case-{c + 1:03d}",
            "order_attrs": {
                "product_weight_kg": round(float(rng.uniform(5, 500)), 1),
                "product_width_mm": round(float(rng.uniform(100, 2000)), 0),
            },
            "activities": activities,
        })
    return {"cases": cases}


def what_if(model: Predictor, store: CaseStore, req: WhatIfRequest, T: int,
            cfg: ProfileConfig, seed: int) -> ActivityForecast:
    """Hypothetical forecast with feature overrides; the store is untouched.

    Uses the same per-activity seed as ``forecast_case``, so an empty
    override map reproduces the stored forecast bit for bit.
    """
    case = store.get(req.case_id)
    if not (0 <= req.activity_index < len(case.activities)):
        raise UnknownCase(req.case_id,
                          f"activity index {req.activity_index} out of range")
    activity = case.activities[req.activity_index]
    features = dict(activity.features)
    for name, value in req.overrides.items():
        spec = model.schema.feature(name)  # raises UnknownFeature
        features[name] = _check_value(spec, value, row_idx=0)
    encoder = Encoder(model.schema, model.norm_stats)
    modified = Activity(name=activity.name, features=features)
    return _forecast_activity(model, encoder, modified, req.activity_index, T,
                              cfg, mix(seed, req.activity_index))
