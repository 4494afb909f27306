"""HTTP/JSON service exposing cases, uncertainty, explanations, and what-if.

Every resource derives its stochastic seed from the server seed plus the
request parameters (``stable_seed``), so identical requests always return
identical bodies and the dashboard never sees flickering uncertainty.
Expensive explanation payloads are cached behind a lock; all state is
immutable after startup.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .dataset import (Dataset, Encoder, NonNumericValue, UnknownFeature,
                      UnknownLevel, build_grid, load_dataset, load_schema)
from .explanations import compute_ice, compute_pdp, permutation_importance
from .pipeline import profile_fit_variances
from .predictor import Predictor, load_predictor, mc_sample
from .process_monitor import (CaseStore, ProcessCase, UnknownCase,
                              WhatIfRequest, forecast_case, load_cases,
                              what_if)
from .seeding import mix, stable_seed
from .uncertainty import (LABELS, ProfileConfig, assign_profile, describe,
                          fit_profiles, summarize)

_RANK = {label: i for i, label in enumerate(LABELS)}


@dataclass
class ServiceConfig:
    checkpoint: str
    train_csv: str
    cases: str
    profiles: str | None = None
    schema: str | None = None
    T: int = 50
    max_grid_points: int = 50
    importance_repeats: int = 5
    seed: int = 0
    host: str = "127.0.0.1"
    port: int = 8000

    def __post_init__(self):
        if self.T < 1:
            raise ValueError("T must be >= 1")
        if self.max_grid_points < 2:
            raise ValueError("max_grid_points must be >= 2")


class ApiError(Exception):
    """Error surfaced to clients as {code, message} with an HTTP status."""

    def __init__(self, status: int, code: str, message: str):
        assert status in (400, 404, 422, 500)
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


class WhatIfBody(BaseModel):
    case_id: str
    activity: int
    overrides: dict = {}
    allow_list: list | None = None


class AppState:
    """Artifacts loaded once at startup, plus per-resource caches."""

    def __init__(self, cfg: ServiceConfig):
        self.cfg = cfg
        for path in (cfg.checkpoint, cfg.train_csv, cfg.cases):
            if not Path(path).is_file():
                raise FileNotFoundError(f"required file {path} is missing")
        self.predictor: Predictor = load_predictor(Path(cfg.checkpoint).read_bytes())
        schema = load_schema(cfg.schema) if cfg.schema else self.predictor.schema
        if schema is None:
            raise ValueError("no schema: pass --schema or use a checkpoint that embeds one")
        self.schema = schema
        if self.predictor.schema is None:
            self.predictor.schema = schema
        self.train: Dataset = load_dataset(cfg.train_csv, schema)
        if cfg.profiles:
            self.profiles = ProfileConfig.from_dict(
                json.loads(Path(cfg.profiles).read_text()))
        else:
            enc = Encoder(schema, self.predictor.norm_stats)
            variances = profile_fit_variances(
                self.predictor, enc.encode_rows(self.train.rows), cfg.T, cfg.seed)
            self.profiles = fit_profiles(variances)
        self.store: CaseStore = load_cases(Path(cfg.cases).read_bytes(), schema)
        self.encoder = Encoder(schema, self.predictor.norm_stats)
        self._lock = threading.Lock()
        self._cache: dict = {}

    def cached(self, key, compute):
        with self._lock:
            if key not in self._cache:
                self._cache[key] = compute()
            return self._cache[key]

    # per-resource seeds
    def case_seed(self, case_id: str) -> int:
        return mix(self.cfg.seed, stable_seed("case", case_id))

    def case_payload(self, case_id: str) -> dict:
        def build():
            case = self.store.get(case_id)
            forecasts, gantt = forecast_case(
                self.predictor, case, self.cfg.T, self.profiles, self.case_seed(case_id))
            total = gantt[-1].end if gantt else 0.0
            worst = max((f.profile for f in forecasts), key=_RANK.get)
            return {
                "case_id": case.case_id,
                "order_attrs": case.order_attrs,
                "activities": [
                    {"index": i, "name": a.name, "features": a.features}
                    for i, a in enumerate(case.activities)
                ],
                "forecasts": [f.to_dict() for f in forecasts],
                "gantt": [g.to_dict() for g in gantt],
                "total_predicted_minutes": total,
                "worst_profile": worst,
            }
        return self.cached(("case", case_id), build)


def _activity_or_404(state: AppState, case: ProcessCase, index: int):
    if not (0 <= index < len(case.activities)):
        raise ApiError(404, "unknown_activity",
                       f"case {case.case_id!r} has no activity index {index}")
    return case.activities[index]


def create_app(cfg: ServiceConfig) -> FastAPI:
    state = AppState(cfg)
    app = FastAPI(title="uaexplain service", docs_url=None, redoc_url=None)
    app.state.engine = state
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])

    @app.exception_handler(ApiError)
    async def _api_error(_req: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status,
                            content={"code": exc.code, "message": exc.message})

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_req: Request, exc: RequestValidationError):
        return JSONResponse(status_code=422,
                            content={"code": "validation_error", "message": str(exc.errors()[:1])})

    @app.exception_handler(Exception)
    async def _internal_error(_req: Request, exc: Exception):
        return JSONResponse(status_code=500,
                            content={"code": "internal_error",
                                     "message": "unexpected server error"})

    def get_case(case_id: str) -> ProcessCase:
        try:
            return state.store.get(case_id)
        except UnknownCase as exc:
            raise ApiError(404, "unknown_case", str(exc)) from exc

    @app.get("/api/cases")
    def list_cases():
        rows = []
        for case_id in state.store.case_ids():
            payload = state.case_payload(case_id)
            rows.append({
                "case_id": case_id,
                "n_activities": len(payload["activities"]),
                "total_predicted_minutes": payload["total_predicted_minutes"],
                "worst_profile": payload["worst_profile"],
            })
        return {"cases": rows}

    @app.get("/api/cases/{case_id}")
    def case_detail(case_id: str):
        get_case(case_id)
        return state.case_payload(case_id)

    @app.get("/api/cases/{case_id}/activities/{index}/uncertainty")
    def activity_uncertainty(case_id: str, index: int):
        case = get_case(case_id)
        activity = _activity_or_404(state, case, index)

        def build():
            x = state.encoder.encode_row(activity.features)
            samples = mc_sample(state.predictor, x, state.cfg.T,
                                mix(state.case_seed(case_id), index))
            summary = summarize(samples)
            profile = assign_profile(summary.variance, state.profiles)
            return {
                "case_id": case_id,
                "activity_index": index,
                "activity_name": activity.name,
                "summary": summary.to_dict(),
                "profile": profile,
                "color": state.profiles.colors[profile],
                "text": describe(summary, profile, state.profiles),
                "samples": [float(v) for v in samples.values],
            }
        return state.cached(("uncertainty", case_id, index), build)

    @app.get("/api/explain/ice")
    def explain_ice(case: str, activity: int, feature: str):
        case_obj = get_case(case)
        act = _activity_or_404(state, case_obj, activity)
        try:
            grid = build_grid(state.train, feature, state.cfg.max_grid_points)
            seed = mix(state.cfg.seed, stable_seed("ice", case, activity, feature))

            def build():
                curve = compute_ice(state.predictor, act.features, feature, grid,
                                    state.cfg.T, state.profiles, seed,
                                    instance_id=f"{case}/{activity}")
                return curve.to_dict()
            return state.cached(("ice", case, activity, feature), build)
        except UnknownFeature as exc:
            raise ApiError(404, "unknown_feature", str(exc)) from exc

    @app.get("/api/explain/pdp")
    def explain_pdp(feature: str):
        try:
            grid = build_grid(state.train, feature, state.cfg.max_grid_points)
            seed = mix(state.cfg.seed, stable_seed("pdp", feature))

            def build():
                curve = compute_pdp(state.predictor, state.train, feature, grid,
                                    state.cfg.T, state.profiles, seed)
                return curve.to_dict()
            return state.cached(("pdp", feature), build)
        except UnknownFeature as exc:
            raise ApiError(404, "unknown_feature", str(exc)) from exc

    @app.get("/api/model/importance")
    def model_importance():
        def build():
            report = permutation_importance(
                state.predictor, state.train, state.cfg.importance_repeats,
                mix(state.cfg.seed, stable_seed("importance")))
            return report.to_dict()
        return state.cached(("importance",), build)

    @app.post("/api/whatif")
    def whatif(body: WhatIfBody):
        case = get_case(body.case_id)
        _activity_or_404(state, case, body.activity)
        if body.allow_list is not None:
            allowed = {str(v) for v in body.allow_list}
            for name, value in body.overrides.items():
                if (state.schema.has_feature(name)
                        and state.schema.feature(name).kind == "categorical"
                        and str(value) not in allowed):
                    raise ApiError(422, "override_not_allowed",
                                   f"override {name}={value!r} is outside the allow list")
        payload = state.case_payload(body.case_id)
        baseline = payload["forecasts"][body.activity]
        req = WhatIfRequest(case_id=body.case_id, activity_index=body.activity,
                            overrides=dict(body.overrides))
        try:
            hypo = what_if(state.predictor, state.store, req, state.cfg.T,
                           state.profiles, state.case_seed(body.case_id))
        except UnknownFeature as exc:
            raise ApiError(404, "unknown_feature", str(exc)) from exc
        except UnknownLevel as exc:
            raise ApiError(422, "unknown_level", str(exc)) from exc
        except NonNumericValue as exc:
            raise ApiError(422, "bad_value", str(exc)) from exc
        hypo_dict = hypo.to_dict()
        return {
            "baseline": baseline,
            "hypothetical": hypo_dict,
            "delta": {
                "predicted_minutes": hypo_dict["predicted_minutes"] - baseline["predicted_minutes"],
                "variance": hypo_dict["summary"]["variance"] - baseline["summary"]["variance"],
                "profile_changed": hypo_dict["profile"] != baseline["profile"],
            },
        }

    return app
