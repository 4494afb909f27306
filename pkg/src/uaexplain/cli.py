"""Command line entry points: gen-data, train, explain, serve.

Exit codes: 0 success, 2 usage errors and missing files, 3 unknown feature
(explain), 1 any other engine error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .dataset import (DatasetError, Encoder, UnknownFeature, build_grid,
                      dataset_to_csv, generate_synthetic, load_dataset,
                      load_schema)
from .explanations import compute_ice, compute_pdp
from .pipeline import profile_fit_variances, train_pipeline
from .predictor import (CorruptCheckpoint, PredictorError, TrainConfig,
                        load_predictor, save_predictor)
from .process_monitor import ProcessError, generate_cases
from .uncertainty import ProfileConfig, UncertaintyError, fit_profiles


def _fail(message: str, code: int) -> int:
    print(f"uaexplain: error: {message}", file=sys.stderr)
    return code


def _require_file(path: str) -> Path:
    p = Path(path)
    if not p.is_file():
        raise FileNotFoundError(f"file not found: {path}")
    return p


def _parse_triplet(text: str):
    parts = [float(x) for x in text.split(",")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected three comma-separated fractions")
    return tuple(parts)


def _parse_widths(text: str):
    text = text.strip()
    if not text:
        return ()
    return tuple(int(x) for x in text.split(","))


def cmd_gen_data(args) -> int:
    ds = generate_synthetic(args.n, args.seed)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "synthetic.csv").write_text(dataset_to_csv(ds), encoding="utf-8")
    (out / "schema.json").write_text(
        json.dumps(ds.schema.to_dict(), indent=2) + "\n", encoding="utf-8")
    cases = generate_cases(ds, args.cases, args.activities, args.seed)
    (out / "cases.json").write_text(json.dumps(cases, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {out / 'synthetic.csv'} ({ds.n} rows), schema.json, "
          f"cases.json ({args.cases} cases)")
    return 0


def cmd_train(args) -> int:
    schema = load_schema(_require_file(args.schema))
    ds = load_dataset(_require_file(args.csv), schema)
    cfg = TrainConfig(epochs=args.epochs, batch_size=args.batch_size,
                      learning_rate=args.lr, optimizer=args.optimizer,
                      seed=args.seed)
    result = train_pipeline(ds, ratios=args.ratios, hidden=args.hidden,
                            activation=args.activation,
                            dropout_rate=args.dropout, train_cfg=cfg,
                            T=args.t, seed=args.seed)
    Path(args.out).write_bytes(save_predictor(result.predictor))
    profiles_path = args.profiles_out or (str(Path(args.out).with_suffix("")) + ".profiles.json")
    Path(profiles_path).write_text(
        json.dumps(result.profiles.to_dict(), indent=2) + "\n", encoding="utf-8")
    if result.history:
        last = result.history[-1]
        print(f"trained {args.epochs} epochs: train mse {last['train_mse']:.3f}, "
              f"val mse {last['val_mse']:.3f}")
    print(f"checkpoint -> {args.out}")
    print(f"profiles   -> {profiles_path} "
          f"(t_low={result.profiles.t_low:.4f}, t_high={result.profiles.t_high:.4f})")
    return 0


def cmd_explain(args) -> int:
    model = load_predictor(_require_file(args.checkpoint).read_bytes())
    if model.schema is None:
        return _fail("checkpoint carries no schema; re-train with this tool", 1)
    ds = load_dataset(_require_file(args.csv), model.schema)
    if args.profiles:
        profiles = ProfileConfig.from_dict(
            json.loads(_require_file(args.profiles).read_text()))
    else:
        enc = Encoder(model.schema, model.norm_stats)
        variances = profile_fit_variances(model, enc.encode_rows(ds.rows),
                                          args.t, args.seed)
        profiles = fit_profiles(variances)

    grid = build_grid(ds, args.feature, args.max_grid_points)
    if args.kind == "ice":
        if args.instance_index is None:
            return _fail("--instance-index is required for kind=ice", 2)
        if not (0 <= args.instance_index < ds.n):
            return _fail(f"instance index {args.instance_index} out of range "
                         f"(dataset has {ds.n} rows)", 2)
        curve = compute_ice(model, ds.rows[args.instance_index], args.feature,
                            grid, args.t, profiles, args.seed,
                            instance_id=str(args.instance_index))
        payload = curve.to_dict()
    else:
        curve = compute_pdp(model, ds, args.feature, grid, args.t, profiles, args.seed)
        payload = curve.to_dict()
    Path(args.out).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    print(f"{args.kind} curve for {args.feature!r} ({len(payload['points'])} points) -> {args.out}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import ServiceConfig, create_app

    host = os.environ.get("UAEXPLAIN_HOST", args.host)
    port = int(os.environ.get("UAEXPLAIN_PORT", args.port))
    cfg = ServiceConfig(checkpoint=args.checkpoint, train_csv=args.csv,
                        cases=args.cases, profiles=args.profiles,
                        schema=args.schema, T=args.t,
                        max_grid_points=args.max_grid_points,
                        importance_repeats=args.importance_repeats,
                        seed=args.seed, host=host, port=port)
    app = create_app(cfg)
    uvicorn.run(app, host=cfg.host, port=cfg.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uaexplain",
        description="Uncertainty-aware explanations for activity duration models")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen-data", help="generate a synthetic dataset, schema and case file")
    g.add_argument("--n", type=int, default=2000)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--cases", type=int, default=5)
    g.add_argument("--activities", type=int, default=6)
    g.add_argument("--out-dir", required=True)
    g.set_defaults(func=cmd_gen_data)

    t = sub.add_parser("train", help="train a dropout network and fit uncertainty profiles")
    t.add_argument("--schema", required=True)
    t.add_argument("--csv", required=True)
    t.add_argument("--out", required=True, help="checkpoint JSON path")
    t.add_argument("--profiles-out", default=None)
    t.add_argument("--ratios", type=_parse_triplet, default=(0.6, 0.2, 0.2))
    t.add_argument("--hidden", type=_parse_widths, default=(64, 64))
    t.add_argument("--activation", choices=("relu", "tanh"), default="relu")
    t.add_argument("--dropout", type=float, default=0.1)
    t.add_argument("--epochs", type=int, default=200)
    t.add_argument("--batch-size", type=int, default=32)
    t.add_argument("--lr", type=float, default=1e-3)
    t.add_argument("--optimizer", choices=("adam", "sgd"), default="adam")
    t.add_argument("--t", type=int, default=50, help="stochastic passes for profile fitting")
    t.add_argument("--seed", type=int, default=0)
    t.set_defaults(func=cmd_train)

    e = sub.add_parser("explain", help="write an ICE or PDP curve as JSON")
    e.add_argument("--checkpoint", required=True)
    e.add_argument("--csv", required=True)
    e.add_argument("--feature", required=True)
    e.add_argument("--kind", choices=("pdp", "ice"), required=True)
    e.add_argument("--instance-index", type=int, default=None)
    e.add_argument("--out", required=True)
    e.add_argument("--profiles", default=None)
    e.add_argument("--t", type=int, default=50)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--max-grid-points", type=int, default=50)
    e.set_defaults(func=cmd_explain)

    s = sub.add_parser("serve", help="run the HTTP/JSON service")
    s.add_argument("--checkpoint", required=True)
    s.add_argument("--csv", required=True)
    s.add_argument("--cases", required=True)
    s.add_argument("--profiles", default=None)
    s.add_argument("--schema", default=None)
    s.add_argument("--host", default="127.0.0.1")
    s.add_argument("--port", type=int, default=8000)
    s.add_argument("--t", type=int, default=50)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-grid-points", type=int, default=50)
    s.add_argument("--importance-repeats", type=int, default=5)
    s.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        return _fail(str(exc), 2)
    except UnknownFeature as exc:
        return _fail(str(exc), 3)
    except (DatasetError, PredictorError, UncertaintyError, ProcessError,
            CorruptCheckpoint, ValueError) as exc:
        return _fail(str(exc), 1)


if __name__ == "__main__":
    sys.exit(main())
