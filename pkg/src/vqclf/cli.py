"""Command-line interface.

Subcommands:

* ``gen-data``  write a synthetic labeled CSV
* ``train``     fit preprocessing + classifier from a config file
* ``evaluate``  score a test CSV with a trained model, write ROC/metrics
* ``roc``       combine scores files into a pooled ROC curve + metrics

Every error exits non-zero after printing a single machine-parsable line
``error[<category>]: <message>`` on stderr.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

from .config import parse_config, validate_config
from .errors import ConfigError, VqclfError
from .runner import run_evaluate, run_gen_data, run_roc, run_train


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vqclf",
        description="Variational quantum classifier: train, evaluate, and "
        "summarize binary classifiers built on simulated quantum circuits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen-data", help="write a synthetic labeled CSV")
    gen.add_argument("--events", type=int, required=True, help="total event count")
    gen.add_argument("--features", type=int, required=True, help="feature count")
    gen.add_argument("--separation", type=float, default=1.0,
                     help="distance between class means along every axis")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True, help="output CSV path")

    tr = sub.add_parser("train", help="train a classifier from a config file")
    tr.add_argument("--config", required=True)
    tr.add_argument("--seed", type=int, default=None, help="override config seed")
    tr.add_argument("--out", required=True, help="artifact directory")

    ev = sub.add_parser("evaluate", help="score a test CSV with a trained model")
    ev.add_argument("--config", required=True)
    ev.add_argument("--model", default=None,
                    help="model artifact directory (default: config model_dir)")
    ev.add_argument("--test", default=None, help="override config test_csv")
    ev.add_argument("--seed", type=int, default=None, help="override config seed")
    ev.add_argument("--out", required=True, help="output directory")

    rc = sub.add_parser("roc", help="combine scores files into one ROC curve")
    rc.add_argument("scores", nargs="+", help="scores.csv files from evaluate")
    rc.add_argument("--bootstrap", type=int, default=200,
                    help="bootstrap resample count")
    rc.add_argument("--seed", type=int, default=0)
    rc.add_argument("--out", required=True, help="output directory")
    return parser


def _load_config(args):
    cfg = parse_config(args.config)
    if getattr(args, "seed", None) is not None:
        cfg = validate_config(dataclasses.replace(cfg, seed=args.seed))
    return cfg


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "gen-data":
            path = run_gen_data(args.events, args.features, args.separation,
                                args.seed, args.out)
            print(f"wrote {path}")
        elif args.command == "train":
            out = run_train(_load_config(args), args.out)
            print(f"trained into {out}")
        elif args.command == "evaluate":
            cfg = _load_config(args)
            model_dir = args.model or cfg.model_dir
            if model_dir is None:
                raise ConfigError("no model directory: pass --model or set model_dir")
            metrics = run_evaluate(cfg, model_dir, args.out, test_csv=args.test)
            for key, value in metrics.items():
                print(f"{key}: {value}")
        else:  # roc
            metrics = run_roc(args.scores, args.out, args.bootstrap, args.seed)
            for key, value in metrics.items():
                print(f"{key}: {value}")
    except VqclfError as exc:
        print(f"error[{exc.category}]: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error[io]: {exc}", file=sys.stderr)
        return 1
    except (ValueError, IndexError) as exc:
        print(f"error[argument]: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
