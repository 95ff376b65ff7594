"""Batch pipeline: training and evaluation runs with reproducible
artifacts.

A *run artifact* directory holds ``manifest.txt`` (a complete resolved
config, replayable via ``--config``), the trained ``model.txt`` and
``preprocess.txt``, and ``loss_history.csv``. Evaluation directories hold
``scores.csv``, ``roc_points.csv``, ``metrics.txt``, and their own
manifest. Multi-dataset runs place one ``run_XX`` directory per dataset
plus a ``combined`` directory with the pooled ROC and the per-dataset
AUC mean/std.
"""

from __future__ import annotations

import dataclasses
from pathlib import Path

import numpy as np

from . import persist
from .circuits import CircuitConfig
from .classifier import ClassifierModel, EvalMode, _derived_seed, score_events, train
from .config import RunConfig, parse_config, serialize_config, validate_config
from .dataio import EventTable, gen_synthetic, ingest_csv, split_datasets, write_csv
from .errors import ConfigError, ParseError, ValidationError
from .metrics import ScoredSet, auc, bootstrap_auc, combine_scored, roc_curve
from .noise import ReadoutNoiseModel
from .optimizer import SpsaConfig
from .preprocess import preprocess_apply, preprocess_fit

# runner-level seed sub-streams (classifier uses 0..3)
_STREAM_RUN = 10
_STREAM_BOOTSTRAP = 11


def circuit_config(cfg: RunConfig) -> CircuitConfig:
    return CircuitConfig(
        n_qubits=cfg.n_qubits,
        feature_map_depth=cfg.feature_map_depth,
        var_depth=cfg.var_depth,
        feature_gain=cfg.feature_gain,
        feature_offset=cfg.feature_offset,
    )


def spsa_config(cfg: RunConfig) -> SpsaConfig:
    return SpsaConfig(
        max_iter=cfg.spsa_max_iter,
        a=cfg.spsa_a,
        c=cfg.spsa_c,
        alpha=cfg.spsa_alpha,
        gamma=cfg.spsa_gamma,
        stability_A=cfg.spsa_stability,
    )


def eval_mode(cfg: RunConfig) -> EvalMode:
    noise = None
    if cfg.noise_p01 is not None:
        measured = tuple(range(0, cfg.n_qubits, 2))
        p01 = cfg.noise_p01 if len(cfg.noise_p01) > 1 else cfg.noise_p01 * len(measured)
        p10 = cfg.noise_p10 if len(cfg.noise_p10) > 1 else cfg.noise_p10 * len(measured)
        noise = ReadoutNoiseModel(
            {q: (p01[i], p10[i]) for i, q in enumerate(measured)}
        )
    if cfg.eval_mode == "exact":
        return EvalMode.exact()
    return EvalMode.sampled(cfg.shots, noise=noise, mitigation=cfg.mitigation)


def run_gen_data(
    n_events: int, d: int, separation: float, seed: int, out_path: str | Path
) -> Path:
    """Write a synthetic event CSV; deterministic per seed."""
    table = gen_synthetic(n_events, d, separation, seed)
    out_path = Path(out_path)
    write_csv(table, out_path)
    return out_path


def _resolve_pairs(cfg: RunConfig, out_dir: Path) -> list[tuple[str, str, int]]:
    """(train_csv, test_csv, seed) triples for every dataset of the run."""
    if cfg.train_csv is not None:
        return [(cfg.train_csv, cfg.test_csv, cfg.seed)]

    if cfg.batch_manifest is not None:
        pairs = []
        manifest = Path(cfg.batch_manifest)
        if not manifest.exists():
            raise ConfigError(f"batch manifest not found: {manifest}")
        for lineno, line in enumerate(manifest.read_text().splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = [p.strip() for p in line.split(",")]
            if len(parts) != 2:
                raise ParseError("expected 'train_csv,test_csv'", line=lineno)
            pairs.append(tuple(parts))
        if not pairs:
            raise ConfigError(f"batch manifest {manifest} lists no dataset pairs")
        return [
            (tr, te, _derived_seed(cfg.seed, _STREAM_RUN, i))
            for i, (tr, te) in enumerate(pairs)
        ]

    if cfg.data_csv is not None:
        table = ingest_csv(cfg.data_csv)
        splits = split_datasets(
            table, cfg.n_datasets, cfg.train_events, cfg.test_events, cfg.seed
        )
        ds_dir = out_dir / "datasets"
        pairs = []
        for i, (train_tbl, test_tbl) in enumerate(splits):
            train_path = ds_dir / f"ds{i:02d}_train.csv"
            test_path = ds_dir / f"ds{i:02d}_test.csv"
            write_csv(train_tbl, train_path)
            write_csv(test_tbl, test_path)
            pairs.append(
                (str(train_path), str(test_path),
                 _derived_seed(cfg.seed, _STREAM_RUN, i))
            )
        (ds_dir / "manifest.csv").write_text(
            "".join(f"{tr},{te}\n" for tr, te, _ in pairs)
        )
        return pairs

    raise ConfigError("training needs one of train_csv, data_csv, batch_manifest")


def _single_run_config(cfg: RunConfig, train_csv: str, test_csv: str | None,
                       seed: int) -> RunConfig:
    single = dataclasses.replace(
        cfg,
        train_csv=train_csv,
        test_csv=test_csv,
        data_csv=None,
        batch_manifest=None,
        n_datasets=1,
        train_events=None,
        test_events=None,
        seed=seed,
        out_dir=None,
    )
    return validate_config(single)


def _train_one(cfg: RunConfig, out_dir: Path) -> Path:
    """Train a single dataset into ``out_dir`` and write its artifacts."""
    table = ingest_csv(cfg.train_csv)
    pre = preprocess_fit(table.features, cfg.pca_dim, standardize=cfg.standardize)
    angles = preprocess_apply(pre, table.features)
    model, history = train(
        angles,
        table.labels,
        circuit_config(cfg),
        spsa_config(cfg),
        eval_mode(cfg),
        seed=cfg.seed,
    )
    model = ClassifierModel(model.config, model.theta, threshold=cfg.threshold)

    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / persist.MANIFEST_FILE).write_text(serialize_config(cfg))
    persist.save_preprocess(pre, out_dir / persist.PREPROCESS_FILE)
    persist.save_model(model, out_dir / persist.MODEL_FILE)
    persist.save_loss_history(history, out_dir / persist.LOSS_FILE)
    return out_dir


def run_train(cfg: RunConfig, out_dir: str | Path) -> Path:
    """Train one model per dataset pair; single-dataset runs write directly
    into ``out_dir``, multi-dataset runs into ``run_XX`` subdirectories."""
    out_dir = Path(out_dir)
    pairs = _resolve_pairs(cfg, out_dir)
    if len(pairs) == 1:
        train_csv, test_csv, seed = pairs[0]
        _train_one(_single_run_config(cfg, train_csv, test_csv, seed), out_dir)
        return out_dir

    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / persist.MANIFEST_FILE).write_text(serialize_config(cfg))
    for i, (train_csv, test_csv, seed) in enumerate(pairs):
        _train_one(
            _single_run_config(cfg, train_csv, test_csv, seed),
            out_dir / f"run_{i:02d}",
        )
    return out_dir


def _eval_manifest_config(cfg: RunConfig, test_path: str, model_dir: Path) -> RunConfig:
    return dataclasses.replace(
        cfg,
        test_csv=str(test_path),
        train_csv=None,
        data_csv=None,
        batch_manifest=None,
        n_datasets=1,
        train_events=None,
        test_events=None,
        model_dir=str(model_dir),
        out_dir=None,
    )


def _evaluate_one(cfg: RunConfig, model_dir: Path, out_dir: Path,
                  test_csv: str | None) -> dict:
    model, pre_ref = persist.load_model(model_dir / persist.MODEL_FILE)
    pre = persist.load_preprocess(model_dir / pre_ref)

    test_path = test_csv or cfg.test_csv
    if test_path is None:
        raise ConfigError("no test CSV: set test_csv or pass --test")
    table = ingest_csv(test_path)
    if table.n_features != pre.input_dim:
        raise ValidationError(
            f"test file has {table.n_features} features, preprocessing model "
            f"expects {pre.input_dim}"
        )

    angles = preprocess_apply(pre, table.features)
    scores = score_events(angles, model, eval_mode(cfg), seed=cfg.seed)
    scored = ScoredSet(scores, table.labels)

    curve = roc_curve(scored)
    boot_mean, boot_std = bootstrap_auc(
        scored, cfg.bootstrap_b, _derived_seed(cfg.seed, _STREAM_BOOTSTRAP)
    )
    history = persist.load_loss_history(model_dir / persist.LOSS_FILE)
    metrics = {
        "auc": auc(scored),
        "auc_boot_mean": boot_mean,
        "auc_boot_std": boot_std,
        "n_signal": scored.n_signal,
        "n_background": scored.n_background,
        "loss_final": history[-1][1] if history else float("nan"),
    }

    out_dir.mkdir(parents=True, exist_ok=True)
    eval_cfg = _eval_manifest_config(cfg, test_path, model_dir)
    (out_dir / persist.MANIFEST_FILE).write_text(serialize_config(eval_cfg))
    persist.save_scores(scored, out_dir / persist.SCORES_FILE)
    persist.save_roc(curve, out_dir / persist.ROC_FILE)
    persist.save_metrics(metrics, out_dir / persist.METRICS_FILE)
    return metrics


def run_evaluate(cfg: RunConfig, model_dir: str | Path, out_dir: str | Path,
                 test_csv: str | None = None) -> dict:
    """Score a test set with a trained model (or every ``run_XX`` model of
    a batch artifact) and write ROC/metrics files."""
    model_dir = Path(model_dir)
    out_dir = Path(out_dir)
    run_dirs = sorted(model_dir.glob("run_??"))
    if not run_dirs:
        if test_csv is None and cfg.test_csv is None:
            # single runs trained from data_csv record their split test
            # file (and derived seed) in the artifact manifest
            art_manifest = model_dir / persist.MANIFEST_FILE
            if art_manifest.exists():
                art_cfg = parse_config(art_manifest)
                test_csv = art_cfg.test_csv
                cfg = dataclasses.replace(cfg, seed=art_cfg.seed)
        return _evaluate_one(cfg, model_dir, out_dir, test_csv)

    per_run = []
    scored_sets = []
    for run_dir in run_dirs:
        run_test = test_csv
        run_seed = cfg.seed
        if run_test is None:
            run_cfg = parse_config(run_dir / persist.MANIFEST_FILE)
            run_test = run_cfg.test_csv
            run_seed = run_cfg.seed
        sub_cfg = dataclasses.replace(cfg, seed=run_seed)
        metrics = _evaluate_one(sub_cfg, run_dir, out_dir / run_dir.name, run_test)
        per_run.append(metrics)
        scored_sets.append(
            persist.load_scores(out_dir / run_dir.name / persist.SCORES_FILE)
        )

    combined = combine_scored(scored_sets)
    curve = roc_curve(combined)
    boot_mean, boot_std = bootstrap_auc(
        combined, cfg.bootstrap_b, _derived_seed(cfg.seed, _STREAM_BOOTSTRAP)
    )
    per_auc = np.array([m["auc"] for m in per_run])
    metrics = {
        "auc": auc(combined),
        "auc_boot_mean": boot_mean,
        "auc_boot_std": boot_std,
        "n_signal": combined.n_signal,
        "n_background": combined.n_background,
        "loss_final": float(np.mean([m["loss_final"] for m in per_run])),
        "n_datasets": len(per_run),
        "auc_datasets_mean": float(per_auc.mean()),
        "auc_datasets_std": float(per_auc.std(ddof=1)) if per_auc.size > 1 else 0.0,
    }
    combined_dir = out_dir / "combined"
    combined_dir.mkdir(parents=True, exist_ok=True)
    persist.save_scores(combined, combined_dir / persist.SCORES_FILE)
    persist.save_roc(curve, combined_dir / persist.ROC_FILE)
    persist.save_metrics(metrics, combined_dir / persist.METRICS_FILE)
    return metrics


def run_roc(score_paths: list[str | Path], out_dir: str | Path,
            bootstrap_b: int = 200, seed: int = 0) -> dict:
    """Combine one or more scores files into a pooled ROC curve + metrics."""
    if not score_paths:
        raise ConfigError("need at least one scores file")
    sets = [persist.load_scores(p) for p in score_paths]
    combined = combine_scored(sets)
    curve = roc_curve(combined)
    boot_mean, boot_std = bootstrap_auc(
        combined, bootstrap_b, _derived_seed(seed, _STREAM_BOOTSTRAP)
    )
    metrics = {
        "auc": auc(combined),
        "auc_boot_mean": boot_mean,
        "auc_boot_std": boot_std,
        "n_signal": combined.n_signal,
        "n_background": combined.n_background,
    }
    if len(sets) > 1:
        per_auc = np.array([auc(s) for s in sets])
        metrics["n_datasets"] = len(sets)
        metrics["auc_datasets_mean"] = float(per_auc.mean())
        metrics["auc_datasets_std"] = float(per_auc.std(ddof=1))
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    persist.save_roc(curve, out_dir / persist.ROC_FILE)
    persist.save_metrics(metrics, out_dir / persist.METRICS_FILE)
    return metrics
