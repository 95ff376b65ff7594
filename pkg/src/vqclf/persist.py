"""Run-artifact files: model, preprocessing model, loss history, scores,
ROC points, and metrics.

Everything is plain text with floats written via ``repr`` (shortest
round-trip decimal), so artifacts are diffable and byte-stable across
replays of the same run.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .circuits import CircuitConfig
from .classifier import ClassifierModel
from .errors import ParseError
from .metrics import RocCurve, ScoredSet
from .preprocess import PcaModel, PreprocessModel, ScalerModel

MODEL_FILE = "model.txt"
PREPROCESS_FILE = "preprocess.txt"
LOSS_FILE = "loss_history.csv"
SCORES_FILE = "scores.csv"
ROC_FILE = "roc_points.csv"
METRICS_FILE = "metrics.txt"
MANIFEST_FILE = "manifest.txt"


def _fmt(value: float) -> str:
    return repr(float(value))


def _fmt_vec(values) -> str:
    return ",".join(_fmt(v) for v in np.asarray(values, dtype=np.float64))


def _parse_vec(raw: str) -> np.ndarray:
    raw = raw.strip()
    if not raw:
        return np.empty(0)
    return np.array([float(v) for v in raw.split(",")])


def _read_kv(path: Path) -> dict[str, str]:
    entries: dict[str, str] = {}
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError(f"expected 'key = value', got {line!r}", line=lineno)
        key, raw = (part.strip() for part in line.split("=", 1))
        entries[key] = raw
    return entries


def save_model(model: ClassifierModel, path: str | Path,
               preprocess_ref: str = PREPROCESS_FILE) -> None:
    cfg = model.config
    lines = [
        "schema_version = 1",
        f"n_qubits = {cfg.n_qubits}",
        f"feature_map_depth = {cfg.feature_map_depth}",
        f"var_depth = {cfg.var_depth}",
        f"threshold = {_fmt(model.threshold)}",
        f"preprocess = {preprocess_ref}",
    ]
    if cfg.feature_gain is not None:
        lines.append(f"feature_gain = {_fmt_vec(cfg.feature_gain)}")
    if cfg.feature_offset is not None:
        lines.append(f"feature_offset = {_fmt_vec(cfg.feature_offset)}")
    lines.append(f"theta = {_fmt_vec(model.theta)}")
    Path(path).write_text("\n".join(lines) + "\n")


def load_model(path: str | Path) -> tuple[ClassifierModel, str]:
    """Returns the model and the preprocessing-file reference."""
    entries = _read_kv(Path(path))
    config = CircuitConfig(
        n_qubits=int(entries["n_qubits"]),
        feature_map_depth=int(entries["feature_map_depth"]),
        var_depth=int(entries["var_depth"]),
        feature_gain=(tuple(_parse_vec(entries["feature_gain"]))
                      if "feature_gain" in entries else None),
        feature_offset=(tuple(_parse_vec(entries["feature_offset"]))
                        if "feature_offset" in entries else None),
    )
    model = ClassifierModel(config, _parse_vec(entries["theta"]),
                            float(entries["threshold"]))
    return model, entries.get("preprocess", PREPROCESS_FILE)


def save_preprocess(model: PreprocessModel, path: str | Path) -> None:
    lines = [
        "schema_version = 1",
        f"input_dim = {model.input_dim}",
        f"output_dim = {model.output_dim}",
        f"standardize = {'true' if model.standardize_mean is not None else 'false'}",
    ]
    if model.standardize_mean is not None:
        lines.append(f"standardize_mean = {_fmt_vec(model.standardize_mean)}")
        lines.append(f"standardize_scale = {_fmt_vec(model.standardize_scale)}")
    lines.append(f"pca_mean = {_fmt_vec(model.pca.mean)}")
    for i, row in enumerate(model.pca.components):
        lines.append(f"component_{i} = {_fmt_vec(row)}")
    lines.append(f"explained_variance = {_fmt_vec(model.pca.explained_variance)}")
    lines.append(f"scaler_min = {_fmt_vec(model.scaler.mins)}")
    lines.append(f"scaler_max = {_fmt_vec(model.scaler.maxs)}")
    Path(path).write_text("\n".join(lines) + "\n")


def load_preprocess(path: str | Path) -> PreprocessModel:
    entries = _read_kv(Path(path))
    k = int(entries["output_dim"])
    components = np.vstack([_parse_vec(entries[f"component_{i}"]) for i in range(k)])
    pca = PcaModel(_parse_vec(entries["pca_mean"]), components,
                   _parse_vec(entries["explained_variance"]))
    scaler = ScalerModel(_parse_vec(entries["scaler_min"]),
                         _parse_vec(entries["scaler_max"]))
    std_mean = std_scale = None
    if entries.get("standardize") == "true":
        std_mean = _parse_vec(entries["standardize_mean"])
        std_scale = _parse_vec(entries["standardize_scale"])
    return PreprocessModel(pca, scaler, std_mean, std_scale)


def save_loss_history(history: list[tuple[int, float]], path: str | Path) -> None:
    lines = ["iteration,loss"]
    lines += [f"{it},{_fmt(loss)}" for it, loss in history]
    Path(path).write_text("\n".join(lines) + "\n")


def load_loss_history(path: str | Path) -> list[tuple[int, float]]:
    lines = Path(path).read_text().splitlines()
    if not lines or lines[0] != "iteration,loss":
        raise ParseError(f"{path} is not a loss-history file", line=1)
    return [(int(it), float(loss))
            for it, loss in (line.split(",", 1) for line in lines[1:] if line)]


def save_scores(scored: ScoredSet, path: str | Path) -> None:
    lines = ["label,score"]
    lines += [f"{int(lab)},{_fmt(sc)}"
              for lab, sc in zip(scored.labels, scored.scores)]
    Path(path).write_text("\n".join(lines) + "\n")


def load_scores(path: str | Path) -> ScoredSet:
    lines = Path(path).read_text().splitlines()
    if not lines or lines[0] != "label,score":
        raise ParseError(f"{path} is not a scores file", line=1)
    labels, scores = [], []
    for line in lines[1:]:
        if not line:
            continue
        lab, sc = line.split(",", 1)
        labels.append(int(lab))
        scores.append(float(sc))
    return ScoredSet(np.array(scores), np.array(labels))


def save_roc(curve: RocCurve, path: str | Path) -> None:
    lines = ["threshold,signal_efficiency,background_rejection"]
    lines += [
        f"{_fmt(t)},{_fmt(e)},{_fmt(r)}"
        for t, e, r in zip(curve.thresholds, curve.signal_efficiency,
                           curve.background_rejection)
    ]
    Path(path).write_text("\n".join(lines) + "\n")


def save_metrics(metrics: dict, path: str | Path) -> None:
    """``key: value`` lines, insertion order preserved."""
    lines = []
    for key, value in metrics.items():
        if isinstance(value, float):
            lines.append(f"{key}: {_fmt(value)}")
        else:
            lines.append(f"{key}: {value}")
    Path(path).write_text("\n".join(lines) + "\n")


def load_metrics(path: str | Path) -> dict[str, str]:
    entries: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        if not line.strip():
            continue
        if ":" not in line:
            raise ParseError(f"expected 'key: value', got {line!r}", line=lineno)
        key, value = line.split(":", 1)
        entries[key.strip()] = value.strip()
    return entries
