"""Run configuration: strict key-value config files and their validation.

Format: one ``key = value`` per line, ``#`` comments, blank lines ignored.
The file must carry ``schema_version = 1``. Unknown keys are hard errors;
silent typos in scientific configs are dangerous. ``serialize_config``
emits a complete resolved config (a run manifest) that can be replayed
with ``--config``.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from pathlib import Path

from .errors import ConfigError

SCHEMA_VERSION = 1


@dataclass
class RunConfig:
    n_qubits: int = 10
    feature_map_depth: int = 1
    var_depth: int = 1
    eval_mode: str = "exact"  # exact | sampled
    shots: int | None = None
    noise_p01: tuple[float, ...] | None = None  # scalar broadcasts to all qubits
    noise_p10: tuple[float, ...] | None = None
    mitigation: bool = False
    spsa_max_iter: int = 250
    spsa_a: float = 0.2
    spsa_c: float = 0.1
    spsa_alpha: float = 0.602
    spsa_gamma: float = 0.101
    spsa_stability: float | None = None  # default: spsa_max_iter / 10
    pca_dim: int | None = None  # default: n_qubits; must equal it
    standardize: bool = False
    threshold: float = 0.5
    bootstrap_b: int = 200
    seed: int = 0
    feature_gain: tuple[float, ...] | None = None
    feature_offset: tuple[float, ...] | None = None
    train_csv: str | None = None
    test_csv: str | None = None
    data_csv: str | None = None
    batch_manifest: str | None = None
    n_datasets: int = 1
    train_events: int | None = None
    test_events: int | None = None
    model_dir: str | None = None
    out_dir: str | None = None


_BOOL_KEYS = {"mitigation", "standardize"}
_INT_KEYS = {
    "n_qubits", "feature_map_depth", "var_depth", "shots", "spsa_max_iter",
    "pca_dim", "bootstrap_b", "seed", "n_datasets", "train_events", "test_events",
}
_FLOAT_KEYS = {"spsa_a", "spsa_c", "spsa_alpha", "spsa_gamma", "spsa_stability",
               "threshold"}
_FLOAT_LIST_KEYS = {"noise_p01", "noise_p10", "feature_gain", "feature_offset"}
_STR_KEYS = {"eval_mode", "train_csv", "test_csv", "data_csv", "batch_manifest",
             "model_dir", "out_dir"}
_ALL_KEYS = _BOOL_KEYS | _INT_KEYS | _FLOAT_KEYS | _FLOAT_LIST_KEYS | _STR_KEYS
# keys whose dataclass default is None may be set to 'none' explicitly
_NULLABLE_KEYS = {
    "shots", "noise_p01", "noise_p10", "spsa_stability", "pca_dim",
    "feature_gain", "feature_offset", "train_csv", "test_csv", "data_csv",
    "batch_manifest", "train_events", "test_events", "model_dir", "out_dir",
}


def _parse_value(key: str, raw: str):
    raw = raw.strip()
    if raw in ("", "none"):
        if key not in _NULLABLE_KEYS:
            raise ConfigError(f"{key} cannot be none")
        return None
    try:
        if key in _BOOL_KEYS:
            if raw not in ("true", "false"):
                raise ValueError("expected true or false")
            return raw == "true"
        if key in _INT_KEYS:
            return int(raw)
        if key in _FLOAT_KEYS:
            return float(raw)
        if key in _FLOAT_LIST_KEYS:
            return tuple(float(v) for v in raw.split(","))
        return raw
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {raw!r} ({exc})") from None


def parse_config(path: str | Path) -> RunConfig:
    """Parse and validate a config file."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    seen: dict[str, object] = {}
    version = None
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, raw = (part.strip() for part in line.split("=", 1))
        if key == "schema_version":
            version = raw
            continue
        if key not in _ALL_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in seen:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        seen[key] = _parse_value(key, raw)

    if version is None:
        raise ConfigError("missing schema_version")
    if version != str(SCHEMA_VERSION):
        raise ConfigError(f"unsupported schema_version {version!r}")

    cfg = RunConfig(**{k: v for k, v in seen.items() if v is not None})
    # explicit 'none' values override dataclass defaults
    for key, value in seen.items():
        if value is None:
            setattr(cfg, key, None)
    validate_config(cfg)
    return cfg


def validate_config(cfg: RunConfig) -> RunConfig:
    """Resolve defaults and check cross-field invariants."""
    if cfg.n_qubits < 2 or cfg.n_qubits % 2 != 0:
        raise ConfigError(f"n_qubits must be even and >= 2, got {cfg.n_qubits}")
    if cfg.eval_mode not in ("exact", "sampled"):
        raise ConfigError(f"eval_mode must be exact or sampled, got {cfg.eval_mode!r}")
    if cfg.eval_mode == "sampled" and (cfg.shots is None or cfg.shots < 1):
        raise ConfigError("sampled mode requires shots >= 1")
    if cfg.pca_dim is None:
        cfg.pca_dim = cfg.n_qubits
    if cfg.pca_dim != cfg.n_qubits:
        raise ConfigError(
            f"pca_dim ({cfg.pca_dim}) must equal n_qubits ({cfg.n_qubits}): "
            "one encoded variable per qubit"
        )
    if (cfg.noise_p01 is None) != (cfg.noise_p10 is None):
        raise ConfigError("noise_p01 and noise_p10 must be set together")
    for key in ("noise_p01", "noise_p10"):
        vals = getattr(cfg, key)
        if vals is not None and len(vals) not in (1, cfg.n_qubits // 2):
            raise ConfigError(
                f"{key} must be a scalar or one value per measured qubit "
                f"({cfg.n_qubits // 2})"
            )
    if cfg.mitigation:
        if cfg.eval_mode != "sampled":
            raise ConfigError("mitigation requires eval_mode = sampled")
        if cfg.noise_p01 is None:
            raise ConfigError("mitigation requires a noise model")
    if cfg.noise_p01 is not None and cfg.eval_mode != "sampled":
        raise ConfigError("readout noise applies to sampled mode only")
    if cfg.seed < 0:
        raise ConfigError("seed must be non-negative")
    if cfg.n_datasets < 1:
        raise ConfigError("n_datasets must be >= 1")
    sources = [s for s in (cfg.train_csv, cfg.data_csv, cfg.batch_manifest) if s]
    if len(sources) > 1:
        raise ConfigError("set only one of train_csv, data_csv, batch_manifest")
    if cfg.data_csv is not None and (cfg.train_events is None or cfg.test_events is None):
        raise ConfigError("data_csv requires train_events and test_events")
    for key in ("feature_gain", "feature_offset"):
        vals = getattr(cfg, key)
        if vals is not None and len(vals) != cfg.n_qubits:
            raise ConfigError(f"{key} must have {cfg.n_qubits} entries")
    return cfg


def _format_value(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, tuple):
        return ",".join(repr(float(v)) for v in value)
    return str(value)


def serialize_config(cfg: RunConfig) -> str:
    """Render a fully resolved config in file format, fixed key order."""
    lines = [f"schema_version = {SCHEMA_VERSION}"]
    lines += [f"{f.name} = {_format_value(getattr(cfg, f.name))}" for f in fields(cfg)]
    return "\n".join(lines) + "\n"
