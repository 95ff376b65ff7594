"""Variational quantum classifier toolkit.

Statevector simulation of feature-map + variational circuits, SPSA
training, readout-noise modeling with calibration-matrix mitigation, PCA
preprocessing onto [-pi, pi] angles, and ROC/AUC evaluation, plus a batch
CLI with reproducible run artifacts.
"""

from ._backend import backend_name
from .circuits import (
    CircuitConfig,
    assemble_classifier_circuit,
    build_entangler,
    build_feature_map,
    build_measurement_prep,
    build_variational,
    param_count,
)
from .classifier import (
    ClassifierModel,
    EvalMode,
    discriminant,
    empirical_loss,
    predict,
    score_events,
    train,
)
from .dataio import EventTable, gen_synthetic, ingest_csv, split_datasets, write_csv
from .metrics import (
    RocCurve,
    ScoredSet,
    auc,
    bootstrap_auc,
    combine_rocs,
    combine_scored,
    roc_curve,
)
from .noise import (
    CalibrationMatrix,
    ReadoutNoiseModel,
    apply_readout_noise,
    build_calibration_matrix,
    calibrate_empirical,
    mitigate,
)
from .optimizer import SpsaConfig, gain_sequences, spsa_minimize
from .preprocess import (
    PcaModel,
    PreprocessModel,
    ScalerModel,
    pca_fit,
    pca_transform,
    preprocess_apply,
    preprocess_fit,
    scaler_fit,
    scaler_transform,
)
from .simcore import (
    Circuit,
    Counts,
    GateOp,
    OutcomeDistribution,
    StateVector,
    apply_circuit,
    apply_gate,
    marginal_distribution,
    new_state,
    sample_counts,
    simulate,
)

__version__ = "0.1.0"
