"""Training-free few-shot adaptation of vision-language embeddings.

The pipeline rectifies and power-transforms pre-extracted features, builds a
hybrid semantic-visual prior, augments the support set with prior-guided
bridge samples, and fits a proximal kernel ridge regression on the residual
between one-hot labels and scaled zero-shot logits.
"""

from .baseline import NwParams, nw_classify, nw_logits, zero_shot_classify
from .bridge import AugmentedSupport, augment, make_bridges, one_hot
from .errors import ReharkError
from .evaluation import (
    AblationConstraints,
    Report,
    ReportRow,
    VARIANTS,
    accuracy,
    compare_methods,
    emit_report,
    run_ablation,
)
from .io_bundle import (
    Bundle,
    load_bundle,
    load_labels,
    load_matrix,
    save_bundle,
    save_labels,
    save_matrix,
    validate_bundle,
)
from .kernel import KernelKind, KernelSpec, gram
from .krr import AdaptationModel, fit, load_model, predict, predict_labels, save_model
from .pipeline import (
    FittedPipeline,
    HyperParams,
    build_prior,
    evaluate_split,
    fit_pipeline,
    transform_features,
)
from .prior import PriorParams, blend_text_priors, refine_prior, visual_prototypes
from .search import (
    SearchResult,
    SearchSpace,
    TrialRecord,
    run_search,
    sample_params,
    trial_rng,
)
from .synthetic import make_synthetic_bundle
from .transform import TransformParams, l2_normalize, power_transform, rectify

__version__ = "0.1.0"

__all__ = [
    "AblationConstraints",
    "AdaptationModel",
    "AugmentedSupport",
    "Bundle",
    "FittedPipeline",
    "HyperParams",
    "KernelKind",
    "KernelSpec",
    "NwParams",
    "PriorParams",
    "Report",
    "ReportRow",
    "ReharkError",
    "SearchResult",
    "SearchSpace",
    "TransformParams",
    "TrialRecord",
    "VARIANTS",
    "accuracy",
    "augment",
    "blend_text_priors",
    "build_prior",
    "compare_methods",
    "emit_report",
    "evaluate_split",
    "fit",
    "fit_pipeline",
    "gram",
    "l2_normalize",
    "load_bundle",
    "load_labels",
    "load_matrix",
    "load_model",
    "make_bridges",
    "make_synthetic_bundle",
    "nw_classify",
    "nw_logits",
    "one_hot",
    "power_transform",
    "predict",
    "predict_labels",
    "rectify",
    "refine_prior",
    "run_ablation",
    "run_search",
    "sample_params",
    "save_bundle",
    "save_labels",
    "save_matrix",
    "save_model",
    "trial_rng",
    "transform_features",
    "validate_bundle",
    "visual_prototypes",
    "zero_shot_classify",
]
