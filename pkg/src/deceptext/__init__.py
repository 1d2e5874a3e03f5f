"""Deceptive-review classification: TF-IDF features, five from-scratch
linear and kernel classifiers, and a reproducible benchmark harness."""

from .classifiers import (
    ALL_KINDS,
    Hyperparams,
    ModelKind,
    TrainedModel,
    decision_score,
    decision_scores,
    fit,
    predict,
)
from .corpus import Corpus, Label, Polarity, Review, SplitManifest, load_corpus, stratified_split
from .errors import DeceptextError, RuntimeFailure, ValidationError
from .evaluation import (
    Averaging,
    ConfusionMatrix,
    EvalReport,
    accuracy,
    confusion,
    evaluate,
    prf_metrics,
    roc_auc,
)
from .harness import (
    ExperimentConfig,
    ModelBundle,
    ModelSpec,
    RunBundle,
    SplitConfig,
    compare,
    emit_report,
    grid_search,
    load_model,
    run_experiment,
    save_model,
)
from .rng import SplitMix64
from .textprep import PrepConfig, lemmatize, normalize, preprocess, tokenize
from .vectorizer import (
    FeatureVector,
    IdfMode,
    IdfTable,
    NgramRange,
    VectorizerConfig,
    Vocabulary,
    extract_ngrams,
    fit_vocabulary,
    transform,
    transform_corpus,
)

__version__ = "0.1.0"
