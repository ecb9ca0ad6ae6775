"""Bundle extractor for the rehark adaptation toolkit.

Encodes dataset images and prompt ensembles into the binary interchange
format the toolkit consumes; the only coupling between the two packages
is that file contract and the toolkit's validate CLI.
"""

from .encoders import ClipEncoder, Encoder, SeededProjectionEncoder
from .errors import (
    EmptyClassPrompts,
    ExtractorError,
    ImageDecodeFailure,
    IoFailure,
    ModelLoadFailure,
    SplitError,
)
from .extract import build_text_weights, extract_bundle, extract_features, write_bundle
from .interchange import (
    LABEL_MAGIC,
    MATRIX_MAGIC,
    MATRIX_VERSION,
    read_labels,
    read_matrix,
    write_labels,
    write_matrix,
)
from .prompts import DEFAULT_TEMPLATES, SOURCES, PromptSet
from .splits import DatasetSplits, SplitItem, load_splits, sample_support

__version__ = "0.1.0"

__all__ = [
    "ClipEncoder",
    "DEFAULT_TEMPLATES",
    "DatasetSplits",
    "EmptyClassPrompts",
    "Encoder",
    "ExtractorError",
    "ImageDecodeFailure",
    "IoFailure",
    "LABEL_MAGIC",
    "MATRIX_MAGIC",
    "MATRIX_VERSION",
    "ModelLoadFailure",
    "PromptSet",
    "SOURCES",
    "SeededProjectionEncoder",
    "SplitError",
    "SplitItem",
    "build_text_weights",
    "extract_bundle",
    "extract_features",
    "load_splits",
    "read_labels",
    "read_matrix",
    "sample_support",
    "write_bundle",
    "write_labels",
    "write_matrix",
]
