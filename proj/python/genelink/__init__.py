"""Disease-gene association prediction pipeline."""

from ._genelink import (
    compose_signatures,
    compress_signature,
    evaluate,
    extract_interactions,
    ingest,
    predict,
    synth,
    train,
)

__all__ = [
    "compose_signatures",
    "compress_signature",
    "evaluate",
    "extract_interactions",
    "ingest",
    "predict",
    "synth",
    "train",
]
