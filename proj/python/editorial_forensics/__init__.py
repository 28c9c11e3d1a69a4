"""Editor power, activity and decision-bias metrics for journal corpora."""

from ._core import (
    Corpus,
    fit_model,
    generate_synth,
    gini,
    ingest,
    load_corpus,
    normalize_surname,
    save_corpus,
    summary,
    z_scores,
)

__all__ = [
    "Corpus",
    "fit_model",
    "generate_synth",
    "gini",
    "ingest",
    "load_corpus",
    "normalize_surname",
    "save_corpus",
    "summary",
    "z_scores",
]
