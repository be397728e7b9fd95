"""Python surface over the native alignment engine."""

from ._core import (
    edit_similarity,
    generate_dataset,
    levenshtein,
    viterbi_alignment,
)

__all__ = [
    "edit_similarity",
    "generate_dataset",
    "levenshtein",
    "viterbi_alignment",
]
