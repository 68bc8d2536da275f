"""Passage similarity as the normalized dot product of n-gram frequencies.

A passage's profile maps each distinct character n-gram to its relative
frequency (occurrences / total occurrences), so profile weights sum to 1.
Similarity of two profiles is the cosine of their weight vectors over the
union gram alphabet.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .segmentation import char_ngrams


class EmptyPassageError(ValueError):
    """A profile was requested for an empty passage."""


@dataclass(frozen=True)
class NGramProfile:
    """Normalized n-gram frequency vector of one passage."""

    weights: dict[str, float]
    gram_count: int
    squared_norm: float


def build_profile(text: str, n: int) -> NGramProfile:
    """Relative frequency of each distinct n-gram in ``text``."""
    if not text:
        raise EmptyPassageError("cannot profile an empty passage")
    counts = Counter(char_ngrams(text, n))
    total = sum(counts.values())
    weights = {gram: occurrences / total for gram, occurrences in counts.items()}
    squared_norm = math.fsum(w * w for w in weights.values())
    return NGramProfile(weights, total, squared_norm)


def similarity(p: NGramProfile, q: NGramProfile) -> float:
    """Cosine similarity of two profiles, in [0, 1].

    Exactly symmetric: the dot product iterates the smaller profile's
    grams in sorted order, and grams missing from the other side add an
    exact 0.0. Identical profiles short-circuit to 1.0.
    """
    if p.weights == q.weights:
        return 1.0
    small, large = (p, q) if len(p.weights) <= len(q.weights) else (q, p)
    dot = math.fsum(
        w * large.weights.get(gram, 0.0) for gram, w in sorted(small.weights.items())
    )
    denom = math.sqrt(p.squared_norm * q.squared_norm)
    if denom == 0.0:
        return 0.0
    return dot / denom
