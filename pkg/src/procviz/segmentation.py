"""Split document content into passages, words, and character n-grams.

All splitting is driven by user-configurable delimiter sets so the
pipeline stays language independent: no case folding, no stemming, no
locale-aware word boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


DEFAULT_WORD_DELIMITERS = frozenset({" ", "\t", "\n"})
DEFAULT_SENTENCE_DELIMITERS = frozenset({".", "!", "?"})
DEFAULT_NGRAM_N = 5


class Granularity(str, Enum):
    PARAGRAPH = "paragraph"
    SENTENCE = "sentence"
    LINE = "line"


@dataclass(frozen=True)
class SegmentationConfig:
    """Delimiter sets and n-gram size used for all text splitting."""

    word_delimiters: frozenset[str] = DEFAULT_WORD_DELIMITERS
    sentence_delimiters: frozenset[str] = DEFAULT_SENTENCE_DELIMITERS
    ngram_n: int = DEFAULT_NGRAM_N

    def __post_init__(self) -> None:
        if not self.word_delimiters:
            raise ValueError("word_delimiters must be non-empty")
        if not self.sentence_delimiters:
            raise ValueError("sentence_delimiters must be non-empty")
        if self.ngram_n < 1:
            raise ValueError(f"ngram_n must be >= 1, got {self.ngram_n}")
        # Allow construction from plain sets/strings.
        object.__setattr__(self, "word_delimiters", frozenset(self.word_delimiters))
        object.__setattr__(self, "sentence_delimiters", frozenset(self.sentence_delimiters))


@dataclass(frozen=True)
class Passage:
    """One paragraph, sentence, or line at a single point in time."""

    text: str
    ordinal: int
    granularity: Granularity


def split_paragraphs(content: str) -> list[Passage]:
    """Split into paragraphs: maximal runs separated by one or more newlines.

    Runs that are empty after stripping whitespace are dropped.
    """
    passages = []
    for block in content.split("\n"):
        text = block.strip()
        if text:
            passages.append(Passage(text, len(passages), Granularity.PARAGRAPH))
    return passages


def split_sentences(content: str, cfg: SegmentationConfig) -> list[Passage]:
    """Split into sentences terminated by any configured sentence delimiter.

    The delimiter stays with its sentence; consecutive delimiters ("!!")
    remain in one sentence; a trailing unterminated run forms a final
    sentence.  Whitespace-only sentences are dropped.
    """
    delims = cfg.sentence_delimiters
    passages: list[Passage] = []
    buf: list[str] = []
    for ch in content:
        buf.append(ch)
        if ch in delims:
            continue
        # A non-delimiter after delimiters closes the previous sentence.
        if len(buf) >= 2 and buf[-2] in delims:
            text = "".join(buf[:-1]).strip()
            if text:
                passages.append(Passage(text, len(passages), Granularity.SENTENCE))
            buf = [ch]
    text = "".join(buf).strip()
    if text:
        passages.append(Passage(text, len(passages), Granularity.SENTENCE))
    return passages


def split_lines(content: str) -> list[Passage]:
    """Split on newline, keeping blank lines so code diffs stay faithful.

    Empty content yields a single empty line, matching the diff engine's
    unit convention.
    """
    return [
        Passage(line, i, Granularity.LINE)
        for i, line in enumerate(content.split("\n"))
    ]


def tokenize_words(content: str, cfg: SegmentationConfig) -> list[str]:
    """Maximal runs of non-delimiter characters; case-sensitive, unnormalized."""
    delims = cfg.word_delimiters
    words: list[str] = []
    buf: list[str] = []
    for ch in content:
        if ch in delims:
            if buf:
                words.append("".join(buf))
                buf = []
        else:
            buf.append(ch)
    if buf:
        words.append("".join(buf))
    return words


def char_ngrams(text: str, n: int) -> list[str]:
    """All overlapping character windows of length n, in order.

    Passages shorter than n yield the whole passage as a single gram so
    similarity stays defined (and equals 1 for identical short passages).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if len(text) <= n:
        return [text]
    return [text[i : i + n] for i in range(len(text) - n + 1)]
