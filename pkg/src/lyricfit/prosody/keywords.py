"""Unsupervised keyword extraction over 1-3 word n-grams.

Statistical scoring in the YAKE family, reduced to four word features:
term frequency, first-occurrence sentence position, casing, and sentence
spread. No co-occurrence window term. Lower score = more important.
"""

from __future__ import annotations

import bisect
import math
import re
from dataclasses import dataclass

from ..errors import EmptyText
from .words import STOPWORDS

_WORD_RE = re.compile(r"[A-Za-z][A-Za-z']*")
_SENTENCE_BREAK = re.compile(r"[.!?\n]")

MAX_NGRAM = 3


@dataclass(frozen=True)
class KeywordScore:
    term: str
    score: float


@dataclass(frozen=True)
class _Token:
    word: str       # lowercased
    raw: str
    start: int
    sentence: int
    sentence_pos: int


def extract_keywords(
    text: str,
    k: int,
    stopwords: frozenset[str] = STOPWORDS,
) -> list[KeywordScore]:
    if not text.strip():
        raise EmptyText("cannot extract keywords from empty text")
    if k < 1:
        raise ValueError("k must be >= 1")

    tokens = _tokenize(text)
    word_scores = _word_scores(tokens, stopwords)
    if not word_scores:
        return []

    # n-grams only span tokens separated by a single space, so every term
    # occurs verbatim (case-insensitively) in the input
    first_seen: dict[str, int] = {}
    counts: dict[str, int] = {}
    parts: dict[str, tuple[str, ...]] = {}
    for window in _windows(text, tokens):
        words = tuple(t.word for t in window)
        if words[0] in stopwords or words[-1] in stopwords:
            continue
        if any(a == b for a, b in zip(words, words[1:])):
            continue  # "moon moon" is stutter, not a phrase
        term = " ".join(words)
        counts[term] = counts.get(term, 0) + 1
        first_seen.setdefault(term, window[0].start)
        parts.setdefault(term, words)

    scored = []
    for term, words in parts.items():
        content = [word_scores[w] for w in words if w not in stopwords]
        product = math.prod(content)
        score = product / (counts[term] * (1.0 + sum(content)))
        scored.append(KeywordScore(term, score))

    scored.sort(key=lambda ks: (ks.score, first_seen[ks.term], ks.term))
    return scored[:k]


def _tokenize(text: str) -> list[_Token]:
    breaks = [m.start() for m in _SENTENCE_BREAK.finditer(text)]
    tokens: list[_Token] = []
    sentence_pos = 0
    prev_sentence = -1
    for m in _WORD_RE.finditer(text):
        sentence = _count_before(breaks, m.start())
        if sentence != prev_sentence:
            sentence_pos = 0
            prev_sentence = sentence
        tokens.append(_Token(m.group().lower(), m.group(), m.start(), sentence, sentence_pos))
        sentence_pos += 1
    return tokens


def _count_before(sorted_positions: list[int], pos: int) -> int:
    return bisect.bisect_left(sorted_positions, pos)


def _word_scores(tokens: list[_Token], stopwords: frozenset[str]) -> dict[str, float]:
    """Per-word importance score; lower = more important."""
    occurrences: dict[str, list[_Token]] = {}
    for t in tokens:
        occurrences.setdefault(t.word, []).append(t)

    freqs = [len(v) for w, v in occurrences.items() if w not in stopwords]
    if not freqs:
        return {}
    mean = sum(freqs) / len(freqs)
    std = math.sqrt(sum((f - mean) ** 2 for f in freqs) / len(freqs))

    scores: dict[str, float] = {}
    for word, occs in occurrences.items():
        if word in stopwords:
            continue
        tf = len(occs)
        position = math.log(math.log(3.0 + min(t.sentence for t in occs)))
        # sentence-initial capitals carry no signal
        caps = sum(1 for t in occs if t.raw[0].isupper() and t.sentence_pos > 0)
        casing = caps / tf
        frequency = tf / (mean + std)
        spread = len({t.sentence for t in occs}) / len({t.sentence for t in tokens})
        scores[word] = position / (1.0 + casing + frequency + spread)
    return scores


def _windows(text: str, tokens: list[_Token]) -> list[tuple[_Token, ...]]:
    windows: list[tuple[_Token, ...]] = []
    for i, tok in enumerate(tokens):
        windows.append((tok,))
        run = [tok]
        for j in range(i + 1, min(i + MAX_NGRAM, len(tokens))):
            prev, nxt = tokens[j - 1], tokens[j]
            if text[prev.start + len(prev.raw):nxt.start] != " ":
                break
            run.append(nxt)
            windows.append(tuple(run))
    return windows
