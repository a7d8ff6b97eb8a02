"""Candidate scoring: keyword coverage, stress-to-prominence fit, ordering."""

from __future__ import annotations

from dataclasses import dataclass

from ..melody import ProminenceMask
from ..prosody import Lexicon, clean_token, content_words, syllabify, tokenize
from .align import Alignment


@dataclass(frozen=True)
class Candidate:
    text: str
    alignment: Alignment
    keyword_hits: int
    prosody_score: int
    rank: int


def keyword_hits(line: str, keywords: list[str]) -> int:
    """Distinct keywords/key-phrases present as whole-token runs in the line."""
    line_tokens = _normalized_tokens(line)
    seen = set()
    hits = 0
    for keyword in keywords:
        wanted = tuple(_normalized_tokens(keyword))
        if not wanted or wanted in seen:
            continue
        seen.add(wanted)
        if _contains_run(line_tokens, wanted):
            hits += 1
    return hits


def prosody_score(
    alignment: Alignment,
    line: str,
    mask: ProminenceMask,
    lexicon: Lexicon | None = None,
) -> int:
    """Content words whose stressed syllable is sung on a prominent note."""
    note_of = dict(alignment.syllable_to_note)
    score = 0
    for word, position in content_words(line):
        stressed = syllabify(word, lexicon).stressed_index()
        note = note_of.get((position, stressed))
        if note is not None and mask.prominent[note]:
            score += 1
    return score


def candidate_sort_key(candidate: Candidate) -> tuple:
    """Orders by descending hits, descending prosody, exact first.

    Sorting must be stable so equal candidates keep generation order.
    """
    return (
        -candidate.keyword_hits,
        -candidate.prosody_score,
        not candidate.alignment.exact,
    )


def compare_candidates(a: Candidate, b: Candidate) -> int:
    """-1 when a ranks before b, 1 when after, 0 when tied (stable zone)."""
    ka, kb = candidate_sort_key(a), candidate_sort_key(b)
    return -1 if ka < kb else (1 if ka > kb else 0)


def _normalized_tokens(text: str) -> list[str]:
    tokens = [clean_token(t).lower() for t in tokenize(text)]
    return [t for t in tokens if t]


def _contains_run(haystack: list[str], needle: tuple[str, ...]) -> bool:
    n = len(needle)
    return any(tuple(haystack[i : i + n]) == needle for i in range(len(haystack) - n + 1))
