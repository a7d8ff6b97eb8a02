"""Diagnose why a line does or does not sing well on a phrase.

Three issue kinds mirror the failure modes seen in practice: a word
carrying more syllables than there are notes left, important words whose
stressed syllable lands on a weak note, and leftover notes with nothing
to sing.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..melody import Melody, Phrase, prominent_notes
from ..prosody import Lexicon, STOPWORDS, clean_token, syllabify, tokenize


@dataclass(frozen=True)
class ExcessSyllables:
    word: str
    syllables: int
    notes_available: int


@dataclass(frozen=True)
class StressOffProminent:
    word: str
    note_position: int


@dataclass(frozen=True)
class UnfilledNotes:
    count: int


Issue = ExcessSyllables | StressOffProminent | UnfilledNotes


@dataclass(frozen=True)
class SingabilityReport:
    issues: tuple[Issue, ...]

    @property
    def ok(self) -> bool:
        return not self.issues

    def of_kind(self, kind: type) -> list[Issue]:
        return [issue for issue in self.issues if isinstance(issue, kind)]


def validate_singability(
    line: str,
    phrase: Phrase,
    melody: Melody,
    lexicon: Lexicon | None = None,
) -> SingabilityReport:
    slots = phrase.tie_chain_heads(melody)
    mask = prominent_notes(melody, phrase)
    issues: list[Issue] = []

    next_slot = 0
    for token in tokenize(line):
        word = clean_token(token)
        if not word:
            continue
        syllabification = syllabify(word, lexicon)
        count = len(syllabification)
        available = len(slots) - next_slot
        if count > available:
            issues.append(ExcessSyllables(word, count, available))
            next_slot = len(slots)
            continue
        if word.lower() not in STOPWORDS:
            stressed_slot = slots[next_slot + syllabification.stressed_index()]
            if not mask.prominent[stressed_slot]:
                issues.append(StressOffProminent(word, stressed_slot))
        next_slot += count

    if next_slot < len(slots):
        issues.append(UnfilledNotes(len(slots) - next_slot))
    return SingabilityReport(tuple(issues))
