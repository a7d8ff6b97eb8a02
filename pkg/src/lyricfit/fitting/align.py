"""Greedy one-syllable-per-note alignment of a lyric line to a phrase."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import EmptyLine, TooManySyllables
from ..melody import Melody, Phrase
from ..prosody import Lexicon, clean_token, syllabify, tokenize


@dataclass(frozen=True)
class Alignment:
    """Maps each syllable (word_index, syllable_index) of the line to the
    phrase-local position of the note it is sung on.

    Word indices refer to whitespace tokens of the original line. Only
    tie-chain heads receive syllables; a chain's continuation notes hold
    their syllable. ``exact`` means every chain head got one.
    """

    phrase_index: int
    syllable_to_note: tuple[tuple[tuple[int, int], int], ...]
    exact: bool

    def note_of(self, word_index: int, syllable_index: int) -> int | None:
        for (w, s), note in self.syllable_to_note:
            if (w, s) == (word_index, syllable_index):
                return note
        return None


def syllable_layout(line: str, lexicon: Lexicon | None = None) -> list[tuple[int, int]]:
    """All (word_index, syllable_index) pairs of the line, in sung order."""
    pairs = []
    for word_index, token in enumerate(tokenize(line)):
        word = clean_token(token)
        if not word:
            continue
        for syllable_index in range(len(syllabify(word, lexicon))):
            pairs.append((word_index, syllable_index))
    return pairs


def align(
    line: str,
    phrase: Phrase,
    melody: Melody,
    lexicon: Lexicon | None = None,
) -> Alignment:
    pairs = syllable_layout(line, lexicon)
    if not pairs:
        raise EmptyLine(f"no singable words in {line!r}")
    slots = phrase.tie_chain_heads(melody)
    if len(pairs) > len(slots):
        raise TooManySyllables(len(pairs) - len(slots))
    mapping = tuple((pair, slot) for pair, slot in zip(pairs, slots))
    return Alignment(
        phrase_index=phrase.index,
        syllable_to_note=mapping,
        exact=len(pairs) == len(slots),
    )
