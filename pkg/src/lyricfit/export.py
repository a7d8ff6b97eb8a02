"""Orthographic syllable splitting and song-level ABC assembly.

Bridges lyric text (whole words) and note-level output (ABC ``w:``
tokens, per-note edit boxes), which both need each word broken into as
many written chunks as it has spoken syllables.
"""

from __future__ import annotations

import re

from .errors import NothingToExport
from .melody import Melody, Phrase, to_abc
from .prosody import Lexicon, clean_token, count_word_syllables, tokenize

_VOWEL_RUN_RE = re.compile(r"[aeiouyAEIOUY]+")


def grapheme_syllables(word: str, lexicon: Lexicon | None = None) -> list[str]:
    """Split a written word into exactly as many chunks as it has syllables.

    Boundaries fall inside intervocalic consonant runs (a single
    consonant opens the next syllable, a cluster leaves one behind:
    o-pen, can-dle). When the spoken count differs from the written
    vowel groups (silent e, lexicon pronunciations) trailing chunks are
    merged or the longest chunk is halved, so the pieces always
    reassemble to the word.
    """
    count = count_word_syllables(word, lexicon)
    spans = [m.span() for m in _VOWEL_RUN_RE.finditer(word)]
    if not spans:
        return [word]
    boundaries = []
    for (_, run_start), (next_vowel, _) in zip(spans, spans[1:]):
        run = next_vowel - run_start
        boundaries.append(run_start + (0 if run <= 1 else 1))
    chunks = [
        word[a:b] for a, b in zip([0, *boundaries], [*boundaries, len(word)])
    ]
    while len(chunks) > count:
        chunks[-2:] = [chunks[-2] + chunks[-1]]
    while len(chunks) < count:
        longest = max(range(len(chunks)), key=lambda i: len(chunks[i]))
        if len(chunks[longest]) < 2:
            break
        half = len(chunks[longest]) // 2
        piece = chunks[longest]
        chunks[longest : longest + 1] = [piece[:half], piece[half:]]
    return chunks


def lyric_words(line: str, lexicon: Lexicon | None = None) -> list[list[str]]:
    """Per singable word of the line, its written syllable chunks."""
    return [
        grapheme_syllables(token, lexicon)
        for token in tokenize(line)
        if clean_token(token)
    ]


def song_abc(
    melody: Melody,
    phrases: list[Phrase],
    lyrics_by_phrase: list[str | None],
    lexicon: Lexicon | None = None,
    phrase_index: int | None = None,
) -> str:
    """Render the song (or one phrase) as ABC with ``w:`` lines where lyrics exist.

    Lines whose syllable count does not fill the phrase exactly are
    exported melody-only rather than guessed at.
    """
    if melody is None:
        raise NothingToExport("no melody to export")
    if phrase_index is not None:
        melody, phrases = _phrase_slice(melody, phrases[phrase_index])
        lyrics_by_phrase = [lyrics_by_phrase[phrase_index]]

    rendered: list[list[list[str]] | None] = []
    for phrase, line in zip(phrases, lyrics_by_phrase):
        words = lyric_words(line, lexicon) if line else None
        if words is not None:
            total = sum(len(w) for w in words)
            if total != len(phrase.tie_chain_heads(melody)):
                words = None
        rendered.append(words)
    return to_abc(melody, phrases, rendered)


def _phrase_slice(melody: Melody, phrase: Phrase) -> tuple[Melody, list[Phrase]]:
    first, last = phrase.note_indices[0], phrase.note_indices[-1]
    notes = melody.notes[first : last + 1]
    sliced = Melody(
        notes=notes,
        time_signature=melody.time_signature,
        tempo_bpm=melody.tempo_bpm,
        key_signature=melody.key_signature,
        title=melody.title,
    )
    shifted = Phrase(
        index=0,
        note_indices=tuple(i - first for i in phrase.note_indices),
        start_onset=phrase.start_onset,
        end_onset=phrase.end_onset,
    )
    return sliced, [shifted]
