"""ABC notation export (2.1 subset: X/T/M/L/Q/K headers, w: lyric lines).

Lyrics are supplied per phrase as words already split into syllables;
syllables of one word are joined with ``-`` and tie-chain continuations
emit ``_`` so every sounding note has exactly one lyric token.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import AlignmentError
from .model import Melody, Note, Phrase

_KEY_NAMES = {
    -7: "Cb", -6: "Gb", -5: "Db", -4: "Ab", -3: "Eb", -2: "Bb", -1: "F",
    0: "C", 1: "G", 2: "D", 3: "A", 4: "E", 5: "B", 6: "F#", 7: "C#",
}
_SHARP_ORDER = "FCGDAEB"
_FLAT_ORDER = "BEADGCF"
_SHARP_SPELLING = {0: ("C", 0), 1: ("C", 1), 2: ("D", 0), 3: ("D", 1), 4: ("E", 0),
                   5: ("F", 0), 6: ("F", 1), 7: ("G", 0), 8: ("G", 1), 9: ("A", 0),
                   10: ("A", 1), 11: ("B", 0)}
_FLAT_SPELLING = {0: ("C", 0), 1: ("D", -1), 2: ("D", 0), 3: ("E", -1), 4: ("E", 0),
                  5: ("F", 0), 6: ("G", -1), 7: ("G", 0), 8: ("A", -1), 9: ("A", 0),
                  10: ("B", -1), 11: ("B", 0)}
_ACCIDENTAL = {-1: "_", 0: "=", 1: "^"}

WordSyllables = list[str]
PhraseLyrics = list[WordSyllables]


def to_abc(
    melody: Melody,
    phrases: list[Phrase] | None = None,
    lyrics: list[PhraseLyrics | None] | None = None,
) -> str:
    if lyrics is not None and phrases is None:
        raise AlignmentError("lyrics need phrases to attach to")
    if lyrics is not None and len(lyrics) != len(phrases):
        raise AlignmentError("one lyric entry per phrase expected")

    num, den = melody.time_signature
    lines = [
        "X:1",
        *( [f"T:{melody.title}"] if melody.title else [] ),
        f"M:{num}/{den}",
        "L:1/8",
        f"Q:1/4={melody.tempo_bpm:g}",
        f"K:{_KEY_NAMES[melody.key_signature]}",
    ]

    for seg_positions, phrase_i in _music_lines(melody, phrases):
        lines.append(_render_music(melody, seg_positions))
        if lyrics is not None and phrase_i is not None and lyrics[phrase_i] is not None:
            lines.append(_render_lyrics(melody, phrases[phrase_i], lyrics[phrase_i]))
    return "\n".join(lines) + "\n"


def _music_lines(melody: Melody, phrases: list[Phrase] | None):
    """Yield (note positions, phrase index) per output line.

    With phrases, one line per phrase (trailing rests attached to the line
    before them); otherwise a line break every four measures.
    """
    n = len(melody.notes)
    if phrases:
        starts = [min(p.note_indices) for p in phrases]
        for i, phrase in enumerate(phrases):
            stop = starts[i + 1] if i + 1 < len(phrases) else n
            yield list(range(starts[i], stop)), i
        return
    group: list[int] = []
    group_measure = None
    for pos, note in enumerate(melody.notes):
        block = note.measure_index // 4
        if group and block != group_measure:
            yield group, None
            group = []
        group.append(pos)
        group_measure = block
    if group:
        yield group, None


def _render_music(melody: Melody, positions: list[int]) -> str:
    num, den = melody.time_signature
    key_alters = _key_alterations(melody.key_signature)
    tokens: list[str] = []
    measure_state: dict[tuple[str, int], int] = {}
    current_measure = melody.notes[positions[0]].measure_index
    last = positions[-1]
    for pos in positions:
        note = melody.notes[pos]
        if note.measure_index != current_measure:
            tokens.append("|")
            current_measure = note.measure_index
            measure_state = {}
        tokens.append(_render_note(note, den, key_alters, measure_state))
    if last == len(melody.notes) - 1:
        tokens.append("|]")
    else:
        tokens.append("|")
    return " ".join(tokens)


def _render_note(note: Note, den: int, key_alters, measure_state) -> str:
    units = note.duration * Fraction(8, den)
    if note.is_rest:
        return "z" + _length(units)
    letter, alter, octave = _spell(note.pitch, key_alters)
    state_key = (letter, octave)
    effective = measure_state.get(state_key, key_alters.get(letter, 0))
    accidental = "" if alter == effective else _ACCIDENTAL[alter]
    measure_state[state_key] = alter
    body = accidental + _octave_mark(letter, octave)
    tie = "-" if note.tie_to_next else ""
    return body + _length(units) + tie


def _spell(pitch: int, key_alters) -> tuple[str, int, int]:
    table = _FLAT_SPELLING if any(v < 0 for v in key_alters.values()) else _SHARP_SPELLING
    letter, alter = table[pitch % 12]
    octave = pitch // 12 - 1
    return letter, alter, octave


def _key_alterations(fifths: int) -> dict[str, int]:
    if fifths >= 0:
        return {letter: 1 for letter in _SHARP_ORDER[:fifths]}
    return {letter: -1 for letter in _FLAT_ORDER[:-fifths]}


def _octave_mark(letter: str, octave: int) -> str:
    # octave 4 (middle C) is uppercase, octave 5 lowercase, then ' and ,
    if octave >= 5:
        return letter.lower() + "'" * (octave - 5)
    return letter.upper() + "," * (4 - octave)


def _length(units: Fraction) -> str:
    if units == 1:
        return ""
    if units.denominator == 1:
        return str(units.numerator)
    return f"{units.numerator}/{units.denominator}"


def _render_lyrics(melody: Melody, phrase: Phrase, words: PhraseLyrics) -> str:
    heads = set(phrase.tie_chain_heads(melody))
    syllables = [
        (syl, i < len(word) - 1)  # (text, word continues)
        for word in words
        for i, syl in enumerate(word)
    ]
    if len(syllables) != len(heads):
        raise AlignmentError(
            f"{len(syllables)} syllable(s) for {len(heads)} singable note(s)",
            phrase_index=phrase.index,
        )
    out = "w: "
    syl_iter = iter(syllables)
    for pos in range(len(phrase.note_indices)):
        if pos in heads:
            text, continues = next(syl_iter)
            out += text + ("-" if continues else " ")
        else:
            out += "_ "  # tie continuation holds the previous syllable
    return out.rstrip()
