"""Pronunciation lexicon: ARPABET lookup, syllabification, syllable counts.

Lexicon entries are split into syllables around vowel nuclei with onset
maximization. Words outside the lexicon fall back to an orthographic
vowel-group heuristic with unknown (zero) stress.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from ..errors import EmptyLine, EmptyWord
from .words import clean_token, tokenize

VOWELS = frozenset(
    "AA AE AH AO AW AY EH ER EY IH IY OW OY UH UW".split()
)

# onsets a syllable may open with; used to place consonants between nuclei
_LEGAL_ONSETS = {
    ("P", "L"), ("P", "R"), ("P", "Y"), ("B", "L"), ("B", "R"), ("B", "Y"),
    ("T", "R"), ("T", "W"), ("D", "R"), ("D", "W"), ("K", "L"), ("K", "R"),
    ("K", "W"), ("K", "Y"), ("G", "L"), ("G", "R"), ("G", "W"), ("F", "L"),
    ("F", "R"), ("F", "Y"), ("V", "Y"), ("TH", "R"), ("TH", "W"), ("SH", "R"),
    ("HH", "Y"), ("M", "Y"), ("N", "Y"), ("S", "P"), ("S", "T"), ("S", "K"),
    ("S", "M"), ("S", "N"), ("S", "L"), ("S", "W"), ("S", "F"), ("S", "Y"),
    ("S", "P", "L"), ("S", "P", "R"), ("S", "P", "Y"), ("S", "T", "R"),
    ("S", "K", "R"), ("S", "K", "W"), ("S", "K", "Y"),
}
_NON_INITIAL = frozenset(["NG"])

_VOWEL_GROUP_RE = re.compile(r"[^aeiouy]*[aeiouy]+")


@dataclass(frozen=True)
class Syllable:
    phonemes: tuple[str, ...]
    stress: int  # 0 none, 1 primary, 2 secondary


@dataclass(frozen=True)
class Syllabification:
    word: str
    syllables: tuple[Syllable, ...]
    source: str  # "lexicon" or "heuristic"

    def __len__(self) -> int:
        return len(self.syllables)

    def stressed_index(self) -> int:
        """Primary-stress syllable, falling back to the first syllable."""
        for i, syl in enumerate(self.syllables):
            if syl.stress == 1:
                return i
        return 0


class Lexicon:
    """Immutable word → phoneme-sequence map, one pronunciation per word."""

    def __init__(self, entries: dict[str, tuple[str, ...]]):
        self._entries = entries

    @classmethod
    def load(cls, path=None) -> "Lexicon":
        if path is None:
            source = resources.files("lyricfit.prosody").joinpath("data/lexicon.txt")
            text = source.read_text(encoding="utf-8")
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        entries: dict[str, tuple[str, ...]] = {}
        for line in text.splitlines():
            if not line.strip() or line.startswith(";;;"):
                continue
            word, _, phones = line.partition("  ")
            entries.setdefault(word.upper(), tuple(phones.split()))
        return cls(entries)

    def lookup(self, word: str) -> tuple[str, ...] | None:
        return self._entries.get(word.upper())

    def __contains__(self, word: str) -> bool:
        return word.upper() in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def words(self):
        return self._entries.keys()


@lru_cache(maxsize=1)
def default_lexicon() -> Lexicon:
    return Lexicon.load()


def strip_stress(phoneme: str) -> str:
    return phoneme[:-1] if phoneme[-1].isdigit() else phoneme


def is_vowel(phoneme: str) -> bool:
    return strip_stress(phoneme) in VOWELS


def split_syllables(phonemes: tuple[str, ...]) -> tuple[Syllable, ...]:
    """Group phonemes into syllables, one vowel nucleus each."""
    nuclei = [i for i, p in enumerate(phonemes) if is_vowel(p)]
    if not nuclei:
        return ()
    syllables = []
    start = 0
    for which, nucleus in enumerate(nuclei):
        if which + 1 < len(nuclei):
            cluster = list(range(nucleus + 1, nuclei[which + 1]))
            onset_len = _max_onset(tuple(phonemes[i] for i in cluster))
            end = nuclei[which + 1] - onset_len
        else:
            end = len(phonemes)
        stress_digit = phonemes[nucleus][-1]
        syllables.append(
            Syllable(
                phonemes=tuple(strip_stress(p) for p in phonemes[start:end]),
                stress=int(stress_digit) if stress_digit.isdigit() else 0,
            )
        )
        start = end
    return tuple(syllables)


def _max_onset(cluster: tuple[str, ...]) -> int:
    for take in (3, 2):
        if len(cluster) >= take and cluster[-take:] in _LEGAL_ONSETS:
            return take
    if cluster and cluster[-1] not in _NON_INITIAL:
        return 1
    return 0


def syllabify(word: str, lexicon: Lexicon | None = None) -> Syllabification:
    lexicon = lexicon or default_lexicon()
    cleaned = clean_token(word)
    if not cleaned:
        raise EmptyWord(f"no letters in {word!r}")
    parts = [p for p in cleaned.split("-") if p]
    syllables: list[Syllable] = []
    source = "lexicon"
    for part in parts:
        phones = lexicon.lookup(part)
        if phones is not None:
            syllables.extend(split_syllables(phones))
        else:
            syllables.extend(_heuristic_syllables(part))
            source = "heuristic"
    return Syllabification(word=cleaned, syllables=tuple(syllables), source=source)


def _heuristic_syllables(word: str) -> list[Syllable]:
    lower = word.lower()
    chunks = _VOWEL_GROUP_RE.findall(lower)
    if not chunks:
        # no vowel letters: treat the whole word as one spoken unit ("hmm")
        return [Syllable(phonemes=(word.upper(),), stress=0)]
    matched = "".join(chunks)
    chunks[-1] += lower[len(matched):]  # trailing consonants
    if len(chunks) > 1:
        last = chunks[-1]
        silent_e = last.endswith("e") and not (last.endswith("le") and len(last) > 2)
        silent_ed = last.endswith("ed") and not last.endswith(("ted", "ded"))
        if silent_e or silent_ed:
            chunks[-2] += chunks[-1]
            chunks.pop()
    return [Syllable(phonemes=(c.upper(),), stress=0) for c in chunks]


def count_word_syllables(word: str, lexicon: Lexicon | None = None) -> int:
    return len(syllabify(word, lexicon))


def count_line_syllables(line: str, lexicon: Lexicon | None = None) -> int:
    if not line.strip():
        raise EmptyLine("cannot count syllables of an empty line")
    total = 0
    for token in tokenize(line):
        if clean_token(token):
            total += count_word_syllables(token, lexicon)
    if total == 0:
        raise EmptyLine("line contains no words")
    return total
