"""Rhyme keys and rhyme testing.

Two words rhyme when their phoneme suffixes from the last stressed vowel
match exactly. A vowel-only mode relaxes this to shared final stressed
vowel (slant rhyme) without changing the strict default.
"""

from __future__ import annotations

from ..errors import NoVowel
from .lexicon import VOWELS, Lexicon, default_lexicon, is_vowel, strip_stress


def rhyme_key(word: str, lexicon: Lexicon | None = None, vowel_only: bool = False) -> str:
    lexicon = lexicon or default_lexicon()
    phones = lexicon.lookup(_clean(word))
    if phones is not None:
        return _key_from_phones(phones, vowel_only)
    return _heuristic_key(_clean(word), vowel_only)


def rhymes(
    a: str,
    b: str,
    lexicon: Lexicon | None = None,
    vowel_only: bool = False,
) -> bool:
    if _clean(a).lower() == _clean(b).lower():
        return False
    return rhyme_key(a, lexicon, vowel_only) == rhyme_key(b, lexicon, vowel_only)


def _clean(word: str) -> str:
    from .words import clean_token

    return clean_token(word)


def _key_from_phones(phones: tuple[str, ...], vowel_only: bool) -> str:
    stressed = [
        i for i, p in enumerate(phones)
        if is_vowel(p) and p[-1] in ("1", "2")
    ]
    if stressed:
        anchor = stressed[-1]
    else:
        nuclei = [i for i, p in enumerate(phones) if is_vowel(p)]
        if not nuclei:
            raise NoVowel(f"no vowel in pronunciation {' '.join(phones)}")
        anchor = nuclei[-1]
    if vowel_only:
        return strip_stress(phones[anchor])
    return " ".join(strip_stress(p) for p in phones[anchor:])


def _heuristic_key(word: str, vowel_only: bool) -> str:
    lower = word.lower()
    vowel_positions = [i for i, ch in enumerate(lower) if ch in "aeiouy"]
    if not vowel_positions:
        raise NoVowel(f"no vowel letters in {word!r}")
    start = vowel_positions[-1]
    while start > 0 and lower[start - 1] in "aeiouy":
        start -= 1
    suffix = lower[start:]
    if vowel_only:
        suffix = "".join(ch for ch in suffix if ch in "aeiouy")
    return f"~{suffix}"  # marked so heuristic keys never equal ARPABET keys
