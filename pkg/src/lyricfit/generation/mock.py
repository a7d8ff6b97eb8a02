"""Offline deterministic generators.

MockGenerator answers every template from seeded word banks built out of
the shipped lexicon, so revisions are syllable-exact and rhyme
suggestions really rhyme. Responses are a pure function of
(seed, request): no call-order state, safe under concurrency.
"""

from __future__ import annotations

import hashlib
import random
import re
from functools import lru_cache

from ..prosody import STOPWORDS, default_lexicon, rhyme_key, syllabify
from .base import GenRequest, GenResponse

_PHRASE_SHAPES = (
    "{input} in the quiet hours",
    "chasing {input} down the avenue",
    "{input} written on the midnight sky",
    "every heartbeat echoes {input}",
    "{input} like a lantern in the rain",
    "holding onto {input} one more time",
    "where {input} meets the morning light",
    "a whisper of {input} in the wind",
    "{input} carried on a slow refrain",
    "dancing with {input} till the dawn",
)


@lru_cache(maxsize=1)
def _syllable_banks() -> dict[int, tuple[str, ...]]:
    lexicon = default_lexicon()
    banks: dict[int, list[str]] = {1: [], 2: [], 3: []}
    for word in lexicon.words():
        if not word.isalpha():
            continue
        low = word.lower()
        if low in STOPWORDS:
            continue
        count = len(syllabify(low, lexicon))
        if count in banks:
            banks[count].append(low)
    return {size: tuple(sorted(words)) for size, words in banks.items()}


@lru_cache(maxsize=1)
def _rhyme_families() -> dict[str, tuple[str, ...]]:
    families: dict[str, list[str]] = {}
    for word in default_lexicon().words():
        if word.isalpha():
            try:
                families.setdefault(rhyme_key(word), []).append(word.lower())
            except Exception:
                continue
    return {key: tuple(sorted(words)) for key, words in families.items()}


class MockGenerator:
    """Deterministic stand-in for a remote language model."""

    def __init__(self, seed: int = 0):
        self.seed = seed

    def generate(self, request: GenRequest) -> GenResponse:
        rng = self._rng(request)
        handler = {
            "draft_full": self._draft_full,
            "draft_single": self._draft_single,
            "brainstorm": self._brainstorm,
            "rhyme_recs": self._rhyme_recs,
            "rephrase": self._rephrase,
            "revise_to_melody": self._revise,
        }[request.template_id]
        items = handler(request, rng)
        return GenResponse(raw="\n".join(items), parsed=tuple(items))

    def _rng(self, request: GenRequest) -> random.Random:
        payload = "|".join(
            [str(self.seed), request.template_id, str(request.max_items)]
            + [f"{k}={v}" for k, v in sorted(request.variables.items())]
        )
        digest = hashlib.sha256(payload.encode("utf-8")).digest()
        return random.Random(int.from_bytes(digest[:8], "big"))

    def _line(self, rng: random.Random, syllables: int, keywords: str = "") -> str:
        banks = _syllable_banks()
        pieces: list[str] = []
        remaining = syllables
        for keyword in _split_list(keywords):
            need = _count(keyword)
            if 0 < need <= remaining and rng.random() < 0.75:
                pieces.append(keyword.lower())
                remaining -= need
        while remaining > 0:
            size = rng.choice([s for s in (1, 2, 3) if s <= remaining])
            pieces.append(rng.choice(banks[size]))
            remaining -= size
        rng.shuffle(pieces)
        return " ".join(pieces)

    def _draft_full(self, request: GenRequest, rng: random.Random) -> list[str]:
        count = int(request.variables.get("num_of_lines", request.max_items))
        keywords = request.variables.get("key_words", "")
        return [self._line(rng, rng.randint(6, 8), keywords) for _ in range(count)]

    def _draft_single(self, request: GenRequest, rng: random.Random) -> list[str]:
        keywords = request.variables.get("key_words", "")
        return [self._line(rng, rng.randint(6, 8), keywords)]

    def _brainstorm(self, request: GenRequest, rng: random.Random) -> list[str]:
        topic = request.variables.get("input", "").strip() or request.variables.get(
            "theme", "the song"
        )
        shapes = rng.sample(_PHRASE_SHAPES, 5)
        return [shape.format(input=topic) for shape in shapes]

    def _rhyme_recs(self, request: GenRequest, rng: random.Random) -> list[str]:
        word = request.variables.get("word", "").strip().lower()
        family = [w for w in _family_of(word) if w != word]
        wanted = _requested_syllables(request.variables.get("syllable_condition", ""))
        if wanted is not None:
            narrowed = [w for w in family if _count(w) == wanted]
            if len(narrowed) >= 4:
                family = narrowed
        picks = family[:] if len(family) <= 8 else rng.sample(family, 8)
        while len(picks) < 8:  # pad from the general bank; consumers re-filter
            filler = rng.choice(_syllable_banks()[1])
            if filler not in picks and filler != word:
                picks.append(filler)
        return [", ".join(picks)]

    def _rephrase(self, request: GenRequest, rng: random.Random) -> list[str]:
        line = request.variables.get("input", "").strip()
        shapes = [
            "{line} once more",
            "again {line}",
            "{line} anew",
            "still {line}",
            "oh {line}",
            "{line} tonight",
        ]
        return [shape.format(line=line) for shape in rng.sample(shapes, request.max_items)]

    def _revise(self, request: GenRequest, rng: random.Random) -> list[str]:
        target = int(request.variables["syllable_count"])
        keywords = request.variables.get("key_words", "")
        return [self._line(rng, target, keywords)]


class IdentityGenerator:
    """Echoes the input back; lets tests pin generator output exactly."""

    def generate(self, request: GenRequest) -> GenResponse:
        line = request.variables.get("input", "")
        items = [line] * request.max_items
        return GenResponse(raw="\n".join(items), parsed=tuple(items))


def _split_list(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def _count(text: str) -> int:
    from ..prosody import count_line_syllables

    try:
        return count_line_syllables(text)
    except Exception:
        return 0


def _family_of(word: str) -> list[str]:
    try:
        key = rhyme_key(word)
    except Exception:
        return []
    return list(_rhyme_families().get(key, ()))


def _requested_syllables(condition: str) -> int | None:
    match = re.search(r"(\d+)\s*syllable", condition)
    return int(match.group(1)) if match else None
