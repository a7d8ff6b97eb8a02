"""Rephrase -> revise -> validate -> rank candidate pipeline.

The four branches are independent and run concurrently; results join in
generation order before the final stable sort, so concurrent and serial
execution return identical candidate lists.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

from ..errors import CountMismatch, EmptyLine, NoViableCandidate, TooManySyllables
from ..generation import Generator, GenRequest, parse_lines
from ..melody import Melody, Phrase, prominent_notes
from ..prosody import Lexicon
from .align import Alignment, align
from .scoring import Candidate, candidate_sort_key, keyword_hits, prosody_score

REPHRASE_COUNT = 4
MAX_CANDIDATES = 4


def fit_line(
    draft: str,
    phrase: Phrase,
    melody: Melody,
    context: list[str] | None = None,
    theme: str = "",
    keywords: list[str] | None = None,
    generator: Generator | None = None,
    lexicon: Lexicon | None = None,
) -> list[Candidate]:
    if not draft.strip():
        raise ValueError("draft must be non-empty")
    if generator is None:
        raise ValueError("a generator is required")
    keywords = keywords or []
    context = context or []
    target = len(phrase.tie_chain_heads(melody))

    rephrase_request = GenRequest(
        "rephrase",
        {"input": draft, "num_of_variants": str(REPHRASE_COUNT)},
        max_items=REPHRASE_COUNT,
    )
    rephrasings = parse_lines(generator.generate(rephrase_request).raw, REPHRASE_COUNT)

    def run_branch(variant: str) -> tuple[str, Alignment] | None:
        return _revise_and_validate(
            variant, target, phrase, melody, context, theme, keywords, generator, lexicon
        )

    with ThreadPoolExecutor(max_workers=REPHRASE_COUNT) as pool:
        branch_results = list(pool.map(run_branch, rephrasings))

    survivors: list[tuple[str, Alignment]] = []
    seen: set[str] = set()
    for result in branch_results:  # generation order
        if result is None:
            continue
        text, alignment = result
        fingerprint = text.strip().lower()
        if fingerprint in seen:
            continue
        seen.add(fingerprint)
        survivors.append((text, alignment))
    if not survivors:
        raise NoViableCandidate(f"no revision of {draft!r} fit the phrase")

    mask = prominent_notes(melody, phrase)
    unranked = [
        Candidate(
            text=text,
            alignment=alignment,
            keyword_hits=keyword_hits(text, keywords),
            prosody_score=prosody_score(alignment, text, mask, lexicon),
            rank=0,
        )
        for text, alignment in survivors
    ]
    ordered = sorted(unranked, key=candidate_sort_key)[:MAX_CANDIDATES]
    return [
        Candidate(c.text, c.alignment, c.keyword_hits, c.prosody_score, rank)
        for rank, c in enumerate(ordered, start=1)
    ]


def _revise_and_validate(
    variant: str,
    target: int,
    phrase: Phrase,
    melody: Melody,
    context: list[str],
    theme: str,
    keywords: list[str],
    generator: Generator,
    lexicon: Lexicon | None,
) -> tuple[str, Alignment] | None:
    variables = {
        "input": variant,
        "syllable_count": str(target),
        "theme": theme,
        "key_words": ", ".join(keywords),
        "context": "\n".join(context),
    }
    text = _one_line(generator, variables)
    if text is None:
        return None
    try:
        return text, align(text, phrase, melody, lexicon)
    except EmptyLine:
        return None
    except TooManySyllables as err:
        # one repair attempt, telling the generator how far off it was
        variables = dict(variables, input=text, excess_syllables=str(err.excess))
        repaired = _one_line(generator, variables)
        if repaired is None:
            return None
        try:
            return repaired, align(repaired, phrase, melody, lexicon)
        except (EmptyLine, TooManySyllables):
            return None


def _one_line(generator: Generator, variables: dict[str, str]) -> str | None:
    response = generator.generate(GenRequest("revise_to_melody", variables, max_items=1))
    try:
        return parse_lines(response.raw, 1)[0]
    except CountMismatch:
        return None
