"""Lyric-to-melody fitting: alignment, scoring, candidates, diagnostics."""

from .align import Alignment, align, syllable_layout
from .pipeline import MAX_CANDIDATES, REPHRASE_COUNT, fit_line
from .scoring import (
    Candidate,
    candidate_sort_key,
    compare_candidates,
    keyword_hits,
    prosody_score,
)
from .singability import (
    ExcessSyllables,
    SingabilityReport,
    StressOffProminent,
    UnfilledNotes,
    validate_singability,
)

__all__ = [
    "Alignment",
    "align",
    "syllable_layout",
    "MAX_CANDIDATES",
    "REPHRASE_COUNT",
    "fit_line",
    "Candidate",
    "candidate_sort_key",
    "compare_candidates",
    "keyword_hits",
    "prosody_score",
    "ExcessSyllables",
    "SingabilityReport",
    "StressOffProminent",
    "UnfilledNotes",
    "validate_singability",
]
