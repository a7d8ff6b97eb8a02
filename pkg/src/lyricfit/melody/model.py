"""Core melody model: notes, melodies, phrases, prominence masks.

Beats are expressed in units of the time signature's denominator note
(a quarter note in 4/4, an eighth in 6/8), as exact fractions. A measure
therefore always spans ``numerator`` beats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import LyricfitError


@dataclass(frozen=True)
class Note:
    """One note or rest of a monophonic melody."""

    onset: Fraction
    duration: Fraction
    pitch: int | None = None  # MIDI number 0-127; None for rests
    is_rest: bool = False
    measure_index: int = 0
    beat_in_measure: Fraction = Fraction(0)
    tie_to_next: bool = False

    def __post_init__(self):
        if self.duration <= 0:
            raise LyricfitError(f"note duration must be positive, got {self.duration}")
        if self.onset < 0:
            raise LyricfitError(f"note onset must be >= 0, got {self.onset}")
        if self.is_rest and self.pitch is not None:
            raise LyricfitError("rest cannot carry a pitch")
        if not self.is_rest:
            if self.pitch is None:
                raise LyricfitError("sounding note needs a pitch")
            if not 0 <= self.pitch <= 127:
                raise LyricfitError(f"pitch {self.pitch} outside MIDI range")

    @property
    def end(self) -> Fraction:
        return self.onset + self.duration


@dataclass(frozen=True)
class Melody:
    """Ordered, non-overlapping notes plus score-level headers."""

    notes: tuple[Note, ...]
    time_signature: tuple[int, int] = (4, 4)
    tempo_bpm: float = 120.0
    key_signature: int = 0  # fifths offset, -7..7
    title: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "notes", tuple(self.notes))
        prev_end = Fraction(0)
        for note in self.notes:
            if note.onset < prev_end:
                raise LyricfitError(
                    f"notes overlap at onset {note.onset} (previous ends {prev_end})"
                )
            prev_end = note.end
        if self.tempo_bpm <= 0:
            raise LyricfitError("tempo must be positive")
        if not -7 <= self.key_signature <= 7:
            raise LyricfitError("key signature outside -7..7 fifths")

    def sounding_indices(self) -> list[int]:
        return [i for i, n in enumerate(self.notes) if not n.is_rest]

    @property
    def beats_per_measure(self) -> int:
        return self.time_signature[0]


@dataclass(frozen=True)
class Phrase:
    """A contiguous run of sounding notes; the unit one lyric line maps to.

    ``note_indices`` index into ``Melody.notes`` and cover sounding notes
    only; rests between them belong to no phrase.
    """

    index: int
    note_indices: tuple[int, ...]
    start_onset: Fraction
    end_onset: Fraction

    def __post_init__(self):
        object.__setattr__(self, "note_indices", tuple(self.note_indices))
        if not self.note_indices:
            raise LyricfitError("phrase needs at least one note")
        if any(b <= a for a, b in zip(self.note_indices, self.note_indices[1:])):
            raise LyricfitError("phrase note indices must strictly increase")

    def __len__(self) -> int:
        return len(self.note_indices)

    def notes(self, melody: Melody) -> list[Note]:
        return [melody.notes[i] for i in self.note_indices]

    def tie_chain_heads(self, melody: Melody) -> list[int]:
        """Positions (within the phrase) that start a tie chain.

        One sung syllable spans a whole tie chain, so lyric alignment
        counts chain heads rather than raw notes.
        """
        heads = []
        prev_tied = False
        for pos, idx in enumerate(self.note_indices):
            if not prev_tied:
                heads.append(pos)
            prev_tied = melody.notes[idx].tie_to_next
        return heads


@dataclass(frozen=True)
class ProminenceMask:
    """Per-note prominence flags for one phrase."""

    phrase_index: int
    prominent: tuple[bool, ...]

    def __post_init__(self):
        object.__setattr__(self, "prominent", tuple(self.prominent))


@dataclass(frozen=True)
class SegmentationConfig:
    """Tunable thresholds for the rhythmic-cue segmenter."""

    min_rest_beats: Fraction = Fraction(1)
    long_note_factor: Fraction = Fraction(2)
    min_phrase_notes: int = 3
    max_phrase_notes: int = 16

    def __post_init__(self):
        object.__setattr__(self, "min_rest_beats", Fraction(self.min_rest_beats))
        object.__setattr__(self, "long_note_factor", Fraction(self.long_note_factor))
        if self.min_rest_beats <= 0 or self.long_note_factor <= 0:
            raise LyricfitError("segmentation thresholds must be positive")
        if self.min_phrase_notes <= 0 or self.max_phrase_notes <= 0:
            raise LyricfitError("phrase size bounds must be positive")
        if self.min_phrase_notes > self.max_phrase_notes:
            raise LyricfitError("min_phrase_notes must not exceed max_phrase_notes")
