"""Phrase segmentation from rhythmic cues, and note prominence.

A boundary falls after a long silence or a long note; short fragments are
merged back and oversized phrases are re-split at their widest internal
inter-onset gap. A note is prominent when it sits on a strong beat, is
markedly longer than its phrase's median, or is a strict local pitch peak.
"""

from __future__ import annotations

from fractions import Fraction
from statistics import median

from ..errors import LyricfitError
from .model import Melody, Phrase, ProminenceMask, SegmentationConfig


def segment_phrases(
    melody: Melody, cfg: SegmentationConfig | None = None
) -> list[Phrase]:
    cfg = cfg or SegmentationConfig()
    sounding = melody.sounding_indices()
    if not sounding:
        raise LyricfitError("melody has no sounding notes")

    med = median(melody.notes[i].duration for i in sounding)
    long_threshold = cfg.long_note_factor * med

    # groups of positions into `sounding`; boundary after position p when a
    # cue fires, except inside a tie chain
    groups: list[list[int]] = [[]]
    for pos, idx in enumerate(sounding):
        groups[-1].append(pos)
        if pos == len(sounding) - 1:
            break
        note = melody.notes[idx]
        if note.tie_to_next:
            continue
        gap = melody.notes[sounding[pos + 1]].onset - note.end
        if gap >= cfg.min_rest_beats or note.duration >= long_threshold:
            groups.append([])

    groups = _merge_short(groups, cfg.min_phrase_notes)
    groups = _split_long(groups, sounding, melody, cfg)

    phrases = []
    for i, group in enumerate(groups):
        indices = tuple(sounding[p] for p in group)
        phrases.append(
            Phrase(
                index=i,
                note_indices=indices,
                start_onset=melody.notes[indices[0]].onset,
                end_onset=melody.notes[indices[-1]].end,
            )
        )
    return phrases


def _merge_short(groups: list[list[int]], min_notes: int) -> list[list[int]]:
    groups = [g[:] for g in groups]
    while len(groups) > 1:
        short = next((i for i, g in enumerate(groups) if len(g) < min_notes), None)
        if short is None:
            break
        if short == 0:
            groups[1] = groups[0] + groups[1]
            del groups[0]
        else:
            groups[short - 1] += groups[short]
            del groups[short]
    return groups


def _split_long(
    groups: list[list[int]],
    sounding: list[int],
    melody: Melody,
    cfg: SegmentationConfig,
) -> list[list[int]]:
    out: list[list[int]] = []
    for group in groups:
        out.extend(_split_one(group, sounding, melody, cfg))
    return out


def _split_one(group, sounding, melody, cfg) -> list[list[int]]:
    if len(group) <= cfg.max_phrase_notes:
        return [group]
    # candidate cut after local position k; never inside a tie chain,
    # preferring cuts that leave both halves at least min_phrase_notes
    candidates = []
    for k in range(len(group) - 1):
        note = melody.notes[sounding[group[k]]]
        if note.tie_to_next:
            continue
        gap = melody.notes[sounding[group[k + 1]]].onset - note.onset
        legal = k + 1 >= cfg.min_phrase_notes and len(group) - k - 1 >= cfg.min_phrase_notes
        candidates.append((legal, gap, k))
    if not candidates:
        return [group]
    best = max(candidates, key=lambda c: (c[0], c[1], -c[2]))
    k = best[2]
    left, right = group[: k + 1], group[k + 1 :]
    return _split_one(left, sounding, melody, cfg) + _split_one(right, sounding, melody, cfg)


def prominent_notes(melody: Melody, phrase: Phrase) -> ProminenceMask:
    notes = phrase.notes(melody)
    numerator = melody.time_signature[0]
    med = median(n.duration for n in notes)
    long_threshold = Fraction(3, 2) * med
    half_bar = Fraction(numerator, 2) if numerator % 2 == 0 else None

    flags = []
    for pos, note in enumerate(notes):
        strong = note.beat_in_measure == 0 or (
            half_bar is not None and note.beat_in_measure == half_bar
        )
        long_note = note.duration >= long_threshold
        peak = (pos == 0 or note.pitch > notes[pos - 1].pitch) and (
            pos == len(notes) - 1 or note.pitch > notes[pos + 1].pitch
        )
        flags.append(strong or long_note or peak)
    return ProminenceMask(phrase_index=phrase.index, prominent=tuple(flags))
