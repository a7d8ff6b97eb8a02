"""Project state: the document the service persists and mutates.

One project tracks the whole writing workflow: settings, the melody and
its phrases, per-phrase draft lines, fitted candidate sets, and the
selected (aligned) line per phrase.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..fitting import Alignment, Candidate
from ..melody import Melody, Note, Phrase

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class SelectedLine:
    text: str
    alignment: Alignment


@dataclass
class Project:
    id: str
    version: int = 1
    title: str | None = None
    theme: str = ""
    keywords: list[str] = field(default_factory=list)
    melody: Melody | None = None
    phrases: list[Phrase] = field(default_factory=list)
    drafts: list[str | None] = field(default_factory=list)
    selected: list[SelectedLine | None] = field(default_factory=list)
    candidate_sets: list[tuple[Candidate, ...]] = field(default_factory=list)

    def set_draft(self, phrase_index: int, text: str | None) -> None:
        """Replace one draft line; its stale candidate set is dropped."""
        self.drafts[phrase_index] = text
        self.candidate_sets[phrase_index] = ()


def to_doc(project: Project) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "id": project.id,
        "version": project.version,
        "title": project.title,
        "theme": project.theme,
        "keywords": list(project.keywords),
        "melody": _melody_doc(project.melody) if project.melody else None,
        "phrases": [_phrase_doc(p) for p in project.phrases],
        "drafts": list(project.drafts),
        "selected": [
            {"text": s.text, "alignment": _alignment_doc(s.alignment)} if s else None
            for s in project.selected
        ],
        "candidate_sets": [
            [_candidate_doc(c) for c in cs] for cs in project.candidate_sets
        ],
    }


def from_doc(doc: dict) -> Project:
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported project schema {doc.get('schema_version')!r}")
    return Project(
        id=doc["id"],
        version=doc["version"],
        title=doc["title"],
        theme=doc["theme"],
        keywords=list(doc["keywords"]),
        melody=_melody_from(doc["melody"]) if doc["melody"] else None,
        phrases=[_phrase_from(p) for p in doc["phrases"]],
        drafts=list(doc["drafts"]),
        selected=[
            SelectedLine(text=s["text"], alignment=_alignment_from(s["alignment"]))
            if s
            else None
            for s in doc["selected"]
        ],
        candidate_sets=[
            tuple(_candidate_from(c) for c in cs) for cs in doc["candidate_sets"]
        ],
    )


def _melody_doc(melody: Melody) -> dict:
    return {
        "notes": [
            {
                "onset": str(n.onset),
                "duration": str(n.duration),
                "pitch": n.pitch,
                "is_rest": n.is_rest,
                "measure_index": n.measure_index,
                "beat_in_measure": str(n.beat_in_measure),
                "tie_to_next": n.tie_to_next,
            }
            for n in melody.notes
        ],
        "time_signature": list(melody.time_signature),
        "tempo_bpm": melody.tempo_bpm,
        "key_signature": melody.key_signature,
        "title": melody.title,
    }


def _melody_from(doc: dict) -> Melody:
    return Melody(
        notes=tuple(
            Note(
                onset=Fraction(n["onset"]),
                duration=Fraction(n["duration"]),
                pitch=n["pitch"],
                is_rest=n["is_rest"],
                measure_index=n["measure_index"],
                beat_in_measure=Fraction(n["beat_in_measure"]),
                tie_to_next=n["tie_to_next"],
            )
            for n in doc["notes"]
        ),
        time_signature=tuple(doc["time_signature"]),
        tempo_bpm=doc["tempo_bpm"],
        key_signature=doc["key_signature"],
        title=doc["title"],
    )


def _phrase_doc(phrase: Phrase) -> dict:
    return {
        "index": phrase.index,
        "note_indices": list(phrase.note_indices),
        "start_onset": str(phrase.start_onset),
        "end_onset": str(phrase.end_onset),
    }


def _phrase_from(doc: dict) -> Phrase:
    return Phrase(
        index=doc["index"],
        note_indices=tuple(doc["note_indices"]),
        start_onset=Fraction(doc["start_onset"]),
        end_onset=Fraction(doc["end_onset"]),
    )


def _alignment_doc(alignment: Alignment) -> dict:
    return {
        "phrase_index": alignment.phrase_index,
        "exact": alignment.exact,
        "syllable_to_note": [
            [[w, s], note] for (w, s), note in alignment.syllable_to_note
        ],
    }


def _alignment_from(doc: dict) -> Alignment:
    return Alignment(
        phrase_index=doc["phrase_index"],
        exact=doc["exact"],
        syllable_to_note=tuple(
            ((pair[0], pair[1]), note) for pair, note in doc["syllable_to_note"]
        ),
    )


def _candidate_doc(candidate: Candidate) -> dict:
    return {
        "text": candidate.text,
        "alignment": _alignment_doc(candidate.alignment),
        "keyword_hits": candidate.keyword_hits,
        "prosody_score": candidate.prosody_score,
        "rank": candidate.rank,
    }


def _candidate_from(doc: dict) -> Candidate:
    return Candidate(
        text=doc["text"],
        alignment=_alignment_from(doc["alignment"]),
        keyword_hits=doc["keyword_hits"],
        prosody_score=doc["prosody_score"],
        rank=doc["rank"],
    )


__all__ = ["Project", "SelectedLine", "SCHEMA_VERSION", "to_doc", "from_doc"]
