"""Request/response models for the JSON API."""

from __future__ import annotations

from pydantic import BaseModel, Field

from ..fitting import SingabilityReport
from .project import Project

# -- requests ---------------------------------------------------------------


class SettingsIn(BaseModel):
    version: int
    title: str | None = None
    theme: str | None = None
    keywords: list[str] | None = None


class BrainstormIn(BaseModel):
    input: str | None = None


class RhymeIn(BaseModel):
    word: str = Field(min_length=1)
    syllables: int | None = Field(default=None, ge=1, le=9)


class VersionIn(BaseModel):
    version: int


class DraftIn(BaseModel):
    version: int
    text: str | None = None


class SelectIn(BaseModel):
    version: int
    rank: int = Field(ge=1)


class SyllableBoxesIn(BaseModel):
    version: int
    boxes: list[str]


class SynthesizeIn(BaseModel):
    phrase_index: int | None = None


# -- responses ----------------------------------------------------------------


class AlignmentOut(BaseModel):
    phrase_index: int
    exact: bool
    syllable_to_note: list[tuple[tuple[int, int], int]]


class SelectedOut(BaseModel):
    text: str
    alignment: AlignmentOut


class CandidateOut(BaseModel):
    text: str
    rank: int
    keyword_hits: int
    prosody_score: int
    exact: bool


class PhraseOut(BaseModel):
    index: int
    note_count: int
    box_count: int
    start_onset: str
    end_onset: str


class ProjectOut(BaseModel):
    id: str
    version: int
    title: str | None
    theme: str
    keywords: list[str]
    has_melody: bool
    melody_title: str | None
    time_signature: tuple[int, int] | None
    phrases: list[PhraseOut]
    drafts: list[str | None]
    selected: list[SelectedOut | None]
    candidate_sets: list[list[CandidateOut]]


class ProjectListOut(BaseModel):
    projects: list[str]


class PhraseListOut(BaseModel):
    id: str
    version: int
    phrase_count: int
    phrases: list[PhraseOut]


class BrainstormOut(BaseModel):
    phrases: list[str]


class RhymeOut(BaseModel):
    word: str
    suggestions: list[str]


class IssueOut(BaseModel):
    kind: str
    detail: dict


class ReportOut(BaseModel):
    ok: bool
    issues: list[IssueOut]


class EditResultOut(BaseModel):
    project: ProjectOut
    report: ReportOut


class ExportOut(BaseModel):
    abc: str


class SynthesizeOut(BaseModel):
    audio: str
    cached: bool


class NoteOut(BaseModel):
    position: int
    pitch: int | None
    duration: str
    duration_class: str
    measure: int
    prominent: bool
    is_box: bool
    lyric: str


class ScorePhraseOut(BaseModel):
    index: int
    note_count: int
    box_count: int
    draft: str | None
    selected_text: str | None
    selected_exact: bool | None
    notes: list[NoteOut]


class ScoreOut(BaseModel):
    id: str
    version: int
    phrases: list[ScorePhraseOut]


# -- converters ---------------------------------------------------------------


def project_out(project: Project) -> ProjectOut:
    melody = project.melody
    return ProjectOut(
        id=project.id,
        version=project.version,
        title=project.title,
        theme=project.theme,
        keywords=list(project.keywords),
        has_melody=melody is not None,
        melody_title=melody.title if melody else None,
        time_signature=melody.time_signature if melody else None,
        phrases=[_phrase_out(project, p) for p in project.phrases],
        drafts=list(project.drafts),
        selected=[
            SelectedOut(
                text=s.text,
                alignment=AlignmentOut(
                    phrase_index=s.alignment.phrase_index,
                    exact=s.alignment.exact,
                    syllable_to_note=list(s.alignment.syllable_to_note),
                ),
            )
            if s
            else None
            for s in project.selected
        ],
        candidate_sets=[
            [
                CandidateOut(
                    text=c.text,
                    rank=c.rank,
                    keyword_hits=c.keyword_hits,
                    prosody_score=c.prosody_score,
                    exact=c.alignment.exact,
                )
                for c in cs
            ]
            for cs in project.candidate_sets
        ],
    )


def _phrase_out(project: Project, phrase) -> PhraseOut:
    return PhraseOut(
        index=phrase.index,
        note_count=len(phrase),
        box_count=len(phrase.tie_chain_heads(project.melody)),
        start_onset=str(phrase.start_onset),
        end_onset=str(phrase.end_onset),
    )


def phrase_list_out(project: Project) -> PhraseListOut:
    return PhraseListOut(
        id=project.id,
        version=project.version,
        phrase_count=len(project.phrases),
        phrases=[_phrase_out(project, p) for p in project.phrases],
    )


def report_out(report: SingabilityReport) -> ReportOut:
    issues = []
    for issue in report.issues:
        detail = {k: getattr(issue, k) for k in issue.__dataclass_fields__}
        issues.append(IssueOut(kind=type(issue).__name__, detail=detail))
    return ReportOut(ok=report.ok, issues=issues)
