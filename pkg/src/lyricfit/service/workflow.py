"""Workflow operations over stored projects.

Each mutation loads the project, checks the caller's version, applies
the change, and commits through the store's optimistic version check.
"""

from __future__ import annotations

import random
from functools import lru_cache
from importlib import resources

from ..errors import (
    AlignmentError,
    DraftMissing,
    EmptyLine,
    MelodyMissing,
    NothingToExport,
    NotFound,
    NoVowel,
    ThemeMissing,
    TooManySyllables,
    UnsupportedContent,
    VersionConflict,
)
from ..export import grapheme_syllables, song_abc
from ..fitting import SingabilityReport, UnfilledNotes, align, fit_line, validate_singability
from ..generation import GenRequest, Generator, parse_lines
from ..generation.parsing import clean_item
from ..melody import (
    Melody,
    SegmentationConfig,
    parse_midi,
    parse_musicxml,
    prominent_notes,
    segment_phrases,
)
from ..prosody import Lexicon, count_word_syllables, rhymes, tokenize
from .project import Project, SelectedLine
from .store import ProjectStore
from .synthesis import CachingSynthesizer

_UNSET = object()

_DURATION_CLASSES = {
    (4, 1): "whole", (3, 1): "dotted-half", (2, 1): "half",
    (3, 2): "dotted-quarter", (1, 1): "quarter", (3, 4): "dotted-eighth",
    (1, 2): "eighth", (1, 4): "sixteenth",
}


@lru_cache(maxsize=1)
def preset_themes() -> tuple[str, ...]:
    source = resources.files("lyricfit.service").joinpath("data/themes.txt")
    lines = source.read_text(encoding="utf-8").splitlines()
    return tuple(line.strip() for line in lines if line.strip())


class Workflow:
    def __init__(
        self,
        store: ProjectStore,
        generator: Generator,
        synthesizer: CachingSynthesizer,
        lexicon: Lexicon | None = None,
        segmentation: SegmentationConfig | None = None,
        rng: random.Random | None = None,
    ):
        self.store = store
        self.generator = generator
        self.synthesizer = synthesizer
        self.lexicon = lexicon
        self.segmentation = segmentation or SegmentationConfig()
        self.rng = rng or random.Random()

    # -- lifecycle ---------------------------------------------------------

    def create_project(self) -> Project:
        return self.store.create()

    def get_project(self, project_id: str) -> Project:
        return self.store.get(project_id)

    def list_projects(self) -> list[str]:
        return self.store.list_ids()

    def delete_project(self, project_id: str) -> None:
        self.store.delete(project_id)

    def update_settings(
        self,
        project_id: str,
        version: int,
        title=_UNSET,
        theme=_UNSET,
        keywords=_UNSET,
    ) -> Project:
        project = self._load_for_update(project_id, version)
        if title is not _UNSET:
            project.title = title
        if theme is not _UNSET:
            project.theme = theme or ""
        if keywords is not _UNSET:
            project.keywords = list(keywords or [])
        return self.store.save(project, version)

    # -- melody ------------------------------------------------------------

    def upload_melody(
        self, project_id: str, version: int, data: bytes, fmt: str
    ) -> Project:
        fmt = fmt.lower().strip()
        if fmt in ("musicxml", "xml"):
            melody = parse_musicxml(data)
        elif fmt in ("midi", "mid"):
            melody = parse_midi(data)
        else:
            raise UnsupportedContent(f"unknown melody format {fmt!r}")
        phrases = segment_phrases(melody, self.segmentation)

        project = self._load_for_update(project_id, version)
        count = len(phrases)
        drafts: list[str | None] = [None] * count
        selected: list[SelectedLine | None] = [None] * count
        for i, draft in enumerate(project.drafts[:count]):
            drafts[i] = draft
        # lyric work survives melody changes: lines that still align stay
        # selected, the rest fall back to drafts for refitting
        for i, line in enumerate(project.selected[:count]):
            if line is None:
                continue
            try:
                selected[i] = SelectedLine(
                    text=line.text,
                    alignment=align(line.text, phrases[i], melody, self.lexicon),
                )
            except (TooManySyllables, EmptyLine):
                drafts[i] = line.text
        project.melody = melody
        project.phrases = list(phrases)
        project.drafts = drafts
        project.selected = selected
        project.candidate_sets = [()] * count
        return self.store.save(project, version)

    # -- ideation ----------------------------------------------------------

    def brainstorm(self, project_id: str, seed_input: str | None = None) -> list[str]:
        project = self.store.get(project_id)
        theme = project.theme.strip()
        if not theme:
            raise ThemeMissing("set a theme before brainstorming")
        request = GenRequest(
            template_id="brainstorm",
            variables={
                "title": project.title or "Untitled",
                "theme": theme,
                "input": (seed_input or "").strip() or theme,
            },
            max_items=5,
        )
        return parse_lines(self.generator.generate(request).raw, 5)

    def rhyme_suggest(
        self, project_id: str, word: str, syllables: int | None = None
    ) -> list[str]:
        project = self.store.get(project_id)
        theme = project.theme.strip()
        if not theme:
            raise ThemeMissing("set a theme before requesting rhymes")
        condition = (
            f"with {syllables} syllables" if syllables else "with no syllable restriction"
        )
        request = GenRequest(
            template_id="rhyme_recs",
            variables={
                "word": word,
                "syllable_condition": condition,
                "theme_condition": f"The theme is {theme}.",
            },
            max_items=8,
        )
        raw = self.generator.generate(request).raw
        suggestions = []
        seen = set()
        for line in raw.splitlines():
            for part in line.split(","):
                item = clean_item(part)
                if not item or item.lower() in seen:
                    continue
                try:
                    if rhymes(word, item, self.lexicon):
                        suggestions.append(item)
                        seen.add(item.lower())
                except NoVowel:
                    continue
        return suggestions[:8]

    # -- drafting ----------------------------------------------------------

    def generate_draft_all(self, project_id: str, version: int) -> Project:
        project = self._load_for_update(project_id, version)
        self._require_melody(project)
        count = len(project.phrases)
        request = GenRequest(
            template_id="draft_full",
            variables={
                "title": project.title or "Untitled",
                "theme": self._effective_theme(project),
                "key_words": ", ".join(project.keywords),
                "num_of_lines": str(count),
            },
            max_items=count,
        )
        lines = parse_lines(self.generator.generate(request).raw, count)
        for i, line in enumerate(lines):
            project.set_draft(i, line)
        return self.store.save(project, version)

    def generate_draft_single(
        self, project_id: str, version: int, phrase_index: int
    ) -> Project:
        project = self._load_for_update(project_id, version)
        self._require_melody(project)
        self._check_phrase(project, phrase_index)
        request = GenRequest(
            template_id="draft_single",
            variables={
                "title": project.title or "Untitled",
                "theme": self._effective_theme(project),
                "key_words": ", ".join(project.keywords),
                "context": self._surrounding_lines(project, phrase_index),
            },
            max_items=1,
        )
        line = parse_lines(self.generator.generate(request).raw, 1)[0]
        project.set_draft(phrase_index, line)
        return self.store.save(project, version)

    def set_draft(
        self, project_id: str, version: int, phrase_index: int, text: str | None
    ) -> Project:
        project = self._load_for_update(project_id, version)
        self._require_melody(project)
        self._check_phrase(project, phrase_index)
        cleaned = (text or "").strip()
        project.set_draft(phrase_index, cleaned or None)
        return self.store.save(project, version)

    # -- fitting -----------------------------------------------------------

    def fit(self, project_id: str, version: int, phrase_index: int) -> Project:
        project = self._load_for_update(project_id, version)
        self._require_melody(project)
        self._check_phrase(project, phrase_index)
        draft = project.drafts[phrase_index]
        if not draft:
            raise DraftMissing(f"phrase {phrase_index} has no draft to fit")
        context = [s.text for s in project.selected[:phrase_index] if s]
        candidates = fit_line(
            draft,
            project.phrases[phrase_index],
            project.melody,
            context=context,
            theme=project.theme,
            keywords=project.keywords,
            generator=self.generator,
            lexicon=self.lexicon,
        )
        project.candidate_sets[phrase_index] = tuple(candidates)
        return self.store.save(project, version)

    def select(
        self, project_id: str, version: int, phrase_index: int, rank: int
    ) -> Project:
        project = self._load_for_update(project_id, version)
        self._check_phrase(project, phrase_index)
        matches = [
            c for c in project.candidate_sets[phrase_index] if c.rank == rank
        ]
        if not matches:
            raise NotFound(f"phrase {phrase_index} has no candidate with rank {rank}")
        chosen = matches[0]
        project.selected[phrase_index] = SelectedLine(
            text=chosen.text, alignment=chosen.alignment
        )
        return self.store.save(project, version)

    def edit_syllables(
        self, project_id: str, version: int, phrase_index: int, boxes: list[str]
    ) -> tuple[Project, SingabilityReport]:
        project = self._load_for_update(project_id, version)
        self._require_melody(project)
        self._check_phrase(project, phrase_index)
        phrase = project.phrases[phrase_index]
        heads = phrase.tie_chain_heads(project.melody)
        if len(boxes) != len(heads):
            raise AlignmentError(
                f"expected {len(heads)} note boxes, got {len(boxes)}",
                phrase_index=phrase_index,
            )
        filled = [b.strip() for b in boxes]
        while filled and not filled[-1]:
            filled.pop()
        for pos, content in enumerate(filled):
            if not content:
                raise AlignmentError(
                    f"empty box before a filled one at note {pos}",
                    phrase_index=phrase_index,
                )
            if count_word_syllables(content, self.lexicon) > 1:
                raise AlignmentError(
                    f"more than one syllable in the box at note {pos}",
                    phrase_index=phrase_index,
                )

        if not filled:
            project.selected[phrase_index] = None
            self.store.save(project, version)
            return project, SingabilityReport(issues=(UnfilledNotes(len(heads)),))

        text = " ".join(_merge_boxes(filled))
        try:
            alignment = align(text, phrase, project.melody, self.lexicon)
        except TooManySyllables as exc:
            raise AlignmentError(
                f"edited boxes spell words with too many syllables ({exc})",
                phrase_index=phrase_index,
            ) from exc
        project.selected[phrase_index] = SelectedLine(text=text, alignment=alignment)
        self.store.save(project, version)
        report = validate_singability(text, phrase, project.melody, self.lexicon)
        return project, report

    # -- output ------------------------------------------------------------

    def export_abc(self, project_id: str, phrase_index: int | None = None) -> str:
        project = self.store.get(project_id)
        if project.melody is None:
            raise NothingToExport("upload a melody before exporting")
        if phrase_index is not None:
            self._check_phrase(project, phrase_index)
        lyrics = [s.text if s else None for s in project.selected]
        return song_abc(
            project.melody,
            project.phrases,
            lyrics,
            lexicon=self.lexicon,
            phrase_index=phrase_index,
        )

    def synthesize(
        self, project_id: str, phrase_index: int | None = None
    ) -> tuple[str, bool]:
        abc_text = self.export_abc(project_id, phrase_index)
        was_cached = self.synthesizer.cached(abc_text)
        return self.synthesizer.synthesize(abc_text), was_cached

    def score_projection(self, project_id: str) -> dict:
        """Per-note view for score rendering: pitch, duration class,
        prominence, and the lyric box under each note."""
        project = self.store.get(project_id)
        phrases_out = []
        for i, phrase in enumerate(project.phrases):
            mask = prominent_notes(project.melody, phrase)
            heads = set(phrase.tie_chain_heads(project.melody))
            boxes = self._selected_boxes(project, i)
            notes_out = []
            for pos, note in enumerate(phrase.notes(project.melody)):
                quarters = note.duration * 4 / project.melody.time_signature[1]
                notes_out.append(
                    {
                        "position": pos,
                        "pitch": note.pitch,
                        "duration": str(note.duration),
                        "duration_class": _DURATION_CLASSES.get(
                            (quarters.numerator, quarters.denominator), "other"
                        ),
                        "measure": note.measure_index,
                        "prominent": mask.prominent[pos],
                        "is_box": pos in heads,
                        "lyric": boxes.get(pos, ""),
                    }
                )
            line = project.selected[i]
            phrases_out.append(
                {
                    "index": i,
                    "note_count": len(phrase),
                    "box_count": len(heads),
                    "draft": project.drafts[i],
                    "selected_text": line.text if line else None,
                    "selected_exact": line.alignment.exact if line else None,
                    "notes": notes_out,
                }
            )
        return {"id": project.id, "version": project.version, "phrases": phrases_out}

    # -- internals ---------------------------------------------------------

    def _load_for_update(self, project_id: str, version: int) -> Project:
        project = self.store.get(project_id)
        if project.version != version:
            raise VersionConflict(supplied=version, current=project.version)
        return project

    def _require_melody(self, project: Project) -> Melody:
        if project.melody is None:
            raise MelodyMissing("upload a melody first")
        return project.melody

    def _check_phrase(self, project: Project, phrase_index: int) -> None:
        if not 0 <= phrase_index < len(project.phrases):
            raise NotFound(f"no phrase {phrase_index}")

    def _effective_theme(self, project: Project) -> str:
        if project.theme.strip() or (project.title or "").strip():
            return project.theme
        return self.rng.choice(preset_themes())

    def _surrounding_lines(self, project: Project, phrase_index: int) -> str:
        lines = []
        for j in range(len(project.phrases)):
            if j == phrase_index:
                continue
            line = project.selected[j]
            text = line.text if line else project.drafts[j]
            if text:
                lines.append(f"Line {j + 1}: {text}")
        return "\n".join(lines)

    def _selected_boxes(self, project: Project, phrase_index: int) -> dict[int, str]:
        line = project.selected[phrase_index]
        if line is None:
            return {}
        tokens = tokenize(line.text)
        chunks = {}
        boxes = {}
        for (word, syl), note_pos in line.alignment.syllable_to_note:
            if word not in chunks:
                chunks[word] = grapheme_syllables(tokens[word], self.lexicon)
            piece = chunks[word][syl]
            if syl < len(chunks[word]) - 1:
                piece += "-"
            boxes[note_pos] = piece
        return boxes


def _merge_boxes(filled: list[str]) -> list[str]:
    """Boxes ending in ``-`` continue their word into the next box."""
    words: list[str] = []
    continuing = False
    for content in filled:
        goes_on = content.endswith("-")
        piece = content.rstrip("-")
        if continuing and words:
            words[-1] += piece
        else:
            words.append(piece)
        continuing = goes_on
    return [w for w in words if w]
