"""Persistence: JSON round-trips, optimistic versioning, concurrency."""

import json
import random
import threading

import pytest

from helpers.melody_factory import make_melody
from lyricfit.errors import NotFound, VersionConflict
from lyricfit.fitting import Candidate, align
from lyricfit.melody import segment_phrases
from lyricfit.service import ProjectStore, SelectedLine, from_doc, to_doc
from lyricfit.service.project import Project

ONE_SYLLABLE = ["day", "night", "sun", "rain", "moon", "star", "sea", "sky"]
TITLES = [None, "Night Drive", "Paper Moon", "Last Train Home"]
THEMES = ["", "a summer night by the sea", "letting go of the past", "city lights"]
DRAFTS = [None, "the moon will rise", "hold fast through the night", "echoes of tomorrow"]


def random_project(rng: random.Random) -> Project:
    project = Project(id=f"{rng.randrange(16**12):012x}", version=rng.randint(1, 99))
    project.title = rng.choice(TITLES)
    project.theme = rng.choice(THEMES)
    project.keywords = rng.sample(["moon", "tide", "echo", "satellite", "rain"], rng.randint(0, 4))
    if rng.random() < 0.15:
        return project  # fresh project, no melody yet

    events = []
    for _ in range(rng.randint(4, 18)):
        if rng.random() < 0.2:
            events.append((None, rng.choice([1, 2])))
        else:
            events.append((rng.randint(48, 84), rng.choice([1, 1, 1, 2]), rng.random() < 0.15))
    events.append((60, 1))
    melody = make_melody(events, title=rng.choice(TITLES))
    phrases = list(segment_phrases(melody))
    project.melody = melody
    project.phrases = phrases
    count = len(phrases)
    project.drafts = [rng.choice(DRAFTS) for _ in range(count)]
    project.selected = [None] * count
    project.candidate_sets = [()] * count

    def aligned_line(phrase):
        heads = phrase.tie_chain_heads(melody)
        words = [rng.choice(ONE_SYLLABLE) for _ in range(rng.randint(1, len(heads)))]
        line = " ".join(words)
        return line, align(line, phrase, melody)

    for i, phrase in enumerate(phrases):
        if rng.random() < 0.4:
            line, alignment = aligned_line(phrase)
            project.selected[i] = SelectedLine(text=line, alignment=alignment)
        if rng.random() < 0.4:
            cands = []
            for rank in range(1, rng.randint(2, 5)):
                line, alignment = aligned_line(phrase)
                cands.append(
                    Candidate(
                        text=line,
                        alignment=alignment,
                        keyword_hits=rng.randint(0, 3),
                        prosody_score=rng.randint(0, 4),
                        rank=rank,
                    )
                )
            project.candidate_sets[i] = tuple(cands)
    return project


class TestRoundTrip:
    def test_save_load_identity_over_randomized_states(self):
        rng = random.Random(421)
        for _ in range(500):
            project = random_project(rng)
            doc = json.loads(json.dumps(to_doc(project)))
            assert from_doc(doc) == project

    def test_document_is_plain_json(self):
        project = random_project(random.Random(7))
        text = json.dumps(to_doc(project))
        assert isinstance(text, str)

    def test_unknown_schema_rejected(self):
        doc = to_doc(random_project(random.Random(8)))
        doc["schema_version"] = 99
        with pytest.raises(ValueError):
            from_doc(doc)


class TestStoreLifecycle:
    def test_create_get(self, tmp_path):
        store = ProjectStore(tmp_path)
        created = store.create()
        assert created.version == 1
        assert store.get(created.id) == created

    def test_get_missing(self, tmp_path):
        with pytest.raises(NotFound):
            ProjectStore(tmp_path).get("nope")

    def test_list_ids_sorted(self, tmp_path):
        store = ProjectStore(tmp_path)
        ids = {store.create().id for _ in range(3)}
        assert store.list_ids() == sorted(ids)

    def test_delete(self, tmp_path):
        store = ProjectStore(tmp_path)
        pid = store.create().id
        store.delete(pid)
        assert store.list_ids() == []
        with pytest.raises(NotFound):
            store.delete(pid)

    def test_store_survives_reopen(self, tmp_path):
        store = ProjectStore(tmp_path)
        project = store.create()
        project.theme = "neon skylines"
        store.save(project, 1)
        reopened = ProjectStore(tmp_path)
        assert reopened.get(project.id).theme == "neon skylines"


class TestVersioning:
    def test_save_bumps_version(self, tmp_path):
        store = ProjectStore(tmp_path)
        project = store.create()
        project.theme = "x"
        assert store.save(project, 1).version == 2
        project.theme = "y"
        assert store.save(project, 2).version == 3

    def test_stale_save_rejected(self, tmp_path):
        store = ProjectStore(tmp_path)
        project = store.create()
        first = store.get(project.id)
        second = store.get(project.id)
        first.theme = "first writer"
        second.theme = "second writer"
        store.save(first, 1)
        with pytest.raises(VersionConflict) as excinfo:
            store.save(second, 1)
        assert excinfo.value.supplied == 1
        assert excinfo.value.current == 2
        assert store.get(project.id).theme == "first writer"

    def test_concurrent_updates_one_wins(self, tmp_path):
        store = ProjectStore(tmp_path)
        project = store.create()
        barrier = threading.Barrier(2)
        outcomes = []

        def writer(label):
            copy = store.get(project.id)
            copy.theme = label
            barrier.wait()
            try:
                store.save(copy, 1)
                outcomes.append(("ok", label))
            except VersionConflict:
                outcomes.append(("conflict", label))

        threads = [threading.Thread(target=writer, args=(f"w{i}",)) for i in range(2)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert sorted(kind for kind, _ in outcomes) == ["conflict", "ok"]
        winner = next(label for kind, label in outcomes if kind == "ok")
        assert store.get(project.id).theme == winner
