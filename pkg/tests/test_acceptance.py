"""Acceptance suite: one test per release guarantee.

Each test exercises one user-facing guarantee end to end and prints a
``PASS: ...`` line on success, so ``pytest -v`` (or ``-s``) reads as a
checklist.  Oracles are reused from the focused suites (brute-force
re-sorts, hand-transcribed fixtures, frozen goldens) rather than
re-derived from the implementation.
"""

import json
import random
import threading
import time

import pytest
from fastapi.testclient import TestClient

from helpers.abc_reader import parse_abc
from helpers.diagnostic_fixtures import (
    EXPERIENCED_LINE,
    EXPERIENCED_XML,
    NOVICE_LINES,
    NOVICE_XML,
)
from helpers.melody_factory import make_melody
from helpers.song_fixture import PHRASE_COUNT, eight_phrase_song
from lyricfit.cli import main
from lyricfit.errors import NoViableCandidate, VersionConflict
from lyricfit.fitting import (
    ExcessSyllables,
    StressOffProminent,
    candidate_sort_key,
    compare_candidates,
    fit_line,
    validate_singability,
)
from lyricfit.generation import GenResponse, MockGenerator, render
from lyricfit.melody import parse_musicxml, segment_phrases
from lyricfit.prosody import count_line_syllables, rhymes
from lyricfit.service import Project, ProjectStore, ServiceConfig, create_app, from_doc, to_doc
from lyricfit.service.synthesis import CachingSynthesizer, StubSynthesizer
from lyricfit.service.workflow import Workflow

from test_cli import DRAFTS as CLI_DRAFTS
from test_cli import FIT_ARGS as CLI_FIT_ARGS
from test_cli import GOLDEN as CLI_GOLDEN
from test_pipeline import ScriptedGenerator, quarter_phrase
from test_scoring import WORD_TABLE, fake_candidate, oracle_score
from test_segmentation import random_config, random_melody
from test_store import random_project
from test_templates import GOLDEN_CASES, GOLDEN_DIR

DRAFT_POOL = [
    "the moon will rise",
    "hold fast through the night",
    "every echo fades away",
    "we walk the road home",
    "morning light returns",
]


def test_workflow_end_to_end_on_eight_phrase_song(tmp_path):
    """Full create->settings->melody->ideate->draft->fit->select->export run
    over HTTP finishes in under ten seconds with eight sung lines."""
    started = time.monotonic()
    app = create_app(ServiceConfig(data_dir=tmp_path / "data"))
    with TestClient(app) as client:
        pid = client.post("/projects").json()["id"]
        version = client.patch(
            f"/projects/{pid}/settings",
            json={
                "version": 1,
                "title": "Acceptance Run",
                "theme": "a night drive",
                "keywords": ["moon", "road"],
            },
        ).json()["version"]
        uploaded = client.post(
            f"/projects/{pid}/melody",
            params={"version": version, "format": "musicxml"},
            content=eight_phrase_song(),
        ).json()
        assert uploaded["phrase_count"] == PHRASE_COUNT
        version = uploaded["version"]

        ideas = client.post(
            f"/projects/{pid}/brainstorm", json={"input": "headlights on the coast road"}
        ).json()["phrases"]
        assert len(ideas) == 5 and all(ideas)

        drafted = client.post(f"/projects/{pid}/drafts", json={"version": version}).json()
        assert all(drafted["drafts"])
        version = drafted["version"]

        for i in range(PHRASE_COUNT):
            fitted = client.post(
                f"/projects/{pid}/phrases/{i}/fit", json={"version": version}
            ).json()
            assert fitted["candidate_sets"][i], f"phrase {i} got no candidates"
            version = client.post(
                f"/projects/{pid}/phrases/{i}/select",
                json={"version": fitted["version"], "rank": 1},
            ).json()["version"]

        project = client.get(f"/projects/{pid}").json()
        selected = [s for s in project["selected"] if s is not None]
        assert len(selected) == PHRASE_COUNT

        abc = client.get(f"/projects/{pid}/export/abc").json()["abc"]

    headers, events, lyric_lines = parse_abc(abc)
    assert headers["X"] == "1" and headers["M"] == "4/4"
    assert len([e for e in events if e[0] is not None]) == PHRASE_COUNT * 8
    assert abc.count("\nw:") == PHRASE_COUNT and len(lyric_lines) == PHRASE_COUNT
    elapsed = time.monotonic() - started
    assert elapsed < 10.0, f"workflow took {elapsed:.1f}s"
    print("PASS: eight-phrase workflow end to end in under ten seconds")


def test_segmentation_partitions_one_thousand_random_melodies():
    """Phrases always partition the sounding notes, in order, within the
    configured size bounds, across 1,000 randomized melodies."""
    started = time.monotonic()
    rng = random.Random(20260814)
    for _ in range(1000):
        melody = random_melody(rng)
        cfg = random_config(rng)
        phrases = segment_phrases(melody, cfg)
        covered = [i for p in phrases for i in p.note_indices]
        assert covered == melody.sounding_indices()
        assert [p.index for p in phrases] == list(range(len(phrases)))
        starts = [p.start_onset for p in phrases]
        assert starts == sorted(starts)
        assert all(len(p) <= cfg.max_phrase_notes for p in phrases)
        if len(phrases) > 1:
            assert all(len(p) >= cfg.min_phrase_notes for p in phrases)
    elapsed = time.monotonic() - started
    assert elapsed < 30.0, f"segmentation sweep took {elapsed:.1f}s"
    print("PASS: segmentation partition property on 1,000 random melodies")


def test_one_syllable_per_note_across_200_mock_runs():
    """Every candidate from 200 randomized mock fits sings exactly one
    syllable per tie-chain head; zero violations."""
    rng = random.Random(814)
    violations = []
    fitted_runs = 0
    for run in range(200):
        note_count = rng.randint(2, 12)
        events = []
        prev_tied = False
        for i in range(note_count):
            tie = not prev_tied and i < note_count - 1 and rng.random() < 0.2
            events.append((60 + (i * 3) % 12, 1, tie))
            prev_tied = tie
        melody = make_melody(events)
        phrase = segment_phrases(melody)[0]
        target = len(phrase.tie_chain_heads(melody))
        try:
            candidates = fit_line(
                rng.choice(DRAFT_POOL),
                phrase,
                melody,
                theme="night",
                keywords=["moon"],
                generator=MockGenerator(seed=run),
            )
        except NoViableCandidate:
            continue
        fitted_runs += 1
        for c in candidates:
            if count_line_syllables(c.text) != target:
                violations.append((run, c.text, target))
    assert fitted_runs >= 190  # the mock cooperates essentially always
    assert violations == []
    print("PASS: one syllable per note across 200 randomized mock fits")


def test_candidate_count_is_capped_at_four_and_reaches_four():
    """fit_line never returns more than four candidates, and returns exactly
    four when the generator supplies four valid revisions."""
    rng = random.Random(415)
    for run in range(40):
        melody, phrase = quarter_phrase(rng.randint(2, 10))
        candidates = fit_line(
            rng.choice(DRAFT_POOL),
            phrase,
            melody,
            theme="night",
            keywords=["moon"],
            generator=MockGenerator(seed=1000 + run),
        )
        assert 1 <= len(candidates) <= 4

    melody, phrase = quarter_phrase(4)
    revisions = {
        "one": "moon glow the tide",
        "two": "night falls the road",
        "three": "hold the last light",
        "four": "sing down the wire",
    }
    scripted = ScriptedGenerator(
        list(revisions), revise=lambda v: revisions[v["input"]]
    )
    candidates = fit_line("seed line", phrase, melody, generator=scripted)
    assert len(candidates) == 4
    assert [c.rank for c in candidates] == [1, 2, 3, 4]
    assert {c.text for c in candidates} == set(revisions.values())
    print("PASS: at most four candidates, exactly four when four revisions are valid")


def test_candidate_ordering_matches_brute_force_resort():
    """The published ordering equals an independent re-sort by
    (hits desc, prosody desc, exact first, generation order) on 1,000 sets,
    and prosody_score matches the exhaustive prominent-word oracle."""
    rng = random.Random(20240814)
    for _ in range(1000):
        group = [
            fake_candidate(rng.randint(0, 3), rng.randint(0, 3), rng.random() < 0.7)
            for _ in range(rng.randint(1, 8))
        ]
        expected = [
            group[i]
            for i in sorted(
                range(len(group)),
                key=lambda i: (
                    -group[i].keyword_hits,
                    -group[i].prosody_score,
                    0 if group[i].alignment.exact else 1,
                    i,
                ),
            )
        ]
        actual = sorted(group, key=candidate_sort_key)
        assert [id(c) for c in actual] == [id(c) for c in expected]
        for earlier, later in zip(actual, actual[1:]):
            assert compare_candidates(earlier, later) <= 0

    # prosody_score against the independent word-table oracle, phrases <= 12 notes
    from lyricfit.fitting import align, prosody_score
    from lyricfit.melody import ProminenceMask

    vocab = list(WORD_TABLE)
    checked = 0
    for _ in range(300):
        note_count = rng.randint(1, 12)
        melody, phrase = quarter_phrase(note_count)
        words, total = [], 0
        while len(words) < 5:
            word = rng.choice(vocab)
            need = WORD_TABLE[word][0] if WORD_TABLE[word] else 1
            if total + need > note_count:
                break
            words.append(word)
            total += need
        if not words:
            continue
        line = " ".join(words)
        alignment = align(line, phrase, melody)
        prominent = tuple(rng.random() < 0.5 for _ in range(note_count))
        mask = ProminenceMask(phrase_index=0, prominent=prominent)
        assert prosody_score(alignment, line, mask) == oracle_score(
            line, phrase.tie_chain_heads(melody), prominent
        ), line
        checked += 1
    assert checked >= 250
    print("PASS: candidate ordering matches brute-force re-sort; prosody matches oracle")


def test_diagnostics_reproduce_known_good_and_flawed_lyrics():
    """The singability report clears the well-set line and flags the known
    flaws in the three problem lines."""
    melody = parse_musicxml(EXPERIENCED_XML)
    (phrase,) = segment_phrases(melody)
    report = validate_singability(EXPERIENCED_LINE, phrase, melody)
    assert report.ok and report.issues == ()
    assert not any(
        issue.word in ("fight", "nights") for issue in report.of_kind(StressOffProminent)
    )

    melody = parse_musicxml(NOVICE_XML)
    phrases = segment_phrases(melody)
    first = validate_singability(NOVICE_LINES[0], phrases[0], melody)
    assert sorted(i.word for i in first.of_kind(StressOffProminent)) == [
        "echo",
        "laughs",
        "seems",
    ]
    assert not first.of_kind(ExcessSyllables)
    assert validate_singability(NOVICE_LINES[1], phrases[1], melody).issues == (
        ExcessSyllables("erase", 2, 1),
    )
    assert validate_singability(NOVICE_LINES[2], phrases[2], melody).issues == (
        ExcessSyllables("candlelight", 3, 1),
    )
    print("PASS: diagnostics reproduce the known-good and flawed lyric fixtures")


def test_prompt_goldens_and_rhyme_post_filter(tmp_path):
    """Rendered prompts match the frozen goldens byte for byte, and every
    rhyme suggestion the service surfaces actually rhymes with the query."""
    for template_id, variables in GOLDEN_CASES.items():
        golden = (GOLDEN_DIR / f"{template_id}.golden.txt").read_bytes()
        assert render(template_id, variables).encode("utf-8") == golden, template_id

    for word, suggestion in [
        ("cat", "bat"),
        ("cat", "rat"),
        ("cat", "gnat"),
        ("cat", "mat"),
        ("light", "invite"),
        ("light", "ignite"),
    ]:
        assert rhymes(word, suggestion), f"{word} / {suggestion}"

    class CannedRhymes:
        def __init__(self, raw):
            self.raw = raw

        def generate(self, request):
            assert request.template_id == "rhyme_recs"
            return GenResponse(self.raw, ())

    store = ProjectStore(tmp_path / "data")
    for word, raw in [
        ("cat", "bat, rat, gnat, mat, dog, blue"),
        ("light", "invite, ignite, wrong, apple, night"),
    ]:
        workflow = Workflow(
            store, CannedRhymes(raw), CachingSynthesizer(StubSynthesizer())
        )
        project = workflow.create_project()
        workflow.update_settings(project.id, project.version, theme="animals")
        surfaced = workflow.rhyme_suggest(project.id, word)
        assert surfaced, f"no suggestions survived for {word}"
        assert all(rhymes(word, s) for s in surfaced)
    print("PASS: prompt goldens byte-identical; surfaced rhymes all rhyme")


def test_persistence_round_trip_and_concurrent_conflict(tmp_path):
    """save->load is the identity over 500 randomized projects, and exactly
    one of two concurrent updates is rejected."""
    rng = random.Random(2026)
    for _ in range(500):
        project = random_project(rng)
        assert from_doc(json.loads(json.dumps(to_doc(project)))) == project

    store = ProjectStore(tmp_path / "projects")
    base = store.create()
    barrier = threading.Barrier(2)
    outcomes = []
    lock = threading.Lock()

    def writer(theme):
        candidate = store.get(base.id)
        candidate.theme = theme
        barrier.wait()
        try:
            store.save(candidate, expected_version=1)
            result = "ok"
        except VersionConflict:
            result = "conflict"
        with lock:
            outcomes.append(result)

    threads = [threading.Thread(target=writer, args=(t,)) for t in ("first", "second")]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert sorted(outcomes) == ["conflict", "ok"]
    assert store.get(base.id).version == 2
    print("PASS: 500 persistence round-trips; concurrent update rejects exactly one")


def test_cli_fit_runs_are_byte_identical(tmp_path, capsys):
    """Two fits of the same song, drafts, and seed emit byte-identical JSON
    matching the committed golden."""
    song = tmp_path / "song.musicxml"
    song.write_bytes(eight_phrase_song())
    drafts = tmp_path / "drafts.txt"
    drafts.write_text("\n".join(CLI_DRAFTS) + "\n", encoding="utf-8")
    argv = ["--json", "fit", str(song), str(drafts), *CLI_FIT_ARGS, "--select-top"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    second = capsys.readouterr().out
    assert first == second
    assert first == CLI_GOLDEN.read_text(encoding="utf-8")
    print("PASS: seeded fit output byte-identical across runs and to the golden")
