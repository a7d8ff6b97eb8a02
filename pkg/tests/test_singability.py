"""Singability diagnostics on engineered MusicXML fixtures.

The fixtures encode known-good and known-flawed word placements (see
helpers.diagnostic_fixtures); this suite checks the validator recovers
exactly those findings.
"""

import random

import pytest

from helpers.diagnostic_fixtures import (
    EXPERIENCED_LINE,
    EXPERIENCED_XML,
    NOVICE_LINES,
    NOVICE_XML,
)
from helpers.melody_factory import make_melody
from lyricfit.errors import TooManySyllables
from lyricfit.fitting import (
    ExcessSyllables,
    StressOffProminent,
    UnfilledNotes,
    align,
    prosody_score,
    validate_singability,
)
from lyricfit.melody import parse_musicxml, prominent_notes, segment_phrases


@pytest.fixture(scope="module")
def experienced():
    melody = parse_musicxml(EXPERIENCED_XML)
    return melody, segment_phrases(melody)


@pytest.fixture(scope="module")
def novice():
    melody = parse_musicxml(NOVICE_XML)
    return melody, segment_phrases(melody)


class TestExperiencedFixture:
    def test_one_five_note_phrase(self, experienced):
        melody, phrases = experienced
        assert [len(p) for p in phrases] == [5]

    def test_important_words_sit_on_prominent_notes(self, experienced):
        melody, phrases = experienced
        report = validate_singability(EXPERIENCED_LINE, phrases[0], melody)
        off = report.of_kind(StressOffProminent)
        assert not any(issue.word in ("fight", "nights") for issue in off)

    def test_report_is_clean(self, experienced):
        melody, phrases = experienced
        report = validate_singability(EXPERIENCED_LINE, phrases[0], melody)
        assert report.ok
        assert report.issues == ()

    def test_line_scores_both_content_words(self, experienced):
        melody, phrases = experienced
        alignment = align(EXPERIENCED_LINE, phrases[0], melody)
        mask = prominent_notes(melody, phrases[0])
        assert alignment.exact
        assert prosody_score(alignment, EXPERIENCED_LINE, mask) == 2


class TestNoviceFixture:
    def test_three_phrases(self, novice):
        melody, phrases = novice
        assert [len(p) for p in phrases] == [6, 6, 4]

    def test_important_words_on_weak_notes(self, novice):
        melody, phrases = novice
        report = validate_singability(NOVICE_LINES[0], phrases[0], melody)
        off = report.of_kind(StressOffProminent)
        assert sorted(issue.word for issue in off) == ["echo", "laughs", "seems"]
        assert not report.of_kind(ExcessSyllables)
        assert not report.of_kind(UnfilledNotes)

    def test_erase_exceeds_remaining_notes(self, novice):
        melody, phrases = novice
        report = validate_singability(NOVICE_LINES[1], phrases[1], melody)
        assert report.issues == (ExcessSyllables("erase", 2, 1),)

    def test_candlelight_exceeds_remaining_notes(self, novice):
        melody, phrases = novice
        report = validate_singability(NOVICE_LINES[2], phrases[2], melody)
        assert report.issues == (ExcessSyllables("candlelight", 3, 1),)

    def test_align_rejects_the_overflowing_lines(self, novice):
        melody, phrases = novice
        for line, phrase in zip(NOVICE_LINES[1:], phrases[1:]):
            with pytest.raises(TooManySyllables):
                align(line, phrase, melody)


class TestReportSemantics:
    def test_seven_syllables_on_six_notes(self):
        melody = make_melody([(60 + i, 1) for i in range(6)])
        phrase = segment_phrases(melody)[0]
        report = validate_singability("twinkle twinkle little star", phrase, melody)
        assert report.of_kind(ExcessSyllables)

    def test_short_line_reports_unfilled_notes(self):
        melody = make_melody([(60 + i, 1) for i in range(6)])
        phrase = segment_phrases(melody)[0]
        report = validate_singability("the moon", phrase, melody)
        unfilled = report.of_kind(UnfilledNotes)
        assert unfilled == [UnfilledNotes(4)]

    def test_empty_report_iff_exact_and_stresses_prominent(self):
        from lyricfit.prosody import content_words

        rng = random.Random(419)
        vocab = ["moon", "shine", "the", "echo", "burn", "erase", "tonight", "a"]
        empties = 0
        for _ in range(300):
            note_count = rng.randint(1, 10)
            melody = make_melody(
                [(rng.randint(55, 79), 1) for _ in range(note_count)],
                time_signature=rng.choice([(4, 4), (3, 4)]),
            )
            phrase = segment_phrases(melody)[0]
            line = " ".join(rng.choice(vocab) for _ in range(rng.randint(1, 5)))
            report = validate_singability(line, phrase, melody)

            try:
                alignment = align(line, phrase, melody)
            except TooManySyllables:
                assert not report.ok
                assert report.of_kind(ExcessSyllables)
                continue
            mask = prominent_notes(melody, phrase)
            all_prominent = prosody_score(alignment, line, mask) == len(content_words(line))
            assert report.ok == (alignment.exact and all_prominent)
            empties += report.ok
        assert empties > 0
