"""Command-line interface: outputs, exit codes, golden determinism."""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from helpers.musicxml_builder import build_musicxml
from helpers.song_fixture import eight_phrase_song
from lyricfit.cli import main

GOLDEN = Path(__file__).parent / "goldens" / "cli_fit.json"

DRAFTS = [
    "the moon will rise tonight",
    "we walk the silent road home",
    "every echo fades away",
    "hold the light against the dark",
    "rivers carry what we lose",
    "morning finds us far from home",
    "shadows stretch across the field",
    "sing the night into the day",
]

FIT_ARGS = ["--theme", "a night drive", "--keywords", "moon,road", "--mock-seed", "1"]


@pytest.fixture()
def song(tmp_path) -> Path:
    path = tmp_path / "song.musicxml"
    path.write_bytes(eight_phrase_song())
    return path


def write_lines(tmp_path, lines, name="lyrics.txt") -> Path:
    path = tmp_path / name
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


class TestSegment:
    def test_json_listing(self, song, capsys):
        assert main(["--json", "segment", str(song)]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert len(payload["phrases"]) == 8
        assert all(p["note_count"] == 8 for p in payload["phrases"])
        assert payload["phrases"][0]["start_onset"] == "1"

    def test_plain_listing(self, song, capsys):
        assert main(["segment", str(song)]) == 0
        out = capsys.readouterr().out
        assert out.count("phrase ") == 8

    def test_rest_only_file_exits_2(self, tmp_path, capsys):
        path = tmp_path / "rests.musicxml"
        path.write_bytes(build_musicxml([[(None, 4)]]))
        assert main(["segment", str(path)]) == 2
        assert "error" in capsys.readouterr().err

    def test_missing_file_exits_2(self, tmp_path):
        assert main(["segment", str(tmp_path / "nope.xml")]) == 2

    def test_midi_input_accepted(self, tmp_path):
        from helpers.midi_builder import build_midi, note_track

        path = tmp_path / "song.mid"
        track = note_track(
            [(0, 480, 60), (480, 480, 62), (960, 480, 64), (1440, 480, 65)]
        )
        path.write_bytes(build_midi([track]))
        assert main(["segment", str(path)]) == 0


class TestCount:
    def test_counts_per_line(self, tmp_path, capsys):
        lyrics = write_lines(tmp_path, ["the moon", "", "beneath the candlelight"])
        assert main(["--json", "count", str(lyrics)]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert [e["syllables"] for e in payload["lines"]] == [2, 6]


class TestCheck:
    def test_singable_lyrics_exit_0(self, song, tmp_path, capsys):
        lyrics = write_lines(
            tmp_path, ["the moon the stars shine bright the night"] * 8
        )
        assert main(["--json", "check", str(song), str(lyrics)]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["ok"] is True
        assert all(e["ok"] for e in payload["lines"])

    def test_overfull_line_reports_excess(self, song, tmp_path, capsys):
        lines = ["the moon the stars shine bright the night"] * 8
        lines[5] = "beneath the candlelight we linger on and on"  # 12 syllables
        lyrics = write_lines(tmp_path, lines)
        assert main(["--json", "check", str(song), str(lyrics)]) == 2
        payload = json.loads(capsys.readouterr().out)
        assert payload["ok"] is False
        bad = payload["lines"][5]
        assert any(issue["kind"] == "ExcessSyllables" for issue in bad["issues"])

    def test_line_count_mismatch_exits_2(self, song, tmp_path, capsys):
        lyrics = write_lines(tmp_path, ["seven lines only"] * 7)
        assert main(["check", str(song), str(lyrics)]) == 2
        assert "7" in capsys.readouterr().err


class TestFit:
    def test_candidates_for_every_line(self, song, tmp_path, capsys):
        drafts = write_lines(tmp_path, DRAFTS)
        assert main(["--json", "fit", str(song), str(drafts), *FIT_ARGS]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert len(payload["lines"]) == 8
        for entry in payload["lines"]:
            ranks = [c["rank"] for c in entry["candidates"]]
            assert ranks == list(range(1, len(ranks) + 1))
            assert all(c["exact"] for c in entry["candidates"])

    def test_select_top_emits_abc(self, song, tmp_path, capsys):
        drafts = write_lines(tmp_path, DRAFTS)
        code = main(["fit", str(song), str(drafts), *FIT_ARGS, "--select-top"])
        assert code == 0
        out = capsys.readouterr().out
        assert "X:1" in out
        assert out.count("w:") == 8

    def test_mock_runs_are_byte_identical(self, song, tmp_path, capsys):
        drafts = write_lines(tmp_path, DRAFTS)
        argv = ["--json", "fit", str(song), str(drafts), *FIT_ARGS, "--select-top"]
        assert main(argv) == 0
        first = capsys.readouterr().out
        assert main(argv) == 0
        second = capsys.readouterr().out
        assert first == second

    def test_output_matches_committed_golden(self, song, tmp_path, capsys):
        drafts = write_lines(tmp_path, DRAFTS)
        argv = ["--json", "fit", str(song), str(drafts), *FIT_ARGS, "--select-top"]
        assert main(argv) == 0
        assert capsys.readouterr().out == GOLDEN.read_text(encoding="utf-8")

    def test_remote_unreachable_exits_3(self, song, tmp_path, capsys):
        drafts = write_lines(tmp_path, DRAFTS)
        config = tmp_path / "config.yaml"
        config.write_text(
            "generator:\n  mode: remote\n  endpoint: http://127.0.0.1:9/v1/chat\n",
            encoding="utf-8",
        )
        code = main(
            ["--config", str(config), "fit", str(song), str(drafts), "--remote"]
        )
        assert code == 3
        assert "error" in capsys.readouterr().err

    def test_conflicting_generator_flags_exit_1(self, song, tmp_path):
        drafts = write_lines(tmp_path, DRAFTS)
        code = main(
            ["fit", str(song), str(drafts), "--remote", "--mock-seed", "2"]
        )
        assert code == 1


class TestUsage:
    def test_unknown_command_exits_1(self):
        assert main(["conjure"]) == 1

    def test_help_exits_0(self):
        assert main(["--help"]) == 0

    def test_console_script_installed(self, song):
        result = subprocess.run(
            [sys.executable, "-m", "lyricfit.cli", "segment", str(song)],
            capture_output=True,
            text=True,
        )
        assert result.returncode == 0
        assert result.stdout.count("phrase ") == 8
