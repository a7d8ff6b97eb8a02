"""Command-line access to the engine.

Subcommands: segment a melody into phrases, count syllables of lyric
lines, check lyrics against a melody, run the fitting pipeline, serve
the HTTP API. Exit codes: 0 success, 1 usage, 2 input/parse problem,
3 generator/synthesis problem.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import errors as E
from .export import song_abc
from .fitting import fit_line, validate_singability
from .generation import MockGenerator
from .melody import parse_midi, parse_musicxml, segment_phrases
from .prosody import count_line_syllables
from .service.config import build_generator, load_config

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_GENERATOR = 3

_INPUT_ERRORS = (
    E.MalformedFile,
    E.UnsupportedContent,
    E.PolyphonyError,
    E.LineCountMismatch,
    E.EmptyLine,
    E.EmptyWord,
    E.EmptyText,
    OSError,
)
_GENERATOR_ERRORS = (
    E.GeneratorUnavailable,
    E.AuthError,
    E.SynthesisUnavailable,
    E.CountMismatch,
    E.NoViableCandidate,
)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except _GENERATOR_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GENERATOR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lyricfit", description="Write singable lyrics for a melody."
    )
    parser.add_argument("--config", type=Path, default=None, help="YAML config file")
    parser.add_argument(
        "--json", action="store_true", help="machine-readable JSON output"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_segment = sub.add_parser("segment", help="split a melody into phrases")
    p_segment.add_argument("melody", type=Path)
    p_segment.set_defaults(func=cmd_segment)

    p_count = sub.add_parser("count", help="count syllables per lyric line")
    p_count.add_argument("lyrics", type=Path)
    p_count.set_defaults(func=cmd_count)

    p_check = sub.add_parser("check", help="report singability problems per line")
    p_check.add_argument("melody", type=Path)
    p_check.add_argument("lyrics", type=Path)
    p_check.set_defaults(func=cmd_check)

    p_fit = sub.add_parser("fit", help="fit draft lines to melody phrases")
    p_fit.add_argument("melody", type=Path)
    p_fit.add_argument("drafts", type=Path)
    p_fit.add_argument("--theme", default="")
    p_fit.add_argument("--keywords", default="", help="comma-separated key words")
    p_fit.add_argument(
        "--mock-seed", type=int, default=None, help="run the offline mock generator"
    )
    p_fit.add_argument(
        "--remote", action="store_true", help="use the configured remote generator"
    )
    p_fit.add_argument(
        "--select-top",
        action="store_true",
        help="accept each line's top candidate and print the completed ABC",
    )
    p_fit.set_defaults(func=cmd_fit)

    p_serve = sub.add_parser("serve", help="run the HTTP API")
    p_serve.set_defaults(func=cmd_serve)
    return parser


def _load_melody(path: Path) -> bytes:
    return path.read_bytes()


def _parse_melody(path: Path):
    data = _load_melody(path)
    if path.suffix.lower() in (".mid", ".midi") or data[:4] == b"MThd":
        return parse_midi(data)
    return parse_musicxml(data)


def _read_lines(path: Path) -> list[str]:
    text = path.read_text(encoding="utf-8")
    return [line.strip() for line in text.splitlines() if line.strip()]


def _emit(args, payload: dict, plain: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(plain)


def cmd_segment(args) -> int:
    config = load_config(args.config)
    melody = _parse_melody(args.melody)
    phrases = segment_phrases(melody, config.segmentation)
    payload = {
        "phrases": [
            {
                "index": p.index,
                "note_count": len(p),
                "box_count": len(p.tie_chain_heads(melody)),
                "start_onset": str(p.start_onset),
                "end_onset": str(p.end_onset),
            }
            for p in phrases
        ]
    }
    plain = "\n".join(
        f"phrase {p.index}: {len(p)} notes, beats {p.start_onset} to {p.end_onset}"
        for p in phrases
    )
    _emit(args, payload, plain)
    return EXIT_OK


def cmd_count(args) -> int:
    lines = _read_lines(args.lyrics)
    counts = [count_line_syllables(line) for line in lines]
    payload = {
        "lines": [
            {"index": i, "text": line, "syllables": n}
            for i, (line, n) in enumerate(zip(lines, counts))
        ]
    }
    plain = "\n".join(f"{n:3d}  {line}" for line, n in zip(lines, counts))
    _emit(args, payload, plain)
    return EXIT_OK


def _issue_fields(issue) -> dict:
    return {name: getattr(issue, name) for name in issue.__dataclass_fields__}


def cmd_check(args) -> int:
    config = load_config(args.config)
    melody = _parse_melody(args.melody)
    phrases = segment_phrases(melody, config.segmentation)
    lines = _read_lines(args.lyrics)
    if len(lines) != len(phrases):
        raise E.LineCountMismatch(got=len(lines), expected=len(phrases))
    reports = [
        validate_singability(line, phrase, melody)
        for line, phrase in zip(lines, phrases)
    ]
    payload = {
        "ok": all(r.ok for r in reports),
        "lines": [
            {
                "index": i,
                "text": line,
                "ok": report.ok,
                "issues": [
                    {"kind": type(issue).__name__, **_issue_fields(issue)}
                    for issue in report.issues
                ],
            }
            for i, (line, report) in enumerate(zip(lines, reports))
        ],
    }
    plain_lines = []
    for entry in payload["lines"]:
        if entry["ok"]:
            plain_lines.append(f"line {entry['index'] + 1}: ok")
        else:
            details = "; ".join(
                issue["kind"]
                + "("
                + ", ".join(f"{k}={v}" for k, v in issue.items() if k != "kind")
                + ")"
                for issue in entry["issues"]
            )
            plain_lines.append(f"line {entry['index'] + 1}: {details}")
    _emit(args, payload, "\n".join(plain_lines))
    return EXIT_OK if payload["ok"] else EXIT_INPUT


def cmd_fit(args) -> int:
    config = load_config(args.config)
    if args.remote and args.mock_seed is not None:
        print("error: choose either --remote or --mock-seed", file=sys.stderr)
        return EXIT_USAGE
    if args.remote:
        generator = build_generator(config.generator)
    else:
        seed = args.mock_seed if args.mock_seed is not None else config.generator.seed
        generator = MockGenerator(seed=seed)

    melody = _parse_melody(args.melody)
    phrases = segment_phrases(melody, config.segmentation)
    lines = _read_lines(args.drafts)
    if len(lines) != len(phrases):
        raise E.LineCountMismatch(got=len(lines), expected=len(phrases))
    keywords = [k.strip() for k in args.keywords.split(",") if k.strip()]

    out_lines = []
    accepted: list[str | None] = []
    for i, (draft, phrase) in enumerate(zip(lines, phrases)):
        try:
            candidates = fit_line(
                draft,
                phrase,
                melody,
                context=[text for text in accepted if text],
                theme=args.theme,
                keywords=keywords,
                generator=generator,
            )
        except E.NoViableCandidate as exc:
            raise E.NoViableCandidate(f"line {i + 1}: {exc}") from exc
        accepted.append(candidates[0].text)
        out_lines.append(
            {
                "index": i,
                "draft": draft,
                "candidates": [
                    {
                        "rank": c.rank,
                        "text": c.text,
                        "keyword_hits": c.keyword_hits,
                        "prosody_score": c.prosody_score,
                        "exact": c.alignment.exact,
                    }
                    for c in candidates
                ],
            }
        )

    payload: dict = {"lines": out_lines}
    plain_parts = []
    for entry in out_lines:
        plain_parts.append(f"line {entry['index'] + 1}: {entry['draft']}")
        for c in entry["candidates"]:
            plain_parts.append(
                f"  {c['rank']}. {c['text']}"
                f"  [keywords {c['keyword_hits']}, prosody {c['prosody_score']}]"
            )
    if args.select_top:
        abc = song_abc(melody, phrases, accepted)
        payload["abc"] = abc
        plain_parts.append(abc)
    _emit(args, payload, "\n".join(plain_parts))
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    config = load_config(args.config)
    uvicorn.run(create_app(config), host=config.host, port=config.port)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
