"""Turn raw generator text into clean lyric/suggestion items.

Generators answer in loose shapes: numbered lines, bulleted lines, a
bracketed list, or one comma-separated string. parse_lines normalizes
all of them and enforces the expected item count.
"""

from __future__ import annotations

import re

from ..errors import CountMismatch

_NUMBERING_RE = re.compile(r"^\s*(?:\d+\s*[.):]\s*|[-*•]\s+)")


def clean_item(item: str) -> str:
    item = item.strip()
    item = _NUMBERING_RE.sub("", item)
    item = item.strip("[]").strip()
    while len(item) >= 2 and item[0] == item[-1] and item[0] in "\"'":
        item = item[1:-1].strip()
    return item


def split_items(raw: str) -> list[str]:
    """Best-effort item split: one item per non-empty line."""
    items = [clean_item(line) for line in raw.splitlines()]
    return [item for item in items if item]


def parse_lines(raw: str, expected: int) -> list[str]:
    items = split_items(raw)
    if len(items) == expected:
        return items

    # a bracketed or single-line comma list; recover by splitting on commas
    joined = " ".join(line.strip() for line in raw.splitlines()).strip()
    joined = joined.strip("[]")
    recovered = [clean_item(part) for part in joined.split(",")]
    recovered = [item for item in recovered if item]
    if len(recovered) == expected:
        return recovered

    raise CountMismatch(got=len(items), expected=expected)
