"""Prompt template loading and rendering.

Templates live as plain text files with ``{*name*}`` placeholders.
Rendering is pure substitution; the template text is never reflowed.
"""

from __future__ import annotations

import re
from functools import lru_cache
from importlib import resources

from ..errors import MissingVariable
from .base import TEMPLATE_IDS

_PLACEHOLDER_RE = re.compile(r"\{\*([a-z_]+)\*\}")


@lru_cache(maxsize=None)
def template_text(template_id: str) -> str:
    if template_id not in TEMPLATE_IDS:
        raise ValueError(f"unknown template {template_id!r}")
    return (
        resources.files("lyricfit.generation")
        .joinpath(f"templates/{template_id}.txt")
        .read_text(encoding="utf-8")
    )


def placeholders(template_id: str) -> set[str]:
    return set(_PLACEHOLDER_RE.findall(template_text(template_id)))


def render(template_id: str, variables: dict[str, str]) -> str:
    text = template_text(template_id)

    def substitute(match: re.Match) -> str:
        name = match.group(1)
        if name not in variables:
            raise MissingVariable(name)
        return str(variables[name])

    return _PLACEHOLDER_RE.sub(substitute, text)
