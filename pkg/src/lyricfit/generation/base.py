"""Text-generation interface shared by the mock and remote clients."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Protocol, runtime_checkable

TEMPLATE_IDS = (
    "draft_full",
    "draft_single",
    "brainstorm",
    "rhyme_recs",
    "rephrase",
    "revise_to_melody",
)


@dataclass(frozen=True)
class GenRequest:
    template_id: str
    variables: dict[str, str] = field(default_factory=dict)
    max_items: int = 1

    def __post_init__(self):
        if self.template_id not in TEMPLATE_IDS:
            raise ValueError(f"unknown template {self.template_id!r}")
        if self.max_items < 1:
            raise ValueError("max_items must be >= 1")


@dataclass(frozen=True)
class GenResponse:
    raw: str
    parsed: tuple[str, ...]


@runtime_checkable
class Generator(Protocol):
    """Anything that can answer a rendered prompt. Must allow concurrent calls."""

    def generate(self, request: GenRequest) -> GenResponse: ...
