"""Service configuration: YAML file with environment-variable overrides.

Environment variables win over the file; the file wins over defaults.
All variables are prefixed ``LYRICFIT_`` (e.g. ``LYRICFIT_PORT``,
``LYRICFIT_GENERATOR_MODE``).
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping

import yaml

from ..generation import Generator, MockGenerator, RemoteGenerator
from ..melody import SegmentationConfig


@dataclass(frozen=True)
class GeneratorConfig:
    mode: str = "mock"  # "mock" or "remote"
    seed: int = 1
    endpoint: str | None = None
    api_key: str | None = None
    model: str = "default"

    def __post_init__(self):
        if self.mode not in ("mock", "remote"):
            raise ValueError(f"generator mode must be 'mock' or 'remote', got {self.mode!r}")
        if self.mode == "remote" and not self.endpoint:
            raise ValueError("remote generator mode needs an endpoint")


@dataclass(frozen=True)
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8080
    data_dir: Path = Path("./lyricfit-data")
    lexicon_path: Path | None = None
    generator: GeneratorConfig = field(default_factory=GeneratorConfig)
    synthesis_endpoint: str | None = None
    segmentation: SegmentationConfig = field(default_factory=SegmentationConfig)


def load_config(
    path: str | Path | None = None, env: Mapping[str, str] | None = None
) -> ServiceConfig:
    env = os.environ if env is None else env
    doc: dict = {}
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            doc = yaml.safe_load(fh) or {}
    gen_doc = doc.get("generator") or {}
    seg_doc = doc.get("segmentation") or {}
    syn_doc = doc.get("synthesis") or {}

    def pick(env_key: str, file_value, default):
        if env_key in env:
            return env[env_key]
        return default if file_value is None else file_value

    generator = GeneratorConfig(
        mode=str(pick("LYRICFIT_GENERATOR_MODE", gen_doc.get("mode"), "mock")),
        seed=int(pick("LYRICFIT_GENERATOR_SEED", gen_doc.get("seed"), 1)),
        endpoint=pick("LYRICFIT_GENERATOR_ENDPOINT", gen_doc.get("endpoint"), None),
        api_key=pick("LYRICFIT_GENERATOR_API_KEY", gen_doc.get("api_key"), None),
        model=str(pick("LYRICFIT_GENERATOR_MODEL", gen_doc.get("model"), "default")),
    )
    segmentation = SegmentationConfig(
        min_rest_beats=Fraction(str(seg_doc.get("min_rest_beats", 1))),
        long_note_factor=Fraction(str(seg_doc.get("long_note_factor", 2))),
        min_phrase_notes=int(seg_doc.get("min_phrase_notes", 3)),
        max_phrase_notes=int(seg_doc.get("max_phrase_notes", 16)),
    )
    lexicon_path = pick("LYRICFIT_LEXICON_PATH", doc.get("lexicon_path"), None)
    return ServiceConfig(
        host=str(pick("LYRICFIT_HOST", doc.get("host"), "127.0.0.1")),
        port=int(pick("LYRICFIT_PORT", doc.get("port"), 8080)),
        data_dir=Path(pick("LYRICFIT_DATA_DIR", doc.get("data_dir"), "./lyricfit-data")),
        lexicon_path=Path(lexicon_path) if lexicon_path else None,
        generator=generator,
        synthesis_endpoint=pick(
            "LYRICFIT_SYNTHESIS_ENDPOINT", syn_doc.get("endpoint"), None
        ),
        segmentation=segmentation,
    )


def build_generator(config: GeneratorConfig) -> Generator:
    if config.mode == "mock":
        return MockGenerator(seed=config.seed)
    return RemoteGenerator(
        endpoint=config.endpoint, api_key=config.api_key, model=config.model
    )


def theme_rng(config: GeneratorConfig) -> random.Random:
    """Source of randomness for preset-theme picks; seeded in mock mode."""
    return random.Random(config.seed if config.mode == "mock" else None)
