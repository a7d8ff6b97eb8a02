"""Project service: persistence, workflow operations, and the JSON API."""

from .app import create_app
from .config import GeneratorConfig, ServiceConfig, build_generator, load_config, theme_rng
from .project import Project, SelectedLine, from_doc, to_doc
from .store import ProjectStore
from .synthesis import (
    CachingSynthesizer,
    RemoteSynthesizer,
    StubSynthesizer,
    Synthesizer,
    build_synthesizer,
)
from .workflow import Workflow, preset_themes

__all__ = [
    "CachingSynthesizer",
    "GeneratorConfig",
    "Project",
    "ProjectStore",
    "RemoteSynthesizer",
    "SelectedLine",
    "ServiceConfig",
    "StubSynthesizer",
    "Synthesizer",
    "Workflow",
    "build_generator",
    "build_synthesizer",
    "create_app",
    "from_doc",
    "load_config",
    "preset_themes",
    "theme_rng",
    "to_doc",
]
