"""Text-generation interface: templates, parsing, mock and remote clients."""

from .base import TEMPLATE_IDS, Generator, GenRequest, GenResponse
from .mock import IdentityGenerator, MockGenerator
from .parsing import parse_lines, split_items
from .remote import RemoteGenerator
from .templates import placeholders, render, template_text

__all__ = [
    "TEMPLATE_IDS",
    "Generator",
    "GenRequest",
    "GenResponse",
    "IdentityGenerator",
    "MockGenerator",
    "RemoteGenerator",
    "parse_lines",
    "split_items",
    "placeholders",
    "render",
    "template_text",
]
