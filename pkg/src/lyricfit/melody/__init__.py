from .abc_notation import to_abc
from .analysis import prominent_notes, segment_phrases
from .midi import parse_midi
from .model import Melody, Note, Phrase, ProminenceMask, SegmentationConfig
from .musicxml import parse_musicxml

__all__ = [
    "Melody",
    "Note",
    "Phrase",
    "ProminenceMask",
    "SegmentationConfig",
    "parse_midi",
    "parse_musicxml",
    "prominent_notes",
    "segment_phrases",
    "to_abc",
]
