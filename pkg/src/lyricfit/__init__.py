"""Lyricfit: a workflow-aligned lyric writing engine.

Parses melodies (MusicXML/MIDI), segments them into phrases, scores
lyric/melody fit, and runs the rephrase-revise-rank candidate pipeline,
exposed through a JSON HTTP service and a command-line tool.
"""

__version__ = "0.1.0"
