"""MusicXML (score-partwise) reader for monophonic melodies.

Reads the first voice of the first part. Chords in that voice are an
error; use MIDI input for material where stray chords should be folded
to their top pitch instead.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from fractions import Fraction

from ..errors import MalformedFile, PolyphonyError, UnsupportedContent
from .model import Melody, Note

_STEP_SEMITONES = {"C": 0, "D": 2, "E": 4, "F": 5, "G": 7, "A": 9, "B": 11}

# metronome beat-unit -> quarter notes per unit
_BEAT_UNIT_QUARTERS = {
    "whole": 4.0,
    "half": 2.0,
    "quarter": 1.0,
    "eighth": 0.5,
    "16th": 0.25,
}


def parse_musicxml(data: bytes) -> Melody:
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise MalformedFile(f"invalid XML: {exc}") from exc
    # strip namespaces if present
    for el in root.iter():
        if "}" in el.tag:
            el.tag = el.tag.split("}", 1)[1]
    if root.tag != "score-partwise":
        raise UnsupportedContent(f"expected a score-partwise document, got <{root.tag}>")

    part = root.find("part")
    if part is None:
        raise UnsupportedContent("score contains no parts")
    measures = part.findall("measure")
    if not measures:
        raise UnsupportedContent("first part contains no measures")

    time_signature, tempo, fifths, title = _scan_headers(root, part)
    num, den = time_signature
    voice = _first_voice(part)

    notes: list[Note] = []
    onset = Fraction(0)  # running position in beats (denominator units)
    divisions = 1  # divisions per quarter note; updated by <attributes>
    for measure_index, measure in enumerate(measures):
        measure_start = onset
        cursor = onset
        max_cursor = onset
        for el in measure:
            if el.tag == "attributes":
                div_el = el.find("divisions")
                if div_el is not None and div_el.text:
                    divisions = int(div_el.text)
            elif el.tag == "backup":
                cursor -= _beats(el, divisions, den)
            elif el.tag == "forward":
                cursor += _beats(el, divisions, den)
                max_cursor = max(max_cursor, cursor)
            elif el.tag == "note":
                if el.find("grace") is not None:
                    continue  # no duration, not alignable
                note_voice = _voice_of(el)
                beats = _beats(el, divisions, den)
                if note_voice != voice:
                    cursor += beats
                    max_cursor = max(max_cursor, cursor)
                    continue
                if el.find("chord") is not None:
                    raise PolyphonyError(measure_index)
                is_rest = el.find("rest") is not None
                tie_start = any(
                    t.get("type") == "start" for t in el.findall("tie")
                )
                notes.append(
                    Note(
                        onset=cursor,
                        duration=beats,
                        pitch=None if is_rest else _midi_pitch(el, measure_index),
                        is_rest=is_rest,
                        measure_index=measure_index,
                        beat_in_measure=cursor - measure_start,
                        tie_to_next=tie_start and not is_rest,
                    )
                )
                cursor += beats
                max_cursor = max(max_cursor, cursor)
        content = max_cursor - measure_start
        if measure.get("implicit") == "yes" and content < num:
            # pickup measure: its notes sit at the measure's end
            shift = num - content
            for i in range(len(notes) - 1, -1, -1):
                if notes[i].measure_index != measure_index:
                    break
                n = notes[i]
                notes[i] = Note(
                    onset=n.onset,
                    duration=n.duration,
                    pitch=n.pitch,
                    is_rest=n.is_rest,
                    measure_index=n.measure_index,
                    beat_in_measure=n.beat_in_measure + shift,
                    tie_to_next=n.tie_to_next,
                )
        onset = max_cursor

    if not any(not n.is_rest for n in notes):
        raise UnsupportedContent("score contains no sounding notes")
    return Melody(
        notes=tuple(notes),
        time_signature=time_signature,
        tempo_bpm=tempo,
        key_signature=fifths,
        title=title,
    )


def _scan_headers(root: ET.Element, part: ET.Element):
    """First time signature, tempo, key and title; defaults 4/4, 120, C."""
    num, den = 4, 4
    time_el = part.find(".//attributes/time")
    if time_el is not None:
        beats_el = time_el.find("beats")
        type_el = time_el.find("beat-type")
        if beats_el is not None and type_el is not None:
            num, den = int(beats_el.text), int(type_el.text)

    tempo = 120.0
    for el in part.iter():
        if el.tag == "sound" and el.get("tempo"):
            tempo = float(el.get("tempo"))
            break
        if el.tag == "metronome":
            unit = el.findtext("beat-unit", default="quarter")
            per_min = el.findtext("per-minute")
            if per_min:
                tempo = float(per_min) * _BEAT_UNIT_QUARTERS.get(unit, 1.0)
                break

    fifths_el = part.find(".//attributes/key/fifths")
    fifths = int(fifths_el.text) if fifths_el is not None and fifths_el.text else 0

    title = root.findtext("work/work-title") or root.findtext("movement-title")
    if title is not None:
        title = title.strip() or None
    return (num, den), tempo, fifths, title


def _first_voice(part: ET.Element) -> str:
    for note in part.iter("note"):
        return _voice_of(note)
    raise UnsupportedContent("first part contains no notes")


def _voice_of(note: ET.Element) -> str:
    return note.findtext("voice", default="1").strip() or "1"


def _beats(el: ET.Element, divisions: int, den: int) -> Fraction:
    dur = el.findtext("duration")
    if dur is None:
        raise MalformedFile("note/backup/forward element without <duration>")
    try:
        quarters = Fraction(int(dur), divisions)
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedFile(f"bad duration {dur!r}") from exc
    return quarters * Fraction(den, 4)


def _midi_pitch(note: ET.Element, measure_index: int) -> int:
    pitch = note.find("pitch")
    if pitch is None:
        raise MalformedFile(f"sounding note without <pitch> in measure {measure_index}")
    step = pitch.findtext("step")
    octave = pitch.findtext("octave")
    if step not in _STEP_SEMITONES or octave is None:
        raise MalformedFile(f"bad <pitch> in measure {measure_index}")
    alter = pitch.findtext("alter")
    midi = 12 * (int(octave) + 1) + _STEP_SEMITONES[step] + (int(float(alter)) if alter else 0)
    if not 0 <= midi <= 127:
        raise MalformedFile(f"pitch out of MIDI range in measure {measure_index}")
    return midi
