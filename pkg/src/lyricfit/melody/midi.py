"""Standard MIDI File (type 0/1) reader for monophonic melodies.

Takes notes from the first track containing note events. Chords keep the
highest pitch with a warning; overlapping notes are truncated at the next
onset so the result is strictly monophonic.
"""

from __future__ import annotations

import struct
import warnings
from dataclasses import dataclass
from fractions import Fraction

from ..errors import MalformedFile, UnsupportedContent
from .model import Melody, Note


@dataclass
class _RawNote:
    tick: int
    pitch: int
    end_tick: int | None = None


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def read(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise MalformedFile("unexpected end of MIDI data")
        out = self.data[self.pos : self.pos + n]
        self.pos += n
        return out

    def u8(self) -> int:
        return self.read(1)[0]

    def u16(self) -> int:
        return struct.unpack(">H", self.read(2))[0]

    def u32(self) -> int:
        return struct.unpack(">I", self.read(4))[0]

    def vlq(self) -> int:
        value = 0
        for _ in range(4):
            byte = self.u8()
            value = (value << 7) | (byte & 0x7F)
            if not byte & 0x80:
                return value
        raise MalformedFile("variable-length quantity too long")

    @property
    def exhausted(self) -> bool:
        return self.pos >= len(self.data)


def parse_midi(data: bytes) -> Melody:
    reader = _Reader(data)
    if reader.read(4) != b"MThd":
        raise MalformedFile("missing MThd header")
    if reader.u32() != 6:
        raise MalformedFile("unexpected MThd length")
    fmt = reader.u16()
    ntrks = reader.u16()
    division = reader.u16()
    if fmt not in (0, 1):
        raise UnsupportedContent(f"MIDI format {fmt} not supported (need type 0 or 1)")
    if division & 0x8000:
        raise UnsupportedContent("SMPTE time division not supported")
    if division == 0:
        raise MalformedFile("zero ticks per quarter note")

    tracks = [_read_track(reader) for _ in range(ntrks)]
    if not tracks:
        raise UnsupportedContent("file contains no tracks")

    num, den, tempo, fifths, title = _file_meta(tracks)
    melody_track = next((t for t in tracks if t["raw_notes"]), None)
    if melody_track is None:
        raise UnsupportedContent("no note events in any track")

    raw = _monophonize(melody_track["raw_notes"], melody_track["end_tick"])
    notes: list[Note] = []
    beats_per_tick = Fraction(den, 4 * division)
    measure_len = Fraction(num)

    def place(onset_tick: int, dur_ticks: int, pitch: int | None):
        onset = onset_tick * beats_per_tick
        duration = dur_ticks * beats_per_tick
        midx = int(onset // measure_len)
        notes.append(
            Note(
                onset=onset,
                duration=duration,
                pitch=pitch,
                is_rest=pitch is None,
                measure_index=midx,
                beat_in_measure=onset - midx * measure_len,
            )
        )

    prev_end = 0
    for rn in raw:
        if rn.tick - prev_end >= 1:
            place(prev_end, rn.tick - prev_end, None)
        place(rn.tick, rn.end_tick - rn.tick, rn.pitch)
        prev_end = rn.end_tick

    if not notes:
        raise UnsupportedContent("no playable notes in melody track")
    return Melody(
        notes=tuple(notes),
        time_signature=(num, den),
        tempo_bpm=tempo,
        key_signature=fifths,
        title=title,
    )


def _read_track(reader: _Reader) -> dict:
    if reader.read(4) != b"MTrk":
        raise MalformedFile("missing MTrk chunk")
    length = reader.u32()
    body = _Reader(reader.read(length))

    tick = 0
    status = 0
    raw_notes: list[_RawNote] = []
    open_notes: dict[int, _RawNote] = {}
    meta: list[tuple[int, int, bytes]] = []

    while not body.exhausted:
        tick += body.vlq()
        byte = body.u8()
        if byte == 0xFF:
            mtype = body.u8()
            mdata = body.read(body.vlq())
            meta.append((tick, mtype, mdata))
            if mtype == 0x2F:
                break
            continue
        if byte in (0xF0, 0xF7):
            body.read(body.vlq())
            continue
        if byte & 0x80:
            status = byte
            data1 = body.u8()
        else:
            if not status & 0x80:
                raise MalformedFile("running status with no prior status byte")
            data1 = byte
        kind = status & 0xF0
        if kind in (0x80, 0x90, 0xA0, 0xB0, 0xE0):
            data2 = body.u8()
        elif kind in (0xC0, 0xD0):
            data2 = 0
        else:
            raise MalformedFile(f"unexpected status byte 0x{status:02X}")

        if kind == 0x90 and data2 > 0:
            _open_note(open_notes, raw_notes, tick, data1)
        elif kind == 0x80 or (kind == 0x90 and data2 == 0):
            note = open_notes.pop(data1, None)
            if note is not None and note.end_tick is None:
                note.end_tick = tick

    for note in open_notes.values():
        if note.end_tick is None:
            note.end_tick = tick
    return {"raw_notes": raw_notes, "meta": meta, "end_tick": tick}


def _open_note(open_notes: dict, raw_notes: list, tick: int, pitch: int):
    raw = _RawNote(tick=tick, pitch=pitch)
    open_notes[pitch] = raw
    raw_notes.append(raw)


def _monophonize(raw_notes: list[_RawNote], end_tick: int) -> list[_RawNote]:
    """Collapse to one voice: top pitch on chords, truncate overlaps."""
    notes = sorted(
        (r for r in raw_notes if r.end_tick is not None),
        key=lambda r: (r.tick, -r.pitch),
    )
    out: list[_RawNote] = []
    for rn in notes:
        if rn.end_tick <= rn.tick:
            continue
        if out and rn.tick == out[-1].tick:
            warnings.warn(
                f"chord at tick {rn.tick}: keeping pitch {out[-1].pitch}, "
                f"dropping {rn.pitch}",
                stacklevel=3,
            )
            continue
        if out and rn.tick < out[-1].end_tick:
            warnings.warn(
                f"overlapping note at tick {rn.tick} truncates pitch {out[-1].pitch}",
                stacklevel=3,
            )
            out[-1].end_tick = rn.tick
            if out[-1].end_tick <= out[-1].tick:
                out.pop()
        out.append(_RawNote(tick=rn.tick, pitch=rn.pitch, end_tick=min(rn.end_tick, end_tick)))
    return out


def _file_meta(tracks: list[dict]):
    num, den = 4, 4
    tempo = 120.0
    fifths = 0
    title = None
    found_time = found_tempo = found_key = False
    for track in tracks:
        for _tick, mtype, mdata in sorted(track["meta"], key=lambda m: m[0]):
            if mtype == 0x58 and not found_time and len(mdata) >= 2 and mdata[0] > 0:
                num, den = mdata[0], 2 ** mdata[1]
                found_time = True
            elif mtype == 0x51 and not found_tempo and len(mdata) == 3:
                usec = int.from_bytes(mdata, "big")
                if usec > 0:
                    tempo = 60_000_000 / usec
                    found_tempo = True
            elif mtype == 0x59 and not found_key and len(mdata) >= 1:
                fifths = struct.unpack("b", mdata[:1])[0]
                found_key = True
            elif mtype == 0x03 and title is None and mdata:
                title = mdata.decode("latin-1").strip() or None
    return num, den, tempo, fifths, title
