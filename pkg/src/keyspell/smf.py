"""Standard MIDI file ingestion (formats 0 and 1)."""

from __future__ import annotations

import math
import struct
from bisect import bisect_right
from fractions import Fraction

from .notes import InputNote, Part, make_part


class SmfError(ValueError):
    """Raised for unreadable MIDI files."""


def _varlen(data: bytes, pos: int) -> tuple[int, int]:
    value = 0
    for _ in range(4):
        if pos >= len(data):
            raise SmfError("truncated variable-length quantity")
        byte = data[pos]
        pos += 1
        value = (value << 7) | (byte & 0x7F)
        if not byte & 0x80:
            return value, pos
    raise SmfError("variable-length quantity too long")


def _split_chunks(data: bytes) -> tuple[bytes, list[bytes]]:
    if len(data) < 14 or data[:4] != b"MThd":
        raise SmfError("not a standard MIDI file")
    header_len = struct.unpack(">I", data[4:8])[0]
    if header_len < 6 or 8 + header_len > len(data):
        raise SmfError("corrupt header chunk")
    header = data[8:8 + header_len]
    tracks = []
    pos = 8 + header_len
    while pos + 8 <= len(data):
        tag = data[pos:pos + 4]
        length = struct.unpack(">I", data[pos + 4:pos + 8])[0]
        body = data[pos + 8:pos + 8 + length]
        if len(body) < length:
            raise SmfError("truncated chunk")
        if tag == b"MTrk":
            tracks.append(body)
        pos += 8 + length
    return header, tracks


def _read_track(data: bytes, notes_out: list, sigs_out: list) -> None:
    """Collect (on_tick, off_tick, pitch) triples and time signature changes."""
    pos = 0
    tick = 0
    status = None
    open_notes: dict[tuple[int, int], list[int]] = {}
    while pos < len(data):
        delta, pos = _varlen(data, pos)
        tick += delta
        if pos >= len(data):
            raise SmfError("truncated track")
        byte = data[pos]
        if byte == 0xFF:
            meta_type = data[pos + 1] if pos + 1 < len(data) else None
            length, body_pos = _varlen(data, pos + 2)
            body = data[body_pos:body_pos + length]
            pos = body_pos + length
            if meta_type == 0x58 and length >= 2:
                sigs_out.append((tick, body[0], 1 << body[1]))
            elif meta_type == 0x2F:
                break
            continue
        if byte in (0xF0, 0xF7):
            length, body_pos = _varlen(data, pos + 1)
            pos = body_pos + length
            status = None
            continue
        if byte & 0x80:
            status = byte
            pos += 1
        elif status is None:
            raise SmfError(f"data byte with no running status at offset {pos}")
        kind = status & 0xF0
        if kind == 0xF0:
            raise SmfError(f"unexpected system status {status:#x}")
        nbytes = 1 if kind in (0xC0, 0xD0) else 2
        if pos + nbytes > len(data):
            raise SmfError("truncated channel event")
        body = data[pos:pos + nbytes]
        pos += nbytes
        if kind == 0x90 and body[1] > 0:
            open_notes.setdefault((status & 0x0F, body[0]), []).append(tick)
        elif kind == 0x80 or (kind == 0x90 and body[1] == 0):
            stack = open_notes.get((status & 0x0F, body[0]))
            if stack:
                notes_out.append((stack.pop(0), tick, body[0]))
    # Sounding notes left open at end of track close where the track stops.
    for (_, pitch), starts in open_notes.items():
        for start in starts:
            notes_out.append((start, tick, pitch))


def _bar_segments(sigs: list, tpq: int) -> list[tuple[int, int, Fraction]]:
    """(start_tick, start_bar, ticks_per_bar) spans; a signature change opens a bar."""
    changes: dict[int, tuple[int, int]] = {}
    for tick, num, den in sorted(sigs):
        if num <= 0 or den <= 0:
            raise SmfError("bad time signature")
        changes[tick] = (num, den)
    segments = []
    bar = 0
    ticks = sorted(changes)
    for i, start in enumerate(ticks):
        num, den = changes[start]
        per_bar = Fraction(4 * tpq * num, den)
        segments.append((start, bar, per_bar))
        if i + 1 < len(ticks):
            bar += math.ceil(Fraction(ticks[i + 1] - start) / per_bar)
    return segments


def ingest_smf(data: bytes, warnings: list[str] | None = None) -> Part:
    """Convert note on/off pairs into bar-annotated notes.

    Bar numbers and within-bar onsets come from cumulative ticks under the
    active time signature; all tracks are merged. Notes sounding before any
    time signature assume 4/4 (with a warning); zero-length notes are graces.
    """
    header, tracks = _split_chunks(data)
    fmt, _, division = struct.unpack(">HHH", header[:6])
    if fmt not in (0, 1):
        raise SmfError(f"unsupported file format {fmt}")
    if division & 0x8000:
        raise SmfError("SMPTE time division is not supported")
    if division == 0:
        raise SmfError("zero ticks per quarter note")
    raw_notes: list[tuple[int, int, int]] = []
    sigs: list[tuple[int, int, int]] = []
    for track in tracks:
        _read_track(track, raw_notes, sigs)
    if raw_notes:
        first_note = min(on for on, _, _ in raw_notes)
        first_sig = min((t for t, _, _ in sigs), default=None)
        if (first_sig is None or first_sig > first_note) and warnings is not None:
            warnings.append("no time signature before the first note; assuming 4/4")
    if not sigs or min(t for t, _, _ in sigs) > 0:
        sigs.append((0, 4, 4))
    segments = _bar_segments(sigs, division)
    starts = [seg[0] for seg in segments]
    notes = []
    for on, off, pitch in sorted(raw_notes):
        start, base_bar, per_bar = segments[bisect_right(starts, on) - 1]
        offset = Fraction(on - start)
        bar = base_bar + int(offset // per_bar)
        onset = (offset % per_bar) / per_bar
        duration = Fraction(off - on) / per_bar
        notes.append(InputNote(pitch, bar, onset, duration, grace=duration == 0))
    return make_part(notes)
