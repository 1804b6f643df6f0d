"""Bar-annotated note input: ordering, simultaneity, and the JSON note list."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .pitch import MIDI_MAX, MIDI_MIN


class NoteListError(ValueError):
    """Raised for malformed note list documents."""


@dataclass(frozen=True)
class InputNote:
    """One played note; onset is a fraction of its bar, duration in bar units."""

    midi: int
    bar: int
    onset: Fraction
    duration: Fraction
    grace: bool = False


@dataclass(frozen=True)
class NoteEvent:
    """A note in enumeration order, flagged when the next note shares its onset."""

    midi: int
    bar: int
    simultaneous_with_next: bool = False


@dataclass(frozen=True)
class Part:
    notes: tuple[InputNote, ...]
    measure_count: int


def note_order(note: InputNote) -> tuple:
    return (note.bar, note.onset, note.midi)


def make_part(notes, measure_count: int | None = None) -> Part:
    """A part with notes in (bar, onset, midi) order; bar count inferred if omitted."""
    ordered = tuple(sorted(notes, key=note_order))
    least = 1 + max((n.bar for n in ordered), default=-1)
    if measure_count is None:
        measure_count = least
    elif measure_count < least:
        raise ValueError(
            f"measure count {measure_count} too small for bar index {least - 1}"
        )
    return Part(ordered, measure_count)


def enumerate_events(part: Part) -> list[NoteEvent]:
    """Events in part order; a note is simultaneous with the next when both
    are non-grace notes sharing a bar and onset."""
    notes = part.notes
    events = []
    for i, cur in enumerate(notes):
        nxt = notes[i + 1] if i + 1 < len(notes) else None
        simultaneous = (
            nxt is not None
            and cur.bar == nxt.bar
            and cur.onset == nxt.onset
            and not cur.grace
            and not nxt.grace
        )
        events.append(NoteEvent(cur.midi, cur.bar, simultaneous))
    return events


def _fraction_field(value, where: str, field: str, maximum_open=None) -> Fraction:
    if (
        not isinstance(value, list)
        or len(value) != 2
        or not all(isinstance(v, int) and not isinstance(v, bool) for v in value)
    ):
        raise NoteListError(f"{where}: {field} must be a [numerator, denominator] pair")
    num, den = value
    if den <= 0:
        raise NoteListError(f"{where}: {field} denominator must be positive")
    result = Fraction(num, den)
    if result < 0:
        raise NoteListError(f"{where}: {field} must not be negative")
    if maximum_open is not None and result >= maximum_open:
        raise NoteListError(f"{where}: {field} must be below {maximum_open}")
    return result


def parse_note_record(obj, index: int, warnings: list[str] | None = None) -> InputNote:
    """One note object from a note list; errors name the record."""
    where = f"notes[{index}]"
    if not isinstance(obj, dict):
        raise NoteListError(f"{where}: expected an object")
    midi = obj.get("midi")
    if not isinstance(midi, int) or isinstance(midi, bool):
        raise NoteListError(f"{where}: midi must be an integer")
    if not MIDI_MIN <= midi <= MIDI_MAX:
        raise NoteListError(f"{where}: midi {midi} out of range {MIDI_MIN}..{MIDI_MAX}")
    if midi == MIDI_MAX and warnings is not None:
        warnings.append(f"{where}: midi {MIDI_MAX} is outside the usual device range")
    bar = obj.get("bar")
    if not isinstance(bar, int) or isinstance(bar, bool) or bar < 0:
        raise NoteListError(f"{where}: bar must be a non-negative integer")
    onset = _fraction_field(obj.get("onset"), where, "onset", maximum_open=1)
    duration = _fraction_field(obj.get("duration"), where, "duration")
    grace = obj.get("grace")
    if grace is None:
        grace = duration == 0
    elif not isinstance(grace, bool):
        raise NoteListError(f"{where}: grace must be a boolean")
    elif grace != (duration == 0):
        raise NoteListError(f"{where}: grace notes are exactly the zero-duration notes")
    return InputNote(midi, bar, onset, duration, grace)


def parse_notelist(data: str | bytes, warnings: list[str] | None = None) -> Part:
    """Parse the JSON note list; errors name the first bad record."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise NoteListError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("notes"), list):
        raise NoteListError("document must be an object with a 'notes' array")
    notes = [
        parse_note_record(obj, i, warnings) for i, obj in enumerate(doc["notes"])
    ]
    measures = doc.get("measures")
    if measures is not None and (
        not isinstance(measures, int) or isinstance(measures, bool) or measures < 0
    ):
        raise NoteListError("measures must be a non-negative integer")
    try:
        return make_part(notes, measures)
    except ValueError as exc:
        raise NoteListError(str(exc)) from exc


def serialize_notelist(part: Part) -> str:
    """JSON text that parses back to an identical part."""
    records = []
    for n in part.notes:
        record = {
            "midi": n.midi,
            "bar": n.bar,
            "onset": [n.onset.numerator, n.onset.denominator],
            "duration": [n.duration.numerator, n.duration.denominator],
        }
        if n.grace:
            record["grace"] = True
        records.append(record)
    return json.dumps({"measures": part.measure_count, "notes": records}, indent=2)
