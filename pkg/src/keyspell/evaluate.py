"""Comparison of computed spellings against a reference spelling.

Accuracy is the share of notes whose name and accidental both match the
reference (octaves are tallied separately as a sanity check). The key
signature must match exactly; however, when the estimate lands on the
enharmonic twin of the reference key and that twin (or the reference) was
among the global candidates, the reference spellings are renamed into the
estimated key before comparing, and the report says so.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .notes import (
    InputNote,
    NoteListError,
    Part,
    make_part,
    note_order,
    parse_note_record,
)
from .pitch import (
    Accidental,
    NoteName,
    Spelling,
    alteration_for,
    octave_for,
    parse_accidental,
)
from .table import SpelledPart
from .tonality import KS_MAX, KS_MIN, Key, Mode, enharmonic_signature


@dataclass(frozen=True)
class GroundTruthNote:
    note: InputNote
    spelling: Spelling


@dataclass(frozen=True)
class GroundTruth:
    notes: tuple[GroundTruthNote, ...]
    key_signature: int
    mode: Mode | None = None


def parse_ground_truth(data: str | bytes) -> GroundTruth:
    """Parse reference JSON: a note list whose records carry name,
    accidental and octave, plus a document level key_signature."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise NoteListError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("notes"), list):
        raise NoteListError("document must be an object with a 'notes' array")
    signature = doc.get("key_signature")
    if (
        not isinstance(signature, int)
        or isinstance(signature, bool)
        or not KS_MIN <= signature <= KS_MAX
    ):
        raise NoteListError(f"key_signature must be an integer in {KS_MIN}..{KS_MAX}")
    mode = None
    if "mode" in doc:
        try:
            mode = Mode(doc["mode"])
        except ValueError:
            raise NoteListError(f"unknown mode {doc['mode']!r}") from None
    records = []
    for i, obj in enumerate(doc["notes"]):
        note = parse_note_record(obj, i)
        where = f"notes[{i}]"
        try:
            name = NoteName[str(obj.get("name"))]
        except KeyError:
            raise NoteListError(f"{where}: name must be a letter A..G") from None
        if "accidental" not in obj:
            raise NoteListError(f"{where}: accidental is required")
        try:
            accidental = parse_accidental(obj["accidental"])
        except ValueError as exc:
            raise NoteListError(f"{where}: {exc}") from exc
        octave = obj.get("octave")
        if not isinstance(octave, int) or isinstance(octave, bool):
            raise NoteListError(f"{where}: octave must be an integer")
        spelling = Spelling(name, accidental, octave)
        if spelling.pitch_class != note.midi % 12:
            raise NoteListError(
                f"{where}: spelling {spelling} does not sound at MIDI {note.midi}"
            )
        records.append(GroundTruthNote(note, spelling))
    records.sort(key=lambda r: note_order(r.note))
    return GroundTruth(tuple(records), signature, mode)


def ground_truth_part(truth: GroundTruth) -> Part:
    """The plain note input carried by a reference document."""
    return make_part([record.note for record in truth.notes])


@dataclass(frozen=True)
class NoteMismatch:
    index: int
    midi: int
    bar: int
    expected: Spelling
    got: Spelling


@dataclass(frozen=True)
class EvalReport:
    note_count: int
    correct_count: int
    spelling_accuracy: float
    estimated_signature: int
    expected_signature: int
    ks_correct: bool
    enharmonic_renamed: bool
    mismatches: tuple[NoteMismatch, ...]
    local_keys: tuple[Key, ...]
    grace_count: int
    grace_correct: int
    octave_mismatches: int

    @property
    def perfect(self) -> bool:
        return self.ks_correct and self.correct_count == self.note_count


def _renamed(spelling: Spelling, midi: int, shift: int) -> Spelling | None:
    """The spelling moved one letter toward the enharmonic twin, or None
    when the move needs an alteration outside -2..+2."""
    letter = spelling.name.shifted(shift)
    alt = alteration_for(midi % 12, letter)
    if not -2 <= alt <= 2:
        return None
    return Spelling(letter, Accidental(alt), octave_for(midi, letter, alt))


def evaluate_spelling(spelled: SpelledPart, truth: GroundTruth) -> EvalReport:
    """Score a spelled part against a reference with the same notes."""
    if len(spelled.spellings) != len(truth.notes):
        raise ValueError(
            f"reference has {len(truth.notes)} notes, result has "
            f"{len(spelled.spellings)}"
        )
    estimated = spelled.global_key.signature
    expected = truth.key_signature
    twin = enharmonic_signature(expected)
    renamed = False
    expected_spellings = [record.spelling for record in truth.notes]
    if twin is not None and estimated == twin:
        candidate_sigs = {key.signature for key in spelled.diagnostics.candidates}
        if expected in candidate_sigs or twin in candidate_sigs:
            renamed = True
            # Flat-side member of each twin pair carries the smaller signature;
            # moving toward sharps steps every letter down, and vice versa.
            shift = -1 if expected < estimated else 1
            expected_spellings = [
                _renamed(record.spelling, record.note.midi, shift) or record.spelling
                for record in truth.notes
            ]
    correct = 0
    grace_count = 0
    grace_correct = 0
    octave_mismatches = 0
    mismatches = []
    for i, (record, want, got) in enumerate(
        zip(truth.notes, expected_spellings, spelled.spellings, strict=True)
    ):
        match = want.name is got.name and want.accidental == got.accidental
        if record.note.grace:
            grace_count += 1
            grace_correct += match
        if match and want.octave != got.octave:
            octave_mismatches += 1
        if match:
            correct += 1
        else:
            mismatches.append(
                NoteMismatch(i, record.note.midi, record.note.bar, want, got)
            )
    count = len(truth.notes)
    return EvalReport(
        note_count=count,
        correct_count=correct,
        spelling_accuracy=correct / count if count else 1.0,
        estimated_signature=estimated,
        expected_signature=expected,
        ks_correct=estimated == expected,
        enharmonic_renamed=renamed,
        mismatches=tuple(mismatches),
        local_keys=spelled.local_keys,
        grace_count=grace_count,
        grace_correct=grace_correct,
        octave_mismatches=octave_mismatches,
    )
