"""Scoring spelled parts against reference spellings."""

import json
from fractions import Fraction

import pytest

import corpus
from keyspell.evaluate import (
    EvalReport,
    GroundTruth,
    GroundTruthNote,
    evaluate_spelling,
    ground_truth_part,
    parse_ground_truth,
)
from keyspell.notes import InputNote, NoteListError
from keyspell.pitch import Accidental, NoteName, Spelling
from keyspell.table import Diagnostics, SpelledPart, spell_part
from keyspell.tonality import Key, Mode


def _piece(name):
    return next(p for p in corpus.PIECES if p.name == name)


def _truth_doc(piece, signature, **extra):
    notes = []
    for note, spelling in zip(piece.part.notes, piece.spellings, strict=True):
        notes.append({
            "midi": note.midi,
            "bar": note.bar,
            "onset": [note.onset.numerator, note.onset.denominator],
            "duration": [note.duration.numerator, note.duration.denominator],
            "name": spelling.name.name,
            "accidental": str(spelling.accidental),
            "octave": spelling.octave,
        })
    return json.dumps({"notes": notes, "key_signature": signature, **extra})


def _fabricated(spellings, global_key, candidates, local_keys=()):
    diagnostics = Diagnostics(
        note_count=len(spellings),
        candidates=tuple(candidates),
        initial_costs=(),
        refined_costs=(),
        tie_counts=(),
        pre_rewrite=tuple(spellings),
    )
    return SpelledPart(tuple(spellings), global_key, tuple(local_keys), diagnostics)


def _truth_note(midi, spelling, bar=0, onset=0, duration=Fraction(1, 4), grace=False):
    note = InputNote(midi, bar, Fraction(onset), duration, grace)
    return GroundTruthNote(note, spelling)


def _spelling(text):
    spelling, _ = corpus.parse_note(text)
    return spelling


def test_parse_ground_truth_roundtrip():
    piece = _piece("d_major_scale")
    truth = parse_ground_truth(_truth_doc(piece, 2, mode="major"))
    assert truth.key_signature == 2
    assert truth.mode is Mode.MAJOR
    assert [r.spelling for r in truth.notes] == list(piece.spellings)
    rebuilt = ground_truth_part(truth)
    assert rebuilt.notes == piece.part.notes


def test_parse_ground_truth_accepts_integer_accidentals():
    doc = {
        "notes": [{
            "midi": 61, "bar": 0, "onset": [0, 1], "duration": [1, 4],
            "name": "C", "accidental": 1, "octave": 4,
        }],
        "key_signature": 7,
    }
    truth = parse_ground_truth(json.dumps(doc))
    assert truth.notes[0].spelling == Spelling(NoteName.C, Accidental.SHARP, 4)


def test_parse_ground_truth_sorts_records():
    piece = _piece("c_major_scale")
    doc = json.loads(_truth_doc(piece, 0))
    doc["notes"].reverse()
    truth = parse_ground_truth(json.dumps(doc))
    assert [r.note.midi for r in truth.notes] == [n.midi for n in piece.part.notes]


@pytest.mark.parametrize("mutate,fragment", [
    (lambda d: d["notes"][0].__setitem__("name", "H"), "letter A..G"),
    (lambda d: d["notes"][0].pop("name"), "letter A..G"),
    (lambda d: d["notes"][0].pop("accidental"), "accidental is required"),
    (lambda d: d["notes"][0].__setitem__("accidental", "###"), "not an accidental"),
    (lambda d: d["notes"][0].__setitem__("accidental", 3), "out of range"),
    (lambda d: d["notes"][0].pop("octave"), "octave must be an integer"),
    (lambda d: d["notes"][0].__setitem__("octave", True), "octave must be an integer"),
    (lambda d: d["notes"][0].__setitem__("name", "D"), "does not sound at MIDI"),
    (lambda d: d.pop("key_signature"), "key_signature"),
    (lambda d: d.__setitem__("key_signature", 9), "key_signature"),
    (lambda d: d.__setitem__("key_signature", True), "key_signature"),
    (lambda d: d.__setitem__("mode", "dorian"), "unknown mode"),
    (lambda d: d.__setitem__("notes", {}), "'notes' array"),
])
def test_parse_ground_truth_rejects_bad_documents(mutate, fragment):
    doc = {
        "notes": [{
            "midi": 61, "bar": 0, "onset": [0, 1], "duration": [1, 4],
            "name": "C", "accidental": "#", "octave": 4,
        }],
        "key_signature": 7,
    }
    mutate(doc)
    with pytest.raises(NoteListError, match=fragment):
        parse_ground_truth(json.dumps(doc))


def test_parse_ground_truth_rejects_invalid_json():
    with pytest.raises(NoteListError, match="invalid JSON"):
        parse_ground_truth("{")


def test_evaluate_perfect_piece():
    piece = _piece("e_flat_major_scale")
    truth = parse_ground_truth(_truth_doc(piece, -3))
    spelled = spell_part(piece.part)
    report = evaluate_spelling(spelled, truth)
    assert report.perfect
    assert report.spelling_accuracy == 1.0
    assert report.ks_correct and not report.enharmonic_renamed
    assert report.mismatches == ()
    assert report.local_keys == spelled.local_keys
    assert report.note_count == len(piece.spellings)


def test_evaluate_counts_mismatches():
    piece = _piece("a_minor_harmonic")
    doc = json.loads(_truth_doc(piece, 0, mode="minor"))
    # Claim Ab where the piece spells G#.
    target = next(n for n in doc["notes"] if n["midi"] == 68)
    target.update(name="A", accidental="b")
    truth = parse_ground_truth(json.dumps(doc))
    report = evaluate_spelling(spell_part(piece.part), truth)
    assert report.correct_count == report.note_count - 1
    assert len(report.mismatches) == 1
    miss = report.mismatches[0]
    assert miss.midi == 68
    assert str(miss.expected) == "Ab4" and str(miss.got) == "G#4"
    assert not report.perfect


def test_evaluate_rejects_mismatched_note_counts():
    piece = _piece("c_major_scale")
    truth = parse_ground_truth(_truth_doc(piece, 0))
    spelled = _fabricated([_spelling("C4")], Key(0), [Key(0)])
    with pytest.raises(ValueError, match="reference has"):
        evaluate_spelling(spelled, truth)


def test_enharmonic_twin_renames_the_reference():
    truth = GroundTruth(
        ( _truth_note(66, _spelling("Gb4")), _truth_note(61, _spelling("Db4")) ),
        key_signature=-6,
    )
    spelled = _fabricated(
        [_spelling("F#4"), _spelling("C#4")],
        Key(6),
        [Key(6), Key(3)],
        local_keys=(Key(6),),
    )
    report = evaluate_spelling(spelled, truth)
    assert report.enharmonic_renamed
    assert report.correct_count == 2
    # The signature itself is still compared strictly.
    assert not report.ks_correct
    assert report.estimated_signature == 6 and report.expected_signature == -6


def test_enharmonic_renaming_requires_a_candidate_twin():
    truth = GroundTruth((_truth_note(66, _spelling("Gb4")),), key_signature=-6)
    spelled = _fabricated([_spelling("F#4")], Key(6), [Key(0), Key(3)])
    report = evaluate_spelling(spelled, truth)
    assert not report.enharmonic_renamed
    assert report.correct_count == 0


def test_enharmonic_renaming_shifts_letters_upward_from_the_sharp_side():
    truth = GroundTruth((_truth_note(66, _spelling("F#4")),), key_signature=6)
    spelled = _fabricated([_spelling("Gb4")], Key(-6), [Key(-6)])
    report = evaluate_spelling(spelled, truth)
    assert report.enharmonic_renamed
    assert report.correct_count == 1


def test_renaming_out_of_range_keeps_the_original_spelling():
    # C## cannot move down a letter (B### is out of range), so it stays
    # and counts as a mismatch against the estimate's D natural.
    truth = GroundTruth(
        ( _truth_note(66, _spelling("Gb4")), _truth_note(62, _spelling("C##4")) ),
        key_signature=-6,
    )
    spelled = _fabricated([_spelling("F#4"), _spelling("D4")], Key(6), [Key(-6)])
    report = evaluate_spelling(spelled, truth)
    assert report.enharmonic_renamed
    assert report.correct_count == 1
    assert str(report.mismatches[0].expected) == "C##4"


def test_grace_notes_are_tallied_separately():
    truth = GroundTruth(
        (
            _truth_note(61, _spelling("C#4"), duration=Fraction(0), grace=True),
            _truth_note(62, _spelling("D4"), onset=Fraction(1, 4)),
        ),
        key_signature=0,
    )
    spelled = _fabricated([_spelling("Db4"), _spelling("D4")], Key(0), [Key(0)])
    report = evaluate_spelling(spelled, truth)
    assert report.grace_count == 1 and report.grace_correct == 0
    assert report.correct_count == 1


def test_octave_disagreement_still_counts_the_name():
    truth = GroundTruth((_truth_note(61, _spelling("C#4")),), key_signature=2)
    spelled = _fabricated([_spelling("C#5")], Key(2), [Key(2)])
    report = evaluate_spelling(spelled, truth)
    assert report.correct_count == 1
    assert report.octave_mismatches == 1


def test_empty_reference_is_perfect():
    truth = GroundTruth((), key_signature=0)
    spelled = _fabricated([], Key(0), [Key(0)])
    report = evaluate_spelling(spelled, truth)
    assert report.perfect and report.spelling_accuracy == 1.0
