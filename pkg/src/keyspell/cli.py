"""Command line driver: spell note sequences and evaluate against references."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import ALGORITHMS, SpellerConfig, parse_ks_range
from .evaluate import evaluate_spelling, parse_ground_truth
from .measure import Ordering, Weight
from .notes import NoteListError, Part, parse_notelist
from .pitch import format_pitch_name
from .ps13b import spell_ps13b
from .smf import SmfError, ingest_smf
from .table import SpelledPart, spell_part
from .tonality import Key


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="keyspell",
        description="Pitch spelling and key estimation for bar-annotated notes.",
    )
    commands = parser.add_subparsers(dest="command", required=True)
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument(
        "--input", required=True, metavar="PATH",
        help="note list JSON or standard MIDI file",
    )
    shared.add_argument(
        "--algo", choices=ALGORITHMS, default="pse",
        help="spelling algorithm (default pse)",
    )
    shared.add_argument(
        "--weights", choices=[o.value for o in Ordering], default="sum",
        help="refined weight ordering (default sum)",
    )
    shared.add_argument(
        "--ks-range", default="-7..7", metavar="LO..HI",
        help="key signature range to consider (default -7..7)",
    )
    shared.add_argument(
        "--margin", type=float, default=0.2,
        help="relative margin for global key candidates (default 0.2)",
    )
    shared.add_argument(
        "--dump-tables", action="store_true",
        help="write both row cost tables to stderr",
    )
    shared.add_argument(
        "--output", metavar="PATH", help="write the JSON result here instead of stdout"
    )
    spell = commands.add_parser(
        "spell", parents=[shared], help="spell the notes and estimate keys"
    )
    spell.set_defaults(func=cmd_spell)
    evaluate = commands.add_parser(
        "eval", parents=[shared], help="spell the notes and score against a reference"
    )
    evaluate.add_argument(
        "--ground-truth", required=True, metavar="PATH",
        help="reference note list with spellings and key signature",
    )
    evaluate.set_defaults(func=cmd_eval)
    return parser


def _merge_ks_range(argv: list[str]) -> list[str]:
    """Join '--ks-range -7..7' into one token so the leading dash of the
    value is not mistaken for an option."""
    merged = []
    i = 0
    while i < len(argv):
        if argv[i] == "--ks-range" and i + 1 < len(argv):
            merged.append(f"--ks-range={argv[i + 1]}")
            i += 2
        else:
            merged.append(argv[i])
            i += 1
    return merged


def _config_from(args) -> SpellerConfig:
    lo, hi = parse_ks_range(args.ks_range)
    return SpellerConfig(
        ks_min=lo,
        ks_max=hi,
        margin=args.margin,
        ordering=Ordering(args.weights),
        algorithm=args.algo,
    )


def _load_part(path: str, warnings: list[str]) -> Part:
    data = Path(path).read_bytes()
    if path.lower().endswith((".mid", ".midi")) or data[:4] == b"MThd":
        return ingest_smf(data, warnings)
    return parse_notelist(data, warnings)


def _key_json(key: Key) -> dict:
    return {
        "signature": key.signature,
        "mode": key.mode.value,
        "tonic": format_pitch_name(*key.tonic),
    }


def _cost_json(key: Key, weight: Weight) -> dict:
    return {
        "key": _key_json(key),
        "accid": weight.accid,
        "dist": weight.dist,
        "chromarm": weight.chromarm,
        "color": weight.color,
        "cflat": weight.cflat,
    }


def _result_json(part: Part, result: SpelledPart) -> dict:
    notes = [
        {
            "midi": note.midi,
            "bar": note.bar,
            "name": str(spelling.name),
            "accidental": int(spelling.accidental),
            "octave": spelling.octave,
        }
        for note, spelling in zip(part.notes, result.spellings, strict=True)
    ]
    diag = result.diagnostics
    return {
        "global_key": _key_json(result.global_key),
        "local_keys": [_key_json(key) for key in result.local_keys],
        "notes": notes,
        "diagnostics": {
            "candidates": [_key_json(key) for key in diag.candidates],
            "row_costs": {
                "initial": [_cost_json(k, w) for k, w in diag.initial_costs],
                "refined": [_cost_json(k, w) for k, w in diag.refined_costs],
            },
            "tie_counts": list(diag.tie_counts),
        },
    }


def _signature_short(signature: int) -> str:
    if signature == 0:
        return "(0)"
    glyph = "#" if signature > 0 else "b"
    return f"({abs(signature)}{glyph})"


def _signature_long(signature: int) -> str:
    if signature == 0:
        return "(0)"
    word = "sharp" if signature > 0 else "flat"
    count = abs(signature)
    return f"({count} {word}{'s' if count > 1 else ''})"


def _dump_tables(result: SpelledPart, algorithm: str) -> str:
    label = "PSE" if algorithm == "pse" else "PS13b"
    lines = [f"spelling {result.diagnostics.note_count} notes"]
    lines.append(f"{label}: first table")
    lines.append("Row Costs:")
    for key, w in result.diagnostics.initial_costs:
        lines.append(
            f"{key.label():<8}{_signature_short(key.signature):<5}"
            f"cost accid={w.accid:<4}dist={w.dist:<4}chromarm={w.chromarm:<4}"
            f"color={w.color:<4}cflat={w.cflat}"
        )
    lines.append(f"{label}: second table")
    lines.append("Row Costs:")
    for key, w in result.diagnostics.refined_costs:
        lines.append(
            f"{key.label():<8}{_signature_long(key.signature)} cost "
            f"accid={w.accid} dist={w.dist} chromarm={w.chromarm} "
            f"color={w.color} cflat={w.cflat}"
        )
    return "\n".join(lines)


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _run_speller(args) -> tuple[Part, SpelledPart, SpellerConfig]:
    config = _config_from(args)
    warnings: list[str] = []
    part = _load_part(args.input, warnings)
    for message in warnings:
        print(f"warning: {message}", file=sys.stderr)
    speller = spell_ps13b if config.algorithm == "ps13b" else spell_part
    result = speller(part, config)
    if args.dump_tables:
        print(_dump_tables(result, config.algorithm), file=sys.stderr)
    return part, result, config


def cmd_spell(args) -> int:
    part, result, _ = _run_speller(args)
    _emit(json.dumps(_result_json(part, result), indent=2), args.output)
    return 0


def cmd_eval(args) -> int:
    truth = parse_ground_truth(Path(args.ground_truth).read_bytes())
    part, result, _ = _run_speller(args)
    given = [(n.midi, n.bar) for n in part.notes]
    expected = [(r.note.midi, r.note.bar) for r in truth.notes]
    if given != expected:
        raise NoteListError("input notes and reference notes do not line up")
    report = evaluate_spelling(result, truth)
    doc = {
        "note_count": report.note_count,
        "correct_count": report.correct_count,
        "spelling_accuracy": report.spelling_accuracy,
        "estimated_signature": report.estimated_signature,
        "expected_signature": report.expected_signature,
        "ks_correct": report.ks_correct,
        "enharmonic_renamed": report.enharmonic_renamed,
        "grace_count": report.grace_count,
        "grace_correct": report.grace_correct,
        "octave_mismatches": report.octave_mismatches,
        "global_key": _key_json(result.global_key),
        "local_keys": [_key_json(key) for key in report.local_keys],
        "mismatches": [
            {
                "index": m.index,
                "midi": m.midi,
                "bar": m.bar,
                "expected": {
                    "name": str(m.expected.name),
                    "accidental": int(m.expected.accidental),
                    "octave": m.expected.octave,
                },
                "got": {
                    "name": str(m.got.name),
                    "accidental": int(m.got.accidental),
                    "octave": m.got.octave,
                },
            }
            for m in report.mismatches
        ],
    }
    _emit(json.dumps(doc, indent=2), args.output)
    percent = 100 * report.spelling_accuracy
    verdict = "correct" if report.ks_correct else "wrong"
    print(
        f"spelling accuracy {percent:.1f}% ({report.correct_count}/"
        f"{report.note_count}), key signature {report.estimated_signature} "
        f"({verdict})",
        file=sys.stderr,
    )
    return 0 if report.perfect else 1


def main(argv=None) -> int:
    raw = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(_merge_ks_range(raw))
    try:
        return args.func(args)
    except (NoteListError, SmfError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
