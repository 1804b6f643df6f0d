#!/usr/bin/env python3
"""Score the speller against a reference note list of the A major fugue
(WTC I, BWV 864), the worked corpus case for the -6..6 key range.

The reference file is not bundled. Pass its path as the first argument or
set KEYSPELL_BWV864; see README for the expected JSON shape.

Run as: python3 scripts/eval_bwv864.py [reference.json]
"""

import os
import sys
from pathlib import Path

from keyspell import (
    SpellerConfig,
    evaluate_spelling,
    ground_truth_part,
    parse_ground_truth,
    spell_part,
)
from keyspell.tonality import Key, Mode


def locate(argv):
    if len(argv) > 1:
        return Path(argv[1])
    override = os.environ.get("KEYSPELL_BWV864")
    if override:
        return Path(override)
    return Path(__file__).resolve().parent.parent / "tests" / "data" / "bwv864_fugue.json"


def main(argv):
    source = locate(argv)
    if not source.exists():
        print(f"error: no reference file at {source}", file=sys.stderr)
        print("pass a path or set KEYSPELL_BWV864", file=sys.stderr)
        return 2
    truth = parse_ground_truth(source.read_bytes())
    part = ground_truth_part(truth)
    spelled = spell_part(part, SpellerConfig(ks_min=-6, ks_max=6))
    costs = dict(spelled.diagnostics.initial_costs)
    for key in (Key(3, Mode.MINOR), Key(3)):
        print(f"first-pass accid total {key.label()}: {costs[key].accid}")
    print("candidates:", [k.label() for k in spelled.diagnostics.candidates])
    print("selected global key:", spelled.global_key.label())
    report = evaluate_spelling(spelled, truth)
    print(f"spelling accuracy {100 * report.spelling_accuracy:.2f}% "
          f"({report.correct_count}/{report.note_count})")
    for miss in report.mismatches:
        print(f"  bar {miss.bar} midi {miss.midi}: "
              f"expected {miss.expected}, got {miss.got}")
    return 0 if report.perfect else 1


if __name__ == "__main__":
    raise SystemExit(main(sys.argv))
