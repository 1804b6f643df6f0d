#!/usr/bin/env python3
"""Spell a short two-voice fragment with both algorithms and show the tables.

Run as: python3 scripts/demo_spell.py
"""

from fractions import Fraction

from keyspell import (
    InputNote,
    SpellerConfig,
    make_part,
    spell_part,
    spell_ps13b,
)

# Two bars of a D harmonic minor ascent: the signature flat arrives in the
# second bar together with the raised leading tone.
MELODY = [
    # (midi, bar, onset)
    (62, 0, 0), (64, 0, 1), (65, 0, 2), (67, 0, 3),
    (69, 1, 0), (70, 1, 1), (73, 1, 2), (74, 1, 3),
]


def build_part():
    notes = [
        InputNote(midi, bar, Fraction(pos, 4), Fraction(1, 4))
        for midi, bar, pos in MELODY
    ]
    return make_part(notes)


def describe(label, spelled):
    print(f"{label}: global key {spelled.global_key.label()}, "
          f"locals {[k.label() for k in spelled.local_keys]}")
    print(f"{label}: " + " ".join(str(s) for s in spelled.spellings))
    print(f"{label}: candidate rows "
          f"{[k.label() for k in spelled.diagnostics.candidates]}")
    for key, weight in spelled.diagnostics.refined_costs:
        print(f"  {key.label():<9} accid={weight.accid} dist={weight.dist} "
              f"chromarm={weight.chromarm} color={weight.color} "
              f"cflat={weight.cflat}")


def main():
    part = build_part()
    config = SpellerConfig()
    describe("pse", spell_part(part, config))
    print()
    describe("ps13b", spell_ps13b(part, config))


if __name__ == "__main__":
    main()
