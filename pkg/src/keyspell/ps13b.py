"""Deterministic spelling variant.

Instead of searching each measure, every note is forced to the unique
spelling its pitch class has in the chromatic spelling table of the
current key (the row key in the first pass, the measure's local key in
the second). Counting and weighting run through the same configuration
machinery, so costs stay comparable with the exhaustive search, and the
table construction is linear in notes times keys.
"""

from __future__ import annotations

from .config import SpellerConfig
from .measure import (
    MeasureResult,
    Refined,
    Scalar,
    ZERO_WEIGHT,
    replay_assignment,
)
from .notes import Part
from .pitch import pc_of_midi
from .table import SpelledPart, _spell_with
from .tonality import Key, chromatic_harmonic_scale


def forced_measure(events, key: Key, mode: Scalar | Refined = Scalar()) -> MeasureResult:
    """The single admissible spelling of a measure: each note takes its
    pitch class entry from the reference key's chromatic table."""
    chromatic = chromatic_harmonic_scale(mode.reference_key(key))
    assignment = tuple(chromatic[pc_of_midi(event.midi)] for event in events)
    flags = replay_assignment(events, assignment, key)
    total = ZERO_WEIGHT
    for (name, accidental), counted in zip(assignment, flags, strict=True):
        total = total + mode.weight(counted, key, name, accidental)
    return MeasureResult(total, assignment, tie_count=0)


def spell_ps13b(part: Part, config: SpellerConfig = SpellerConfig()) -> SpelledPart:
    """Spell a part with the deterministic variant."""
    return _spell_with(
        part,
        config,
        lambda events, key: forced_measure(events, key, Scalar()),
        forced_measure,
    )
