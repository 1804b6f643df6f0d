"""Minimum-accidental spelling of one measure under a fixed key.

The search walks a layered acyclic graph of engraving configurations. A
configuration carries the running spelling state (letter to alteration,
reset to the signature at each barline); while a run of simultaneous
notes is in progress it also carries the state frozen at the start of
the run plus a pitch-class-to-letter map, which forces equal pitch
classes within the run to share one letter and keeps their accidental
from being counted twice. Edge weights reflect the accidental symbols a
spelling would print; a forward sweep keeps one cheapest path per
configuration, which is exact because weights add along paths and every
ordering used is translation invariant.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .notes import NoteEvent
from .pitch import Accidental, NoteName, candidate_spellings, pc_of_midi
from .tonality import (
    Key,
    Mode,
    SpellingState,
    chromatic_harmonic_scale,
    initial_state,
    leading_tone_accidental,
    scale_spellings,
)


class Ordering(enum.Enum):
    """How refined weights compare: W+ collapses accid+dist, Wlex is lexicographic."""

    SUM = "sum"
    LEX = "lex"


@dataclass(frozen=True)
class Weight:
    """Additive spelling cost split into five counters."""

    accid: int = 0
    dist: int = 0
    chromarm: int = 0
    color: int = 0
    cflat: int = 0

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(
            self.accid + other.accid,
            self.dist + other.dist,
            self.chromarm + other.chromarm,
            self.color + other.color,
            self.cflat + other.cflat,
        )

    def components(self) -> tuple[int, int, int, int, int]:
        return (self.accid, self.dist, self.chromarm, self.color, self.cflat)


ZERO_WEIGHT = Weight()


def weight_key(weight: Weight, ordering: Ordering | None) -> tuple:
    """Comparison key under the scalar (None), SUM, or LEX ordering."""
    if ordering is None:
        return (weight.accid,)
    if ordering is Ordering.SUM:
        return (
            weight.accid + weight.dist,
            weight.chromarm,
            weight.color,
            weight.cflat,
        )
    return weight.components()


def update_state(
    state: SpellingState, name: NoteName, accidental: Accidental | int
) -> tuple[SpellingState, bool]:
    """Engraving update: the new state, and whether the accidental prints."""
    idx = name.index
    alt = int(accidental)
    if state[idx] == alt:
        return state, False
    return state[:idx] + (alt,) + state[idx + 1:], True


# ((pitch class, NoteName), ...) in first-appearance order.
ChordMap = tuple


def chord_lookup(chord: ChordMap, pc: int) -> NoteName | None:
    for klass, name in chord:
        if klass == pc:
            return name
    return None


@dataclass(frozen=True)
class Configuration:
    """Search vertex: plain between single notes; inside a run of simultaneous
    notes it adds the pre-run state and the run's pitch-class naming map."""

    state: SpellingState
    frozen: SpellingState | None = None
    chord: ChordMap | None = None

    @property
    def in_chord(self) -> bool:
        return self.chord is not None


def start_configuration(key: Key) -> Configuration:
    return Configuration(initial_state(key.signature))


def step(
    cfg: Configuration, event: NoteEvent
) -> list[tuple[Configuration, NoteName, Accidental, bool]]:
    """Successors of a configuration for one note, one per admissible spelling.

    Inside a run, a pitch class already named must reuse its letter and is
    never counted again; a new pitch class is counted iff its accidental
    differs from the frozen pre-run state. Outside a run an accidental is
    counted iff it changes the running state. The state itself always
    advances, and the run extras drop as soon as the next note is no longer
    simultaneous.
    """
    pc = pc_of_midi(event.midi)
    successors = []
    for name, accidental in candidate_spellings(pc):
        if cfg.in_chord:
            mapped = chord_lookup(cfg.chord, pc)
            if mapped is not None and mapped is not name:
                continue
            if mapped is not None:
                counted = False
                chord = cfg.chord
            else:
                counted = cfg.frozen[name.index] != int(accidental)
                chord = cfg.chord + ((pc, name),)
            state, _ = update_state(cfg.state, name, accidental)
            frozen = cfg.frozen
        else:
            state, counted = update_state(cfg.state, name, accidental)
            frozen = cfg.state
            chord = ((pc, name),)
        if event.simultaneous_with_next:
            successor = Configuration(state, frozen, chord)
        else:
            successor = Configuration(state)
        successors.append((successor, name, accidental, counted))
    return successors


def scalar_weight(
    counted: bool, key: Key, name: NoteName, accidental: Accidental | int
) -> int:
    """Printed symbols for one note: 0 when silent or a minor leading tone,
    otherwise 1, or 2 for a double accidental."""
    if not counted:
        return 0
    if key.mode is not Mode.MAJOR and (name, accidental) == leading_tone_accidental(key):
        return 0
    return 2 if abs(int(accidental)) == 2 else 1


_RARE_SPELLINGS = frozenset({
    (NoteName.C, Accidental.FLAT),
    (NoteName.B, Accidental.SHARP),
    (NoteName.F, Accidental.FLAT),
    (NoteName.E, Accidental.SHARP),
})


def refined_weight(
    counted: bool,
    key: Key,
    name: NoteName,
    accidental: Accidental | int,
    local_key: Key,
    global_ks: int,
) -> Weight:
    """Five counters for one note: printed symbols, out-of-scale printed
    symbols for the measure's local key, disagreement with the local key's
    chromatic spelling, printed symbols fighting the global signature's
    color, and rare-spelling occurrences (Cb, B#, Fb, E#)."""
    alt = int(accidental)
    spelling = (name, accidental)
    accid = scalar_weight(counted, key, name, accidental)
    dist = 1 if counted and spelling not in scale_spellings(local_key) else 0
    pc = (name.base_pc + alt) % 12
    chromarm = 0 if chromatic_harmonic_scale(local_key)[pc] == spelling else 1
    color = 0
    if counted and (global_ks > 0 and alt < 0 or global_ks < 0 and alt > 0):
        color = 1
    cflat = 1 if spelling in _RARE_SPELLINGS else 0
    return Weight(accid, dist, chromarm, color, cflat)


@dataclass(frozen=True)
class Scalar:
    """Search mode minimizing the plain printed-accidental count."""

    def weight(self, counted, key, name, accidental) -> Weight:
        return Weight(accid=scalar_weight(counted, key, name, accidental))

    def sort_key(self, weight: Weight) -> tuple:
        return (weight.accid,)

    def reference_key(self, key: Key) -> Key:
        return key


@dataclass(frozen=True)
class Refined:
    """Search mode minimizing the five-part weight against a local key."""

    local_key: Key
    global_ks: int
    ordering: Ordering = Ordering.SUM

    def weight(self, counted, key, name, accidental) -> Weight:
        return refined_weight(
            counted, key, name, accidental, self.local_key, self.global_ks
        )

    def sort_key(self, weight: Weight) -> tuple:
        return weight_key(weight, self.ordering)

    def reference_key(self, key: Key) -> Key:
        return self.local_key


@dataclass(frozen=True)
class MeasureResult:
    """Cheapest spelling of one measure: total weight, the chosen
    (name, accidental) per note, and how many assignments tie for the cost."""

    cost: Weight
    assignment: tuple[tuple[NoteName, Accidental], ...]
    tie_count: int


class _Entry:
    """Best path into one configuration, plus the count of tying paths."""

    __slots__ = ("cost", "key", "assignment", "ways")

    def __init__(self, cost, key, assignment, ways):
        self.cost = cost
        self.key = key
        self.assignment = assignment
        self.ways = ways


def _tiebreak_key(entry: _Entry, chromatic) -> tuple:
    """Preference among equal-cost paths: last spelling in the reference key's
    chromatic table, then smaller alteration, then letter order, then the
    whole assignment for determinism."""
    name, accidental = entry.assignment[-1]
    pc = (name.base_pc + int(accidental)) % 12
    in_table = 0 if chromatic[pc] == (name, accidental) else 1
    flat = tuple((n.index, int(a)) for n, a in entry.assignment)
    return (in_table, abs(int(accidental)), name.index, flat)


def best_spelling(
    events: list[NoteEvent], key: Key, mode: Scalar | Refined = Scalar()
) -> MeasureResult:
    """Cheapest spelling of one measure's events under `key`.

    Events must all lie in one bar, in enumeration order. Ties are counted
    exactly (number of distinct minimum-cost assignments) and broken by
    closeness to the reference key's chromatic spelling table.
    """
    if not events:
        return MeasureResult(ZERO_WEIGHT, (), 1)
    bars = {e.bar for e in events}
    if len(bars) != 1:
        raise ValueError(f"events span bars {sorted(bars)}; spell one measure at a time")
    chromatic = chromatic_harmonic_scale(mode.reference_key(key))
    layer: dict[Configuration, _Entry] = {
        start_configuration(key): _Entry(ZERO_WEIGHT, mode.sort_key(ZERO_WEIGHT), (), 1)
    }
    for event in events:
        next_layer: dict[Configuration, _Entry] = {}
        for cfg, entry in layer.items():
            for successor, name, accidental, counted in step(cfg, event):
                cost = entry.cost + mode.weight(counted, key, name, accidental)
                candidate = _Entry(
                    cost,
                    mode.sort_key(cost),
                    entry.assignment + ((name, accidental),),
                    entry.ways,
                )
                incumbent = next_layer.get(successor)
                if incumbent is None or candidate.key < incumbent.key:
                    next_layer[successor] = candidate
                elif candidate.key == incumbent.key:
                    total = incumbent.ways + candidate.ways
                    if _tiebreak_key(candidate, chromatic) < _tiebreak_key(
                        incumbent, chromatic
                    ):
                        candidate.ways = total
                        next_layer[successor] = candidate
                    else:
                        incumbent.ways = total
        layer = next_layer
    best = min(entry.key for entry in layer.values())
    finalists = [entry for entry in layer.values() if entry.key == best]
    tie_count = sum(entry.ways for entry in finalists)
    chosen = min(finalists, key=lambda entry: _tiebreak_key(entry, chromatic))
    return MeasureResult(chosen.cost, chosen.assignment, tie_count)


def replay_assignment(
    events: list[NoteEvent],
    assignment,
    key: Key,
) -> list[bool]:
    """Counted flags obtained by driving the configuration graph along a
    fixed assignment; errors when the assignment is inadmissible."""
    cfg = start_configuration(key)
    flags = []
    for event, (name, accidental) in zip(events, assignment, strict=True):
        for successor, n, a, counted in step(cfg, event):
            if n is name and int(a) == int(accidental):
                cfg = successor
                flags.append(counted)
                break
        else:
            raise ValueError(
                f"assignment names MIDI {event.midi} as "
                f"{name}{Accidental(int(accidental))!s}, which is inadmissible here"
            )
    return flags
