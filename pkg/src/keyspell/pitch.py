"""Pitch primitives: MIDI values, pitch classes, note names, spellings."""

from __future__ import annotations

import enum
from dataclasses import dataclass

MIDI_MIN = 0
MIDI_MAX = 128


class NoteName(enum.Enum):
    """The seven note letters, C through B."""

    C = 0
    D = 1
    E = 2
    F = 3
    G = 4
    A = 5
    B = 6

    @property
    def index(self) -> int:
        """Position in letter order, C=0 .. B=6."""
        return self.value

    @property
    def base_pc(self) -> int:
        """Pitch class of the unaltered letter."""
        return _BASE_PC[self.value]

    def shifted(self, steps: int) -> "NoteName":
        """The letter `steps` positions up (negative is down), wrapping around."""
        return NoteName((self.value + steps) % 7)

    def __str__(self) -> str:
        return self.name


_BASE_PC = (0, 2, 4, 5, 7, 9, 11)


class Accidental(enum.IntEnum):
    """Pitch class modifier in -2..+2."""

    DOUBLE_FLAT = -2
    FLAT = -1
    NATURAL = 0
    SHARP = 1
    DOUBLE_SHARP = 2

    def __str__(self) -> str:
        return _ACCIDENTAL_GLYPHS[int(self)]


_ACCIDENTAL_GLYPHS = {-2: "bb", -1: "b", 0: "", 1: "#", 2: "##"}
_GLYPH_ALTERATIONS = {"bb": -2, "b": -1, "": 0, "n": 0, "#": 1, "##": 2, "x": 2}


def parse_accidental(value: int | str) -> Accidental:
    """Accidental from an alteration integer or a glyph ('bb', 'b', '', 'n', '#', '##', 'x')."""
    if isinstance(value, bool):
        raise ValueError(f"not an accidental: {value!r}")
    if isinstance(value, int):
        if not -2 <= value <= 2:
            raise ValueError(f"alteration out of range -2..2: {value}")
        return Accidental(value)
    if isinstance(value, str) and value in _GLYPH_ALTERATIONS:
        return Accidental(_GLYPH_ALTERATIONS[value])
    raise ValueError(f"not an accidental: {value!r}")


def format_pitch_name(name: NoteName, accidental: Accidental | int) -> str:
    """Compact name such as 'F#', 'Bb', 'C'."""
    return f"{name}{_ACCIDENTAL_GLYPHS[int(accidental)]}"


def parse_pitch_name(text: str) -> tuple[NoteName, Accidental]:
    """Inverse of format_pitch_name."""
    try:
        name = NoteName[text[:1].upper()]
    except KeyError:
        raise ValueError(f"not a pitch name: {text!r}") from None
    return name, parse_accidental(text[1:])


@dataclass(frozen=True)
class Spelling:
    """A note letter with accidental and octave; octave -2..9, C4 = MIDI 60."""

    name: NoteName
    accidental: Accidental
    octave: int

    def __post_init__(self) -> None:
        if not -2 <= self.octave <= 9:
            raise ValueError(f"octave out of range -2..9: {self.octave}")

    @property
    def pitch_class(self) -> int:
        return (self.name.base_pc + int(self.accidental)) % 12

    def __str__(self) -> str:
        return f"{self.name}{self.accidental}{self.octave}"


def _pair(letter: str, alteration: int) -> tuple[NoteName, Accidental]:
    return NoteName[letter], Accidental(alteration)


# Admissible spellings per pitch class, flat-side entry first. The four
# spellings that never occur in practice (B##, Fbb, E##, Cbb) are left out,
# so every class offers two or three names; class 11 keeps Cb.
_CANDIDATES: tuple[tuple[tuple[NoteName, Accidental], ...], ...] = (
    (_pair("D", -2), _pair("C", 0), _pair("B", 1)),
    (_pair("D", -1), _pair("C", 1)),
    (_pair("E", -2), _pair("D", 0), _pair("C", 2)),
    (_pair("E", -1), _pair("D", 1)),
    (_pair("F", -1), _pair("E", 0), _pair("D", 2)),
    (_pair("G", -2), _pair("F", 0), _pair("E", 1)),
    (_pair("G", -1), _pair("F", 1)),
    (_pair("A", -2), _pair("G", 0), _pair("F", 2)),
    (_pair("A", -1), _pair("G", 1)),
    (_pair("B", -2), _pair("A", 0), _pair("G", 2)),
    (_pair("B", -1), _pair("A", 1)),
    (_pair("C", -1), _pair("B", 0), _pair("A", 2)),
)


def _check_midi(midi: int) -> None:
    if not isinstance(midi, int) or isinstance(midi, bool):
        raise ValueError(f"MIDI pitch must be an integer: {midi!r}")
    if not MIDI_MIN <= midi <= MIDI_MAX:
        raise ValueError(f"MIDI pitch out of range {MIDI_MIN}..{MIDI_MAX}: {midi}")


def pc_of_midi(midi: int) -> int:
    """Pitch class of a MIDI value."""
    _check_midi(midi)
    return midi % 12


def candidate_spellings(pc: int) -> tuple[tuple[NoteName, Accidental], ...]:
    """Admissible (name, accidental) pairs for a pitch class, flat-side first."""
    if not isinstance(pc, int) or not 0 <= pc <= 11:
        raise ValueError(f"pitch class out of range 0..11: {pc!r}")
    return _CANDIDATES[pc]


def spelling_to_midi(spelling: Spelling) -> int:
    """MIDI value of a spelling; errors when outside 0..128."""
    midi = 12 * (spelling.octave + 1) + spelling.name.base_pc + int(spelling.accidental)
    if not MIDI_MIN <= midi <= MIDI_MAX:
        raise ValueError(f"spelling {spelling} falls outside MIDI range: {midi}")
    return midi


def alteration_for(pc: int, name: NoteName) -> int:
    """Signed alteration placing `name` at pitch class `pc` (may exceed -2..2)."""
    alt = (pc - name.base_pc) % 12
    return alt - 12 if alt > 6 else alt


def octave_for(midi: int, name: NoteName, accidental: Accidental | int) -> int:
    """Octave making (name, accidental) sound at `midi`; errors when incompatible."""
    _check_midi(midi)
    if (name.base_pc + int(accidental)) % 12 != midi % 12:
        raise ValueError(
            f"{format_pitch_name(name, accidental)} cannot sound at MIDI {midi}"
        )
    return (midi - name.base_pc - int(accidental)) // 12 - 1
