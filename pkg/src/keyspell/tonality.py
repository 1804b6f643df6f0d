"""Keys, modes, signatures, scales, and the Weber key distance chart.

The 30 x 30 distance chart (major keys with signatures -7..7, then minor
keys -7..7, on both axes) ships as data/weber.txt and is validated on
first use.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .pitch import Accidental, NoteName, format_pitch_name, parse_pitch_name

KS_MIN = -7
KS_MAX = 7

# Alterations per letter, indexed by NoteName.index.
SpellingState = tuple


class Mode(enum.Enum):
    """Major, the aggregate minor used for key rows, and the minor variants."""

    MAJOR = "major"
    MINOR = "minor"
    NATURAL_MINOR = "natural_minor"
    HARMONIC_MINOR = "harmonic_minor"
    MELODIC_MINOR = "melodic_minor"

    @property
    def minorish(self) -> bool:
        return self is not Mode.MAJOR


def _check_signature(signature: int) -> None:
    if not isinstance(signature, int) or isinstance(signature, bool):
        raise ValueError(f"key signature must be an integer: {signature!r}")
    if not KS_MIN <= signature <= KS_MAX:
        raise ValueError(f"key signature out of range {KS_MIN}..{KS_MAX}: {signature}")


@dataclass(frozen=True)
class Key:
    """A key signature plus mode.

    Minor rows use the aggregate Mode.MINOR, which admits natural,
    harmonic and melodic spellings at once.
    """

    signature: int
    mode: Mode = Mode.MAJOR

    def __post_init__(self) -> None:
        _check_signature(self.signature)
        if self.mode not in (Mode.MAJOR, Mode.MINOR):
            raise ValueError(f"keys are major or minor, not {self.mode}")

    @property
    def tonic(self) -> tuple[NoteName, Accidental]:
        return tonic_of(self.signature, self.mode)

    def label(self) -> str:
        """Compact display name such as 'F#minor'."""
        return f"{format_pitch_name(*self.tonic)}{self.mode.value}"

    def __str__(self) -> str:
        return self.label()


SHARP_ORDER = (
    NoteName.F, NoteName.C, NoteName.G, NoteName.D,
    NoteName.A, NoteName.E, NoteName.B,
)
FLAT_ORDER = tuple(reversed(SHARP_ORDER))

_MAJOR_TONICS = tuple(
    parse_pitch_name(t) for t in "Cb Gb Db Ab Eb Bb F C G D A E B F# C#".split()
)
_MINOR_TONICS = tuple(
    parse_pitch_name(t) for t in "Ab Eb Bb F C G D A E B F# C# G# D# A#".split()
)


def tonic_of(signature: int, mode: Mode) -> tuple[NoteName, Accidental]:
    """Tonic spelling of the key with the given signature and mode."""
    _check_signature(signature)
    row = _MAJOR_TONICS if mode is Mode.MAJOR else _MINOR_TONICS
    return row[signature + KS_MAX]


@lru_cache(maxsize=None)
def initial_state(signature: int) -> SpellingState:
    """Alterations implied by the signature: its sharps or flats, naturals elsewhere."""
    _check_signature(signature)
    state = [0] * 7
    if signature >= 0:
        for name in SHARP_ORDER[:signature]:
            state[name.index] = 1
    else:
        for name in FLAT_ORDER[:-signature]:
            state[name.index] = -1
    return tuple(state)


@lru_cache(maxsize=None)
def signature_spellings(signature: int) -> tuple[tuple[NoteName, Accidental], ...]:
    """The seven letter spellings a signature implies."""
    state = initial_state(signature)
    return tuple((name, Accidental(state[name.index])) for name in NoteName)


def _raised_degree(key: Key, steps: int) -> tuple[NoteName, Accidental]:
    tonic_name, _ = key.tonic
    letter = tonic_name.shifted(steps)
    state = initial_state(key.signature)
    return (letter, Accidental(state[letter.index] + 1))


@lru_cache(maxsize=None)
def lead_degree_accidentals(key: Key) -> frozenset:
    """Raised 6th and 7th degree spellings of a minor key; empty for major."""
    if key.mode is Mode.MAJOR:
        return frozenset()
    return frozenset({_raised_degree(key, 5), _raised_degree(key, 6)})


@lru_cache(maxsize=None)
def leading_tone_accidental(key: Key) -> tuple[NoteName, Accidental] | None:
    """The raised 7th degree of a minor key (its leading tone); None for major.

    Only this raised degree rides free in the plain accidental count; the
    raised 6th enters scale membership but still prints at full price."""
    if key.mode is Mode.MAJOR:
        return None
    return _raised_degree(key, 6)


@lru_cache(maxsize=None)
def scale_spellings(key: Key) -> frozenset:
    """Spellings admitted by the key's scales.

    Major keys admit the seven signature spellings. Minor keys admit those
    plus the raised 6th and 7th degrees, covering the natural, harmonic and
    melodic variants together.
    """
    base = frozenset(signature_spellings(key.signature))
    if key.mode is Mode.MAJOR:
        return base
    return base | lead_degree_accidentals(key)


# (semitones above tonic, letters above tonic): one canonical chromatic
# spelling with lowered 2nd/3rd/6th/7th and raised 4th, for both modes.
_CHROMATIC_PATTERN = (
    (0, 0), (1, 1), (2, 1), (3, 2), (4, 2), (5, 3),
    (6, 3), (7, 4), (8, 5), (9, 5), (10, 6), (11, 6),
)


@lru_cache(maxsize=None)
def chromatic_harmonic_scale(key: Key) -> tuple[tuple[NoteName, Accidental], ...]:
    """One spelling per pitch class, anchored at the key's tonic; index = pitch class."""
    tonic_name, tonic_acc = key.tonic
    tonic_pc = (tonic_name.base_pc + int(tonic_acc)) % 12
    table: list = [None] * 12
    for semis, steps in _CHROMATIC_PATTERN:
        letter = tonic_name.shifted(steps)
        pc = (tonic_pc + semis) % 12
        alt = (pc - letter.base_pc) % 12
        if alt > 6:
            alt -= 12
        if not -2 <= alt <= 2:
            raise AssertionError(f"chromatic spelling of {key} needs alteration {alt}")
        table[pc] = (letter, Accidental(alt))
    return tuple(table)


_WEBER_SIZE = 30


@lru_cache(maxsize=1)
def _weber_table() -> tuple[tuple[int, ...], ...]:
    text = resources.files(__package__).joinpath("data/weber.txt").read_text("ascii")
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        rows.append(tuple(int(tok) for tok in line.split()))
    if len(rows) != _WEBER_SIZE or any(len(row) != _WEBER_SIZE for row in rows):
        raise ValueError("weber chart must be 30 x 30")
    for i in range(_WEBER_SIZE):
        if rows[i][i] != 0:
            raise ValueError(f"weber chart diagonal must be zero at {i}")
        for j in range(_WEBER_SIZE):
            if rows[i][j] != rows[j][i]:
                raise ValueError(f"weber chart must be symmetric at ({i}, {j})")
            if not 0 <= rows[i][j] <= 11:
                raise ValueError(f"weber chart entry out of range at ({i}, {j})")
    return tuple(rows)


def weber_index(key: Key) -> int:
    """Row index of a key in the distance chart: majors 0..14, minors 15..29."""
    base = 0 if key.mode is Mode.MAJOR else 15
    return base + key.signature + KS_MAX


def weber_distance(a: Key, b: Key) -> int:
    """Chart distance between two keys (0..11, symmetric, 0 on the diagonal)."""
    return _weber_table()[weber_index(a)][weber_index(b)]


# Signature pairs whose keys name the same twelve pitches.
ENHARMONIC_SIGNATURES = {-7: 5, 5: -7, -5: 7, 7: -5, -6: 6, 6: -6}


def enharmonic_signature(signature: int) -> int | None:
    """The signature spelling the same pitches, if any."""
    return ENHARMONIC_SIGNATURES.get(signature)


def enharmonic_pair(a: Key, b: Key) -> bool:
    """True for distinct same-mode keys whose scales sound identical."""
    return a.mode is b.mode and ENHARMONIC_SIGNATURES.get(a.signature) == b.signature


def key_universe(lo: int = KS_MIN, hi: int = KS_MAX) -> tuple[Key, ...]:
    """All keys with signatures lo..hi: majors ascending, then minors ascending."""
    _check_signature(lo)
    _check_signature(hi)
    if lo > hi:
        raise ValueError(f"empty signature range {lo}..{hi}")
    span = range(lo, hi + 1)
    majors = tuple(Key(k, Mode.MAJOR) for k in span)
    minors = tuple(Key(k, Mode.MINOR) for k in span)
    return majors + minors
