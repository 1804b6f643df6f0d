"""Post-spelling correction of passing and neighbor notes.

A single left-to-right sweep rewrites the middle note of trigrams whose
letters and semitone steps match one of four patterns (returning lower or
upper neighbor, descending or ascending passing motion), so that stepwise
motion is written on adjacent letters. Rewrites keep the sounding pitch
and are visible to the trigrams that follow. Trigrams touching a run of
simultaneous notes are left alone.
"""

from __future__ import annotations

from dataclasses import dataclass

from .notes import NoteEvent
from .pitch import Accidental, NoteName, Spelling, alteration_for, octave_for


@dataclass(frozen=True)
class Trigram:
    """Three consecutive spelled notes with their sounding pitches."""

    midis: tuple[int, int, int]
    spellings: tuple[Spelling, Spelling, Spelling]


def _middle_letter(trigram: Trigram) -> NoteName | None:
    """Target letter for the middle note, or None when no pattern matches."""
    m0, m1, m2 = trigram.midis
    n0, n1, n2 = (s.name for s in trigram.spellings)
    d01 = m1 - m0
    d12 = m2 - m1
    stepwise = abs(d01) in (1, 2) and abs(d12) in (1, 2)
    if not stepwise:
        return None
    if n0 is n1 is n2 and d12 == -d01:
        return n0.shifted(-1 if d01 < 0 else 1)
    if d01 < 0 and d12 < 0:
        if n1 is n0:
            return n0.shifted(-1)
        if n1 is n2:
            return n2.shifted(1)
    elif d01 > 0 and d12 > 0:
        if n1 is n0:
            return n0.shifted(1)
        if n1 is n2:
            return n2.shifted(-1)
    return None


def match_rule(trigram: Trigram) -> Spelling | None:
    """Replacement for the middle note, or None.

    A match requires the induced alteration to stay within -2..+2 and the
    induced spelling to differ from the current one; pitch is preserved.
    """
    letter = _middle_letter(trigram)
    if letter is None:
        return None
    middle = trigram.spellings[1]
    alt = alteration_for(trigram.midis[1] % 12, letter)
    if not -2 <= alt <= 2:
        return None
    if letter is middle.name and alt == int(middle.accidental):
        return None
    octave = octave_for(trigram.midis[1], letter, alt)
    return Spelling(letter, Accidental(alt), octave)


def rewrite_pass(events: list[NoteEvent], spellings) -> list[Spelling]:
    """One sweep over the spelled part, returning the corrected spellings.

    Position i is rewritten only when neither edge of its trigram crosses a
    run of simultaneous notes, that is when notes i-1 and i both do not
    share their onset with the following note.
    """
    out = list(spellings)
    if len(out) != len(events):
        raise ValueError("one spelling per event is required")
    for i in range(1, len(out) - 1):
        if events[i - 1].simultaneous_with_next or events[i].simultaneous_with_next:
            continue
        trigram = Trigram(
            (events[i - 1].midi, events[i].midi, events[i + 1].midi),
            (out[i - 1], out[i], out[i + 1]),
        )
        replacement = match_rule(trigram)
        if replacement is not None:
            out[i] = replacement
    return out
