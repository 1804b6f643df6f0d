"""Joint pitch spelling and key estimation for bar-annotated note sequences."""

from .config import SpellerConfig, parse_ks_range
from .evaluate import (
    EvalReport,
    GroundTruth,
    evaluate_spelling,
    ground_truth_part,
    parse_ground_truth,
)
from .measure import (
    MeasureResult,
    Ordering,
    Refined,
    Scalar,
    Weight,
    best_spelling,
)
from .notes import (
    InputNote,
    NoteEvent,
    NoteListError,
    Part,
    enumerate_events,
    make_part,
    parse_notelist,
    serialize_notelist,
)
from .pitch import (
    Accidental,
    NoteName,
    Spelling,
    candidate_spellings,
    octave_for,
    pc_of_midi,
    spelling_to_midi,
)
from .ps13b import spell_ps13b
from .rewrite import rewrite_pass
from .smf import SmfError, ingest_smf
from .table import Diagnostics, SpelledPart, spell_part
from .tonality import (
    Key,
    Mode,
    chromatic_harmonic_scale,
    initial_state,
    key_universe,
    scale_spellings,
    weber_distance,
)

__version__ = "0.1.0"


def spell(part: Part, config: SpellerConfig = SpellerConfig()) -> SpelledPart:
    """Spell a part with the algorithm named in the configuration."""
    if config.algorithm == "ps13b":
        return spell_ps13b(part, config)
    return spell_part(part, config)


__all__ = [
    "Accidental",
    "Diagnostics",
    "EvalReport",
    "GroundTruth",
    "InputNote",
    "Key",
    "MeasureResult",
    "Mode",
    "NoteEvent",
    "NoteListError",
    "NoteName",
    "Ordering",
    "Part",
    "Refined",
    "Scalar",
    "SmfError",
    "SpelledPart",
    "SpellerConfig",
    "Spelling",
    "Weight",
    "best_spelling",
    "candidate_spellings",
    "chromatic_harmonic_scale",
    "enumerate_events",
    "evaluate_spelling",
    "ground_truth_part",
    "ingest_smf",
    "initial_state",
    "key_universe",
    "make_part",
    "octave_for",
    "parse_ground_truth",
    "parse_ks_range",
    "parse_notelist",
    "pc_of_midi",
    "rewrite_pass",
    "scale_spellings",
    "serialize_notelist",
    "spell",
    "spell_part",
    "spell_ps13b",
    "spelling_to_midi",
    "weber_distance",
]
