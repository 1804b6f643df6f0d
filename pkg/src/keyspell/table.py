"""Whole-part spelling: cost tables over keys, global candidates, the local
key grid, and final selection.

The part is spelled measure by measure against every key row, producing a
scalar cost table. Rows close enough to the cheapest become global key
candidates; for each candidate a row of local keys is estimated by rank
aggregation (column cost, distance to the previous local key, distance to
the candidate). A second table then re-spells each measure with the five
part refined weights, and the best row wins.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .config import SpellerConfig
from .measure import (
    MeasureResult,
    Ordering,
    Refined,
    Scalar,
    Weight,
    ZERO_WEIGHT,
    best_spelling,
    refined_weight,
    replay_assignment,
    weight_key,
)
from .notes import NoteEvent, Part, enumerate_events
from .pitch import Accidental, Spelling, octave_for
from .rewrite import rewrite_pass
from .tonality import Key, Mode, key_universe, weber_distance


def measures_of(part: Part) -> list[list[NoteEvent]]:
    """Per-bar event lists, covering every bar up to the part's measure count."""
    grouped: list[list[NoteEvent]] = [[] for _ in range(part.measure_count)]
    for event in enumerate_events(part):
        grouped[event.bar].append(event)
    return grouped


@dataclass(frozen=True)
class SpellingTable:
    """One MeasureResult per (key row, measure column)."""

    keys: tuple[Key, ...]
    cells: tuple[tuple[MeasureResult, ...], ...]

    def row_cost(self, row: int) -> Weight:
        total = ZERO_WEIGHT
        for cell in self.cells[row]:
            total = total + cell.cost
        return total


def build_table(part: Part, keys, cell=None) -> SpellingTable:
    """First-pass table: scalar spelling of every measure under every key."""
    if cell is None:
        cell = lambda events, key: best_spelling(events, key, Scalar())
    columns = measures_of(part)
    keys = tuple(keys)
    cells = tuple(
        tuple(cell(events, key) for events in columns) for key in keys
    )
    return SpellingTable(keys, cells)


def candidate_globals(table: SpellingTable, margin: float) -> list[int]:
    """Rows whose accidental total is within (1 + margin) of the best,
    ordered by total then row index."""
    if margin < 0:
        raise ValueError(f"margin must not be negative: {margin}")
    totals = [table.row_cost(row).accid for row in range(len(table.keys))]
    best = min(totals)
    cutoff = best * (1 + margin) + 1e-9
    rows = [row for row, total in enumerate(totals) if total <= cutoff]
    rows.sort(key=lambda row: (totals[row], row))
    return rows


def rank_by_value(values) -> list[float]:
    """Fractional 1-based ranks; tied values share the mean of their positions."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        shared = (i + j) / 2 + 1
        for position in range(i, j + 1):
            ranks[order[position]] = shared
        i = j + 1
    return ranks


def local_key_grid(table: SpellingTable, rows) -> dict[int, list[Key]]:
    """Per-candidate local keys, one per measure.

    Each cell aggregates three fractional rankings over all keys: the
    measure's column costs, closeness to the previous local key (the
    candidate itself for the first measure), and closeness to the candidate.
    Ties fall to the better column rank, then the smaller distance to the
    candidate, then row order.
    """
    keys = table.keys
    measure_count = len(table.cells[0]) if table.cells else 0
    column_ranks = [
        rank_by_value([table.cells[i][j].cost.accid for i in range(len(keys))])
        for j in range(measure_count)
    ]
    grid: dict[int, list[Key]] = {}
    for row in rows:
        anchor = keys[row]
        to_anchor = [weber_distance(key, anchor) for key in keys]
        anchor_rank = rank_by_value(to_anchor)
        locals_row: list[Key] = []
        previous = anchor
        for j in range(measure_count):
            previous_rank = (
                anchor_rank
                if previous == anchor
                else rank_by_value([weber_distance(key, previous) for key in keys])
            )
            best_index = min(
                range(len(keys)),
                key=lambda x: (
                    (column_ranks[j][x] + previous_rank[x] + anchor_rank[x]) / 3,
                    column_ranks[j][x],
                    to_anchor[x],
                    x,
                ),
            )
            previous = keys[best_index]
            locals_row.append(previous)
        grid[row] = locals_row
    return grid


def build_refined_table(
    part: Part, keys, rows, grid: dict[int, list[Key]],
    ordering: Ordering = Ordering.SUM, cell=None,
) -> dict[int, list[MeasureResult]]:
    """Second-pass cells for the candidate rows, spelled under refined weights."""
    if cell is None:
        cell = best_spelling
    columns = measures_of(part)
    keys = tuple(keys)
    refined: dict[int, list[MeasureResult]] = {}
    for row in rows:
        key = keys[row]
        refined[row] = [
            cell(events, key, Refined(grid[row][j], key.signature, ordering))
            for j, events in enumerate(columns)
        ]
    return refined


def _row_total(cells) -> Weight:
    total = ZERO_WEIGHT
    for cell in cells:
        total = total + cell.cost
    return total


def select_global(
    refined: dict[int, list[MeasureResult]], keys, ordering: Ordering
) -> int:
    """Winning candidate row: cheapest refined total, ties to the smaller
    absolute signature, then major over minor, then row order."""
    keys = tuple(keys)

    def preference(row: int) -> tuple:
        key = keys[row]
        return (
            weight_key(_row_total(refined[row]), ordering),
            abs(key.signature),
            0 if key.mode is Mode.MAJOR else 1,
            row,
        )

    return min(refined, key=preference)


@dataclass(frozen=True)
class Diagnostics:
    """Run introspection: candidate keys, both tables' row totals (the first
    pass annotated with all five counters, distance fixed at zero), per
    measure tie counts of the winning row, and the spellings before the
    passing-note sweep."""

    note_count: int
    candidates: tuple[Key, ...]
    initial_costs: tuple[tuple[Key, Weight], ...]
    refined_costs: tuple[tuple[Key, Weight], ...]
    tie_counts: tuple[int, ...]
    pre_rewrite: tuple[Spelling, ...]


@dataclass(frozen=True)
class SpelledPart:
    """Spelling of a whole part, note for note, with its key estimates."""

    spellings: tuple[Spelling, ...]
    global_key: Key
    local_keys: tuple[Key, ...]
    diagnostics: Diagnostics


def _annotate_row(columns, cells, key: Key) -> Weight:
    """Five-counter total of a first-pass row, replayed against its own key;
    the distance counter stays zero because no local keys exist yet."""
    total = ZERO_WEIGHT
    for events, cell in zip(columns, cells, strict=True):
        flags = replay_assignment(events, cell.assignment, key)
        for (name, accidental), counted in zip(cell.assignment, flags, strict=True):
            total = total + refined_weight(
                counted, key, name, accidental, key, key.signature
            )
    return replace(total, dist=0)


def _spell_with(part: Part, config: SpellerConfig, scalar_cell, refined_cell) -> SpelledPart:
    keys = key_universe(config.ks_min, config.ks_max)
    columns = measures_of(part)
    table = build_table(part, keys, scalar_cell)
    rows = candidate_globals(table, config.margin)
    grid = local_key_grid(table, rows)
    refined = build_refined_table(part, keys, rows, grid, config.ordering, refined_cell)
    winner = select_global(refined, keys, config.ordering)
    events = [event for column in columns for event in column]
    assignment = [
        pair for cell in refined[winner] for pair in cell.assignment
    ]
    raw = tuple(
        Spelling(name, Accidental(int(accidental)), octave_for(event.midi, name, accidental))
        for event, (name, accidental) in zip(events, assignment, strict=True)
    )
    final = tuple(rewrite_pass(events, raw))
    diagnostics = Diagnostics(
        note_count=len(events),
        candidates=tuple(keys[row] for row in rows),
        initial_costs=tuple(
            (keys[row], _annotate_row(columns, table.cells[row], keys[row]))
            for row in range(len(keys))
        ),
        refined_costs=tuple((keys[row], _row_total(refined[row])) for row in rows),
        tie_counts=tuple(cell.tie_count for cell in refined[winner]),
        pre_rewrite=raw,
    )
    return SpelledPart(
        spellings=final,
        global_key=keys[winner],
        local_keys=tuple(grid[winner]),
        diagnostics=diagnostics,
    )


def spell_part(part: Part, config: SpellerConfig = SpellerConfig()) -> SpelledPart:
    """Spell a part with the exhaustive per-measure search."""
    return _spell_with(
        part,
        config,
        lambda events, key: best_spelling(events, key, Scalar()),
        best_spelling,
    )
