"""Standard MIDI file ingestion against hand-assembled byte streams."""

import struct
from fractions import Fraction

import pytest

from keyspell.smf import SmfError, ingest_smf


def vlq(value: int) -> bytes:
    """Variable-length quantity encoding."""
    out = [value & 0x7F]
    value >>= 7
    while value:
        out.append(0x80 | (value & 0x7F))
        value >>= 7
    return bytes(reversed(out))


def track(*events: bytes) -> bytes:
    body = b"".join(events) + vlq(0) + b"\xff\x2f\x00"
    return b"MTrk" + struct.pack(">I", len(body)) + body


def smf(*tracks: bytes, fmt: int = 1, division: int = 480) -> bytes:
    header = b"MThd" + struct.pack(">IHHH", 6, fmt, len(tracks), division)
    return header + b"".join(tracks)


def on(delta, pitch, velocity=64, channel=0):
    return vlq(delta) + bytes([0x90 | channel, pitch, velocity])


def off(delta, pitch, channel=0):
    return vlq(delta) + bytes([0x80 | channel, pitch, 0])


def timesig(delta, num, den_pow):
    return vlq(delta) + bytes([0xFF, 0x58, 0x04, num, den_pow, 24, 8])


def test_rejects_non_midi_data():
    with pytest.raises(SmfError):
        ingest_smf(b"RIFFjunk")


def test_rejects_format_two_and_smpte():
    with pytest.raises(SmfError, match="format"):
        ingest_smf(smf(track(), fmt=2))
    with pytest.raises(SmfError, match="SMPTE"):
        ingest_smf(smf(track(), division=0x8000 | 25))


def test_quarters_in_common_time():
    data = smf(track(
        timesig(0, 4, 2),
        on(0, 60), off(480, 60),
        on(0, 62), off(480, 62),
        on(960, 64), off(480, 64),
    ))
    part = ingest_smf(data)
    got = [(n.midi, n.bar, n.onset, n.duration) for n in part.notes]
    assert got == [
        (60, 0, Fraction(0), Fraction(1, 4)),
        (62, 0, Fraction(1, 4), Fraction(1, 4)),
        (64, 1, Fraction(0), Fraction(1, 4)),
    ]
    assert part.measure_count == 2


def test_missing_time_signature_defaults_to_common_time_with_warning():
    warnings = []
    part = ingest_smf(smf(track(on(0, 60), off(1920, 60))), warnings)
    assert part.notes[0].bar == 0
    assert part.notes[0].duration == 1
    assert any("4/4" in w for w in warnings)


def test_late_time_signature_still_warns():
    warnings = []
    data = smf(track(on(0, 60), off(480, 60), timesig(0, 3, 2), on(0, 61), off(480, 61)))
    ingest_smf(data, warnings)
    assert any("4/4" in w for w in warnings)


def test_signature_change_opens_a_bar():
    # Two bars of 4/4, then 3/4; the note at tick 480*11 begins the second
    # 3/4 bar, hence bar 3 at onset zero.
    data = smf(track(
        timesig(0, 4, 2),
        timesig(3840, 3, 2),
        on(1440, 65), off(480, 65),
    ))
    part = ingest_smf(data)
    assert [(n.bar, n.onset, n.duration) for n in part.notes] == [
        (3, Fraction(0), Fraction(1, 3))
    ]


def test_mid_bar_signature_change_starts_a_fresh_bar():
    # 4/4 interrupted after one beat: the 3/8 region begins at bar 1.
    data = smf(track(
        timesig(0, 4, 2),
        on(0, 60), off(480, 60),
        timesig(0, 3, 3),
        on(0, 61), off(480, 61),
    ))
    part = ingest_smf(data)
    assert [(n.midi, n.bar, n.onset) for n in part.notes] == [
        (60, 0, Fraction(0)),
        (61, 1, Fraction(0)),
    ]
    # A quarter note fills two thirds of a 3/8 bar.
    assert part.notes[1].duration == Fraction(2, 3)


def test_running_status_is_honored():
    body = vlq(0) + bytes([0x90, 60, 64]) + vlq(0) + bytes([64, 64]) \
        + vlq(480) + bytes([60, 0]) + vlq(0) + bytes([64, 0])
    part = ingest_smf(smf(track(body)))
    assert sorted(n.midi for n in part.notes) == [60, 64]
    assert all(n.duration == Fraction(1, 4) for n in part.notes)


def test_note_on_velocity_zero_releases():
    data = smf(track(
        timesig(0, 4, 2),
        on(0, 72), vlq(480) + bytes([0x90, 72, 0]),
    ))
    part = ingest_smf(data)
    assert part.notes[0].duration == Fraction(1, 4)


def test_overlapping_same_pitch_notes_close_in_order():
    data = smf(track(
        on(0, 60), on(480, 60), off(480, 60), off(480, 60),
    ))
    part = ingest_smf(data)
    durations = sorted(n.duration for n in part.notes)
    # First on pairs with first off.
    assert durations == [Fraction(1, 2), Fraction(1, 2)]
    assert [n.onset for n in part.notes] == [Fraction(0), Fraction(1, 4)]


def test_zero_length_notes_become_graces():
    data = smf(track(on(0, 60), off(0, 60), on(0, 64), off(480, 64)))
    part = ingest_smf(data)
    grace, plain = part.notes
    assert grace.grace and grace.duration == 0
    assert not plain.grace


def test_unclosed_notes_end_with_the_track():
    data = smf(track(on(0, 60), off(960, 72)))
    part = ingest_smf(data)
    assert part.notes[0].duration == Fraction(1, 2)


def test_channels_do_not_interfere():
    data = smf(track(
        on(0, 60, channel=0), on(0, 60, channel=1),
        off(480, 60, channel=1), off(480, 60, channel=0),
    ))
    part = ingest_smf(data)
    assert sorted(n.duration for n in part.notes) == [Fraction(1, 4), Fraction(1, 2)]


def test_tracks_merge_in_format_one():
    conductor = track(timesig(0, 3, 2))
    melody = track(on(0, 67), off(480, 67))
    bass = track(on(0, 43), off(1440, 43))
    part = ingest_smf(smf(conductor, melody, bass))
    assert [(n.midi, n.bar, n.onset) for n in part.notes] == [
        (43, 0, Fraction(0)),
        (67, 0, Fraction(0)),
    ]
    assert part.notes[0].duration == 1


def test_unknown_chunks_are_skipped():
    extra = b"XFIH" + struct.pack(">I", 4) + b"abcd"
    data = smf(track(timesig(0, 4, 2), on(0, 60), off(480, 60)))
    data = data[:14] + extra + data[14:]
    part = ingest_smf(data)
    assert part.notes[0].midi == 60


def test_truncated_track_raises():
    with pytest.raises(SmfError):
        ingest_smf(smf(b"MTrk" + struct.pack(">I", 2) + b"\x00"))


def test_sysex_is_skipped_and_cancels_running_status():
    body = vlq(0) + bytes([0x90, 60, 64]) \
        + vlq(0) + bytes([0xF0, 0x02, 0x01, 0xF7]) \
        + vlq(480) + bytes([0x80, 60, 0])
    part = ingest_smf(smf(track(body)))
    assert part.notes[0].duration == Fraction(1, 4)


def test_data_byte_without_status_raises():
    body = vlq(0) + bytes([60, 64])
    with pytest.raises(SmfError, match="running status"):
        ingest_smf(smf(track(body)))
