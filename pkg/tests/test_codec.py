"""Decoding, encoding, rounding and missing-value policies."""

import io
import json
from decimal import Decimal

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cdfkit import codec, fixtures
from cdfkit.model import CdfEncodingError, CdfStructureError, ValidationReport


# ---------------------------------------------------------------------------
# round3
# ---------------------------------------------------------------------------


def integer_half_even_expected(i: int) -> float:
    """Oracle: round i/10000 to 3 decimals with banker's carry on integers."""
    q, r = divmod(i, 10)
    if r > 5 or (r == 5 and q % 2):
        q += 1
    return q / 1000.0


def test_round3_ties_go_to_even():
    assert codec.round3(0.0005) == 0.0
    assert codec.round3(0.0015) == 0.002
    assert codec.round3(0.0025) == 0.002
    assert codec.round3(-0.0005) == 0.0
    assert codec.round3(-0.0015) == -0.002


def test_round3_matches_grid_oracle_sample():
    for i in range(-20000, 20001, 7):
        x = i / 10000.0
        assert codec.round3(x) == integer_half_even_expected(i), i


@given(st.floats(min_value=-60, max_value=60, allow_nan=False))
def test_round3_is_idempotent(x):
    once = codec.round3(x)
    assert codec.round3(once) == once


@given(st.floats(min_value=-1000, max_value=1000, allow_nan=False))
def test_round3_matches_decimal_half_even(x):
    expected = float(Decimal(repr(x)).quantize(Decimal("0.001")))
    assert codec.round3(x) == expected


@given(st.floats(min_value=-60, max_value=60, allow_nan=False))
def test_round3_never_adds_digits(x):
    text = repr(codec.round3(x))
    if "e" not in text and "." in text:
        assert len(text.split(".")[1]) <= 3


# ---------------------------------------------------------------------------
# Missing-value policies
# ---------------------------------------------------------------------------


def decode(raw, kind, policy):
    value, findings = codec.decode_missing(raw, kind, policy, "p")
    report = ValidationReport()
    report.findings.extend(findings)
    return value, report


def test_null_decodes_to_none_under_every_policy():
    for policy in codec.MISSING_POLICIES:
        value, report = decode(None, "text", policy)
        assert value is None
        assert not report.has_errors


def test_sentinels_decode_to_none_under_sentinel_policy():
    assert decode("None", "text", "sentinel")[0] is None
    assert decode(-9999.0, "float", "sentinel")[0] is None
    assert decode(-9999, "int", "sentinel")[0] is None
    assert decode("1900-01-01 00:00:00+00:00", "timestamp", "sentinel")[0] is None


def test_sentinel_under_null_policy_warns_and_keeps_the_raw_value():
    value, report = decode("None", "text", "null")
    assert value == "None"
    assert report.by_rule("CD-105")
    assert report.max_severity() == "warning"


def test_accept_both_is_silent_for_either_spelling():
    for raw in (None, "None"):
        value, report = decode(raw, "text", "accept_both")
        assert value is None
        assert not report.findings


def test_wrong_type_is_a_finding_not_an_exception():
    value, report = decode("fast", "float", "accept_both")
    assert value is None
    assert report.by_rule("CD-103")


def test_non_finite_float_is_rejected():
    value, report = decode(float("inf"), "float", "accept_both")
    assert value is None
    assert report.by_rule("CD-107")


def test_invalid_timestamp_is_a_finding():
    value, report = decode("yesterday-ish", "timestamp", "accept_both")
    assert value is None
    assert report.by_rule("CD-106")


def test_timestamps_with_offset_normalize_to_utc():
    value, report = decode("2024-08-29T16:00:00+02:00", "timestamp", "accept_both")
    assert not report.findings
    assert value.canonical_text() == "2024-08-29T14:00:00"


# ---------------------------------------------------------------------------
# Line iteration
# ---------------------------------------------------------------------------


def test_iter_lines_reports_numbers_and_byte_offsets():
    data = b'{"a":1}\n{"b":2}\n'
    lines = list(codec.iter_lines(data))
    assert lines == [(1, 0, b'{"a":1}'), (2, 8, b'{"b":2}')]


def test_iter_lines_yields_partial_trailing_line():
    lines = list(codec.iter_lines(b'{"a":1}\n{"b"'))
    assert lines[-1] == (2, 8, b'{"b"')


def test_iter_lines_handles_chunked_file_objects():
    payload = b"".join(b"%d\n" % i for i in range(1000))
    lines = list(codec.iter_lines(io.BytesIO(payload)))
    assert len(lines) == 1000
    assert lines[499][2] == b"499"


def test_malformed_line_yields_finding_and_stream_continues():
    data = b'not json\n{"frame_id": 0}\n'
    results = list(codec.read_line_stream(data, "tracking_com"))
    assert results[0][0] is None
    assert results[0][1].by_rule("CD-101")
    assert results[1][0] is not None


def test_non_object_line_is_flagged():
    results = list(codec.read_line_stream(b"[1,2]\n", "tracking_com"))
    assert results[0][0] is None
    assert results[0][1].by_rule("CD-102")


def test_non_finite_json_constants_are_rejected():
    results = list(codec.read_line_stream(b'{"frame_id": NaN}\n', "tracking_com"))
    assert results[0][0] is None
    assert results[0][1].by_rule("CD-101")


def test_strict_mode_stops_at_first_malformed_line():
    data = b'garbage\n{"frame_id": 0}\n'
    results = list(codec.read_line_stream(data, "tracking_com", strict=True))
    assert len(results) == 1


# ---------------------------------------------------------------------------
# Document round-trips
# ---------------------------------------------------------------------------


def test_invalid_utf8_raises_encoding_error_with_offset():
    with pytest.raises(CdfEncodingError) as exc:
        codec.read_document(b'{"a": "\xff"}', "match_sheet")
    assert exc.value.byte_offset == 7


def test_non_object_document_raises_structure_error():
    with pytest.raises(CdfStructureError):
        codec.read_document(b"[1, 2, 3]", "match_sheet")


def _documents(serialized):
    return (
        ("match_sheet", serialized["match_sheet"]),
        ("meta", serialized["meta"]),
        ("video_meta", serialized["video_meta"]),
    )


def test_document_round_trip_preserves_model(clean_serialized):
    for kind, obj in _documents(clean_serialized):
        data = json.dumps(obj).encode()
        first, report = codec.read_document(data, kind)
        assert not report.has_errors, (kind, report.to_text())
        second, _ = codec.read_document(codec.write_document(first, kind), kind)
        assert first == second, kind


def test_document_write_is_deterministic(clean_serialized):
    for kind, obj in _documents(clean_serialized):
        parsed, _ = codec.read_document(json.dumps(obj).encode(), kind)
        assert codec.write_document(parsed, kind) == codec.write_document(parsed, kind)


def _streams(serialized):
    return (
        ("event", serialized["events"]),
        ("tracking_com", serialized["tracking"]),
        ("tracking_skeletal", serialized["skeletal"]),
    )


def test_stream_round_trip_preserves_models(clean_serialized):
    for kind, records in _streams(clean_serialized):
        data = b"".join(json.dumps(r).encode() + b"\n" for r in records)
        first = [rec for rec, rep in codec.read_line_stream(data, kind) if rec]
        assert len(first) == len(records)
        encoded = b"".join(codec.encode_record(r, kind) for r in first)
        second = [rec for rec, rep in codec.read_line_stream(encoded, kind) if rec]
        assert first == second, kind


def test_stream_rewrite_is_byte_stable(clean_serialized):
    for kind, records in _streams(clean_serialized):
        data = b"".join(json.dumps(r).encode() + b"\n" for r in records)
        parsed = [rec for rec, _ in codec.read_line_stream(data, kind) if rec]
        once = b"".join(codec.encode_line_stream(parsed, kind))
        reparsed = [rec for rec, _ in codec.read_line_stream(once, kind) if rec]
        twice = b"".join(codec.encode_line_stream(reparsed, kind))
        assert once == twice, kind


def test_unknown_fields_survive_the_round_trip():
    obj = {
        "frame_id": 0,
        "period": "first_half",
        "match": {"id": "m1"},
        "teams": {
            "home": {"id": "h", "players": [{"id": "p1", "team_id": "h", "x": 1.0, "y": 2.0}]},
            "away": {"id": "a", "players": [{"id": "p2", "team_id": "a", "x": 3.0, "y": 4.0}]},
        },
        "ball": {"x": 0.0, "y": 0.0, "z": 0.0},
        "vendor_confidence": 0.87,
    }
    data = json.dumps(obj).encode()
    (record, _), = codec.read_line_stream(data + b"", "tracking_com")
    out = json.loads(codec.encode_record(record, "tracking_com"))
    assert out["vendor_confidence"] == 0.87


def test_duplicate_keys_differing_by_case_warn():
    obj = {
        "frame_id": 0,
        "Frame_ID": 7,
        "period": "first_half",
        "match": {"id": "m1"},
        "teams": {"home": {"id": "h", "players": []}, "away": {"id": "a", "players": []}},
        "ball": {"x": 0.0, "y": 0.0, "z": 0.0},
    }
    (record, report), = codec.read_line_stream(json.dumps(obj).encode(), "tracking_com")
    assert report.by_rule("CD-104")


def test_extratime_periods_are_emitted_with_stream_spelling():
    obj = {
        "frame_id": 0,
        "period": "first_half_extra",
        "match": {"id": "m1"},
        "teams": {"home": {"id": "h", "players": []}, "away": {"id": "a", "players": []}},
        "ball": {"x": 0.0, "y": 0.0, "z": 0.0},
    }
    (record, _), = codec.read_line_stream(json.dumps(obj).encode(), "tracking_com")
    assert record.period == "first_half_extratime"  # canonical in the model
    out = json.loads(codec.encode_record(record, "tracking_com"))
    assert out["period"] == "first_half_extra"  # short form on the wire


def test_sentinel_output_policy_spells_missing_values():
    events = [
        {
            "match": {"id": "m1"},
            "meta": {"is_synced": 0},
            "event": {
                "id": "e1",
                "time": "2024-08-29T14:01:03",
                "period": "first_half",
                "type": "pass",
                "sub_type": None,
                "outcome": 1,
                "outcome_detailed": "successful",
                "player_id_1": "p1",
                "team_id_1": "t1",
                "player_id_2": None,
                "team_id_2": None,
                "x_1": 1.0,
                "y_1": 2.0,
                "x_2": None,
                "y_2": None,
                "body_part_1": "right_foot",
                "body_part_2": None,
            },
        }
    ]
    data = json.dumps(events[0]).encode()
    (record, _), = codec.read_line_stream(data, "event")
    out = json.loads(codec.encode_record(record, "event", policy="sentinel"))
    assert out["event"]["player_id_2"] == "None"
    assert out["event"]["x_2"] == -9999.0
    null_out = json.loads(codec.encode_record(record, "event", policy="null"))
    assert null_out["event"]["player_id_2"] is None
    assert null_out["event"]["x_2"] is None


def test_write_line_stream_counts_lines(clean_serialized):
    records = [
        rec
        for rec, _ in codec.read_line_stream(
            b"".join(json.dumps(r).encode() + b"\n" for r in clean_serialized["tracking"]),
            "tracking_com",
        )
        if rec
    ]
    sink = io.BytesIO()
    n = codec.write_line_stream(records, "tracking_com", sink)
    assert n == len(records)
    assert sink.getvalue().count(b"\n") == n


def test_floats_are_canonicalized_to_three_decimals_on_write():
    obj = {
        "frame_id": 0,
        "period": "first_half",
        "match": {"id": "m1"},
        "teams": {
            "home": {"id": "h", "players": [{"id": "p1", "team_id": "h", "x": 1.23456, "y": 2.0}]},
            "away": {"id": "a", "players": []},
        },
        "ball": {"x": 0.0005, "y": 0.0015, "z": 0.0},
    }
    (record, _), = codec.read_line_stream(json.dumps(obj).encode(), "tracking_com")
    out = json.loads(codec.encode_record(record, "tracking_com"))
    assert out["teams"]["home"]["players"][0]["x"] == 1.235
    assert out["ball"]["x"] == 0.0
    assert out["ball"]["y"] == 0.002


@settings(max_examples=200)
@given(st.floats(min_value=-60, max_value=60, allow_nan=False))
def test_rounding_applied_on_write_is_stable(x):
    rounded = codec.round3(x)
    assert codec.round3(rounded) == rounded
    assert abs(rounded - x) <= 0.0005 + 1e-12
