"""Coordinate orientation, precision canonicalization and direction checks."""

import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cdfkit import codec, representation
from cdfkit.model import (
    BallPosition,
    CdfDomainError,
    PitchGeometry,
    PlayerPosition,
    TrackingFrame,
)

coords = st.floats(min_value=-60, max_value=60, allow_nan=False)
points = st.tuples(coords, coords)


@given(points)
def test_flip_is_an_involution(p):
    assert representation.flip_xy(representation.flip_xy(p)) == p


@given(points, points)
def test_flip_preserves_distances(a, b):
    fa, fb = representation.flip_xy(a), representation.flip_xy(b)
    original = math.dist(a, b)
    flipped = math.dist(fa, fb)
    assert math.isclose(original, flipped, rel_tol=1e-12, abs_tol=1e-12)


@given(points)
def test_flip_stays_inside_the_same_domain(p):
    domain = representation.coordinate_domain(PitchGeometry(120.0, 120.0))
    (xmin, xmax), (ymin, ymax) = domain
    fx, fy = representation.flip_xy(p)
    assert xmin <= fx <= xmax and ymin <= fy <= ymax


def test_flip_never_produces_negative_zero():
    fx, fy = representation.flip_xy((0.0, -0.0))
    assert math.copysign(1.0, fx) == 1.0
    assert math.copysign(1.0, fy) == 1.0


def test_flip_keeps_z_unchanged():
    assert representation.flip_xy((1.0, 2.0, 0.5)) == (-1.0, -2.0, 0.5)


def test_coordinate_domain_is_centered():
    assert representation.coordinate_domain(PitchGeometry(105.0, 68.0)) == (
        (-52.5, 52.5),
        (-34.0, 34.0),
    )
    assert representation.coordinate_domain(PitchGeometry(None, 68.0)) is None


def _frame(x, y):
    return TrackingFrame(
        frame_id=0,
        period="first_half",
        match_id="m1",
        home_team_id="h",
        away_team_id="a",
        home_players=(PlayerPosition(id="p1", team_id="h", x=x, y=y),),
        away_players=(),
        ball=BallPosition(x=1.5, y=-2.25, z=0.4),
    )


def test_actual_sides_is_identity_when_home_plays_left():
    side = representation.SideAssignment("first_half", "h", "a")
    frame = _frame(10.0, 5.0)
    assert representation.to_actual_sides(frame, side, "h") is frame


def test_actual_sides_flips_when_home_plays_right():
    side = representation.SideAssignment("second_half", "a", "h")
    frame = _frame(10.0, 5.0)
    flipped = representation.to_actual_sides(frame, side, "h")
    assert flipped.home_players[0].x == -10.0
    assert flipped.home_players[0].y == -5.0
    assert flipped.ball.x == -1.5
    assert flipped.ball.z == 0.4  # height is orientation-free


def test_actual_sides_round_trips():
    side = representation.SideAssignment("second_half", "a", "h")
    frame = _frame(10.0, 5.0)
    there = representation.to_actual_sides(frame, side, "h")
    back = representation.to_actual_sides(there, side, "h")
    assert back == frame


def test_actual_sides_rejects_unknown_home_team():
    side = representation.SideAssignment("first_half", "x", "y")
    with pytest.raises(CdfDomainError):
        representation.to_actual_sides(_frame(0.0, 0.0), side, "h")


def test_shootout_kicks_toward_negative_x_warn(clean_serialized):
    event = json.loads(json.dumps(clean_serialized["events"][0]))
    event["event"]["period"] = "shootout"
    event["event"]["type"] = "shot"
    event["event"]["sub_type"] = "penalty_kick"
    event["event"]["outcome_detailed"] = "saved"
    event["event"]["outcome"] = 0
    event["event"]["x_1"] = -11.0
    (record, _), = codec.read_line_stream(json.dumps(event).encode() + b"\n", "event")
    report = representation.check_shootout_direction([record])
    assert any(f.rule_id == "PL-101" and f.severity == "warning" for f in report.findings)

    event["event"]["x_1"] = 41.0
    (record, _), = codec.read_line_stream(json.dumps(event).encode() + b"\n", "event")
    assert not representation.check_shootout_direction([record]).findings


def test_canonicalize_precision_rounds_every_float():
    frame = _frame(1.23456, -0.0005)
    canonical, report = representation.canonicalize_precision(frame)
    assert canonical.home_players[0].x == 1.235
    assert canonical.home_players[0].y == 0.0
    assert not report.findings


def test_canonicalize_precision_nulls_non_finite_values():
    frame = _frame(float("nan"), 2.0)
    canonical, report = representation.canonicalize_precision(frame)
    assert canonical.home_players[0].x is None
    assert report.by_rule("CD-107")


@given(coords, coords)
def test_canonicalize_precision_is_idempotent(x, y):
    once, _ = representation.canonicalize_precision(_frame(x, y))
    twice, _ = representation.canonicalize_precision(once)
    assert once == twice
