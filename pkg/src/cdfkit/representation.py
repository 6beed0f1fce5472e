"""Coordinate-frame, playing-direction and precision canonicalization.

CDF standard orientation: origin at pitch center, X along the sidelines,
Y along the goal lines, home team attacking left to right in every
period, shootout kicks taken left to right. Converting to the actual
(non-standardized) sides of a given period is a pure 180-degree rotation
of the playing plane; single-axis mirroring is never used because it
would swap handedness and corrupt left/right body-part semantics.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

from .codec import round3
from .model import (
    BallPosition,
    CdfDomainError,
    EventRecord,
    PitchGeometry,
    SkeletonFrame,
    TrackingFrame,
    ValidationReport,
)


@dataclass(frozen=True, slots=True)
class SideAssignment:
    """Which team actually defended which side during one period."""

    period: str
    left_team_id: str
    right_team_id: str


def flip_xy(point):
    """Rotate a point 180 degrees about the pitch center: (x, y) -> (-x, -y).

    Accepts a 2- or 3-tuple; a z component is returned unchanged. The
    function is an involution and preserves all pairwise distances.
    """
    x, y = point[0], point[1]
    flipped = (_neg(x), _neg(y))
    if len(point) > 2:
        return flipped + tuple(point[2:])
    return flipped


def _neg(v):
    if v is None:
        return None
    return -v if v != 0 else abs(v)  # keep 0.0 positive (no -0.0 on the wire)


def coordinate_domain(pitch: PitchGeometry):
    """Valid coordinate intervals ((xmin, xmax), (ymin, ymax)) for a pitch,
    or ``None`` when the geometry is unknown (bounds checks become inert)."""
    if not pitch.known:
        return None
    half_l = pitch.length / 2.0
    half_w = pitch.width / 2.0
    return ((-half_l, half_l), (-half_w, half_w))


# ---------------------------------------------------------------------------
# Playing direction
# ---------------------------------------------------------------------------


def to_actual_sides(record, side: SideAssignment, home_team_id: str):
    """Convert a record from standard orientation to the period's actual
    sides (or back; the transform is its own inverse).

    If the home team really played left to right this is the identity;
    otherwise every planar coordinate is rotated 180 degrees. GNSS
    latitude/longitude and heights are never touched.
    """
    if home_team_id not in (side.left_team_id, side.right_team_id):
        raise CdfDomainError(
            f"home team {home_team_id!r} is neither side of the assignment"
        )
    if side.left_team_id == home_team_id:
        return record
    return flip_record(record)


def flip_record(record):
    """Rotate every planar pitch coordinate of a record by 180 degrees."""
    if isinstance(record, EventRecord):
        tracking = record.tracking
        if tracking is not None:
            tracking = dataclasses.replace(
                tracking,
                x_player_1=_neg(tracking.x_player_1),
                y_player_1=_neg(tracking.y_player_1),
                x_player_2=_neg(tracking.x_player_2),
                y_player_2=_neg(tracking.y_player_2),
            )
        return dataclasses.replace(
            record,
            x_1=_neg(record.x_1),
            y_1=_neg(record.y_1),
            x_2=_neg(record.x_2),
            y_2=_neg(record.y_2),
            tracking=tracking,
        )
    if isinstance(record, TrackingFrame):
        return dataclasses.replace(
            record,
            home_players=tuple(_flip_player(p) for p in record.home_players),
            away_players=tuple(_flip_player(p) for p in record.away_players),
            ball=(
                BallPosition(_neg(record.ball.x), _neg(record.ball.y), record.ball.z)
                if record.ball is not None
                else None
            ),
            referees=tuple(
                dataclasses.replace(r, x=_neg(r.x), y=_neg(r.y))
                for r in record.referees
            ),
        )
    if isinstance(record, SkeletonFrame):
        return dataclasses.replace(
            record,
            home_players=tuple(_flip_skeleton(p) for p in record.home_players),
            away_players=tuple(_flip_skeleton(p) for p in record.away_players),
        )
    raise CdfDomainError(f"cannot flip record of type {type(record).__name__}")


def _flip_player(p):
    return dataclasses.replace(p, x=_neg(p.x), y=_neg(p.y))


def _flip_skeleton(p):
    return dataclasses.replace(
        p,
        limbs=tuple(
            (name, dataclasses.replace(point, x=_neg(point.x), y=_neg(point.y)))
            for name, point in p.limbs
        ),
    )


def check_shootout_direction(events, frames=()) -> ValidationReport:
    """Warn about shootout shots not taken toward the right goal.

    Standard orientation mandates shootout kicks left to right, so a shot
    location with negative x is suspicious. Tracking frames are accepted
    for signature symmetry but carry no checkable direction on their own.
    """
    report = ValidationReport()
    for event in events:
        if event.period != "shootout" or event.type != "shot":
            continue
        if event.x_1 is not None and event.x_1 < 0:
            report.add(
                "PL-101",
                "warning",
                f"event {event.event_id}",
                f"shootout shot at x = {event.x_1} is not directed left to right",
            )
    return report


# ---------------------------------------------------------------------------
# Precision canonicalization
# ---------------------------------------------------------------------------


def canonicalize_precision(record):
    """Round every float field of a record to at most three decimal places
    (half-to-even); idempotent. Non-finite values are replaced by missing
    and reported. Returns ``(record, report)``."""
    report = ValidationReport()
    return _map_floats(record, "", report), report


def _map_floats(value, path: str, report: ValidationReport):
    if isinstance(value, float):
        if math.isnan(value) or math.isinf(value):
            report.add("CD-107", "error", path, "non-finite number replaced by missing")
            return None
        return round3(value)
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        changes = {}
        for f in dataclasses.fields(value):
            old = getattr(value, f.name)
            sub_path = f"{path}/{f.name}" if path else f.name
            new = _map_floats(old, sub_path, report)
            if new is not old:
                changes[f.name] = new
        return dataclasses.replace(value, **changes) if changes else value
    if isinstance(value, tuple):
        mapped = tuple(
            _map_floats(item, f"{path}[{i}]", report) for i, item in enumerate(value)
        )
        return mapped if mapped != value else value
    return value
