"""Reading and writing CDF documents (JSON) and streams (JSON Lines).

Documents are match sheet, match meta and video meta; streams are event,
center-of-mass tracking and skeletal tracking. Reading is total: a
structurally broken document produces findings, never an exception
(invalid UTF-8 and a non-object top level are the two hard errors).

Missing values follow two conventions on the wire (null and sentinel);
decoding normalizes both to ``None``. The canonical output policy is
null; sentinel output is available for compatibility.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from datetime import datetime, timezone
from decimal import ROUND_HALF_EVEN, Decimal
from typing import Any, Iterable, Iterator

from . import model
from .model import (
    BallPosition,
    CardEvent,
    CdfEncodingError,
    CdfSerializationError,
    CdfStructureError,
    CdfTimestamp,
    CdfDomainError,
    EventMetrics,
    EventRecord,
    EventTracking,
    FinalScore,
    GoalEvent,
    LimbPoint,
    MatchMeta,
    MatchSheet,
    MetaResult,
    PeriodDetail,
    PitchGeometry,
    PlayerEntry,
    PlayerPosition,
    RefereePosition,
    ResultBreakdown,
    Score,
    SkeletonFrame,
    SkeletonPlayer,
    SubstitutionEvent,
    TeamInfo,
    TrackingFrame,
    ValidationFinding,
    ValidationReport,
    VideoMeta,
    Whistle,
    canonical_period,
)

DOC_KINDS = ("match_sheet", "meta", "video_meta")
STREAM_KINDS = ("event", "tracking_com", "tracking_skeletal")

MISSING_POLICIES = ("null", "sentinel", "accept_both")

SENTINEL_TEXT = "None"
SENTINEL_FLOAT = -9999.0
SENTINEL_INT = -9999
SENTINEL_TIMESTAMP = "1900-01-01 00:00:00+00:00"
_SENTINEL_INSTANT = datetime(1900, 1, 1, tzinfo=timezone.utc)


@dataclass(frozen=True, slots=True)
class StreamCursor:
    """Position of a JSON Lines reader within its source."""

    line_number: int  # 1-based
    byte_offset: int
    mode: str = "post_match"  # or "live"


def _check_policy(policy: str) -> str:
    if policy not in MISSING_POLICIES:
        raise CdfDomainError(f"unknown missing-value policy: {policy!r}")
    return policy


# ---------------------------------------------------------------------------
# Numeric canonicalization
# ---------------------------------------------------------------------------


def round3(x: float) -> float:
    """Round to at most three decimal places, half-to-even on the decimal
    representation (so 0.0005 -> 0.0, 0.0015 -> 0.002).

    Uses the shortest decimal representation of the float, which makes the
    operation idempotent and keeps already-rounded values untouched.
    """
    if math.isnan(x) or math.isinf(x):
        raise CdfSerializationError(f"cannot round non-finite value {x!r}")
    r = round(x, 3)
    if r == x:  # fast path: value already has <= 3 decimals
        return x
    return float(Decimal(repr(x)).quantize(Decimal("0.001"), rounding=ROUND_HALF_EVEN))


# ---------------------------------------------------------------------------
# Missing values and timestamps
# ---------------------------------------------------------------------------


def _is_sentinel(raw: Any, kind: str) -> bool:
    if kind == "text":
        return raw == SENTINEL_TEXT
    if kind == "float":
        return isinstance(raw, (int, float)) and not isinstance(raw, bool) and raw == SENTINEL_INT
    if kind == "int":
        return isinstance(raw, int) and not isinstance(raw, bool) and raw == SENTINEL_INT
    if kind == "timestamp":
        if not isinstance(raw, str):
            return False
        if raw == SENTINEL_TIMESTAMP:
            return True
        parsed = _parse_instant(raw)
        return parsed is not None and parsed == _SENTINEL_INSTANT
    raise CdfDomainError(f"unknown field kind: {kind!r}")


def _parse_instant(text: str) -> datetime | None:
    s = text.strip()
    if s.endswith(("Z", "z")):
        s = s[:-1] + "+00:00"
    try:
        dt = datetime.fromisoformat(s)
    except ValueError:
        return None
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc)


def parse_cdf_time(
    text: str, policy: str = "accept_both", path: str = ""
) -> tuple[CdfTimestamp | None, list[ValidationFinding]]:
    """Parse an ISO-8601 timestamp ('T' or space separator, optional UTC
    offset). Offset-less values are interpreted as UTC. Returns the value
    (or ``None`` for missing/unparseable) plus any findings."""
    _check_policy(policy)
    if policy in ("sentinel", "accept_both") and _is_sentinel(text, "timestamp"):
        return None, []
    instant = _parse_instant(text)
    if instant is None:
        return None, [
            ValidationFinding("CD-106", "error", path, f"invalid timestamp {text!r}")
        ]
    findings: list[ValidationFinding] = []
    if policy == "null" and instant == _SENTINEL_INSTANT:
        findings.append(
            ValidationFinding(
                "CD-105",
                "warning",
                path,
                "sentinel-like timestamp under null policy; kept as value",
            )
        )
    return CdfTimestamp(instant, text), findings


def decode_missing(
    raw: Any, kind: str, policy: str = "accept_both", path: str = ""
) -> tuple[Any, list[ValidationFinding]]:
    """Decode one raw JSON value of a declared kind under a missing-value
    policy. Null always decodes to missing; sentinel values decode to
    missing when the policy permits, otherwise they pass through with a
    warning. Wrong primitive types produce an error finding and missing."""
    _check_policy(policy)
    if raw is None:
        return None, []
    if kind == "timestamp":
        if not isinstance(raw, str):
            return None, [_type_finding(path, "string", raw)]
        return parse_cdf_time(raw, policy, path)
    if _is_sentinel(raw, kind):
        if policy in ("sentinel", "accept_both"):
            return None, []
        return raw, [
            ValidationFinding(
                "CD-105",
                "warning",
                path,
                f"sentinel-like value {raw!r} under null policy; kept as value",
            )
        ]
    if kind == "text":
        if not isinstance(raw, str):
            return None, [_type_finding(path, "string", raw)]
        return raw, []
    if kind == "int":
        if isinstance(raw, bool) or not isinstance(raw, int):
            return None, [_type_finding(path, "integer", raw)]
        return raw, []
    if kind == "float":
        if isinstance(raw, bool) or not isinstance(raw, (int, float)):
            return None, [_type_finding(path, "number", raw)]
        if math.isnan(raw) or math.isinf(raw):
            return None, [
                ValidationFinding("CD-107", "error", path, "non-finite number")
            ]
        return float(raw), []
    raise CdfDomainError(f"unknown field kind: {kind!r}")


def _type_finding(path: str, expected: str, raw: Any) -> ValidationFinding:
    return ValidationFinding(
        "CD-103",
        "error",
        path,
        f"wrong primitive type: expected {expected}, got {type(raw).__name__}",
    )


# ---------------------------------------------------------------------------
# Object binding helper
# ---------------------------------------------------------------------------


class _Obj:
    """Wraps one JSON object during binding: typed field access, presence
    findings for nullable-value mandatory keys, and extras collection."""

    __slots__ = ("raw", "path", "report", "policy", "consumed", "known")

    def __init__(self, raw: Any, path: str, report: ValidationReport, policy: str):
        if raw is None:
            raw = {}
        elif not isinstance(raw, dict):
            report.findings.append(_type_finding(path, "object", raw))
            raw = {}
        self.raw = raw
        self.path = path
        self.report = report
        self.policy = policy
        self.consumed: set[str] = set()
        self.known: set[str] = set()

    def _p(self, key: str) -> str:
        return f"{self.path}/{key}" if self.path else key

    def has(self, key: str) -> bool:
        return key in self.raw

    def child(self, key: str) -> "_Obj":
        self.consumed.add(key)
        self.known.add(key)
        return _Obj(self.raw.get(key), self._p(key), self.report, self.policy)

    def take(self, key: str, kind: str, presence_rule: str | None = None) -> Any:
        """Typed field access. ``presence_rule`` marks a mandatory key whose
        value may be null (absence of the key is the violation)."""
        self.known.add(key)
        if key not in self.raw:
            if presence_rule is not None:
                self.report.add(
                    presence_rule, "error", self._p(key), "missing mandatory field"
                )
            return None
        self.consumed.add(key)
        value, findings = decode_missing(
            self.raw[key], kind, self.policy, self._p(key)
        )
        self.report.findings.extend(findings)
        return value

    def take_list(self, key: str, presence_rule: str | None = None) -> list:
        self.known.add(key)
        if key not in self.raw:
            if presence_rule is not None:
                self.report.add(
                    presence_rule, "error", self._p(key), "missing mandatory field"
                )
            return []
        self.consumed.add(key)
        raw = self.raw[key]
        if raw is None:
            return []
        if not isinstance(raw, list):
            self.report.findings.append(_type_finding(self._p(key), "array", raw))
            return []
        return raw

    def take_raw(self, key: str) -> Any:
        self.known.add(key)
        self.consumed.add(key)
        return self.raw.get(key)

    def extras(self) -> tuple:
        """Leftover (unconsumed) keys as sorted (path, canonical-json) pairs.

        A leftover key that collides case-insensitively with a reserved
        (known) key gets a warning: it is almost certainly a typo."""
        out = []
        lowered = {k.lower() for k in self.known}
        for key in self.raw:
            if key in self.consumed:
                continue
            if key.lower() in lowered:
                self.report.add(
                    "CD-104",
                    "warning",
                    self._p(key),
                    f"unknown key {key!r} collides case-insensitively with a reserved name",
                )
            out.append((self._p(key), json.dumps(self.raw[key], sort_keys=True)))
        return tuple(sorted(out))


def _rel_extras(obj: _Obj, root: str) -> tuple:
    """Extras with paths made relative to ``root`` (used for list items)."""
    prefix = f"{root}/" if root else ""
    return tuple(
        (p[len(prefix):] if p.startswith(prefix) else p, v) for p, v in obj.extras()
    )


def _strip_prefix(extras: tuple, root: str) -> tuple:
    """Make extras paths relative to a stream record's line root."""
    if not root:
        return extras
    prefix = f"{root}/"
    return tuple(
        (p[len(prefix):] if p.startswith(prefix) else p, v) for p, v in extras
    )


def _take_period(obj: _Obj, key: str, presence_rule: str | None = None) -> str | None:
    raw = obj.take(key, "text", presence_rule)
    if raw is None:
        return None
    return canonical_period(raw) or raw  # unknown names kept for the rule engine


# ---------------------------------------------------------------------------
# Binders: match sheet
# ---------------------------------------------------------------------------


def _bind_player(raw: Any, path: str, report: ValidationReport, policy: str) -> PlayerEntry:
    o = _Obj(raw, path, report, policy)
    player = PlayerEntry(
        id=o.take("id", "text"),
        team_id=o.take("team_id", "text"),
        jersey_number=o.take("jersey_number", "int"),
        is_starter=o.take("is_starter", "int"),
    )
    # Optional per-player fields (position, names, ...) ride along as extras.
    return PlayerEntry(
        player.id,
        player.team_id,
        player.jersey_number,
        player.is_starter,
        _rel_extras(o, path),
    )


def _bind_team_players(
    teams: _Obj, side: str, report: ValidationReport, policy: str
) -> tuple[str | None, tuple[PlayerEntry, ...], _Obj]:
    team = teams.child(side)
    team_id = team.take("id", "text")
    players = tuple(
        _bind_player(raw, f"{team.path}/players[{i}]", report, policy)
        for i, raw in enumerate(team.take_list("players"))
    )
    return team_id, players, team


def _bind_match_sheet(
    doc: Any, report: ValidationReport, policy: str, root: str = ""
) -> MatchSheet:
    top = _Obj(doc, root, report, policy)
    match = top.child("match")
    match_id = match.take("id", "text")
    status = match.child("status")
    is_neutral = status.take("is_neutral", "int")
    has_extratime = status.take("has_extratime", "int")
    has_shootout = status.take("has_shootout", "int")

    # Table order puts the result under match/, the delivery example at the
    # top level; both are accepted, the top level is emitted.
    result_raw = top.take_raw("result") if top.has("result") else match.take_raw("result")
    result_path = f"{root}/result" if root else "result"
    result = _bind_result_breakdown(result_raw, result_path, report, policy)

    teams = top.child("teams")
    home_id, home_players, home_team = _bind_team_players(teams, "home", report, policy)
    away_id, away_players, away_team = _bind_team_players(teams, "away", report, policy)

    referees = []
    for i, raw in enumerate(top.take_list("referees")):
        ref = _Obj(raw, f"{top._p('referees')}[{i}]", report, policy)
        rid = ref.take("id", "text")
        if rid is not None:
            referees.append(rid)

    events = top.child("events")
    goals = []
    for i, raw in enumerate(events.take_list("goals", "MS-020")):
        g = _Obj(raw, f"{events._p('goals')}[{i}]", report, policy)
        goals.append(
            GoalEvent(
                goal_time=g.take("goal_time", "timestamp"),
                goal_player_id=g.take("goal_player_id", "text"),
                goal_assist_id=g.take("goal_assist_id", "text", "MS-025"),
                is_own_goal=g.take("is_own_goal", "int"),
                is_penalty=g.take("is_penalty", "int"),
            )
        )
    substitutions = []
    for i, raw in enumerate(events.take_list("substitutions", "MS-021")):
        s = _Obj(raw, f"{events._p('substitutions')}[{i}]", report, policy)
        substitutions.append(
            SubstitutionEvent(
                in_time=s.take("in_time", "timestamp"),
                in_player_id=s.take("in_player_id", "text"),
                out_time=s.take("out_time", "timestamp"),
                out_player_id=s.take("out_player_id", "text"),
            )
        )
    cards = []
    for i, raw in enumerate(events.take_list("cards", "MS-022")):
        c = _Obj(raw, f"{events._p('cards')}[{i}]", report, policy)
        cards.append(
            CardEvent(
                card_time=c.take("card_time", "timestamp"),
                card_player_id=c.take("card_player_id", "text"),
                card_type=c.take("card_type", "text"),
            )
        )

    meta = top.child("meta")
    vendor = meta.take("vendor", "text")

    extras = (
        top.extras()
        + match.extras()
        + status.extras()
        + teams.extras()
        + home_team.extras()
        + away_team.extras()
        + events.extras()
        + meta.extras()
    )
    return MatchSheet(
        match_id=match_id,
        is_neutral=is_neutral,
        has_extratime=has_extratime,
        has_shootout=has_shootout,
        result=result,
        home_team_id=home_id,
        away_team_id=away_id,
        home_players=home_players,
        away_players=away_players,
        referees=tuple(referees),
        goals=tuple(goals),
        substitutions=tuple(substitutions),
        cards=tuple(cards),
        vendor=vendor,
        extras=tuple(sorted(extras)),
    )


def _bind_score(raw: Any, path: str, report: ValidationReport, policy: str) -> Score | None:
    if raw is None:
        return None
    o = _Obj(raw, path, report, policy)
    score = Score(home=o.take("home", "int"), away=o.take("away", "int"))
    o.extras()
    return score


def _bind_final(raw: Any, path: str, report: ValidationReport, policy: str) -> FinalScore | None:
    if raw is None:
        return None
    o = _Obj(raw, path, report, policy)
    final = FinalScore(
        home=o.take("home", "int"),
        away=o.take("away", "int"),
        winning_team_id=o.take("winning_team_id", "text"),
    )
    o.extras()
    return final


def _bind_result_breakdown(
    raw: Any, path: str, report: ValidationReport, policy: str
) -> ResultBreakdown:
    o = _Obj(raw, path, report, policy)
    breakdown = ResultBreakdown(
        final=_bind_final(o.take_raw("final"), o._p("final"), report, policy),
        first_half=_bind_score(o.take_raw("first_half"), o._p("first_half"), report, policy),
        second_half=_bind_score(o.take_raw("second_half"), o._p("second_half"), report, policy),
        first_extratime=_bind_score(
            o.take_raw("first_extratime"), o._p("first_extratime"), report, policy
        ),
        second_extratime=_bind_score(
            o.take_raw("second_extratime"), o._p("second_extratime"), report, policy
        ),
        shootout=_bind_score(o.take_raw("shootout"), o._p("shootout"), report, policy),
    )
    o.extras()
    return breakdown


# ---------------------------------------------------------------------------
# Binders: match meta
# ---------------------------------------------------------------------------


def _bind_whistles(parent: _Obj, key: str, report: ValidationReport, policy: str) -> tuple:
    whistles = []
    for i, raw in enumerate(parent.take_list(key)):
        w = _Obj(raw, f"{parent._p(key)}[{i}]", report, policy)
        whistles.append(
            Whistle(
                type=w.take("type", "text"),
                sub_type=w.take("sub_type", "text"),
                time=w.take("time", "timestamp"),
            )
        )
        w.extras()
    return tuple(whistles)


def _bind_team_info(
    teams: _Obj, side: str, report: ValidationReport, policy: str
) -> TeamInfo:
    team = teams.child(side)
    info = TeamInfo(
        id=team.take("id", "text"),
        name=team.take("name", "text") if team.has("name") else None,
        jersey_colour=(
            team.take("jersey_colour", "text") if team.has("jersey_colour") else None
        ),
        players=tuple(
            _bind_player(raw, f"{team.path}/players[{i}]", report, policy)
            for i, raw in enumerate(team.take_list("players"))
        ),
    )
    team.extras()
    return info


def _bind_meta(
    doc: Any, report: ValidationReport, policy: str, root: str = ""
) -> MatchMeta:
    top = _Obj(doc, root, report, policy)

    competition = top.child("competition")
    competition_id = competition.take("id", "text")
    season = top.child("season")
    season_id = season.take("id", "text")

    match = top.child("match")
    match_id = match.take("id", "text")
    kickoff_time = match.take("kickoff_time", "timestamp")
    periods = []
    for i, raw in enumerate(match.take_list("periods")):
        value, findings = decode_missing(
            raw, "text", policy, f"{match._p('periods')}[{i}]"
        )
        report.findings.extend(findings)
        if value is not None:
            periods.append(canonical_period(value) or value)
    status = match.child("status")
    is_neutral = status.take("is_neutral", "int")
    has_extratime = status.take("has_extratime", "int")
    has_shootout = status.take("has_shootout", "int")
    whistles = _bind_whistles(match, "whistles", report, policy)
    result_obj = match.child("result")
    result = MetaResult(
        final=_bind_final(result_obj.take_raw("final"), result_obj._p("final"), report, policy),
        extratime=_bind_score(
            result_obj.take_raw("extratime"), result_obj._p("extratime"), report, policy
        ),
        shootout=_bind_score(
            result_obj.take_raw("shootout"), result_obj._p("shootout"), report, policy
        ),
    )

    stadium = top.child("stadium")
    stadium_id = stadium.take("id", "text")
    pitch = PitchGeometry(
        length=_take_dimension(stadium, "pitch_length", "MD-021"),
        width=_take_dimension(stadium, "pitch_width", "MD-022"),
    )

    teams = top.child("teams")
    home_team = _bind_team_info(teams, "home", report, policy)
    away_team = _bind_team_info(teams, "away", report, policy)

    referees = []
    for i, raw in enumerate(top.take_list("referees")):
        ref = _Obj(raw, f"{top._p('referees')}[{i}]", report, policy)
        rid = ref.take("id", "text")
        if rid is not None:
            referees.append(rid)
        ref.extras()

    meta = top.child("meta")
    fps_tracking = meta.take("fps_tracking", "int")
    limb_tracking = meta.take("limb_tracking", "int")
    limb_nodes_json = None
    if meta.has("limb_nodes"):
        raw_nodes = meta.take_raw("limb_nodes")
        if raw_nodes is not None:
            limb_nodes_json = json.dumps(raw_nodes, sort_keys=True)
    else:
        meta.known.add("limb_nodes")
    source_type = meta.take("source_type", "text")
    perspective = meta.take("perspective", "text")
    version_obj = meta.child("version")
    version = tuple(
        sorted(
            (key, version_obj.take(key, "text"))
            for key in list(version_obj.raw)
            if isinstance(version_obj.raw.get(key), (str, type(None)))
        )
    )
    vendors_obj = meta.child("vendors")
    vendors = tuple(
        (key, vendors_obj.take(key, "text", rule))
        for key, rule in (("event", "MD-031"), ("tracking", "MD-032"), ("video", "MD-033"))
    )
    id_space_obj = meta.child("id_space")
    id_space = tuple(
        (key, id_space_obj.take(key, "text", rule))
        for key, rule in (
            ("match_data", "MD-034"),
            ("event", "MD-035"),
            ("tracking", "MD-036"),
        )
    )

    period_details = []
    for i, raw in enumerate(top.take_list("periods")):
        p = _Obj(raw, f"{top._p('periods')}[{i}]", report, policy)
        period_details.append(
            PeriodDetail(
                type=_take_period(p, "type"),
                time_start=p.take("time_start", "timestamp"),
                time_end=p.take("time_end", "timestamp"),
                frame_id_start=p.take("frame_id_start", "int"),
                frame_id_end=p.take("frame_id_end", "int"),
                left_team_id=p.take("left_team_id", "text"),
                right_team_id=p.take("right_team_id", "text"),
            )
        )
        p.extras()

    extras = (
        top.extras()
        + match.extras()
        + status.extras()
        + stadium.extras()
        + teams.extras()
        + meta.extras()
        + version_obj.extras()
        + vendors_obj.extras()
        + id_space_obj.extras()
        + competition.extras()
        + season.extras()
        + result_obj.extras()
    )
    return MatchMeta(
        competition_id=competition_id,
        season_id=season_id,
        match_id=match_id,
        kickoff_time=kickoff_time,
        periods=tuple(periods),
        result=result,
        is_neutral=is_neutral,
        has_extratime=has_extratime,
        has_shootout=has_shootout,
        whistles=whistles,
        home_team=home_team,
        away_team=away_team,
        referees=tuple(referees),
        stadium_id=stadium_id,
        pitch=pitch,
        fps_tracking=fps_tracking,
        limb_tracking=limb_tracking,
        limb_nodes_json=limb_nodes_json,
        source_type=source_type,
        perspective=perspective,
        version=version,
        vendors=vendors,
        id_space=id_space,
        period_details=tuple(period_details),
        extras=tuple(sorted(extras)),
    )


def _take_dimension(stadium: _Obj, key: str, rule: str) -> float | None:
    """Pitch dimensions may be a number, "unknown", null or sentinel."""
    stadium.known.add(key)
    if key not in stadium.raw:
        stadium.report.add(rule, "error", stadium._p(key), "missing mandatory field")
        return None
    stadium.consumed.add(key)
    raw = stadium.raw[key]
    if raw is None or raw == "unknown":
        return None
    value, findings = decode_missing(raw, "float", stadium.policy, stadium._p(key))
    stadium.report.findings.extend(findings)
    return value


# ---------------------------------------------------------------------------
# Binders: video meta
# ---------------------------------------------------------------------------


def _bind_video_meta(
    doc: Any, report: ValidationReport, policy: str, root: str = ""
) -> VideoMeta:
    top = _Obj(doc, root, report, policy)
    video = VideoMeta(
        match_id=top.take("match_id", "text"),
        fps=top.take("fps", "int"),
        resolution=top.take("resolution", "text"),
        operation_type=top.take("operation_type", "text"),
        perspective=top.take("perspective", "text"),
        whistles=_bind_whistles(top, "whistles", report, policy),
    )
    return VideoMeta(
        video.match_id,
        video.fps,
        video.resolution,
        video.operation_type,
        video.perspective,
        video.whistles,
        extras=top.extras(),
    )


# ---------------------------------------------------------------------------
# Binders: event stream records
# ---------------------------------------------------------------------------


def _bind_event(
    doc: Any, report: ValidationReport, policy: str, root: str = ""
) -> EventRecord:
    top = _Obj(doc, root, report, policy)
    match = top.child("match")
    match_id = match.take("id", "text")
    meta = top.child("meta")
    is_synced = meta.take("is_synced", "int")
    ev = top.child("event")

    sub_type = ev.take("sub_type", "text", "EV-007")  # "None"/null both mean no subtype

    metrics = None
    if ev.has("metrics"):
        m = ev.child("metrics")
        metrics = EventMetrics(
            xg=m.take("xg", "float"),
            xpass=m.take("xpass", "float"),
            packing_traditional=m.take("packing_traditional", "int"),
            packing_horizontal=m.take("packing_horizontal", "int"),
        )
        m.extras()

    tracking = None
    if top.has("tracking"):
        t = top.child("tracking")
        tracking = EventTracking(
            frame_id_1=t.take("frame_id_1", "int"),
            frame_id_2=t.take("frame_id_2", "int"),
            x_player_1=t.take("x_player_1", "float"),
            y_player_1=t.take("y_player_1", "float"),
            x_player_2=t.take("x_player_2", "float"),
            y_player_2=t.take("y_player_2", "float"),
        )
        t.extras()
    else:
        top.known.add("tracking")

    record = EventRecord(
        match_id=match_id,
        is_synced=is_synced,
        event_id=ev.take("id", "text"),
        time=ev.take("time", "timestamp"),
        period=_take_period(ev, "period"),
        type=ev.take("type", "text"),
        sub_type=sub_type,
        outcome=ev.take("outcome", "int"),
        outcome_detailed=ev.take("outcome_detailed", "text"),
        player_id_1=ev.take("player_id_1", "text", "EV-010"),
        team_id_1=ev.take("team_id_1", "text", "EV-011"),
        player_id_2=ev.take("player_id_2", "text", "EV-012"),
        team_id_2=ev.take("team_id_2", "text", "EV-013"),
        x_1=ev.take("x_1", "float", "EV-014"),
        y_1=ev.take("y_1", "float", "EV-015"),
        x_2=ev.take("x_2", "float", "EV-016"),
        y_2=ev.take("y_2", "float", "EV-017"),
        body_part_1=ev.take("body_part_1", "text", "EV-018"),
        body_part_2=ev.take("body_part_2", "text", "EV-019"),
        tracking=tracking,
        metrics=metrics,
        extras=tuple(
            sorted(
                _strip_prefix(
                    top.extras() + match.extras() + meta.extras() + ev.extras(), root
                )
            )
        ),
    )
    return record


# ---------------------------------------------------------------------------
# Binders: tracking frames
# ---------------------------------------------------------------------------

_PLAYER_OPTIONALS = (
    ("z", "float"),
    ("vel", "float"),
    ("acc", "float"),
    ("dist", "float"),
    ("is_visible", "int"),
    ("lat", "float"),
    ("long", "float"),
)


def _bind_tracking_frame(
    doc: Any, report: ValidationReport, policy: str, root: str = ""
) -> TrackingFrame:
    top = _Obj(doc, root, report, policy)
    frame_id = top.take("frame_id", "int")
    period = _take_period(top, "period")
    match = top.child("match")
    match_id = match.take("id", "text")

    teams = top.child("teams")
    sides = {}
    for side in ("home", "away"):
        team = teams.child(side)
        team_id = team.take("id", "text")
        players = []
        for i, raw in enumerate(team.take_list("players")):
            p = _Obj(raw, f"{team.path}/players[{i}]", report, policy)
            kwargs = {
                "id": p.take("id", "text"),
                "team_id": p.take("team_id", "text"),
                "x": p.take("x", "float"),
                "y": p.take("y", "float"),
            }
            for key, kind in _PLAYER_OPTIONALS:
                kwargs[key] = p.take(key, kind) if p.has(key) else None
            players.append(PlayerPosition(**kwargs))
            p.extras()
        team.extras()
        sides[side] = (team_id, tuple(players))

    ball = None
    if top.has("ball"):
        b = top.child("ball")
        ball = BallPosition(
            x=b.take("x", "float"),
            y=b.take("y", "float"),
            z=b.take("z", "float"),
        )
        b.extras()
    else:
        top.known.add("ball")
        report.add("TR-013", "error", f"{root}/ball" if root else "ball", "missing mandatory field")

    ball_status = top.take("ball_status", "int") if top.has("ball_status") else None
    ball_poss_team_id = (
        top.take("ball_poss_team_id", "text") if top.has("ball_poss_team_id") else None
    )
    top.known.update({"ball_status", "ball_poss_team_id"})

    referees = []
    for i, raw in enumerate(top.take_list("referees")):
        r = _Obj(raw, f"{top._p('referees')}[{i}]", report, policy)
        referees.append(
            RefereePosition(
                id=r.take("id", "text"),
                x=r.take("x", "float") if r.has("x") else None,
                y=r.take("y", "float") if r.has("y") else None,
                z=r.take("z", "float") if r.has("z") else None,
            )
        )
        r.extras()

    return TrackingFrame(
        frame_id=frame_id,
        period=period,
        match_id=match_id,
        home_team_id=sides["home"][0],
        away_team_id=sides["away"][0],
        home_players=sides["home"][1],
        away_players=sides["away"][1],
        ball=ball,
        ball_status=ball_status,
        ball_poss_team_id=ball_poss_team_id,
        referees=tuple(referees),
        extras=tuple(
            sorted(_strip_prefix(top.extras() + match.extras() + teams.extras(), root))
        ),
    )


def _bind_skeleton_frame(
    doc: Any, report: ValidationReport, policy: str, root: str = ""
) -> SkeletonFrame:
    top = _Obj(doc, root, report, policy)
    frame_id = top.take("frame_id", "int")
    period = _take_period(top, "period")
    match = top.child("match")
    match_id = match.take("id", "text")

    teams = top.child("teams")
    sides = {}
    for side in ("home", "away"):
        team = teams.child(side)
        team_id = team.take("id", "text")
        players = []
        for i, raw in enumerate(team.take_list("players")):
            p = _Obj(raw, f"{team.path}/players[{i}]", report, policy)
            pid = p.take("id", "text")
            ptid = p.take("team_id", "text")
            limbs = []
            for key in p.raw:
                if key in p.consumed:
                    continue
                value = p.raw[key]
                if isinstance(value, dict):
                    p.consumed.add(key)
                    p.known.add(key)
                    limb = _Obj(value, f"{p.path}/{key}", report, policy)
                    limbs.append(
                        (
                            key,
                            LimbPoint(
                                x=limb.take("x", "float"),
                                y=limb.take("y", "float"),
                                z=limb.take("z", "float"),
                            ),
                        )
                    )
                    limb.extras()
            players.append(SkeletonPlayer(id=pid, team_id=ptid, limbs=tuple(limbs)))
            p.extras()
        team.extras()
        sides[side] = (team_id, tuple(players))

    return SkeletonFrame(
        frame_id=frame_id,
        period=period,
        match_id=match_id,
        home_team_id=sides["home"][0],
        away_team_id=sides["away"][0],
        home_players=sides["home"][1],
        away_players=sides["away"][1],
        extras=tuple(
            sorted(_strip_prefix(top.extras() + match.extras() + teams.extras(), root))
        ),
    )


_DOC_BINDERS = {
    "match_sheet": _bind_match_sheet,
    "meta": _bind_meta,
    "video_meta": _bind_video_meta,
}

_STREAM_BINDERS = {
    "event": _bind_event,
    "tracking_com": _bind_tracking_frame,
    "tracking_skeletal": _bind_skeleton_frame,
}


# ---------------------------------------------------------------------------
# Document reading
# ---------------------------------------------------------------------------


def read_document(
    data: bytes | str, doc_kind: str, policy: str = "accept_both"
):
    """Parse one CDF JSON document into its typed model.

    Returns ``(model, report)``; the report carries structural findings
    plus the full rule-engine findings for the document. Parsing is total
    except for invalid UTF-8 (``CdfEncodingError``) and a non-object top
    level (``CdfStructureError``)."""
    if doc_kind not in DOC_KINDS:
        raise CdfDomainError(f"unknown document kind: {doc_kind!r}")
    _check_policy(policy)
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise CdfEncodingError(
                f"invalid UTF-8 at byte {exc.start}", exc.start
            ) from exc
    else:
        text = data
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CdfStructureError(f"invalid JSON document: {exc}") from exc
    if not isinstance(doc, dict):
        raise CdfStructureError("top-level value is not a JSON object")

    report = ValidationReport()
    parsed = _DOC_BINDERS[doc_kind](doc, report, policy)

    from . import rules  # deferred: rules imports model only

    report.merge(rules.validate_document(parsed, doc_kind))
    return parsed, report


def bind_document(doc: dict, doc_kind: str, policy: str = "accept_both"):
    """Bind an already-decoded JSON object without running the rule engine."""
    if doc_kind not in DOC_KINDS:
        raise CdfDomainError(f"unknown document kind: {doc_kind!r}")
    report = ValidationReport()
    parsed = _DOC_BINDERS[doc_kind](doc, report, policy)
    return parsed, report


# ---------------------------------------------------------------------------
# Stream reading
# ---------------------------------------------------------------------------


def iter_lines(source) -> Iterator[tuple[int, int, bytes]]:
    """Yield ``(line_number, byte_offset, line)`` from a byte source.

    The source may be bytes, a binary file-like object or an iterable of
    byte chunks. Memory use is bounded by the longest single line. A
    partial trailing line (no final newline) is yielded when the source
    ends, which covers both post-match files and live pipes."""
    if isinstance(source, (bytes, bytearray)):
        chunks: Iterable[bytes] = (bytes(source),)
    elif hasattr(source, "read"):
        def _reader(f=source):
            while True:
                chunk = f.read(65536)
                if not chunk:
                    return
                yield chunk
        chunks = _reader()
    else:
        chunks = source

    buffer = bytearray()
    line_number = 0
    offset = 0
    for chunk in chunks:
        buffer.extend(chunk)
        while True:
            idx = buffer.find(b"\n")
            if idx < 0:
                break
            line = bytes(buffer[:idx])
            del buffer[: idx + 1]
            line_number += 1
            yield line_number, offset, line
            offset += idx + 1
    if buffer:
        line_number += 1
        yield line_number, offset, bytes(buffer)


def read_line_stream(
    source,
    stream_kind: str,
    policy: str = "accept_both",
    strict: bool = False,
    mode: str = "post_match",
) -> Iterator[tuple[Any, ValidationReport]]:
    """Decode a JSON Lines stream record by record.

    Yields ``(record, report)`` per line in order; a malformed line yields
    ``(None, report)`` with an error finding and, in strict mode, ends the
    iteration. Empty lines are skipped."""
    if stream_kind not in STREAM_KINDS:
        raise CdfDomainError(f"unknown stream kind: {stream_kind!r}")
    _check_policy(policy)
    binder = _STREAM_BINDERS[stream_kind]
    for line_number, _offset, line in iter_lines(source):
        if not line.strip():
            continue
        report = ValidationReport()
        path = f"line {line_number}"
        try:
            text = line.decode("utf-8")
            doc = json.loads(
                text, parse_constant=_reject_constant
            )
        except (UnicodeDecodeError, ValueError) as exc:
            report.add("CD-101", "error", path, f"malformed line: {exc}")
            yield None, report
            if strict:
                return
            continue
        if not isinstance(doc, dict):
            report.add("CD-102", "error", path, "line is not a JSON object")
            yield None, report
            if strict:
                return
            continue
        record = binder(doc, report, policy, root=path)
        yield record, report


def _reject_constant(name: str):
    raise ValueError(f"non-finite JSON constant {name!r} not allowed")


# ---------------------------------------------------------------------------
# Writing
# ---------------------------------------------------------------------------


class _Encoder:
    """Encodes model values into JSON-ready primitives under one policy."""

    __slots__ = ("policy",)

    def __init__(self, policy: str):
        if policy == "accept_both":
            policy = "null"  # canonical output
        _check_policy(policy)
        self.policy = policy

    def text(self, value: str | None):
        if value is None:
            return SENTINEL_TEXT if self.policy == "sentinel" else None
        return value

    def integer(self, value: int | None):
        if value is None:
            return SENTINEL_INT if self.policy == "sentinel" else None
        return value

    def number(self, value: float | None):
        if value is None:
            return SENTINEL_FLOAT if self.policy == "sentinel" else None
        if isinstance(value, float) and (math.isnan(value) or math.isinf(value)):
            raise CdfSerializationError("non-finite float is not representable")
        return round3(float(value))

    def timestamp(self, value: CdfTimestamp | None):
        if value is None:
            return SENTINEL_TIMESTAMP if self.policy == "sentinel" else None
        return value.canonical_text()


def _insert_extras(obj: dict, extras: tuple) -> None:
    for path, json_text in extras:
        parts = path.split("/")
        node = obj
        for part in parts[:-1]:
            node = node.setdefault(part, {})
            if not isinstance(node, dict):
                raise CdfSerializationError(
                    f"extras path {path!r} collides with a non-object field"
                )
        node.setdefault(parts[-1], json.loads(json_text))


def _player_obj(p: PlayerEntry, enc: _Encoder) -> dict:
    obj = {
        "id": enc.text(p.id),
        "team_id": enc.text(p.team_id),
        "jersey_number": enc.integer(p.jersey_number),
        "is_starter": enc.integer(p.is_starter),
    }
    _insert_extras(obj, p.extras)
    return obj


def _score_obj(s: Score | None, enc: _Encoder):
    if s is None:
        return None
    return {"home": enc.integer(s.home), "away": enc.integer(s.away)}


def _final_obj(s: FinalScore | None, enc: _Encoder):
    if s is None:
        return None
    return {
        "home": enc.integer(s.home),
        "away": enc.integer(s.away),
        "winning_team_id": enc.text(s.winning_team_id),
    }


def _whistle_objs(whistles: tuple, enc: _Encoder) -> list:
    return [
        {
            "type": enc.text(w.type),
            "sub_type": enc.text(w.sub_type),
            "time": enc.timestamp(w.time),
        }
        for w in whistles
    ]


def _match_sheet_obj(ms: MatchSheet, enc: _Encoder) -> dict:
    result: dict[str, Any] = {"final": _final_obj(ms.result.final, enc)}
    for key in ("first_half", "second_half", "first_extratime", "second_extratime", "shootout"):
        score = getattr(ms.result, key)
        if score is not None:
            result[key] = _score_obj(score, enc)
    obj = {
        "match": {
            "id": enc.text(ms.match_id),
            "status": {
                "is_neutral": enc.integer(ms.is_neutral),
                "has_extratime": enc.integer(ms.has_extratime),
                "has_shootout": enc.integer(ms.has_shootout),
            },
        },
        "result": result,
        "teams": {
            "home": {
                "id": enc.text(ms.home_team_id),
                "players": [_player_obj(p, enc) for p in ms.home_players],
            },
            "away": {
                "id": enc.text(ms.away_team_id),
                "players": [_player_obj(p, enc) for p in ms.away_players],
            },
        },
        "referees": [{"id": enc.text(r)} for r in ms.referees],
        "events": {
            "goals": [
                {
                    "goal_time": enc.timestamp(g.goal_time),
                    "goal_player_id": enc.text(g.goal_player_id),
                    "goal_assist_id": enc.text(g.goal_assist_id),
                    "is_own_goal": enc.integer(g.is_own_goal),
                    "is_penalty": enc.integer(g.is_penalty),
                }
                for g in ms.goals
            ],
            "substitutions": [
                {
                    "in_time": enc.timestamp(s.in_time),
                    "in_player_id": enc.text(s.in_player_id),
                    "out_time": enc.timestamp(s.out_time),
                    "out_player_id": enc.text(s.out_player_id),
                }
                for s in ms.substitutions
            ],
            "cards": [
                {
                    "card_time": enc.timestamp(c.card_time),
                    "card_player_id": enc.text(c.card_player_id),
                    "card_type": enc.text(c.card_type),
                }
                for c in ms.cards
            ],
        },
        "meta": {"vendor": enc.text(ms.vendor)},
    }
    _insert_extras(obj, ms.extras)
    return obj


def _meta_obj(meta: MatchMeta, enc: _Encoder) -> dict:
    meta_block: dict[str, Any] = {
        "fps_tracking": enc.integer(meta.fps_tracking),
        "limb_tracking": enc.integer(meta.limb_tracking),
    }
    if meta.limb_nodes_json is not None:
        meta_block["limb_nodes"] = json.loads(meta.limb_nodes_json)
    meta_block["source_type"] = enc.text(meta.source_type)
    meta_block["perspective"] = enc.text(meta.perspective)
    version = dict(meta.version)
    version_block: dict[str, Any] = {}
    for key in ("cdf", "event", "tracking", "meta"):
        if key in version:
            version_block[key] = enc.text(version.pop(key))
    for key in sorted(version):
        version_block[key] = enc.text(version[key])
    meta_block["version"] = version_block
    meta_block["vendors"] = {
        key: enc.text(dict(meta.vendors).get(key))
        for key in ("event", "tracking", "video")
    }
    meta_block["id_space"] = {
        key: enc.text(dict(meta.id_space).get(key))
        for key in ("match_data", "event", "tracking")
    }

    match_block: dict[str, Any] = {
        "id": enc.text(meta.match_id),
        "kickoff_time": enc.timestamp(meta.kickoff_time),
        "periods": list(meta.periods),
        "status": {
            "is_neutral": enc.integer(meta.is_neutral),
            "has_extratime": enc.integer(meta.has_extratime),
            "has_shootout": enc.integer(meta.has_shootout),
        },
        "whistles": _whistle_objs(meta.whistles, enc),
        "result": {"final": _final_obj(meta.result.final, enc)},
    }
    if meta.result.extratime is not None:
        match_block["result"]["extratime"] = _score_obj(meta.result.extratime, enc)
    if meta.result.shootout is not None:
        match_block["result"]["shootout"] = _score_obj(meta.result.shootout, enc)

    def _team_obj(team: TeamInfo) -> dict:
        obj: dict[str, Any] = {"id": enc.text(team.id)}
        if team.name is not None:
            obj["name"] = team.name
        if team.jersey_colour is not None:
            obj["jersey_colour"] = team.jersey_colour
        obj["players"] = [_player_obj(p, enc) for p in team.players]
        return obj

    obj: dict[str, Any] = {
        "meta": meta_block,
        "competition": {"id": enc.text(meta.competition_id)},
        "season": {"id": enc.text(meta.season_id)},
        "match": match_block,
        "stadium": {
            "id": enc.text(meta.stadium_id),
            "pitch_length": enc.number(meta.pitch.length),
            "pitch_width": enc.number(meta.pitch.width),
        },
        "teams": {
            "home": _team_obj(meta.home_team),
            "away": _team_obj(meta.away_team),
        },
        "referees": [{"id": enc.text(r)} for r in meta.referees],
    }
    if meta.period_details:
        obj["periods"] = [
            {
                key: value
                for key, value in (
                    ("type", enc.text(pd.type)),
                    ("time_start", enc.timestamp(pd.time_start)),
                    ("time_end", enc.timestamp(pd.time_end)),
                    ("frame_id_start", enc.integer(pd.frame_id_start)),
                    ("frame_id_end", enc.integer(pd.frame_id_end)),
                    ("left_team_id", enc.text(pd.left_team_id)),
                    ("right_team_id", enc.text(pd.right_team_id)),
                )
                if value is not None
            }
            for pd in meta.period_details
        ]
    _insert_extras(obj, meta.extras)
    return obj


def _video_obj(video: VideoMeta, enc: _Encoder) -> dict:
    obj = {
        "match_id": enc.text(video.match_id),
        "fps": enc.integer(video.fps),
        "resolution": enc.text(video.resolution),
        "operation_type": enc.text(video.operation_type),
        "perspective": enc.text(video.perspective),
        "whistles": _whistle_objs(video.whistles, enc),
    }
    _insert_extras(obj, video.extras)
    return obj


def _event_obj(ev: EventRecord, enc: _Encoder) -> dict:
    period = ev.period
    if period in model.PERIOD_STREAM_SPELLING:
        period = model.PERIOD_STREAM_SPELLING[period]
    event_block: dict[str, Any] = {
        "id": enc.text(ev.event_id),
        "time": enc.timestamp(ev.time),
        "period": enc.text(period),
        "type": enc.text(ev.type),
        "sub_type": enc.text(ev.sub_type),
        "outcome": enc.integer(ev.outcome),
        "outcome_detailed": enc.text(ev.outcome_detailed),
        "player_id_1": enc.text(ev.player_id_1),
        "team_id_1": enc.text(ev.team_id_1),
        "player_id_2": enc.text(ev.player_id_2),
        "team_id_2": enc.text(ev.team_id_2),
        "x_1": enc.number(ev.x_1),
        "y_1": enc.number(ev.y_1),
        "x_2": enc.number(ev.x_2),
        "y_2": enc.number(ev.y_2),
        "body_part_1": enc.text(ev.body_part_1),
        "body_part_2": enc.text(ev.body_part_2),
    }
    if ev.metrics is not None:
        metrics = {
            key: value
            for key, value in (
                ("xg", enc.number(ev.metrics.xg) if ev.metrics.xg is not None else None),
                (
                    "xpass",
                    enc.number(ev.metrics.xpass) if ev.metrics.xpass is not None else None,
                ),
                ("packing_traditional", ev.metrics.packing_traditional),
                ("packing_horizontal", ev.metrics.packing_horizontal),
            )
            if value is not None
        }
        event_block["metrics"] = metrics
    obj: dict[str, Any] = {
        "match": {"id": enc.text(ev.match_id)},
        "meta": {"is_synced": enc.integer(ev.is_synced)},
        "event": event_block,
    }
    if ev.tracking is not None:
        obj["tracking"] = {
            key: value
            for key, value in (
                ("frame_id_1", enc.integer(ev.tracking.frame_id_1)),
                ("frame_id_2", enc.integer(ev.tracking.frame_id_2)),
                ("x_player_1", _opt_number(ev.tracking.x_player_1, enc)),
                ("y_player_1", _opt_number(ev.tracking.y_player_1, enc)),
                ("x_player_2", _opt_number(ev.tracking.x_player_2, enc)),
                ("y_player_2", _opt_number(ev.tracking.y_player_2, enc)),
            )
            if value is not None
        }
    _insert_extras(obj, ev.extras)
    return obj


def _opt_number(value, enc: _Encoder):
    return None if value is None else enc.number(value)


def _tracking_player_obj(p: PlayerPosition, enc: _Encoder) -> dict:
    obj = {
        "id": enc.text(p.id),
        "team_id": enc.text(p.team_id),
        "x": enc.number(p.x),
        "y": enc.number(p.y),
    }
    for key, _kind in _PLAYER_OPTIONALS:
        value = getattr(p, key)
        if value is not None:
            obj[key] = enc.number(value) if key != "is_visible" else value
    return obj


def _tracking_obj(frame: TrackingFrame, enc: _Encoder) -> dict:
    period = frame.period
    if period in model.PERIOD_STREAM_SPELLING:
        period = model.PERIOD_STREAM_SPELLING[period]
    obj: dict[str, Any] = {
        "frame_id": enc.integer(frame.frame_id),
        "period": enc.text(period),
        "match": {"id": enc.text(frame.match_id)},
        "teams": {
            "home": {
                "id": enc.text(frame.home_team_id),
                "players": [_tracking_player_obj(p, enc) for p in frame.home_players],
            },
            "away": {
                "id": enc.text(frame.away_team_id),
                "players": [_tracking_player_obj(p, enc) for p in frame.away_players],
            },
        },
        "ball": {
            "x": enc.number(frame.ball.x) if frame.ball else enc.number(None),
            "y": enc.number(frame.ball.y) if frame.ball else enc.number(None),
            "z": enc.number(frame.ball.z) if frame.ball else enc.number(None),
        },
    }
    if frame.ball_status is not None:
        obj["ball_status"] = frame.ball_status
    if frame.ball_poss_team_id is not None:
        obj["ball_poss_team_id"] = frame.ball_poss_team_id
    if frame.referees:
        obj["referees"] = [
            {
                key: value
                for key, value in (
                    ("id", enc.text(r.id)),
                    ("x", _opt_number(r.x, enc)),
                    ("y", _opt_number(r.y, enc)),
                    ("z", _opt_number(r.z, enc)),
                )
                if value is not None
            }
            for r in frame.referees
        ]
    _insert_extras(obj, frame.extras)
    return obj


def _skeleton_obj(frame: SkeletonFrame, enc: _Encoder) -> dict:
    period = frame.period
    if period in model.PERIOD_STREAM_SPELLING:
        period = model.PERIOD_STREAM_SPELLING[period]

    def _player(p: SkeletonPlayer) -> dict:
        obj: dict[str, Any] = {"id": enc.text(p.id), "team_id": enc.text(p.team_id)}
        for name, point in p.limbs:
            obj[name] = {
                "x": enc.number(point.x),
                "y": enc.number(point.y),
                "z": enc.number(point.z),
            }
        return obj

    obj: dict[str, Any] = {
        "frame_id": enc.integer(frame.frame_id),
        "period": enc.text(period),
        "match": {"id": enc.text(frame.match_id)},
        "teams": {
            "home": {
                "id": enc.text(frame.home_team_id),
                "players": [_player(p) for p in frame.home_players],
            },
            "away": {
                "id": enc.text(frame.away_team_id),
                "players": [_player(p) for p in frame.away_players],
            },
        },
    }
    _insert_extras(obj, frame.extras)
    return obj


_DOC_BUILDERS = {
    "match_sheet": _match_sheet_obj,
    "meta": _meta_obj,
    "video_meta": _video_obj,
}

_STREAM_BUILDERS = {
    "event": _event_obj,
    "tracking_com": _tracking_obj,
    "tracking_skeletal": _skeleton_obj,
}


def write_document(doc, doc_kind: str, policy: str = "null") -> bytes:
    """Serialize a document model to canonical UTF-8 JSON bytes.

    Keys follow schema order, floats carry at most three decimal places
    and output is byte-stable for identical input."""
    if doc_kind not in DOC_KINDS:
        raise CdfDomainError(f"unknown document kind: {doc_kind!r}")
    enc = _Encoder(policy)
    obj = _DOC_BUILDERS[doc_kind](doc, enc)
    return (
        json.dumps(obj, ensure_ascii=False, indent=2, allow_nan=False) + "\n"
    ).encode("utf-8")


def encode_record(record, stream_kind: str, policy: str = "null") -> bytes:
    """Serialize one stream record to a single JSON line (with newline)."""
    if stream_kind not in STREAM_KINDS:
        raise CdfDomainError(f"unknown stream kind: {stream_kind!r}")
    enc = _Encoder(policy)
    obj = _STREAM_BUILDERS[stream_kind](record, enc)
    return (
        json.dumps(obj, ensure_ascii=False, separators=(",", ":"), allow_nan=False)
        + "\n"
    ).encode("utf-8")


def encode_line_stream(records: Iterable, stream_kind: str, policy: str = "null") -> Iterator[bytes]:
    """Lazily serialize records to JSON Lines; one record per line."""
    for record in records:
        yield encode_record(record, stream_kind, policy)


def write_line_stream(records: Iterable, stream_kind: str, sink, policy: str = "null") -> int:
    """Write records to a binary sink as JSON Lines; returns lines written."""
    count = 0
    for line in encode_line_stream(records, stream_kind, policy):
        sink.write(line)
        count += 1
    return count
