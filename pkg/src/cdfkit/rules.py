"""Per-document validation: every field-level constraint of the CDF schema.

Each check appends a finding to a :class:`ValidationReport`; validators
never raise for bad data. Rule ids are stable across releases and follow
the scheme ``<prefix>-<3 digits>`` with prefixes MS (match sheet), EV
(event), TR (center-of-mass tracking), SK (skeletal), MD (match meta),
VD (video meta), PL (playing conventions / positions), XB (cross-file
bundle) and CD (codec / structural).

Presence rules: ids below 100 flag a missing mandatory field; ids from
101 upward flag semantic violations. Mandatory keys whose *value* may
legitimately be null (e.g. an unassisted goal's assist id) are flagged at
decode time by the codec, since only the wire form can distinguish an
absent key from a null value.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .model import (
    BODY_PARTS,
    CARD_TYPES,
    EVENT_TYPES,
    MAX_PITCH_LENGTH,
    MAX_PITCH_WIDTH,
    META_PERSPECTIVES,
    OPERATION_TYPES,
    PERIODS,
    SOURCE_TYPES,
    VIDEO_PERSPECTIVES,
    WHISTLE_SUBTYPES,
    WHISTLE_TYPES,
    EventRecord,
    MatchMeta,
    MatchSheet,
    PitchGeometry,
    Score,
    SkeletonFrame,
    TrackingFrame,
    ValidationReport,
    VideoMeta,
    allowed_outcomes,
    allowed_subtypes,
    parse_dotted_version,
)

#: Coordinates may exceed the pitch by this margin (meters) before a
#: bounds warning: throw-ins and keeper positioning legitimately cross
#: the lines.
OOB_MARGIN = 5.0

_JERSEY_COLOUR_RE = re.compile(r"^#[0-9A-Fa-f]{6}$")
_RESOLUTION_RE = re.compile(r"^\d+x\d+$")
_SNAKE_CASE_RE = re.compile(r"^[a-z][a-z0-9]*(?:_[a-z0-9]+)*$")


def _missing(report: ValidationReport, rule: str, path: str) -> None:
    report.add(rule, "error", path, "missing mandatory field")


def _flag01(report: ValidationReport, rule: str, path: str, value) -> None:
    if value is not None and value not in (0, 1):
        report.add(rule, "error", path, f"boolean flag must be 0 or 1, got {value}")


def _enum(report: ValidationReport, rule: str, path: str, value, allowed, severity="error") -> None:
    if value is not None and value not in allowed:
        report.add(
            rule,
            severity,
            path,
            f"value {value!r} not in allowed set {sorted(str(a) for a in allowed)}",
        )


def _in_bounds(value: float | None, lo: float, hi: float) -> bool:
    return value is None or (lo - OOB_MARGIN <= value <= hi + OOB_MARGIN)


def _check_xy(
    report: ValidationReport,
    rule: str,
    path: str,
    x: float | None,
    y: float | None,
    pitch: PitchGeometry | None,
) -> None:
    if pitch is None or not pitch.known:
        return
    half_l = pitch.length / 2.0
    half_w = pitch.width / 2.0
    if not _in_bounds(x, -half_l, half_l) or not _in_bounds(y, -half_w, half_w):
        report.add(
            rule,
            "warning",
            path,
            f"position ({x}, {y}) outside pitch domain "
            f"[-{half_l}, {half_l}] x [-{half_w}, {half_w}] plus {OOB_MARGIN} m margin",
        )


# ---------------------------------------------------------------------------
# Match sheet
# ---------------------------------------------------------------------------


def _score_known(score) -> bool:
    return score is not None and score.home is not None and score.away is not None


def validate_match_sheet(ms: MatchSheet) -> ValidationReport:
    report = ValidationReport()
    if ms.match_id is None:
        _missing(report, "MS-001", "match/id")
    if ms.is_neutral is None:
        _missing(report, "MS-002", "match/status/is_neutral")
    if ms.has_extratime is None:
        _missing(report, "MS-003", "match/status/has_extratime")
    if ms.has_shootout is None:
        _missing(report, "MS-004", "match/status/has_shootout")
    _flag01(report, "MS-101", "match/status/is_neutral", ms.is_neutral)
    _flag01(report, "MS-101", "match/status/has_extratime", ms.has_extratime)
    _flag01(report, "MS-101", "match/status/has_shootout", ms.has_shootout)

    result = ms.result
    if result.final is None or result.final.home is None or result.final.away is None:
        _missing(report, "MS-005", "result/final")
    if result.first_half is None:
        _missing(report, "MS-006", "result/first_half")
    if result.second_half is None:
        _missing(report, "MS-007", "result/second_half")
    if ms.has_extratime == 1:
        if result.first_extratime is None:
            _missing(report, "MS-008", "result/first_extratime")
        if result.second_extratime is None:
            _missing(report, "MS-009", "result/second_extratime")
    elif ms.has_extratime == 0:
        if result.first_extratime is not None or result.second_extratime is not None:
            report.add(
                "MS-108",
                "error",
                "result",
                "extra-time result components present but has_extratime is 0",
            )
    if ms.has_shootout == 1 and result.shootout is None:
        _missing(report, "MS-010", "result/shootout")
    if ms.has_shootout == 0 and result.shootout is not None:
        report.add(
            "MS-107",
            "error",
            "result/shootout",
            "shootout result present but has_shootout is 0",
        )

    _check_result_values(report, result)

    if ms.home_team_id is None:
        _missing(report, "MS-011", "teams/home/id")
    if ms.away_team_id is None:
        _missing(report, "MS-012", "teams/away/id")
    # Cross-team checks only make sense once both team ids are known;
    # a missing id is already its own finding.
    team_ids = {ms.home_team_id, ms.away_team_id}
    if (
        result.final is not None
        and result.final.winning_team_id is not None
        and None not in team_ids
        and result.final.winning_team_id not in team_ids
    ):
        report.add(
            "MS-111",
            "error",
            "result/final/winning_team_id",
            f"winning_team_id {result.final.winning_team_id!r} is not a roster team",
        )

    _check_rosters(
        report,
        ms.home_players,
        ms.away_players,
        ms.home_team_id,
        ms.away_team_id,
        roster_rule="MS-013",
        id_rule="MS-014",
        team_rule="MS-015",
        jersey_rule="MS-016",
        starter_rule="MS-017",
        flag_rule="MS-101",
        jersey_min_rule="MS-103",
        jersey_dup_rule="MS-104",
        team_mismatch_rule="MS-105",
        starters_rule="MS-110",
    )

    if not ms.referees:
        _missing(report, "MS-018", "referees")

    roster_ids = {p.id for p in ms.players if p.id is not None}
    for i, goal in enumerate(ms.goals):
        path = f"events/goals[{i}]"
        if goal.goal_time is None:
            _missing(report, "MS-023", f"{path}/goal_time")
        if goal.goal_player_id is None:
            _missing(report, "MS-024", f"{path}/goal_player_id")
        if goal.is_own_goal is None:
            _missing(report, "MS-026", f"{path}/is_own_goal")
        if goal.is_penalty is None:
            _missing(report, "MS-027", f"{path}/is_penalty")
        _flag01(report, "MS-101", f"{path}/is_own_goal", goal.is_own_goal)
        _flag01(report, "MS-101", f"{path}/is_penalty", goal.is_penalty)
        _check_roster_ref(report, f"{path}/goal_player_id", goal.goal_player_id, roster_ids)
        _check_roster_ref(report, f"{path}/goal_assist_id", goal.goal_assist_id, roster_ids)
    for i, sub in enumerate(ms.substitutions):
        path = f"events/substitutions[{i}]"
        if sub.in_time is None:
            _missing(report, "MS-028", f"{path}/in_time")
        if sub.in_player_id is None:
            _missing(report, "MS-029", f"{path}/in_player_id")
        if sub.out_time is None:
            _missing(report, "MS-030", f"{path}/out_time")
        if sub.out_player_id is None:
            _missing(report, "MS-031", f"{path}/out_player_id")
        _check_roster_ref(report, f"{path}/in_player_id", sub.in_player_id, roster_ids)
        _check_roster_ref(report, f"{path}/out_player_id", sub.out_player_id, roster_ids)
    for i, card in enumerate(ms.cards):
        path = f"events/cards[{i}]"
        if card.card_time is None:
            _missing(report, "MS-032", f"{path}/card_time")
        if card.card_player_id is None:
            _missing(report, "MS-033", f"{path}/card_player_id")
        if card.card_type is None:
            _missing(report, "MS-034", f"{path}/card_type")
        _enum(report, "MS-102", f"{path}/card_type", card.card_type, CARD_TYPES)
        _check_roster_ref(report, f"{path}/card_player_id", card.card_player_id, roster_ids)

    if ms.vendor is None:
        _missing(report, "MS-035", "meta/vendor")
    return report


def _check_roster_ref(report, path, player_id, roster_ids) -> None:
    if player_id is not None and roster_ids and player_id not in roster_ids:
        report.add(
            "MS-113", "error", path, f"player {player_id!r} is not on either roster"
        )


def _check_result_values(report: ValidationReport, result) -> None:
    components = [
        ("final", result.final),
        ("first_half", result.first_half),
        ("second_half", result.second_half),
        ("first_extratime", result.first_extratime),
        ("second_extratime", result.second_extratime),
        ("shootout", result.shootout),
    ]
    for name, score in components:
        if score is None:
            continue
        for side in ("home", "away"):
            goals = getattr(score, side)
            if goals is not None and goals < 0:
                report.add(
                    "MS-109", "error", f"result/{name}/{side}", "negative goal count"
                )
    # Cumulative monotonicity over the components that are present.
    chain = [
        c
        for c in (
            result.first_half,
            result.second_half,
            result.first_extratime,
            result.second_extratime,
        )
        if _score_known(c)
    ]
    for earlier, later in zip(chain, chain[1:]):
        if later.home < earlier.home or later.away < earlier.away:
            report.add(
                "MS-106",
                "error",
                "result",
                f"score ({later.home}, {later.away}) regresses from "
                f"({earlier.home}, {earlier.away})",
            )
    if _score_known(result.final) and _score_known(result.second_half):
        if (result.final.home, result.final.away) != (
            result.second_half.home,
            result.second_half.away,
        ):
            report.add(
                "MS-112",
                "warning",
                "result/final",
                "final (regular-time) result differs from second_half result",
            )


def _check_rosters(
    report: ValidationReport,
    home_players,
    away_players,
    home_team_id,
    away_team_id,
    *,
    roster_rule: str,
    id_rule: str,
    team_rule: str,
    jersey_rule: str,
    starter_rule: str,
    flag_rule: str,
    jersey_min_rule: str,
    jersey_dup_rule: str,
    team_mismatch_rule: str,
    starters_rule: str,
) -> None:
    team_ids = {home_team_id, away_team_id}
    both_teams_known = None not in team_ids
    for side, players in (("home", home_players), ("away", away_players)):
        base = f"teams/{side}/players"
        if not players:
            _missing(report, roster_rule, base)
            continue
        jerseys: dict[int, int] = {}
        starters = 0
        any_starter_flag = False
        for i, p in enumerate(players):
            path = f"{base}[{i}]"
            if p.id is None:
                _missing(report, id_rule, f"{path}/id")
            if p.team_id is None:
                _missing(report, team_rule, f"{path}/team_id")
            elif both_teams_known and p.team_id not in team_ids:
                report.add(
                    team_mismatch_rule,
                    "error",
                    f"{path}/team_id",
                    f"player team {p.team_id!r} is neither the home nor the away team",
                )
            if p.jersey_number is None:
                _missing(report, jersey_rule, f"{path}/jersey_number")
            else:
                if p.jersey_number < 1:
                    report.add(
                        jersey_min_rule,
                        "error",
                        f"{path}/jersey_number",
                        f"jersey number must be >= 1, got {p.jersey_number}",
                    )
                if p.jersey_number in jerseys:
                    report.add(
                        jersey_dup_rule,
                        "error",
                        f"{path}/jersey_number",
                        f"jersey number {p.jersey_number} already used at index "
                        f"{jerseys[p.jersey_number]}",
                    )
                jerseys.setdefault(p.jersey_number, i)
            if p.is_starter is None:
                _missing(report, starter_rule, f"{path}/is_starter")
            else:
                any_starter_flag = True
                _flag01(report, flag_rule, f"{path}/is_starter", p.is_starter)
                if p.is_starter == 1:
                    starters += 1
        if any_starter_flag and starters != 11:
            report.add(
                starters_rule,
                "warning",
                base,
                f"expected 11 starters, found {starters}",
            )


# ---------------------------------------------------------------------------
# Events
# ---------------------------------------------------------------------------


def validate_event(event: EventRecord, meta: MatchMeta | None = None) -> ValidationReport:
    report = ValidationReport()
    if event.match_id is None:
        _missing(report, "EV-001", "match/id")
    if event.is_synced is None:
        _missing(report, "EV-002", "meta/is_synced")
    _flag01(report, "EV-111", "meta/is_synced", event.is_synced)
    if event.event_id is None:
        _missing(report, "EV-003", "event/id")
    if event.time is None:
        _missing(report, "EV-004", "event/time")
    if event.period is None:
        _missing(report, "EV-005", "event/period")
    else:
        _enum(report, "EV-101", "event/period", event.period, PERIODS)
    if event.type is None:
        _missing(report, "EV-006", "event/type")
    else:
        _enum(report, "EV-102", "event/type", event.type, EVENT_TYPES)
    if event.outcome is None:
        _missing(report, "EV-008", "event/outcome")
    _flag01(report, "EV-105", "event/outcome", event.outcome)
    if event.outcome_detailed is None:
        _missing(report, "EV-009", "event/outcome_detailed")

    if event.type in EVENT_TYPES:
        subtypes = allowed_subtypes(event.type)
        if event.sub_type not in subtypes:
            report.add(
                "EV-103",
                "error",
                "event/sub_type",
                f"sub_type {event.sub_type!r} not allowed for type {event.type!r}",
            )
        outcomes = allowed_outcomes(event.type)
        if event.outcome_detailed is not None and event.outcome_detailed not in outcomes:
            report.add(
                "EV-104",
                "error",
                "event/outcome_detailed",
                f"outcome_detailed {event.outcome_detailed!r} not allowed for "
                f"type {event.type!r}",
            )
        # The success bit and the detailed outcome must agree where the
        # schema enumerates an explicit "successful" variant.
        if (
            event.type in ("shot", "pass")
            and event.outcome in (0, 1)
            and event.outcome_detailed in outcomes
        ):
            successful = event.outcome_detailed == "successful"
            if successful != (event.outcome == 1):
                report.add(
                    "EV-106",
                    "error",
                    "event/outcome",
                    f"outcome {event.outcome} disagrees with outcome_detailed "
                    f"{event.outcome_detailed!r}",
                )

    _enum(report, "EV-107", "event/body_part_1", event.body_part_1, BODY_PARTS)
    _enum(report, "EV-107", "event/body_part_2", event.body_part_2, BODY_PARTS)

    pitch = meta.pitch if meta is not None else None
    _check_xy(report, "EV-108", "event/x_1", event.x_1, event.y_1, pitch)
    _check_xy(report, "EV-108", "event/x_2", event.x_2, event.y_2, pitch)

    if event.metrics is not None:
        if event.metrics.xg is not None and not 0.0 <= event.metrics.xg <= 1.0:
            report.add(
                "EV-109", "error", "event/metrics/xg", f"xg {event.metrics.xg} outside [0, 1]"
            )
        if event.metrics.xpass is not None and not 0.0 <= event.metrics.xpass <= 1.0:
            report.add(
                "EV-110",
                "error",
                "event/metrics/xpass",
                f"xpass {event.metrics.xpass} outside [0, 1]",
            )
    return report


# ---------------------------------------------------------------------------
# Tracking
# ---------------------------------------------------------------------------


@dataclass
class TrackingStreamState:
    """Per-stream frame-ordering state; confine to one stream consumer."""

    last_frame_id: int | None = None
    current_period: str | None = None
    seen_periods: set = field(default_factory=set)
    informed_ball_flags: bool = False


def validate_tracking_frame(
    frame: TrackingFrame,
    meta: MatchMeta | None = None,
    state: TrackingStreamState | None = None,
) -> ValidationReport:
    report = ValidationReport()
    if frame.frame_id is None:
        _missing(report, "TR-001", "frame_id")
    elif frame.frame_id < 0:
        report.add("TR-101", "error", "frame_id", f"frame_id must be >= 0, got {frame.frame_id}")
    if frame.period is None:
        _missing(report, "TR-002", "period")
    else:
        _enum(report, "TR-108", "period", frame.period, PERIODS)
    if frame.match_id is None:
        _missing(report, "TR-003", "match/id")
    if frame.home_team_id is None:
        _missing(report, "TR-004", "teams/home/id")
    if frame.away_team_id is None:
        _missing(report, "TR-005", "teams/away/id")

    roster_ids = None
    if meta is not None:
        roster_ids = {p.id for p in meta.players if p.id is not None}
    pitch = meta.pitch if meta is not None else None

    seen_players: dict[str, str] = {}
    for side, players in (("home", frame.home_players), ("away", frame.away_players)):
        for i, p in enumerate(players):
            path = f"teams/{side}/players[{i}]"
            if p.id is None:
                _missing(report, "TR-006", f"{path}/id")
            else:
                if p.id in seen_players:
                    report.add(
                        "TR-102",
                        "error",
                        f"{path}/id",
                        f"player {p.id!r} already present at {seen_players[p.id]}",
                    )
                seen_players.setdefault(p.id, path)
                if roster_ids is not None and p.id not in roster_ids:
                    report.add(
                        "TR-107",
                        "error",
                        f"{path}/id",
                        f"player {p.id!r} not on the match meta roster",
                    )
            if p.team_id is None:
                _missing(report, "TR-007", f"{path}/team_id")
            if p.x is None:
                _missing(report, "TR-008", f"{path}/x")
            if p.y is None:
                _missing(report, "TR-009", f"{path}/y")
            _check_xy(report, "TR-105", path, p.x, p.y, pitch)
            if p.is_visible is not None:
                _flag01(report, "TR-110", f"{path}/is_visible", p.is_visible)

    if frame.ball is not None:
        if frame.ball.x is None:
            _missing(report, "TR-010", "ball/x")
        if frame.ball.y is None:
            _missing(report, "TR-011", "ball/y")
        if frame.ball.z is None:
            _missing(report, "TR-012", "ball/z")
        elif frame.ball.z < 0:
            report.add(
                "TR-106", "error", "ball/z", f"ball height must be >= 0, got {frame.ball.z}"
            )
        _check_xy(report, "TR-105", "ball", frame.ball.x, frame.ball.y, pitch)
    _flag01(report, "TR-110", "ball_status", frame.ball_status)

    if state is not None:
        if not state.informed_ball_flags:
            state.informed_ball_flags = True
            if frame.ball_status is None:
                report.add(
                    "TR-109",
                    "info",
                    "ball_status",
                    "ball in/out-of-play status not provided for this stream",
                )
            if frame.ball_poss_team_id is None:
                report.add(
                    "TR-109",
                    "info",
                    "ball_poss_team_id",
                    "ball possession team not provided for this stream",
                )
        if frame.period is not None and frame.frame_id is not None:
            if frame.period != state.current_period:
                if frame.period in state.seen_periods:
                    report.add(
                        "TR-111",
                        "error",
                        "period",
                        f"period {frame.period!r} resumed after a later period",
                    )
                if frame.frame_id != 0:
                    report.add(
                        "TR-103",
                        "error",
                        "frame_id",
                        f"period must start at frame 0, got {frame.frame_id}",
                    )
                state.current_period = frame.period
                state.seen_periods.add(frame.period)
            else:
                if state.last_frame_id is not None:
                    if frame.frame_id <= state.last_frame_id:
                        report.add(
                            "TR-104",
                            "error",
                            "frame_id",
                            f"frame_id {frame.frame_id} does not increase past "
                            f"{state.last_frame_id}",
                        )
                    elif frame.frame_id != state.last_frame_id + 1:
                        report.add(
                            "TR-112",
                            "warning",
                            "frame_id",
                            f"frame gap: {state.last_frame_id} -> {frame.frame_id}",
                        )
            state.last_frame_id = frame.frame_id
    return report


# ---------------------------------------------------------------------------
# Skeletal tracking
# ---------------------------------------------------------------------------


def validate_skeleton_frame(
    frame: SkeletonFrame, meta: MatchMeta | None = None
) -> ValidationReport:
    report = ValidationReport()
    if frame.frame_id is None:
        _missing(report, "SK-001", "frame_id")
    if frame.period is None:
        _missing(report, "SK-002", "period")
    else:
        _enum(report, "SK-011", "period", frame.period, PERIODS)
    if frame.match_id is None:
        _missing(report, "SK-003", "match/id")
    if frame.home_team_id is None:
        _missing(report, "SK-004", "teams/home/id")
    if frame.away_team_id is None:
        _missing(report, "SK-005", "teams/away/id")

    declared: frozenset[str] | None = None
    if meta is not None and meta.limb_nodes_json is not None:
        from . import skeleton

        hierarchy, _ = skeleton.validate_hierarchy_json(meta.limb_nodes_json)
        if hierarchy is not None:
            declared = hierarchy.names()

    for side, players in (("home", frame.home_players), ("away", frame.away_players)):
        for i, p in enumerate(players):
            path = f"teams/{side}/players[{i}]"
            if p.id is None:
                _missing(report, "SK-006", f"{path}/id")
            if p.team_id is None:
                _missing(report, "SK-007", f"{path}/team_id")
            names = set()
            for name, point in p.limbs:
                names.add(name)
                if not _SNAKE_CASE_RE.match(name):
                    report.add(
                        "SK-101",
                        "error",
                        f"{path}/{name}",
                        f"limb name {name!r} does not follow snake_case naming",
                    )
                elif _direction_not_suffix(name):
                    report.add(
                        "SK-104",
                        "warning",
                        f"{path}/{name}",
                        "direction indicator should be a suffix (e.g. knee_left)",
                    )
                if point.x is None or point.y is None or point.z is None:
                    _missing(report, "SK-010", f"{path}/{name}")
            if declared is not None:
                for extra in sorted(names - declared):
                    report.add(
                        "SK-102",
                        "error",
                        f"{path}/{extra}",
                        f"limb {extra!r} is not in the declared hierarchy",
                    )
                for absent in sorted(declared - names):
                    report.add(
                        "SK-103",
                        "error",
                        path,
                        f"limb {absent!r} missing for player {p.id!r}",
                    )
    return report


def _direction_not_suffix(name: str) -> bool:
    parts = name.split("_")
    return any(part in ("left", "right") for part in parts[:-1])


# ---------------------------------------------------------------------------
# Match meta
# ---------------------------------------------------------------------------


def validate_meta(meta: MatchMeta) -> ValidationReport:
    report = ValidationReport()
    if meta.competition_id is None:
        _missing(report, "MD-001", "competition/id")
    if meta.season_id is None:
        _missing(report, "MD-002", "season/id")
    if meta.match_id is None:
        _missing(report, "MD-003", "match/id")
    if meta.kickoff_time is None:
        _missing(report, "MD-004", "match/kickoff_time")
    if not meta.periods:
        _missing(report, "MD-005", "match/periods")
    for i, period in enumerate(meta.periods):
        _enum(report, "MD-103", f"match/periods[{i}]", period, PERIODS)
    if meta.result.final is None or meta.result.final.home is None or meta.result.final.away is None:
        _missing(report, "MD-006", "match/result/final")
    if meta.has_extratime == 1 and meta.result.extratime is None:
        _missing(report, "MD-007", "match/result/extratime")
    if meta.has_shootout == 1 and meta.result.shootout is None:
        _missing(report, "MD-008", "match/result/shootout")
    if meta.is_neutral is None:
        _missing(report, "MD-009", "match/status/is_neutral")
    if meta.has_extratime is None:
        _missing(report, "MD-010", "match/status/has_extratime")
    if meta.has_shootout is None:
        _missing(report, "MD-011", "match/status/has_shootout")
    _flag01(report, "MD-101", "match/status/is_neutral", meta.is_neutral)
    _flag01(report, "MD-101", "match/status/has_extratime", meta.has_extratime)
    _flag01(report, "MD-101", "match/status/has_shootout", meta.has_shootout)

    _check_period_set(report, meta)
    _check_whistles(report, meta)

    if meta.home_team.id is None:
        _missing(report, "MD-013", "teams/home/id")
    if meta.away_team.id is None:
        _missing(report, "MD-014", "teams/away/id")
    team_ids = {tid for tid in (meta.home_team.id, meta.away_team.id) if tid is not None}
    if (
        meta.result.final is not None
        and meta.result.final.winning_team_id is not None
        and team_ids
        and meta.result.final.winning_team_id not in team_ids
    ):
        report.add(
            "MD-118",
            "error",
            "match/result/final/winning_team_id",
            f"winning_team_id {meta.result.final.winning_team_id!r} is not a roster team",
        )
    _check_rosters(
        report,
        meta.home_team.players,
        meta.away_team.players,
        meta.home_team.id,
        meta.away_team.id,
        roster_rule="MD-015",
        id_rule="MD-016",
        team_rule="MD-017",
        jersey_rule="MD-018",
        starter_rule="MD-019",
        flag_rule="MD-101",
        jersey_min_rule="MD-114",
        jersey_dup_rule="MD-114",
        team_mismatch_rule="MD-115",
        starters_rule="MD-120",
    )
    for side, team in (("home", meta.home_team), ("away", meta.away_team)):
        if team.jersey_colour is not None and not _JERSEY_COLOUR_RE.match(team.jersey_colour):
            report.add(
                "MD-111",
                "error",
                f"teams/{side}/jersey_colour",
                f"{team.jersey_colour!r} is not a #RRGGBB hexadecimal colour code",
            )

    if meta.stadium_id is None:
        _missing(report, "MD-020", "stadium/id")
    pitch = meta.pitch
    if pitch.length is not None and not 0 < pitch.length <= MAX_PITCH_LENGTH:
        report.add(
            "MD-107",
            "warning",
            "stadium/pitch_length",
            f"pitch length {pitch.length} m outside sanity bounds (0, {MAX_PITCH_LENGTH}]",
        )
    if pitch.width is not None and not 0 < pitch.width <= MAX_PITCH_WIDTH:
        report.add(
            "MD-107",
            "warning",
            "stadium/pitch_width",
            f"pitch width {pitch.width} m outside sanity bounds (0, {MAX_PITCH_WIDTH}]",
        )

    if meta.fps_tracking is None:
        _missing(report, "MD-023", "meta/fps_tracking")
    elif meta.fps_tracking <= 0:
        report.add(
            "MD-105",
            "error",
            "meta/fps_tracking",
            f"frame rate must be positive, got {meta.fps_tracking}",
        )
    if meta.limb_tracking is None:
        _missing(report, "MD-024", "meta/limb_tracking")
    _flag01(report, "MD-101", "meta/limb_tracking", meta.limb_tracking)
    if meta.limb_tracking == 1 and meta.limb_nodes_json is None:
        report.add(
            "MD-106",
            "error",
            "meta/limb_nodes",
            "limb_tracking is 1 but no skeletal hierarchy is declared",
        )
    if meta.limb_tracking == 0 and meta.limb_nodes_json is not None:
        report.add(
            "MD-106",
            "error",
            "meta/limb_nodes",
            "skeletal hierarchy declared but limb_tracking is 0",
        )
    if meta.limb_nodes_json is not None:
        from . import skeleton

        _, hierarchy_report = skeleton.validate_hierarchy_json(meta.limb_nodes_json)
        report.merge(hierarchy_report)

    if meta.source_type is None:
        _missing(report, "MD-026", "meta/source_type")
    else:
        _enum(report, "MD-116", "meta/source_type", meta.source_type, SOURCE_TYPES)
    if meta.perspective is None:
        _missing(report, "MD-027", "meta/perspective")
    else:
        _enum(
            report,
            "MD-117",
            "meta/perspective",
            meta.perspective,
            META_PERSPECTIVES,
            severity="warning",
        )

    version = dict(meta.version)
    for key, rule in (("cdf", "MD-028"), ("event", "MD-029"), ("tracking", "MD-030")):
        if version.get(key) is None:
            _missing(report, rule, f"meta/version/{key}")
        elif parse_dotted_version(version[key]) is None:
            report.add(
                "MD-104",
                "error",
                f"meta/version/{key}",
                f"{version[key]!r} is not a dotted numeric version",
            )

    _check_period_details(report, meta, team_ids)
    return report


def _check_period_set(report: ValidationReport, meta: MatchMeta) -> None:
    periods = set(meta.periods)
    if not periods:
        return
    for required in ("first_half", "second_half"):
        if required not in periods:
            report.add(
                "MD-102", "error", "match/periods", f"period {required!r} missing"
            )
    extratime = {"first_half_extratime", "second_half_extratime"}
    if meta.has_extratime == 1 and not extratime <= periods:
        report.add(
            "MD-102",
            "error",
            "match/periods",
            "has_extratime is 1 but extra-time periods are not listed",
        )
    if meta.has_extratime == 0 and periods & extratime:
        report.add(
            "MD-102",
            "error",
            "match/periods",
            "extra-time periods listed but has_extratime is 0",
        )
    if meta.has_shootout == 1 and "shootout" not in periods:
        report.add(
            "MD-102", "error", "match/periods", "has_shootout is 1 but shootout is not listed"
        )
    if meta.has_shootout == 0 and "shootout" in periods:
        report.add(
            "MD-102", "error", "match/periods", "shootout listed but has_shootout is 0"
        )


def _check_whistles(report: ValidationReport, meta: MatchMeta) -> None:
    if not meta.whistles:
        _missing(report, "MD-012", "match/whistles")
        return
    covered: dict[str, set] = {}
    for i, w in enumerate(meta.whistles):
        path = f"match/whistles[{i}]"
        if w.type is None:
            _missing(report, "MD-037", f"{path}/type")
        else:
            _enum(report, "MD-108", f"{path}/type", w.type, WHISTLE_TYPES, severity="warning")
        if w.sub_type is None:
            _missing(report, "MD-038", f"{path}/sub_type")
        else:
            _enum(report, "MD-109", f"{path}/sub_type", w.sub_type, WHISTLE_SUBTYPES)
        if w.time is None:
            _missing(report, "MD-039", f"{path}/time")
        if w.type is not None and w.sub_type in WHISTLE_SUBTYPES:
            covered.setdefault(w.type, set()).add(w.sub_type)
    for period in meta.periods:
        have = covered.get(period, set())
        if have != {"start", "end"}:
            report.add(
                "MD-110",
                "warning",
                "match/whistles",
                f"period {period!r} lacks {sorted({'start', 'end'} - have)} whistle(s)",
            )


def _check_period_details(report: ValidationReport, meta: MatchMeta, team_ids) -> None:
    for i, pd in enumerate(meta.period_details):
        path = f"periods[{i}]"
        if pd.type is not None:
            _enum(report, "MD-103", f"{path}/type", pd.type, PERIODS)
        if pd.time_start is not None and pd.time_end is not None:
            if pd.time_start.instant >= pd.time_end.instant:
                report.add(
                    "MD-112",
                    "error",
                    path,
                    "period time_start is not before time_end",
                )
        sides = {pd.left_team_id, pd.right_team_id} - {None}
        if sides:
            if pd.left_team_id is not None and pd.left_team_id == pd.right_team_id:
                report.add(
                    "MD-113", "error", path, "left_team_id equals right_team_id"
                )
            elif team_ids and not sides <= team_ids:
                report.add(
                    "MD-113",
                    "error",
                    path,
                    f"side team ids {sorted(sides)} are not the roster teams",
                )


# ---------------------------------------------------------------------------
# Video meta
# ---------------------------------------------------------------------------


def validate_video_meta(video: VideoMeta) -> ValidationReport:
    report = ValidationReport()
    # Video meta declares no mandatory fields; absence is a warning.
    presence = (
        ("VD-001", "match_id", video.match_id),
        ("VD-002", "fps", video.fps),
        ("VD-003", "resolution", video.resolution),
        ("VD-004", "operation_type", video.operation_type),
        ("VD-005", "perspective", video.perspective),
    )
    for rule, path, value in presence:
        if value is None:
            report.add(rule, "warning", path, "field not provided")
    if not video.whistles:
        report.add("VD-006", "warning", "whistles", "field not provided")
    if video.fps is not None and video.fps <= 0:
        report.add("VD-101", "error", "fps", f"frame rate must be positive, got {video.fps}")
    if video.resolution is not None and not _RESOLUTION_RE.match(video.resolution):
        report.add(
            "VD-102",
            "error",
            "resolution",
            f"{video.resolution!r} does not match <width>x<height>",
        )
    _enum(report, "VD-103", "operation_type", video.operation_type, OPERATION_TYPES)
    _enum(report, "VD-104", "perspective", video.perspective, VIDEO_PERSPECTIVES)
    for i, w in enumerate(video.whistles):
        path = f"whistles[{i}]"
        if w.type is None:
            report.add("VD-007", "warning", f"{path}/type", "field not provided")
        else:
            _enum(report, "VD-106", f"{path}/type", w.type, WHISTLE_TYPES, severity="warning")
        if w.sub_type is None:
            report.add("VD-008", "warning", f"{path}/sub_type", "field not provided")
        else:
            _enum(report, "VD-105", f"{path}/sub_type", w.sub_type, WHISTLE_SUBTYPES)
        if w.time is None:
            report.add("VD-009", "warning", f"{path}/time", "field not provided")
    return report


_DOC_VALIDATORS = {
    "match_sheet": validate_match_sheet,
    "meta": validate_meta,
    "video_meta": validate_video_meta,
}


def validate_document(doc, doc_kind: str) -> ValidationReport:
    """Dispatch to the validator for a parsed document model."""
    return _DOC_VALIDATORS[doc_kind](doc)
