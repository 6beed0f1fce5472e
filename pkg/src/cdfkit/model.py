"""Typed data model for the five CDF document/stream kinds.

Every value is an immutable dataclass so parsed documents can be shared
freely between workers. Closed enumerations are module-level frozensets;
membership checks against them are the basis of the rule engine.

Missing values are represented as ``None`` after decoding, regardless of
whether the input used the null or the sentinel convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone


class CdfError(Exception):
    """Base class for all cdfkit errors."""


class CdfDomainError(CdfError):
    """A value outside the domain of an operation (not a data finding)."""


class CdfEncodingError(CdfError):
    """Input bytes are not valid UTF-8."""

    def __init__(self, message: str, byte_offset: int) -> None:
        super().__init__(message)
        self.byte_offset = byte_offset


class CdfStructureError(CdfError):
    """Top-level document structure is unusable (e.g. not a JSON object)."""


class CdfSerializationError(CdfError):
    """A model value cannot be represented in the output format."""


# ---------------------------------------------------------------------------
# Closed enumerations
# ---------------------------------------------------------------------------

#: Canonical internal period names. Event and tracking tables spell the
#: extra-time halves without the "time" suffix; those aliases are accepted
#: on input and re-emitted when writing those tables.
PERIODS: tuple[str, ...] = (
    "first_half",
    "second_half",
    "first_half_extratime",
    "second_half_extratime",
    "shootout",
)

PERIOD_ALIASES: dict[str, str] = {
    "first_half_extra": "first_half_extratime",
    "second_half_extra": "second_half_extratime",
}

#: Spelling used by the event/tracking tables, keyed by canonical name.
PERIOD_STREAM_SPELLING: dict[str, str] = {
    "first_half_extratime": "first_half_extra",
    "second_half_extratime": "second_half_extra",
}

EVENT_TYPES: frozenset[str] = frozenset({"shot", "pass", "referee", "misc"})

#: ``None`` denotes the "no specific subtype" option, spelled "None" on the
#: wire under the sentinel convention and null under the null convention.
EVENT_SUBTYPES: dict[str, frozenset] = {
    "shot": frozenset({None, "penalty_kick", "free_kick", "corner_kick"}),
    "pass": frozenset(
        {None, "throw_in", "free_kick", "corner_kick", "goal_kick", "kick_off"}
    ),
    "referee": frozenset(
        {"substitution", "final_whistle", "foul", "caution", "offside"}
    ),
    "misc": frozenset({"other_ball_action", "chance_without_shot", "tackle"}),
}

EVENT_OUTCOMES: dict[str, frozenset] = {
    "shot": frozenset(
        {"successful", "saved", "blocked", "wide", "woodwork", "own_goal"}
    ),
    "pass": frozenset({"successful", "out_of_play", "intercepted"}),
    "referee": frozenset({"successful", "unsuccessful"}),
    "misc": frozenset({"successful", "unsuccessful"}),
}

BODY_PARTS: frozenset[str] = frozenset(
    {"left_foot", "right_foot", "foot", "head", "other"}
)

CARD_TYPES: frozenset[str] = frozenset(
    {"yellow_card", "red_card", "second_yellow_card"}
)

#: Documented extensible whistle vocabulary: the period names plus known
#: interruption kinds. Unknown types produce a warning, not an error.
WHISTLE_TYPES: frozenset[str] = frozenset(PERIODS) | frozenset(
    {"weather_delay", "health_delay", "crowd_delay", "floodlight_delay", "var_delay"}
)

WHISTLE_SUBTYPES: frozenset[str] = frozenset({"start", "end"})

SOURCE_TYPES: frozenset[str] = frozenset({"live", "post_match"})

#: Meta camera perspectives are given by example in the schema, so unknown
#: values are warnings. Video perspectives are a closed list.
META_PERSPECTIVES: frozenset[str] = frozenset(
    {"in_stadium", "broadcast", "tactical", "tactical_wide"}
)

VIDEO_PERSPECTIVES: frozenset[str] = frozenset(
    {
        "tactical_wide",
        "camera_1",
        "high_behind_right",
        "high_behind_left",
        "cable_camera",
        "16m_right",
        "16m_left",
        "broadcast",
    }
)

OPERATION_TYPES: frozenset[str] = frozenset({"manual", "automated"})

#: Sanity bounds for pitch dimensions (warning level).
MAX_PITCH_LENGTH = 130.0
MAX_PITCH_WIDTH = 100.0


def allowed_subtypes(event_type: str) -> frozenset:
    """Closed set of subtype names for an event type.

    ``None`` in the returned set stands for the explicit "no subtype"
    option available for shots and passes.
    """
    try:
        return EVENT_SUBTYPES[event_type]
    except KeyError:
        raise CdfDomainError(f"unknown event type: {event_type!r}") from None


def allowed_outcomes(event_type: str) -> frozenset:
    """Closed set of detailed outcome names for an event type."""
    try:
        return EVENT_OUTCOMES[event_type]
    except KeyError:
        raise CdfDomainError(f"unknown event type: {event_type!r}") from None


def canonical_period(name: str) -> str | None:
    """Map a period spelling (canonical or table alias) onto the canonical
    five-value set, or ``None`` if the name is not a period at all."""
    if name in PERIODS:
        return name
    return PERIOD_ALIASES.get(name)


# ---------------------------------------------------------------------------
# Validation reporting
# ---------------------------------------------------------------------------

SEVERITIES: tuple[str, ...] = ("info", "warning", "error")
_SEVERITY_RANK = {"info": 0, "warning": 1, "error": 2}


@dataclass(frozen=True, slots=True)
class ValidationFinding:
    """One rule violation (or note) located in a document."""

    rule_id: str
    severity: str
    path: str
    message: str


class ValidationReport:
    """Ordered collection of findings.

    Findings are kept in document order; merging reports concatenates in
    component order, which keeps output deterministic across runs.
    """

    def __init__(self) -> None:
        self.findings: list[ValidationFinding] = []

    def add(self, rule_id: str, severity: str, path: str, message: str) -> None:
        if severity not in _SEVERITY_RANK:
            raise CdfDomainError(f"unknown severity: {severity!r}")
        self.findings.append(ValidationFinding(rule_id, severity, path, message))

    def merge(self, other: "ValidationReport") -> None:
        self.findings.extend(other.findings)

    def count(self, severity: str) -> int:
        return sum(1 for f in self.findings if f.severity == severity)

    @property
    def error_count(self) -> int:
        return self.count("error")

    @property
    def warning_count(self) -> int:
        return self.count("warning")

    @property
    def info_count(self) -> int:
        return self.count("info")

    @property
    def has_errors(self) -> bool:
        return self.error_count > 0

    def max_severity(self) -> str | None:
        if not self.findings:
            return None
        return max((f.severity for f in self.findings), key=_SEVERITY_RANK.__getitem__)

    def errors(self) -> list[ValidationFinding]:
        return [f for f in self.findings if f.severity == "error"]

    def by_rule(self, rule_id: str) -> list[ValidationFinding]:
        return [f for f in self.findings if f.rule_id == rule_id]

    def to_obj(self) -> dict:
        return {
            "findings": [
                {
                    "rule_id": f.rule_id,
                    "severity": f.severity,
                    "path": f.path,
                    "message": f.message,
                }
                for f in self.findings
            ],
            "counts": {
                "error": self.error_count,
                "warning": self.warning_count,
                "info": self.info_count,
            },
        }

    def to_text(self) -> str:
        if not self.findings:
            return "no findings\n"
        width = max(len(f.rule_id) for f in self.findings)
        lines = [
            f"{f.severity.upper():7s} {f.rule_id:{width}s} {f.path}: {f.message}"
            for f in self.findings
        ]
        lines.append(
            f"total: {self.error_count} error(s), "
            f"{self.warning_count} warning(s), {self.info_count} info"
        )
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return (
            f"<ValidationReport errors={self.error_count} "
            f"warnings={self.warning_count} info={self.info_count}>"
        )


# ---------------------------------------------------------------------------
# Scalars
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class CdfTimestamp:
    """A UTC point in time plus the text it was read from.

    Equality and hashing use only the instant, so re-reading a canonically
    emitted timestamp compares equal to the original.
    """

    instant: datetime
    original_text: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.instant.tzinfo is None:
            object.__setattr__(
                self, "instant", self.instant.replace(tzinfo=timezone.utc)
            )
        else:
            object.__setattr__(self, "instant", self.instant.astimezone(timezone.utc))

    def canonical_text(self) -> str:
        # Offset-less by convention; all CDF times are UTC.
        return self.instant.strftime("%Y-%m-%dT%H:%M:%S")

    def seconds_until(self, other: "CdfTimestamp") -> float:
        return (other.instant - self.instant).total_seconds()


@dataclass(frozen=True, slots=True)
class PitchGeometry:
    """Pitch dimensions in meters; either may be unknown (``None``)."""

    length: float | None = None
    width: float | None = None

    @property
    def known(self) -> bool:
        return self.length is not None and self.width is not None


@dataclass(frozen=True, slots=True)
class Whistle:
    type: str | None
    sub_type: str | None
    time: CdfTimestamp | None


# ---------------------------------------------------------------------------
# Match sheet
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Score:
    home: int | None
    away: int | None


@dataclass(frozen=True, slots=True)
class FinalScore:
    home: int | None
    away: int | None
    winning_team_id: str | None


@dataclass(frozen=True, slots=True)
class ResultBreakdown:
    """Score components per match phase.

    ``final`` is the score after regular time, excluding both extra-time
    and shootout goals; the extra-time components carry the cumulative
    score including regular time.
    """

    final: FinalScore | None = None
    first_half: Score | None = None
    second_half: Score | None = None
    first_extratime: Score | None = None
    second_extratime: Score | None = None
    shootout: Score | None = None


@dataclass(frozen=True, slots=True)
class PlayerEntry:
    id: str | None
    team_id: str | None
    jersey_number: int | None
    is_starter: int | None
    extras: tuple = ()  # sorted (key, json-text) pairs of unknown fields


@dataclass(frozen=True, slots=True)
class GoalEvent:
    goal_time: CdfTimestamp | None
    goal_player_id: str | None
    goal_assist_id: str | None  # nullable: own goals and solo goals
    is_own_goal: int | None
    is_penalty: int | None


@dataclass(frozen=True, slots=True)
class SubstitutionEvent:
    in_time: CdfTimestamp | None
    in_player_id: str | None
    out_time: CdfTimestamp | None
    out_player_id: str | None


@dataclass(frozen=True, slots=True)
class CardEvent:
    card_time: CdfTimestamp | None
    card_player_id: str | None
    card_type: str | None


@dataclass(frozen=True, slots=True)
class MatchSheet:
    match_id: str | None
    is_neutral: int | None
    has_extratime: int | None
    has_shootout: int | None
    result: ResultBreakdown
    home_team_id: str | None
    away_team_id: str | None
    home_players: tuple[PlayerEntry, ...]
    away_players: tuple[PlayerEntry, ...]
    referees: tuple[str, ...]
    goals: tuple[GoalEvent, ...]
    substitutions: tuple[SubstitutionEvent, ...]
    cards: tuple[CardEvent, ...]
    vendor: str | None
    extras: tuple = ()

    @property
    def players(self) -> tuple[PlayerEntry, ...]:
        return self.home_players + self.away_players


# ---------------------------------------------------------------------------
# Events
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class EventTracking:
    """Optional per-event synchronization block."""

    frame_id_1: int | None = None
    frame_id_2: int | None = None
    x_player_1: float | None = None
    y_player_1: float | None = None
    x_player_2: float | None = None
    y_player_2: float | None = None


@dataclass(frozen=True, slots=True)
class EventMetrics:
    xg: float | None = None
    xpass: float | None = None
    packing_traditional: int | None = None
    packing_horizontal: int | None = None


@dataclass(frozen=True, slots=True)
class EventRecord:
    match_id: str | None
    is_synced: int | None
    event_id: str | None
    time: CdfTimestamp | None
    period: str | None
    type: str | None
    sub_type: str | None  # None means the explicit "no subtype" option
    outcome: int | None
    outcome_detailed: str | None
    player_id_1: str | None
    team_id_1: str | None
    player_id_2: str | None
    team_id_2: str | None
    x_1: float | None
    y_1: float | None
    x_2: float | None
    y_2: float | None
    body_part_1: str | None
    body_part_2: str | None
    tracking: EventTracking | None = None
    metrics: EventMetrics | None = None
    extras: tuple = ()


# ---------------------------------------------------------------------------
# Tracking
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class PlayerPosition:
    id: str | None
    team_id: str | None
    x: float | None
    y: float | None
    z: float | None = None
    vel: float | None = None
    acc: float | None = None
    dist: float | None = None
    is_visible: int | None = None
    lat: float | None = None
    long: float | None = None


@dataclass(frozen=True, slots=True)
class RefereePosition:
    id: str | None
    x: float | None = None
    y: float | None = None
    z: float | None = None


@dataclass(frozen=True, slots=True)
class BallPosition:
    x: float | None
    y: float | None
    z: float | None


@dataclass(frozen=True, slots=True)
class TrackingFrame:
    frame_id: int | None
    period: str | None
    match_id: str | None
    home_team_id: str | None
    away_team_id: str | None
    home_players: tuple[PlayerPosition, ...]
    away_players: tuple[PlayerPosition, ...]
    ball: BallPosition | None
    ball_status: int | None = None
    ball_poss_team_id: str | None = None
    referees: tuple[RefereePosition, ...] = ()
    extras: tuple = ()

    @property
    def players(self) -> tuple[PlayerPosition, ...]:
        return self.home_players + self.away_players


@dataclass(frozen=True, slots=True)
class LimbPoint:
    x: float | None
    y: float | None
    z: float | None


@dataclass(frozen=True, slots=True)
class SkeletonPlayer:
    id: str | None
    team_id: str | None
    limbs: tuple[tuple[str, LimbPoint], ...]  # ordered (name, point) pairs

    def limb_names(self) -> frozenset[str]:
        return frozenset(name for name, _ in self.limbs)


@dataclass(frozen=True, slots=True)
class SkeletonFrame:
    frame_id: int | None
    period: str | None
    match_id: str | None
    home_team_id: str | None
    away_team_id: str | None
    home_players: tuple[SkeletonPlayer, ...]
    away_players: tuple[SkeletonPlayer, ...]
    extras: tuple = ()

    @property
    def players(self) -> tuple[SkeletonPlayer, ...]:
        return self.home_players + self.away_players


# ---------------------------------------------------------------------------
# Match meta
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class PeriodDetail:
    """Optional per-period block (timing, frames, actual sides)."""

    type: str | None
    time_start: CdfTimestamp | None = None
    time_end: CdfTimestamp | None = None
    frame_id_start: int | None = None
    frame_id_end: int | None = None
    left_team_id: str | None = None
    right_team_id: str | None = None


@dataclass(frozen=True, slots=True)
class MetaResult:
    final: FinalScore | None = None
    extratime: Score | None = None
    shootout: Score | None = None


@dataclass(frozen=True, slots=True)
class TeamInfo:
    id: str | None
    name: str | None = None
    jersey_colour: str | None = None
    players: tuple[PlayerEntry, ...] = ()


@dataclass(frozen=True, slots=True)
class MatchMeta:
    competition_id: str | None
    season_id: str | None
    match_id: str | None
    kickoff_time: CdfTimestamp | None
    periods: tuple[str, ...]
    result: MetaResult
    is_neutral: int | None
    has_extratime: int | None
    has_shootout: int | None
    whistles: tuple[Whistle, ...]
    home_team: TeamInfo
    away_team: TeamInfo
    referees: tuple[str, ...]
    stadium_id: str | None
    pitch: PitchGeometry
    fps_tracking: int | None
    limb_tracking: int | None
    limb_nodes_json: str | None = None  # raw node array as canonical JSON text
    source_type: str | None = None
    perspective: str | None = None
    version: tuple = ()  # sorted (component, version-text) pairs
    vendors: tuple = ()
    id_space: tuple = ()
    period_details: tuple[PeriodDetail, ...] = ()
    extras: tuple = ()

    def version_of(self, component: str) -> str | None:
        return dict(self.version).get(component)

    def vendor_of(self, component: str) -> str | None:
        return dict(self.vendors).get(component)

    def id_space_of(self, component: str) -> str | None:
        return dict(self.id_space).get(component)

    @property
    def players(self) -> tuple[PlayerEntry, ...]:
        return self.home_team.players + self.away_team.players


@dataclass(frozen=True, slots=True)
class VideoMeta:
    match_id: str | None
    fps: int | None
    resolution: str | None
    operation_type: str | None
    perspective: str | None
    whistles: tuple[Whistle, ...]
    extras: tuple = ()


def parse_dotted_version(text: str) -> tuple[int, ...] | None:
    """Parse a dotted numeric version such as "0.1.0"; ``None`` if invalid."""
    parts = text.split(".")
    if not parts:
        return None
    out = []
    for part in parts:
        if not part.isdigit():
            return None
        out.append(int(part))
    return tuple(out)
