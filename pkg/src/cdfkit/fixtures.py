"""Deterministic generation of conformant and deliberately-broken bundles.

``generate_serialized`` produces the raw JSON form of a full bundle from
a seed; the same spec always yields byte-identical output. Unmutated
bundles validate with zero error findings. ``mutate`` applies exactly
one cataloged defect, each mapped to the rule id it must trigger - the
basis of the rule-coverage tests.

Player motion is a per-player mean-reverting random walk (pulled back
toward a home anchor each step) clipped to the pitch, which keeps
positions bounded and speeds plausible without simulating tactics.
"""

from __future__ import annotations

import copy
import random
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone
from pathlib import Path

from . import bundle as bundle_mod
from .model import CdfDomainError

PITCH_LENGTH = 105.0
PITCH_WIDTH = 68.0

_KICKOFF = datetime(2024, 8, 29, 14, 0, 0, tzinfo=timezone.utc)
_HALF_TIME_BREAK = timedelta(minutes=15)

_LIMB_NAMES = (
    "hip",
    "spine",
    "hip_left",
    "hip_right",
    "head",
    "leg_left",
    "leg_right",
    "arm_left",
    "arm_right",
)


@dataclass(frozen=True)
class FixtureSpec:
    """Knobs for one synthetic match bundle."""

    seed: int = 0
    fps: int = 25
    minutes: float = 1.0  # playing time per half
    squad_size: int = 13  # 11 starters plus bench
    event_count: int = 12
    include_meta: bool = True
    include_events: bool = True
    include_tracking: bool = True
    include_skeletal: bool = False
    include_video: bool = True
    skeletal_frames: int = 2

    def __post_init__(self) -> None:
        if self.squad_size < 11:
            raise CdfDomainError("squad_size must be at least 11")
        if self.fps <= 0 or self.minutes <= 0:
            raise CdfDomainError("fps and minutes must be positive")
        if self.include_skeletal and not self.include_meta:
            raise CdfDomainError("skeletal data requires match meta")
        if (self.include_events or self.include_tracking) and not self.include_meta:
            raise CdfDomainError("events and tracking require match meta")

    @property
    def frames_per_half(self) -> int:
        return int(round(self.minutes * 60)) * self.fps

    @property
    def half_duration(self) -> timedelta:
        return timedelta(seconds=int(round(self.minutes * 60)))


def _ts(dt: datetime) -> str:
    return dt.strftime("%Y-%m-%dT%H:%M:%S")


def _match_id(seed: int) -> str:
    return f"match-{seed:08x}"


def _period_windows(spec: FixtureSpec) -> dict[str, tuple[datetime, datetime]]:
    first_start = _KICKOFF
    first_end = first_start + spec.half_duration
    second_start = first_end + _HALF_TIME_BREAK
    second_end = second_start + spec.half_duration
    return {
        "first_half": (first_start, first_end),
        "second_half": (second_start, second_end),
    }


def _rosters(rng: random.Random, spec: FixtureSpec):
    teams = {}
    for side, team_id in (("home", "team-home"), ("away", "team-away")):
        players = []
        for i in range(spec.squad_size):
            players.append(
                {
                    "id": f"{side[0]}{i + 1:02d}",
                    "team_id": team_id,
                    "jersey_number": i + 1,
                    "is_starter": 1 if i < 11 else 0,
                }
            )
        teams[side] = (team_id, players)
    return teams


def _whistles(windows) -> list[dict]:
    out = []
    for period in ("first_half", "second_half"):
        start, end = windows[period]
        out.append({"type": period, "sub_type": "start", "time": _ts(start)})
        out.append({"type": period, "sub_type": "end", "time": _ts(end)})
    return out


def generate_serialized(spec: FixtureSpec) -> dict:
    """Build the raw JSON form of a bundle: document objects plus record
    lists for each included stream. Deterministic in the spec."""
    rng = random.Random(spec.seed)
    match_id = _match_id(spec.seed)
    windows = _period_windows(spec)
    teams = _rosters(rng, spec)
    home_id, home_players = teams["home"]
    away_id, away_players = teams["away"]

    goals = _generate_goals(rng, windows, home_players, away_players)
    first_half_score = _tally(goals, home_id, cutoff=windows["first_half"][1])
    final_score = _tally(goals, home_id)
    if final_score[0] > final_score[1]:
        winner = home_id
    elif final_score[1] > final_score[0]:
        winner = away_id
    else:
        winner = None

    result = {
        "final": {
            "home": final_score[0],
            "away": final_score[1],
            "winning_team_id": winner,
        },
        "first_half": {"home": first_half_score[0], "away": first_half_score[1]},
        "second_half": {"home": final_score[0], "away": final_score[1]},
    }

    sub_in = home_players[11]["id"] if spec.squad_size > 11 else None
    sub_out = home_players[10]["id"]
    second_start = windows["second_half"][0]
    substitutions = []
    if sub_in is not None:
        substitutions.append(
            {
                "in_time": _ts(second_start),
                "in_player_id": sub_in,
                "out_time": _ts(second_start),
                "out_player_id": sub_out,
            }
        )
    cards = [
        {
            "card_time": _ts(windows["first_half"][0] + spec.half_duration / 2),
            "card_player_id": away_players[3]["id"],
            "card_type": "yellow_card",
        }
    ]

    match_sheet = {
        "match": {
            "id": match_id,
            "status": {"is_neutral": 0, "has_extratime": 0, "has_shootout": 0},
        },
        "result": result,
        "teams": {
            "home": {"id": home_id, "players": home_players},
            "away": {"id": away_id, "players": away_players},
        },
        "referees": [{"id": "ref-01"}, {"id": "ref-02"}],
        "events": {"goals": goals, "substitutions": substitutions, "cards": cards},
        "meta": {"vendor": "vendor_x"},
    }

    serialized: dict = {"match_sheet": match_sheet}

    if spec.include_meta:
        serialized["meta"] = _generate_meta(
            spec, match_id, windows, result, teams
        )
    if spec.include_video:
        serialized["video_meta"] = {
            "match_id": match_id,
            "fps": 50,
            "resolution": "1920x1080",
            "operation_type": "manual",
            "perspective": "broadcast",
            "whistles": _whistles(windows),
        }
    if spec.include_events:
        serialized["events"] = _generate_events(
            rng, spec, match_id, windows, teams
        )
    if spec.include_tracking:
        serialized["tracking"] = list(iter_tracking_objects(spec))
    if spec.include_skeletal:
        serialized["skeletal"] = _generate_skeletal(spec, match_id, teams)
    return serialized


def _generate_meta(spec, match_id, windows, result, teams) -> dict:
    # Fresh roster copies: the meta and the match sheet must stay
    # independently mutable (the mutation catalog relies on it).
    home_id, home_players = teams["home"]
    away_id, away_players = teams["away"]
    home_players = copy.deepcopy(home_players)
    away_players = copy.deepcopy(away_players)
    meta = {
        "competition": {"id": "comp-01"},
        "season": {"id": "season-2024"},
        "match": {
            "id": match_id,
            "kickoff_time": _ts(_KICKOFF),
            "periods": ["first_half", "second_half"],
            "status": {"is_neutral": 0, "has_extratime": 0, "has_shootout": 0},
            "whistles": _whistles(windows),
            "result": {"final": dict(result["final"])},
        },
        "stadium": {
            "id": "stadium-01",
            "pitch_length": PITCH_LENGTH,
            "pitch_width": PITCH_WIDTH,
        },
        "teams": {
            "home": {
                "id": home_id,
                "name": "Home FC",
                "jersey_colour": "#1144AA",
                "players": home_players,
            },
            "away": {
                "id": away_id,
                "name": "Away FC",
                "jersey_colour": "#AA2211",
                "players": away_players,
            },
        },
        "referees": [{"id": "ref-01"}, {"id": "ref-02"}],
        "periods": [
            {
                "type": period,
                "time_start": _ts(start),
                "time_end": _ts(end),
                "left_team_id": home_id if period == "first_half" else away_id,
                "right_team_id": away_id if period == "first_half" else home_id,
            }
            for period, (start, end) in windows.items()
        ],
        "meta": {
            "fps_tracking": spec.fps,
            "limb_tracking": 1 if spec.include_skeletal else 0,
            "source_type": "post_match",
            "perspective": "in_stadium",
            "version": {"cdf": "0.1.0", "event": "1.0", "tracking": "1.0"},
            "vendors": {
                "event": "vendor_x",
                "tracking": "vendor_x",
                "video": "vendor_x",
            },
            "id_space": {
                "match_data": "vendor_x",
                "event": "vendor_x",
                "tracking": "vendor_x",
            },
        },
    }
    if spec.include_skeletal:
        meta["meta"]["limb_nodes"] = default_limb_nodes()
    return meta


def default_limb_nodes() -> list[dict]:
    """A nine-joint T-pose hierarchy rooted at the hip."""
    identity = [0.0, 0.0, 0.0, 1.0]
    return [
        {"name": "hip", "translation": [0, 0, 0], "rotation": identity, "children": [1, 2, 3]},
        {"name": "spine", "translation": [0, 1, 0], "rotation": identity, "children": [4, 7, 8]},
        {"name": "hip_left", "translation": [-1, 0, 0], "rotation": identity, "children": [5]},
        {"name": "hip_right", "translation": [1, 0, 0], "rotation": identity, "children": [6]},
        {"name": "head", "translation": [0, 1, 0], "rotation": identity, "children": []},
        {"name": "leg_left", "translation": [-1, -1, 0], "rotation": identity, "children": []},
        {"name": "leg_right", "translation": [1, -1, 0], "rotation": identity, "children": []},
        {"name": "arm_left", "translation": [-1, 1, 0], "rotation": identity, "children": []},
        {"name": "arm_right", "translation": [1, 1, 0], "rotation": identity, "children": []},
    ]


def _generate_goals(rng, windows, home_players, away_players) -> list[dict]:
    goals = []
    for side_players, count in (
        (home_players, rng.randint(1, 2)),  # at least one goal for the catalog
        (away_players, rng.randint(0, 2)),
    ):
        for _ in range(count):
            period = rng.choice(("first_half", "second_half"))
            start, end = windows[period]
            offset = rng.uniform(5, max(6, (end - start).total_seconds() - 5))
            scorer = rng.choice(side_players[:11])
            assist = rng.choice(side_players[:11])
            goals.append(
                {
                    "goal_time": _ts(start + timedelta(seconds=int(offset))),
                    "goal_player_id": scorer["id"],
                    "goal_assist_id": assist["id"] if assist["id"] != scorer["id"] else None,
                    "is_own_goal": 0,
                    "is_penalty": 0,
                }
            )
    goals.sort(key=lambda g: g["goal_time"])
    return goals


def _tally(goals, home_id, cutoff=None):
    home = away = 0
    for goal in goals:
        if cutoff is not None and goal["goal_time"] > _ts(cutoff):
            continue
        if goal["goal_player_id"].startswith("h"):
            home += 1
        else:
            away += 1
    return home, away


_EVENT_SHAPES = (
    ("pass", "kick_off", 1, "successful"),
    ("shot", None, 0, "wide"),
    ("pass", None, 1, "successful"),
    ("pass", "throw_in", 0, "out_of_play"),
    ("shot", "free_kick", 0, "saved"),
    ("misc", "tackle", 1, "successful"),
    ("pass", "corner_kick", 0, "intercepted"),
    ("referee", "foul", 1, "successful"),
)


def _generate_events(rng, spec, match_id, windows, teams) -> list[dict]:
    home_id, home_players = teams["home"]
    away_id, away_players = teams["away"]
    is_synced = 1 if spec.include_tracking else 0
    seconds = int(spec.half_duration.total_seconds())
    events = []
    for i in range(spec.event_count):
        etype, sub_type, outcome, detailed = _EVENT_SHAPES[i % len(_EVENT_SHAPES)]
        period = "first_half" if i < spec.event_count / 2 else "second_half"
        start, _end = windows[period]
        offset = min(int(i * max(1, seconds // max(1, spec.event_count))), seconds)
        side = (home_id, home_players) if i % 2 == 0 else (away_id, away_players)
        actor = rng.choice(side[1][:11])
        partner = rng.choice(side[1][:11])
        event = {
            "match": {"id": match_id},
            "meta": {"is_synced": is_synced},
            "event": {
                "id": f"ev-{spec.seed:04x}-{i:03d}",
                "time": _ts(start + timedelta(seconds=offset)),
                "period": period,
                "type": etype,
                "sub_type": sub_type,
                "outcome": outcome,
                "outcome_detailed": detailed,
                "player_id_1": actor["id"],
                "team_id_1": side[0],
                "player_id_2": partner["id"] if etype == "pass" else None,
                "team_id_2": side[0] if etype == "pass" else None,
                "x_1": round(rng.uniform(-50.0, 50.0), 3),
                "y_1": round(rng.uniform(-32.0, 32.0), 3),
                "x_2": round(rng.uniform(-50.0, 50.0), 3) if etype == "pass" else None,
                "y_2": round(rng.uniform(-32.0, 32.0), 3) if etype == "pass" else None,
                "body_part_1": rng.choice(("left_foot", "right_foot", "head")),
                "body_part_2": None,
            },
        }
        if is_synced:
            frame = min(
                offset * spec.fps, max(0, spec.frames_per_half - 1)
            )
            event["tracking"] = {"frame_id_1": frame, "frame_id_2": None}
        events.append(event)
    return events


class _Walker:
    """Mean-reverting planar walk clipped to the pitch interior."""

    __slots__ = ("rng", "x", "y", "ax", "ay")

    def __init__(self, rng: random.Random, anchor_x: float, anchor_y: float):
        self.rng = rng
        self.ax = anchor_x
        self.ay = anchor_y
        self.x = anchor_x
        self.y = anchor_y

    def step(self) -> tuple[float, float]:
        pull = 0.05
        self.x += pull * (self.ax - self.x) + self.rng.uniform(-0.2, 0.2)
        self.y += pull * (self.ay - self.y) + self.rng.uniform(-0.2, 0.2)
        self.x = min(50.0, max(-50.0, self.x))
        self.y = min(32.0, max(-32.0, self.y))
        return round(self.x, 3), round(self.y, 3)


def iter_tracking_objects(spec: FixtureSpec):
    """Lazily generate raw tracking-frame objects for a spec.

    Frame ids restart at 0 each period and increase by exactly 1; all
    positions stay within the pitch, so the stream validates clean.
    """
    rng = random.Random(f"{spec.seed}-tracking")
    match_id = _match_id(spec.seed)
    teams = _rosters(rng, spec)
    walkers = {}
    for side in ("home", "away"):
        team_id, players = teams[side]
        sign = -1.0 if side == "home" else 1.0
        walkers[side] = [
            (
                player,
                _Walker(
                    rng,
                    sign * rng.uniform(5.0, 45.0),
                    rng.uniform(-28.0, 28.0),
                ),
            )
            for player in players[:11]
        ]
    ball = _Walker(rng, 0.0, 0.0)
    home_id = teams["home"][0]
    away_id = teams["away"][0]

    for period in ("first_half", "second_half"):
        for frame_id in range(spec.frames_per_half):
            sides = {}
            for side in ("home", "away"):
                positions = []
                for player, walker in walkers[side]:
                    x, y = walker.step()
                    positions.append(
                        {
                            "id": player["id"],
                            "team_id": player["team_id"],
                            "x": x,
                            "y": y,
                        }
                    )
                sides[side] = positions
            bx, by = ball.step()
            yield {
                "frame_id": frame_id,
                "period": period,
                "match": {"id": match_id},
                "teams": {
                    "home": {"id": home_id, "players": sides["home"]},
                    "away": {"id": away_id, "players": sides["away"]},
                },
                "ball": {"x": bx, "y": by, "z": round(rng.uniform(0.0, 2.0), 3)},
                "ball_status": 1,
                "ball_poss_team_id": home_id if frame_id % 2 == 0 else away_id,
            }


def _generate_skeletal(spec, match_id, teams) -> list[dict]:
    rng = random.Random(f"{spec.seed}-skeletal")
    frames = []
    home_id, home_players = teams["home"]
    away_id, away_players = teams["away"]
    for frame_id in range(spec.skeletal_frames):
        def player_obj(player):
            cx = round(rng.uniform(-45.0, 45.0), 3)
            cy = round(rng.uniform(-28.0, 28.0), 3)
            obj = {"id": player["id"], "team_id": player["team_id"]}
            for j, limb in enumerate(_LIMB_NAMES):
                obj[limb] = {
                    "x": round(cx + 0.1 * j, 3),
                    "y": round(cy + 0.05 * j, 3),
                    "z": round(0.1 + 0.1 * j, 3),
                }
            return obj

        frames.append(
            {
                "frame_id": frame_id,
                "period": "first_half",
                "match": {"id": match_id},
                "teams": {
                    "home": {"id": home_id, "players": [player_obj(p) for p in home_players[:11]]},
                    "away": {"id": away_id, "players": [player_obj(p) for p in away_players[:11]]},
                },
            }
        )
    return frames


def generate_bundle(spec: FixtureSpec) -> bundle_mod.MatchBundle:
    """Generate and load a bundle ready for validation."""
    return bundle_mod.load_serialized(generate_serialized(spec))


def write_bundle(spec: FixtureSpec, out_dir) -> dict:
    """Write a fixture to disk using the conventional file names; returns
    a map of component kind to path."""
    import json

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    serialized = generate_serialized(spec)
    written = {}
    for kind, name in bundle_mod.DIRECTORY_LAYOUT.items():
        if kind not in serialized:
            continue
        path = out_dir / name
        payload = serialized[kind]
        if name.endswith(".jsonl"):
            with open(path, "wb") as sink:
                for obj in payload:
                    sink.write(
                        json.dumps(obj, ensure_ascii=False, separators=(",", ":")).encode("utf-8")
                        + b"\n"
                    )
        else:
            path.write_text(
                json.dumps(payload, ensure_ascii=False, indent=2) + "\n",
                encoding="utf-8",
            )
        written[kind] = path
    return written


# ---------------------------------------------------------------------------
# Mutation catalog
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Mutation:
    """One deliberate single-field defect and the rule it must trigger."""

    mutation_id: str
    expected_rule: str
    description: str
    apply: object = field(repr=False)


def _m(registry, mutation_id, expected_rule, description):
    def register(fn):
        registry[mutation_id] = Mutation(mutation_id, expected_rule, description, fn)
        return fn

    return register


MUTATIONS: dict[str, Mutation] = {}

_m(MUTATIONS, "ms-drop-match-id", "MS-001", "delete the match sheet match id")(
    lambda b: b["match_sheet"]["match"].pop("id")
)
_m(MUTATIONS, "ms-drop-final-result", "MS-005", "delete the final result block")(
    lambda b: b["match_sheet"]["result"].pop("final")
)
_m(MUTATIONS, "ms-drop-goal-assist", "MS-025", "remove the assist key from a goal")(
    lambda b: b["match_sheet"]["events"]["goals"][0].pop("goal_assist_id")
)
_m(MUTATIONS, "ms-card-enum", "MS-102", "unknown card type")(
    lambda b: b["match_sheet"]["events"]["cards"][0].update(card_type="blue_card")
)
_m(MUTATIONS, "ms-flag-value", "MS-101", "is_neutral outside {0, 1}")(
    lambda b: b["match_sheet"]["match"]["status"].update(is_neutral=2)
)
_m(MUTATIONS, "ms-jersey-duplicate", "MS-104", "two home players share a jersey")(
    lambda b: b["match_sheet"]["teams"]["home"]["players"][1].update(jersey_number=1)
)
_m(MUTATIONS, "ms-result-regression", "MS-106", "second half score below first half")(
    lambda b: b["match_sheet"]["result"].update(
        first_half={"home": 9, "away": 9}
    )
)
_m(MUTATIONS, "ms-shootout-desync", "MS-107", "shootout score without the flag")(
    lambda b: b["match_sheet"]["result"].update(shootout={"home": 4, "away": 5})
)
_m(MUTATIONS, "ms-unknown-scorer", "MS-113", "goal by a player on no roster")(
    lambda b: b["match_sheet"]["events"]["goals"][0].update(goal_player_id="ghost-99")
)
_m(MUTATIONS, "ms-goal-desync", "XB-006", "extra goal event breaks the tally")(
    lambda b: b["match_sheet"]["events"]["goals"].append(
        {
            "goal_time": "2024-08-29T14:00:30",
            "goal_player_id": b["match_sheet"]["teams"]["home"]["players"][0]["id"],
            "goal_assist_id": None,
            "is_own_goal": 0,
            "is_penalty": 0,
        }
    )
)
_m(MUTATIONS, "ev-drop-sub-type", "EV-007", "remove an event's sub_type key")(
    lambda b: b["events"][1]["event"].pop("sub_type")
)
_m(MUTATIONS, "ev-drop-outcome", "EV-008", "remove an event's outcome")(
    lambda b: b["events"][0]["event"].pop("outcome")
)
_m(MUTATIONS, "ev-drop-x1", "EV-014", "remove an event's x_1 key")(
    lambda b: b["events"][0]["event"].pop("x_1")
)
_m(MUTATIONS, "ev-bad-period", "EV-101", "unknown period name")(
    lambda b: b["events"][0]["event"].update(period="third_half")
)
_m(MUTATIONS, "ev-bad-type", "EV-102", "unknown event type")(
    lambda b: b["events"][0]["event"].update(type="dribble")
)
_m(MUTATIONS, "ev-bad-subtype", "EV-103", "subtype not allowed for the type")(
    lambda b: b["events"][0]["event"].update(sub_type="penalty_kick", type="pass")
)
_m(MUTATIONS, "ev-outcome-coupling", "EV-106", "outcome bit contradicts the detail")(
    lambda b: b["events"][1]["event"].update(outcome=1, outcome_detailed="wide")
)
_m(MUTATIONS, "ev-bad-bodypart", "EV-107", "unknown body part")(
    lambda b: b["events"][0]["event"].update(body_part_1="elbow")
)
_m(MUTATIONS, "ev-xg-range", "EV-109", "xg outside [0, 1]")(
    lambda b: b["events"][1]["event"].update(metrics={"xg": 1.5})
)
_m(MUTATIONS, "tr-frame-gap", "TR-112", "skip one frame id mid-period")(
    lambda b: b["tracking"][2].update(frame_id=b["tracking"][2]["frame_id"] + 1)
)
_m(MUTATIONS, "tr-frame-regress", "TR-104", "repeat a frame id")(
    lambda b: b["tracking"][2].update(frame_id=b["tracking"][1]["frame_id"])
)
_m(MUTATIONS, "tr-period-start-nonzero", "TR-103", "second half starts past frame 0")(
    lambda b: _second_period_start(b).update(frame_id=1)
)
_m(MUTATIONS, "tr-dup-player", "TR-102", "one player listed twice in a frame")(
    lambda b: b["tracking"][0]["teams"]["home"]["players"].append(
        dict(b["tracking"][0]["teams"]["home"]["players"][0])
    )
)
_m(MUTATIONS, "tr-out-of-bounds", "TR-105", "player far outside the pitch")(
    lambda b: b["tracking"][0]["teams"]["home"]["players"][0].update(x=80.0)
)
_m(MUTATIONS, "tr-ball-underground", "TR-106", "negative ball height")(
    lambda b: b["tracking"][0]["ball"].update(z=-1.0)
)
_m(MUTATIONS, "tr-drop-ball", "TR-013", "remove the ball object from a frame")(
    lambda b: b["tracking"][0].pop("ball")
)
_m(MUTATIONS, "md-fps-zero", "MD-105", "zero frame rate")(
    lambda b: b["meta"]["meta"].update(fps_tracking=0)
)
_m(MUTATIONS, "md-period-desync", "MD-102", "periods list misses the second half")(
    lambda b: b["meta"]["match"].update(periods=["first_half"])
)
_m(MUTATIONS, "md-limb-desync", "MD-106", "limb_tracking flag without hierarchy")(
    lambda b: (
        b["meta"]["meta"].pop("limb_nodes", None),
        b["meta"]["meta"].update(limb_tracking=1),
    )
)
_m(MUTATIONS, "md-jersey-colour", "MD-111", "non-hex jersey colour")(
    lambda b: b["meta"]["teams"]["home"].update(jersey_colour="blue")
)
_m(MUTATIONS, "md-version-format", "MD-104", "non-dotted schema version")(
    lambda b: b["meta"]["meta"]["version"].update(cdf="v1")
)
_m(MUTATIONS, "md-drop-event-vendor", "MD-031", "remove the event vendor key")(
    lambda b: b["meta"]["meta"]["vendors"].pop("event")
)
_m(MUTATIONS, "vd-bad-resolution", "VD-102", "malformed video resolution")(
    lambda b: b["video_meta"].update(resolution="1920by1080")
)
_m(MUTATIONS, "xb-drop-meta", "XB-002", "events present without match meta")(
    lambda b: b.pop("meta")
)
_m(MUTATIONS, "xb-match-id-mismatch", "XB-003", "meta carries another match id")(
    lambda b: b["meta"]["match"].update(id="match-other")
)
_m(MUTATIONS, "xb-roster-mismatch", "XB-004", "meta roster renames a player")(
    lambda b: b["meta"]["teams"]["home"]["players"][5].update(id="stranger-01")
)
_m(MUTATIONS, "xb-result-mismatch", "XB-005", "meta final score disagrees")(
    lambda b: b["meta"]["match"]["result"]["final"].update(
        home=b["meta"]["match"]["result"]["final"]["home"] + 1
    )
)
_m(MUTATIONS, "xb-dangling-frame", "XB-007", "event references a nonexistent frame")(
    lambda b: b["events"][0].update(tracking={"frame_id_1": 999999, "frame_id_2": None})
)
_m(MUTATIONS, "sk-limb-missing", "SK-103", "a player's frame misses one limb")(
    lambda b: b["skeletal"][0]["teams"]["home"]["players"][0].pop("arm_right")
)
_m(MUTATIONS, "sk-bad-limb-name", "SK-101", "camel-case limb name in a frame")(
    lambda b: b["skeletal"][0]["teams"]["home"]["players"][0].update(
        LeftKnee={"x": 0.0, "y": 0.0, "z": 0.5}
    )
)
_m(MUTATIONS, "sk-multi-root", "SK-205", "hierarchy loses a child link")(
    lambda b: b["meta"]["meta"]["limb_nodes"][0].update(children=[1, 2])
)
_m(MUTATIONS, "sk-bad-quaternion", "SK-206", "non-unit joint rotation")(
    lambda b: b["meta"]["meta"]["limb_nodes"][1].update(rotation=[0.0, 0.0, 0.0, 2.0])
)


def _second_period_start(b):
    for frame in b["tracking"]:
        if frame["period"] == "second_half":
            return frame
    raise CdfDomainError("fixture has no second-half tracking frames")


def mutate(serialized: dict, mutation_id: str) -> dict:
    """Return a deep copy of a serialized bundle with exactly one cataloged
    defect applied."""
    try:
        mutation = MUTATIONS[mutation_id]
    except KeyError:
        raise CdfDomainError(f"unknown mutation id: {mutation_id!r}") from None
    mutated = copy.deepcopy(serialized)
    mutation.apply(mutated)
    return mutated


#: Spec whose output contains every component the mutation catalog touches.
MUTATION_SPEC = FixtureSpec(
    seed=7,
    minutes=0.2,
    event_count=8,
    include_skeletal=True,
)
