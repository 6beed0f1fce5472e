"""Cross-file validation of a complete match bundle.

A bundle is the set of CDF components delivered for one match: the match
sheet (always required), match meta, the event / tracking / skeletal
streams and video meta. Availability rules: the match sheet must always
be present, and any event or tracking component requires the match meta.

Streams are consumed in a single pass; frame-existence checks rely on
per-period (min, max, count, contiguity) summaries rather than retained
frame ids, which keeps memory bounded regardless of match length.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from . import codec, rules
from .model import (
    CdfDomainError,
    CdfTimestamp,
    EventRecord,
    MatchMeta,
    MatchSheet,
    ValidationReport,
    VideoMeta,
)
from .representation import check_shootout_direction

#: Events may precede/follow their period's whistles by this margin
#: (seconds) before a timing warning; absorbs collection latency.
SYNC_WINDOW_SECONDS = 5.0

#: Tolerated relative deviation between observed and expected frame
#: counts per period.
FRAME_BUDGET_TOLERANCE = 0.01

#: Conventional component file names for directory discovery.
DIRECTORY_LAYOUT = {
    "match_sheet": "match_sheet.json",
    "meta": "meta.json",
    "video_meta": "video.json",
    "events": "events.jsonl",
    "tracking": "tracking.jsonl",
    "skeletal": "skeletal.jsonl",
}

_MANIFEST_KEYS = frozenset(DIRECTORY_LAYOUT) | {"video"}


@dataclass
class MatchBundle:
    """One match's components. Documents are parsed eagerly; streams stay
    as byte sources (paths or bytes) and are read in one pass on demand."""

    match_sheet: MatchSheet | None = None
    meta: MatchMeta | None = None
    video_meta: VideoMeta | None = None
    events_source: Path | bytes | None = None
    tracking_source: Path | bytes | None = None
    skeletal_source: Path | bytes | None = None
    policy: str = "accept_both"
    #: Per-document reports collected while loading.
    document_reports: dict = field(default_factory=dict)

    @property
    def has_events(self) -> bool:
        return self.events_source is not None

    @property
    def has_tracking(self) -> bool:
        return self.tracking_source is not None

    @property
    def has_skeletal(self) -> bool:
        return self.skeletal_source is not None


def load_bundle(path, policy: str = "accept_both") -> MatchBundle:
    """Load a bundle from a directory (conventional file names) or from a
    manifest JSON file mapping component kind to file path."""
    path = Path(path)
    if path.is_dir():
        paths = {
            kind: path / name
            for kind, name in DIRECTORY_LAYOUT.items()
            if (path / name).exists()
        }
    else:
        manifest = json.loads(path.read_text(encoding="utf-8"))
        if not isinstance(manifest, dict) or not set(manifest) <= _MANIFEST_KEYS:
            raise CdfDomainError(f"{path} is not a bundle manifest")
        paths = {}
        for kind, rel in manifest.items():
            if rel is None:
                continue
            kind = "video_meta" if kind == "video" else kind
            target = Path(rel)
            if not target.is_absolute():
                target = path.parent / target
            paths[kind] = target
    return _load_components(paths, policy)


def _load_components(paths: dict, policy: str) -> MatchBundle:
    bundle = MatchBundle(policy=policy)
    for kind, doc_kind in (
        ("match_sheet", "match_sheet"),
        ("meta", "meta"),
        ("video_meta", "video_meta"),
    ):
        if kind in paths:
            doc, report = codec.read_document(
                paths[kind].read_bytes(), doc_kind, policy
            )
            setattr(bundle, kind, doc)
            bundle.document_reports[kind] = report
    if "events" in paths:
        bundle.events_source = paths["events"]
    if "tracking" in paths:
        bundle.tracking_source = paths["tracking"]
    if "skeletal" in paths:
        bundle.skeletal_source = paths["skeletal"]
    return bundle


def load_serialized(obj: dict, policy: str = "accept_both") -> MatchBundle:
    """Build a bundle from an in-memory serialized form: a dict with
    optional keys match_sheet / meta / video_meta (JSON objects) and
    events / tracking / skeletal (lists of JSON objects)."""
    bundle = MatchBundle(policy=policy)
    for kind in ("match_sheet", "meta", "video_meta"):
        if obj.get(kind) is not None:
            doc, report = codec.read_document(
                json.dumps(obj[kind]), kind, policy
            )
            setattr(bundle, kind, doc)
            bundle.document_reports[kind] = report
    for kind, attr in (
        ("events", "events_source"),
        ("tracking", "tracking_source"),
        ("skeletal", "skeletal_source"),
    ):
        if obj.get(kind) is not None:
            lines = b"".join(
                json.dumps(line, ensure_ascii=False, separators=(",", ":")).encode("utf-8")
                + b"\n"
                for line in obj[kind]
            )
            setattr(bundle, attr, lines)
    return bundle


def _stream_source(source):
    if isinstance(source, (bytes, bytearray)):
        return bytes(source), None
    handle = open(source, "rb")
    return handle, handle


# ---------------------------------------------------------------------------
# Stream summaries
# ---------------------------------------------------------------------------


@dataclass
class FrameSummary:
    """Compact per-period view of a tracking stream."""

    first: int | None = None
    last: int | None = None
    count: int = 0
    contiguous: bool = True

    def observe(self, frame_id: int | None) -> None:
        if frame_id is None:
            return
        if self.first is None:
            self.first = frame_id
        elif self.last is not None and frame_id != self.last + 1:
            self.contiguous = False
        self.last = frame_id
        self.count += 1

    def contains(self, frame_id: int) -> bool:
        if self.first is None or self.last is None:
            return False
        if self.contiguous:
            return self.first <= frame_id <= self.last
        # With gaps, membership is only certain at the endpoints; report
        # in-range ids as present to avoid false positives.
        return self.first <= frame_id <= self.last


@dataclass
class _EventDigest:
    """The slice of an event needed for cross-stream checks."""

    event_id: str | None
    period: str | None
    time: CdfTimestamp | None
    is_synced: int | None
    frame_refs: tuple[int, ...]
    type: str | None
    x_1: float | None


def _digest(event: EventRecord) -> _EventDigest:
    refs = []
    if event.tracking is not None:
        for ref in (event.tracking.frame_id_1, event.tracking.frame_id_2):
            if ref is not None:
                refs.append(ref)
    return _EventDigest(
        event.event_id,
        event.period,
        event.time,
        event.is_synced,
        tuple(refs),
        event.type,
        event.x_1,
    )


def summarize_tracking(frames) -> dict[str, FrameSummary]:
    """Single-pass per-period frame summaries over tracking records."""
    summaries: dict[str, FrameSummary] = {}
    for frame in frames:
        key = frame.period or ""
        summaries.setdefault(key, FrameSummary()).observe(frame.frame_id)
    return summaries


# ---------------------------------------------------------------------------
# Cross-file checks
# ---------------------------------------------------------------------------


def reconcile_result(ms: MatchSheet) -> ValidationReport:
    """Compare the goal-event tally against the reported score.

    Each goal counts for the scorer's team, flipped for own goals.
    Shootout kicks are not goal events, so the tally is compared with the
    last in-play component: the second extra-time score when extra time
    was played, otherwise the final (regular-time) score.
    """
    report = ValidationReport()
    team_of = {p.id: p.team_id for p in ms.players if p.id is not None}
    if ms.home_team_id is None or ms.away_team_id is None:
        return report
    home = away = 0
    for goal in ms.goals:
        team = team_of.get(goal.goal_player_id)
        if team is None:
            continue  # dangling scorer already reported by the rule engine
        scored_for_home = team == ms.home_team_id
        if goal.is_own_goal == 1:
            scored_for_home = not scored_for_home
        if scored_for_home:
            home += 1
        else:
            away += 1
    reference = None
    label = None
    if ms.has_extratime == 1 and ms.result.second_extratime is not None:
        reference, label = ms.result.second_extratime, "second_extratime"
    elif ms.result.final is not None:
        reference, label = ms.result.final, "final"
    if reference is None or reference.home is None or reference.away is None:
        return report
    if (home, away) != (reference.home, reference.away):
        report.add(
            "XB-006",
            "error",
            "events/goals",
            f"goal events tally ({home}, {away}) but result/{label} is "
            f"({reference.home}, {reference.away})",
        )
    return report


def check_sync_references(
    events, tracking_summaries: dict, meta: MatchMeta | None
) -> ValidationReport:
    """Check event frame references against tracking frame summaries and
    event timestamps against their period's whistle window."""
    report = ValidationReport()
    windows = _whistle_windows(meta) if meta is not None else {}
    for event in events:
        digest = event if isinstance(event, _EventDigest) else _digest(event)
        label = f"event {digest.event_id}"
        if digest.frame_refs and digest.is_synced == 0:
            report.add(
                "XB-010",
                "warning",
                label,
                "frame references present although is_synced is 0",
            )
        summary = tracking_summaries.get(digest.period or "")
        for ref in digest.frame_refs:
            if summary is None or not summary.contains(ref):
                report.add(
                    "XB-007",
                    "error",
                    label,
                    f"referenced frame {ref} does not exist in the "
                    f"{digest.period!r} tracking stream",
                )
        window = windows.get(digest.period)
        if window is not None and digest.time is not None:
            start, end = window
            t = digest.time.instant
            if (start is not None and (start - t).total_seconds() > SYNC_WINDOW_SECONDS) or (
                end is not None and (t - end).total_seconds() > SYNC_WINDOW_SECONDS
            ):
                report.add(
                    "XB-008",
                    "warning",
                    label,
                    f"event time {digest.time.canonical_text()} falls outside the "
                    f"{digest.period!r} whistle window",
                )
    return report


def _whistle_windows(meta: MatchMeta):
    windows: dict[str, list] = {}
    for w in meta.whistles:
        if w.type is None or w.time is None or w.sub_type not in ("start", "end"):
            continue
        window = windows.setdefault(w.type, [None, None])
        window[0 if w.sub_type == "start" else 1] = w.time.instant
    return {k: (v[0], v[1]) for k, v in windows.items()}


def check_frame_budget(tracking, meta: MatchMeta | None) -> ValidationReport:
    """Compare observed frame counts per period with whistle duration
    times the frame rate; deviations beyond 1% warn."""
    summaries = (
        tracking if isinstance(tracking, dict) else summarize_tracking(tracking)
    )
    report = ValidationReport()
    if meta is None or meta.fps_tracking is None or meta.fps_tracking <= 0:
        report.add(
            "XB-011", "info", "meta/fps_tracking", "frame budget check skipped: no frame rate"
        )
        return report
    windows = _whistle_windows(meta)
    for period, summary in sorted(summaries.items()):
        window = windows.get(period)
        if window is None or window[0] is None or window[1] is None:
            report.add(
                "XB-011",
                "info",
                f"period {period}",
                "frame budget check skipped: missing start/end whistles",
            )
            continue
        duration = (window[1] - window[0]).total_seconds()
        expected = duration * meta.fps_tracking
        if expected <= 0:
            continue
        deviation = abs(summary.count - expected) / expected
        if deviation > FRAME_BUDGET_TOLERANCE:
            report.add(
                "XB-011",
                "warning",
                f"period {period}",
                f"observed {summary.count} frames, expected about {expected:.0f} "
                f"({duration:.0f} s at {meta.fps_tracking} fps)",
            )
    return report


# ---------------------------------------------------------------------------
# Bundle validation
# ---------------------------------------------------------------------------


def validate_bundle(bundle: MatchBundle) -> ValidationReport:
    """Run every cross-file check over one bundle.

    Includes the per-document reports collected at load time, validates
    each stream in one pass (frame ordering, roster references), and then
    applies the availability, identity, result-reconciliation, sync and
    frame-budget rules.
    """
    report = ValidationReport()
    for kind in ("match_sheet", "meta", "video_meta"):
        if kind in bundle.document_reports:
            report.merge(bundle.document_reports[kind])

    ms = bundle.match_sheet
    meta = bundle.meta
    if ms is None:
        report.add("XB-001", "error", "bundle", "match sheet component is missing")
    if (bundle.has_events or bundle.has_tracking or bundle.has_skeletal) and meta is None:
        report.add(
            "XB-002",
            "error",
            "bundle",
            "event or tracking components present without match meta",
        )

    _check_document_agreement(report, ms, meta, bundle.video_meta)

    if ms is not None:
        report.merge(reconcile_result(ms))

    roster_mismatch_severity = _reference_severity(meta, "tracking")

    tracking_summaries: dict[str, FrameSummary] = {}
    if bundle.has_tracking:
        tracking_summaries = _validate_tracking_stream(
            bundle, report, roster_mismatch_severity
        )

    if bundle.has_skeletal:
        _validate_skeletal_stream(bundle, report)

    if bundle.has_events:
        _validate_event_stream(bundle, report, tracking_summaries)

    if bundle.has_tracking:
        report.merge(check_frame_budget(tracking_summaries, meta))
    return report


def _reference_severity(meta: MatchMeta | None, component: str) -> str:
    """Cross-reference mismatches are errors only when both components
    claim the same identifier space; otherwise ids are not expected to
    align and mismatches downgrade to warnings."""
    if meta is None:
        return "error"
    own = meta.id_space_of(component)
    base = meta.id_space_of("match_data")
    if own is not None and base is not None and own != base:
        return "warning"
    return "error"


def _check_document_agreement(report, ms, meta, video) -> None:
    ids = {}
    if ms is not None and ms.match_id is not None:
        ids["match_sheet"] = ms.match_id
    if meta is not None and meta.match_id is not None:
        ids["meta"] = meta.match_id
    if video is not None and video.match_id is not None:
        ids["video_meta"] = video.match_id
    if len(set(ids.values())) > 1:
        listing = ", ".join(f"{k}={v!r}" for k, v in sorted(ids.items()))
        report.add("XB-003", "error", "bundle", f"match ids disagree: {listing}")

    if ms is None or meta is None:
        return
    sheet_roster = {p.id for p in ms.players if p.id is not None}
    meta_roster = {p.id for p in meta.players if p.id is not None}
    if sheet_roster and meta_roster and sheet_roster != meta_roster:
        only_sheet = sorted(sheet_roster - meta_roster)
        only_meta = sorted(meta_roster - sheet_roster)
        report.add(
            "XB-004",
            "error",
            "teams",
            f"rosters disagree between match sheet and meta "
            f"(sheet-only: {only_sheet}, meta-only: {only_meta})",
        )
    sheet_final = ms.result.final
    meta_final = meta.result.final
    if sheet_final is not None and meta_final is not None:
        if (sheet_final.home, sheet_final.away) != (meta_final.home, meta_final.away) or (
            sheet_final.winning_team_id != meta_final.winning_team_id
        ):
            report.add(
                "XB-005",
                "error",
                "result/final",
                f"final result disagrees: match sheet "
                f"({sheet_final.home}, {sheet_final.away}, "
                f"{sheet_final.winning_team_id!r}) vs meta "
                f"({meta_final.home}, {meta_final.away}, "
                f"{meta_final.winning_team_id!r})",
            )
    if ms.result.shootout is not None and meta.result.shootout is not None:
        if (ms.result.shootout.home, ms.result.shootout.away) != (
            meta.result.shootout.home,
            meta.result.shootout.away,
        ):
            report.add(
                "XB-005",
                "error",
                "result/shootout",
                "shootout result disagrees between match sheet and meta",
            )
    for flag in ("is_neutral", "has_extratime", "has_shootout"):
        a, b = getattr(ms, flag), getattr(meta, flag)
        if a is not None and b is not None and a != b:
            report.add(
                "XB-013",
                "error",
                f"status/{flag}",
                f"{flag} disagrees: match sheet {a} vs meta {b}",
            )


def _validate_tracking_stream(bundle, report, roster_severity) -> dict[str, FrameSummary]:
    summaries: dict[str, FrameSummary] = {}
    state = rules.TrackingStreamState()
    source, handle = _stream_source(bundle.tracking_source)
    try:
        for frame, line_report in codec.read_line_stream(
            source, "tracking_com", bundle.policy
        ):
            report.merge(line_report)
            if frame is None:
                continue
            frame_report = rules.validate_tracking_frame(frame, bundle.meta, state)
            if roster_severity == "warning":
                _downgrade(frame_report, "TR-107")
            report.merge(frame_report)
            _check_stream_identity(report, bundle, frame, "tracking")
            summaries.setdefault(frame.period or "", FrameSummary()).observe(
                frame.frame_id
            )
    finally:
        if handle is not None:
            handle.close()
    return summaries


def _validate_skeletal_stream(bundle, report) -> None:
    meta = bundle.meta
    if meta is not None and meta.limb_tracking == 0:
        report.add(
            "XB-012",
            "error",
            "bundle",
            "skeletal stream present but meta declares limb_tracking 0",
        )
    source, handle = _stream_source(bundle.skeletal_source)
    try:
        for frame, line_report in codec.read_line_stream(
            source, "tracking_skeletal", bundle.policy
        ):
            report.merge(line_report)
            if frame is None:
                continue
            report.merge(rules.validate_skeleton_frame(frame, meta))
            _check_stream_identity(report, bundle, frame, "skeletal")
    finally:
        if handle is not None:
            handle.close()


def _validate_event_stream(bundle, report, tracking_summaries) -> None:
    digests: list[_EventDigest] = []
    source, handle = _stream_source(bundle.events_source)
    ref_severity = _reference_severity(bundle.meta, "event")
    try:
        for event, line_report in codec.read_line_stream(
            source, "event", bundle.policy
        ):
            report.merge(line_report)
            if event is None:
                continue
            report.merge(rules.validate_event(event, bundle.meta))
            _check_stream_identity(report, bundle, event, "events")
            if event.is_synced == 1 and not bundle.has_tracking:
                report.add(
                    "XB-009",
                    "error",
                    f"event {event.event_id}",
                    "is_synced is 1 but the bundle has no tracking component",
                )
            digests.append(_digest(event))
    finally:
        if handle is not None:
            handle.close()
    sync_report = check_sync_references(digests, tracking_summaries, bundle.meta)
    if ref_severity == "warning":
        _downgrade(sync_report, "XB-007")
    report.merge(sync_report)
    report.merge(check_shootout_direction(digests))


def _downgrade(report: ValidationReport, rule_id: str) -> None:
    report.findings = [
        f
        if f.rule_id != rule_id or f.severity != "error"
        else type(f)(f.rule_id, "warning", f.path, f.message)
        for f in report.findings
    ]


def _check_stream_identity(report, bundle, record, component: str) -> None:
    expected = None
    if bundle.match_sheet is not None:
        expected = bundle.match_sheet.match_id
    elif bundle.meta is not None:
        expected = bundle.meta.match_id
    if (
        expected is not None
        and record.match_id is not None
        and record.match_id != expected
    ):
        report.add(
            "XB-003",
            "error",
            component,
            f"match id {record.match_id!r} disagrees with bundle id {expected!r}",
        )


# ---------------------------------------------------------------------------
# Summaries for the CLI
# ---------------------------------------------------------------------------


def summarize_bundle(bundle: MatchBundle) -> dict:
    """Human-facing bundle digest: identity, result, per-type event counts,
    per-period frame counts, frame-budget verdict and finding totals."""
    report = validate_bundle(bundle)

    event_counts: dict[str, int] = {}
    if bundle.has_events:
        source, handle = _stream_source(bundle.events_source)
        try:
            for event, _ in codec.read_line_stream(source, "event", bundle.policy):
                if event is not None:
                    key = event.type or "unknown"
                    event_counts[key] = event_counts.get(key, 0) + 1
        finally:
            if handle is not None:
                handle.close()

    frame_counts: dict[str, int] = {}
    budget_verdict = "not checked"
    if bundle.has_tracking:
        source, handle = _stream_source(bundle.tracking_source)
        try:
            summaries = summarize_tracking(
                frame
                for frame, _ in codec.read_line_stream(
                    source, "tracking_com", bundle.policy
                )
                if frame is not None
            )
        finally:
            if handle is not None:
                handle.close()
        frame_counts = {period: s.count for period, s in sorted(summaries.items())}
        budget = check_frame_budget(summaries, bundle.meta)
        if budget.count("warning"):
            budget_verdict = "deviates"
        elif budget.count("info"):
            budget_verdict = "not checked"
        else:
            budget_verdict = "within tolerance"

    ms = bundle.match_sheet
    result_text = None
    if ms is not None and ms.result.final is not None:
        final = ms.result.final
        result_text = f"{final.home}-{final.away}"
        if ms.result.shootout is not None:
            result_text += (
                f" ({ms.result.shootout.home}-{ms.result.shootout.away} pens)"
            )
    return {
        "match_id": ms.match_id if ms is not None else None,
        "teams": {
            "home": ms.home_team_id if ms is not None else None,
            "away": ms.away_team_id if ms is not None else None,
        },
        "result": result_text,
        "winning_team_id": (
            ms.result.final.winning_team_id
            if ms is not None and ms.result.final is not None
            else None
        ),
        "event_counts": dict(sorted(event_counts.items())),
        "frame_counts": frame_counts,
        "frame_budget": budget_verdict,
        "findings": {
            "error": report.error_count,
            "warning": report.warning_count,
            "info": report.info_count,
        },
    }
