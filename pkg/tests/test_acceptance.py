"""Acceptance gate: nine conformance and property criteria.

Each test prints exactly one `[criterion N] ...: PASS|FAIL` line so the
suite's verdict can be read off the console at a glance.
"""

import io
import itertools
import json
import math
import random
import time
import tracemalloc
from contextlib import contextmanager

import pytest

from cdfkit import bundle, codec, fixtures, positions, representation, rules, skeleton
from cdfkit.model import BallPosition, PlayerPosition, TrackingFrame


@contextmanager
def criterion(capsys, number: int, name: str):
    ok = True
    try:
        yield
    except BaseException:
        ok = False
        raise
    finally:
        with capsys.disabled():
            print(f"[criterion {number}] {name}: {'PASS' if ok else 'FAIL'}")


# ---------------------------------------------------------------------------
# 1. Golden-file conformance
# ---------------------------------------------------------------------------


def test_criterion_1_golden_file_conformance(capsys, golden_dir, golden_limb_nodes):
    with criterion(capsys, 1, "golden-file conformance"):
        loaded = bundle.load_bundle(golden_dir)
        report = bundle.validate_bundle(loaded)
        assert report.error_count == 0, report.to_text()

        sheet = loaded.match_sheet
        assert sheet.match_id == "74e6661c"
        assert (sheet.result.final.home, sheet.result.final.away) == (2, 2)
        assert (sheet.result.shootout.home, sheet.result.shootout.away) == (4, 5)
        assert sheet.result.final.winning_team_id == "3f029694"
        assert (sheet.has_extratime, sheet.has_shootout) == (1, 1)
        assert (sheet.result.second_extratime.home,
                sheet.result.second_extratime.away) == (3, 3)

        meta = loaded.meta
        assert meta.fps_tracking == 25
        assert (meta.pitch.length, meta.pitch.width) == (105.0, 68.0)
        assert meta.home_team.name == "FC Dagstuhl"
        assert meta.away_team.name == "Dagstuhl United"

        events = [
            record
            for record, _ in codec.read_line_stream(
                (golden_dir / "events.jsonl").read_bytes(), "event"
            )
        ]
        assert events[0].event_id == "7230efg1"
        assert events[0].sub_type == "kick_off"
        assert events[0].player_id_1 == "c83323fb"
        assert events[0].outcome == 1
        assert events[1].outcome_detailed == "out_of_play"
        assert events[1].player_id_2 is None  # sentinel spelling decodes to missing

        frames = [
            record
            for record, _ in codec.read_line_stream(
                (golden_dir / "tracking.jsonl").read_bytes(), "tracking_com"
            )
        ]
        assert frames[0].frame_id == 0
        ball = frames[0].ball
        assert (ball.x, ball.y, ball.z) == (0.01, 23.10, 0.33)

        hierarchy, limb_report = skeleton.validate_hierarchy(golden_limb_nodes)
        assert hierarchy is not None and limb_report.error_count == 0
        assert hierarchy.nodes[hierarchy.root].name == "hip"


# ---------------------------------------------------------------------------
# 2. Mutation completeness
# ---------------------------------------------------------------------------


def test_criterion_2_mutation_completeness(capsys, clean_serialized):
    with criterion(capsys, 2, "mutation catalog completeness"):
        assert len(fixtures.MUTATIONS) >= 25
        clean = bundle.validate_bundle(bundle.load_serialized(clean_serialized))
        assert clean.error_count == 0, clean.to_text()
        failures = []
        for mutation_id, mutation in sorted(fixtures.MUTATIONS.items()):
            mutated = fixtures.mutate(clean_serialized, mutation_id)
            report = bundle.validate_bundle(bundle.load_serialized(mutated))
            if mutation.expected_rule not in {f.rule_id for f in report.findings}:
                failures.append((mutation_id, mutation.expected_rule))
        assert not failures, failures


# ---------------------------------------------------------------------------
# 3. Round-trip and determinism over 200 fixtures
# ---------------------------------------------------------------------------


def _roundtrip_documents(serialized):
    for kind, key in (("match_sheet", "match_sheet"), ("meta", "meta"),
                      ("video_meta", "video_meta")):
        if key not in serialized:
            continue
        first, _ = codec.read_document(json.dumps(serialized[key]), kind)
        encoded = codec.write_document(first, kind)
        second, _ = codec.read_document(encoded, kind)
        assert first == second, kind
        assert codec.write_document(second, kind) == encoded, kind


def _roundtrip_streams(serialized):
    for kind, key in (("event", "events"), ("tracking_com", "tracking"),
                      ("tracking_skeletal", "skeletal")):
        records = serialized.get(key)
        if not records:
            continue
        raw = b"".join(json.dumps(r).encode() + b"\n" for r in records)
        first = [rec for rec, _ in codec.read_line_stream(raw, kind) if rec]
        encoded = b"".join(codec.encode_line_stream(first, kind))
        second = [rec for rec, _ in codec.read_line_stream(encoded, kind) if rec]
        assert first == second, kind
        assert b"".join(codec.encode_line_stream(second, kind)) == encoded, kind


def test_criterion_3_roundtrip_and_determinism(capsys):
    with criterion(capsys, 3, "round-trip and byte determinism (200 fixtures)"):
        for seed in range(200):
            spec = fixtures.FixtureSpec(
                seed=seed,
                minutes=0.02,
                event_count=6,
                include_skeletal=(seed % 4 == 0),
            )
            serialized = fixtures.generate_serialized(spec)
            assert fixtures.generate_serialized(spec) == serialized, seed
            _roundtrip_documents(serialized)
            _roundtrip_streams(serialized)


# ---------------------------------------------------------------------------
# 4. Availability-rule matrix
# ---------------------------------------------------------------------------


def test_criterion_4_availability_matrix(capsys):
    with criterion(capsys, 4, "component availability matrix (16 combinations)"):
        spec = fixtures.FixtureSpec(seed=13, minutes=0.05, event_count=6)
        with_tracking = fixtures.generate_serialized(spec)
        without_tracking = fixtures.generate_serialized(
            fixtures.FixtureSpec(seed=13, minutes=0.05, event_count=6,
                                 include_tracking=False)
        )
        for sheet, meta, events, tracking in itertools.product((False, True), repeat=4):
            source = with_tracking if tracking else without_tracking
            subset = {}
            if sheet:
                subset["match_sheet"] = source["match_sheet"]
            if meta:
                subset["meta"] = source["meta"]
            if events:
                subset["events"] = source["events"]
            if tracking:
                subset["tracking"] = source["tracking"]
            report = bundle.validate_bundle(bundle.load_serialized(subset))
            combo = (sheet, meta, events, tracking)
            errors = {f.rule_id for f in report.findings if f.severity == "error"}
            expected = set()
            if not sheet:
                expected.add("XB-001")  # the match sheet is always required
            if (events or tracking) and not meta:
                expected.add("XB-002")  # streams require the meta document
            assert errors == expected, (combo, report.to_text())


# ---------------------------------------------------------------------------
# 5. Representation properties
# ---------------------------------------------------------------------------


def _random_frame(rng: random.Random) -> TrackingFrame:
    def coord():
        return rng.uniform(-60.0, 60.0)

    players = lambda team, n: tuple(
        PlayerPosition(id=f"{team}{i}", team_id=team, x=coord(), y=coord())
        for i in range(n)
    )
    return TrackingFrame(
        frame_id=rng.randrange(10000),
        period="first_half",
        match_id="m1",
        home_team_id="h",
        away_team_id="a",
        home_players=players("h", 11),
        away_players=players("a", 11),
        ball=BallPosition(x=coord(), y=coord(), z=abs(coord()) / 10.0),
    )


def test_criterion_5_representation_properties(capsys):
    with criterion(capsys, 5, "representation properties (1,000 frames + grid)"):
        rng = random.Random(1405)
        side = representation.SideAssignment("first_half", "a", "h")
        for _ in range(1000):
            frame, _ = representation.canonicalize_precision(_random_frame(rng))
            flipped = representation.flip_record(frame)
            assert representation.flip_record(flipped) == frame

            a = frame.home_players[0]
            b = frame.away_players[0]
            fa = flipped.home_players[0]
            fb = flipped.away_players[0]
            assert math.dist((a.x, a.y), (b.x, b.y)) == math.dist(
                (fa.x, fa.y), (fb.x, fb.y)
            )

            converted = representation.to_actual_sides(frame, side, "h")
            assert representation.to_actual_sides(converted, side, "h") == frame

        # 4-decimal grid over [-60, 60]: idempotence plus the integer oracle
        for i in range(-600000, 600001):
            x = i / 10000.0
            rounded = codec.round3(x)
            q, r = divmod(i, 10)
            if r > 5 or (r == 5 and q % 2):
                q += 1
            assert rounded == q / 1000.0, x
            assert codec.round3(rounded) == rounded, x


# ---------------------------------------------------------------------------
# 6. Position-label oracle equivalence
# ---------------------------------------------------------------------------


def test_criterion_6_position_oracle_equivalence(capsys):
    with criterion(capsys, 6, "position-label oracle equivalence"):
        outfield = sorted(set(positions.POSITION_LABELS) - {positions.GOALKEEPER})
        formations = [
            combo
            for n in (1, 2, 3, 4)
            for combo in itertools.product(range(1, 6), repeat=n)
            if sum(combo) == 10
        ]
        assert formations
        rng = random.Random(6)
        for lines in formations:
            valid = positions.enumerate_valid_label_sets(lines)
            for label_set in valid:
                assignment = positions.LineupAssignment(
                    "t", tuple((f"p{i}", l) for i, l in
                               enumerate(["GK", *sorted(label_set)]))
                )
                report = positions.validate_lineup(assignment, lines)
                assert not report.findings, (lines, sorted(label_set))
            # one-swap neighborhood: the validator must agree with the
            # enumerator on near-miss label sets as well
            base = min(valid, key=sorted) if valid else None
            if base is None:
                continue
            for _ in range(40):
                removed = rng.choice(sorted(base))
                added = rng.choice([l for l in outfield if l not in base])
                candidate = (base - {removed}) | {added}
                assignment = positions.LineupAssignment(
                    "t", tuple((f"p{i}", l) for i, l in
                               enumerate(["GK", *sorted(candidate)]))
                )
                report = positions.validate_lineup(assignment, lines)
                assert bool(report.findings) == (candidate not in valid), (
                    lines, sorted(candidate)
                )


# ---------------------------------------------------------------------------
# 7. Skeleton checks
# ---------------------------------------------------------------------------


def test_criterion_7_skeleton_checks(capsys, golden_limb_nodes):
    with criterion(capsys, 7, "skeleton hierarchy and T-pose"):
        hierarchy, report = skeleton.validate_hierarchy(golden_limb_nodes)
        assert hierarchy is not None and report.error_count == 0
        assert hierarchy.nodes[hierarchy.root].name == "hip"
        pose = skeleton.t_pose_positions(hierarchy)
        assert pose["spine"] == (0.0, 1.0, 0.0)
        assert pose["head"] == (0.0, 2.0, 0.0)
        assert pose["leg_left"] == (-2.0, -1.0, 0.0)

        def errors_of(mutator):
            nodes = json.loads(json.dumps(golden_limb_nodes))
            mutator(nodes)
            _, rep = skeleton.validate_hierarchy(nodes)
            return {f.rule_id for f in rep.findings if f.severity == "error"}

        def make_cycle(nodes):
            nodes[5]["children"] = [2]  # leg_left adopts hip_left: 2 -> 5 -> 2

        def make_multi_root(nodes):
            nodes[1]["children"] = [4]  # detach both arms

        def make_bad_quaternion(nodes):
            nodes[0]["rotation"] = [0.5, 0.5, 0.5, 0.6]

        assert "SK-204" in errors_of(make_cycle)
        assert "SK-205" in errors_of(make_multi_root)
        assert "SK-206" in errors_of(make_bad_quaternion)


# ---------------------------------------------------------------------------
# 8. Throughput and memory
# ---------------------------------------------------------------------------


FULL_MATCH_SPEC = fixtures.FixtureSpec(seed=8, minutes=45.0)


def _encoded_frames(spec):
    for obj in fixtures.iter_tracking_objects(spec):
        yield json.dumps(obj, separators=(",", ":")).encode() + b"\n"


def _meta_for(spec):
    doc_spec = fixtures.FixtureSpec(
        seed=spec.seed, minutes=spec.minutes, fps=spec.fps,
        include_events=False, include_tracking=False, include_video=False,
    )
    serialized = fixtures.generate_serialized(doc_spec)
    meta, _ = codec.read_document(json.dumps(serialized["meta"]), "meta")
    return meta


def _stream_validate(source, meta):
    state = rules.TrackingStreamState()
    count = 0
    errors = 0
    for record, report in codec.read_line_stream(source, "tracking_com"):
        errors += report.error_count
        if record is None:
            continue
        errors += rules.validate_tracking_frame(record, meta, state).error_count
        count += 1
    return count, errors


def test_criterion_8_throughput_and_memory(capsys, tmp_path):
    with criterion(capsys, 8, "throughput (135k frames <= 60 s) and bounded memory"):
        meta = _meta_for(FULL_MATCH_SPEC)
        path = tmp_path / "full_match.jsonl"
        with open(path, "wb") as sink:
            for line in _encoded_frames(FULL_MATCH_SPEC):
                sink.write(line)

        with open(path, "rb") as handle:
            started = time.perf_counter()
            count, errors = _stream_validate(handle, meta)
            elapsed = time.perf_counter() - started
        assert count == 135_000
        assert errors == 0
        assert elapsed <= 60.0, f"validation took {elapsed:.1f} s"

        def peak_for(minutes):
            spec = fixtures.FixtureSpec(seed=8, minutes=minutes)
            spec_meta = _meta_for(spec)
            tracemalloc.start()
            _stream_validate(_encoded_frames(spec), spec_meta)
            _, peak = tracemalloc.get_traced_memory()
            tracemalloc.stop()
            return peak

        base = peak_for(0.5)
        longer = peak_for(5.0)  # ten times the stream length
        assert longer <= base * 1.5 + 1_000_000, (base, longer)


# ---------------------------------------------------------------------------
# 9. Stream/batch equivalence
# ---------------------------------------------------------------------------


def _report_tuples(source, kind):
    out = []
    state = rules.TrackingStreamState() if kind == "tracking_com" else None
    for record, report in codec.read_line_stream(source, kind):
        out.extend((f.rule_id, f.severity, f.path, f.message) for f in report.findings)
        if record is None:
            continue
        if kind == "event":
            extra = rules.validate_event(record)
        else:
            extra = rules.validate_tracking_frame(record, None, state)
        out.extend((f.rule_id, f.severity, f.path, f.message) for f in extra.findings)
    return out


def _trickle(data: bytes, chunk: int = 17):
    for i in range(0, len(data), chunk):
        yield data[i:i + chunk]


def test_criterion_9_stream_batch_equivalence(capsys):
    with criterion(capsys, 9, "stream/batch equivalence (50 fixtures)"):
        for seed in range(50):
            spec = fixtures.FixtureSpec(seed=seed, minutes=0.02, event_count=6)
            serialized = fixtures.generate_serialized(spec)
            for kind, key in (("event", "events"), ("tracking_com", "tracking")):
                data = b"".join(
                    json.dumps(r).encode() + b"\n" for r in serialized[key]
                )
                batch = _report_tuples(data, kind)
                live = _report_tuples(_trickle(data), kind)
                piped = _report_tuples(io.BytesIO(data), kind)
                assert batch == live == piped, (seed, kind)
