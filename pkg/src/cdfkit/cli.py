"""Command-line front end: validate, normalize, summarize, gen-fixture.

Conventions: stdout carries data and reports, stderr carries logging.
Exit codes: 0 clean, 1 warnings only, 2 errors (or warnings under
--strict-warnings), 3 I/O or usage failure. The default missing-value
policy can come from --missing, the CDF_MISSING_POLICY environment
variable, or a key=value config file, in that order of precedence.
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from . import bundle as bundle_mod
from . import codec, fixtures, positions, rules
from .model import CdfError, ValidationReport
from .representation import SideAssignment, to_actual_sides

IO_EXIT = 3


def _fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(IO_EXIT)


def _resolve_policy(flag_value, config: dict) -> str:
    policy = (
        flag_value
        or os.environ.get("CDF_MISSING_POLICY")
        or config.get("missing")
        or "accept_both"
    )
    if policy not in codec.MISSING_POLICIES:
        _fail(f"unknown missing-value policy {policy!r}")
    return policy


def _read_config(path) -> dict:
    if path is None:
        return {}
    config = {}
    try:
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if not line or line.startswith("#") or "=" not in line:
                continue
            key, _, value = line.partition("=")
            config[key.strip()] = value.strip()
    except OSError as exc:
        _fail(str(exc))
    return config


def _exit_code(report: ValidationReport, strict_warnings: bool) -> int:
    if report.error_count:
        return 2
    if report.warning_count:
        return 2 if strict_warnings else 1
    return 0


def detect_document_kind(obj: dict) -> str | None:
    """Best-effort document classification from top-level structure."""
    if "competition" in obj or "season" in obj:
        return "meta"
    if "resolution" in obj or "operation_type" in obj:
        return "video_meta"
    if "teams" in obj and ("result" in obj or "events" in obj or "match" in obj):
        return "match_sheet"
    return None


def _stream_kind_for(path: Path) -> str | None:
    name = path.name.lower()
    if "skelet" in name:
        return "tracking_skeletal"
    if "tracking" in name:
        return "tracking_com"
    if "event" in name:
        return "event"
    return None


def _is_manifest(obj) -> bool:
    return (
        isinstance(obj, dict)
        and bool(obj)
        and set(obj) <= bundle_mod._MANIFEST_KEYS
        and all(v is None or isinstance(v, str) for v in obj.values())
    )


def _validate_stream_source(source, stream_kind: str, policy: str) -> ValidationReport:
    """Stream validation with per-record rule checks; single pass."""
    report = ValidationReport()
    state = rules.TrackingStreamState() if stream_kind == "tracking_com" else None
    for record, line_report in codec.read_line_stream(source, stream_kind, policy):
        report.merge(line_report)
        if record is None:
            continue
        if stream_kind == "event":
            report.merge(rules.validate_event(record))
        elif stream_kind == "tracking_com":
            report.merge(rules.validate_tracking_frame(record, None, state))
        else:
            report.merge(rules.validate_skeleton_frame(record))
    return report


def _validate_path(path: Path, policy: str, kind: str | None) -> ValidationReport:
    if path.is_dir():
        return bundle_mod.validate_bundle(bundle_mod.load_bundle(path, policy))
    data = path.read_bytes()
    if path.suffix == ".jsonl" or kind in codec.STREAM_KINDS:
        stream_kind = kind if kind in codec.STREAM_KINDS else _stream_kind_for(path)
        if stream_kind is None:
            _fail(f"cannot infer stream kind for {path}; pass --kind")
        return _validate_stream_source(data, stream_kind, policy)
    try:
        obj = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, ValueError) as exc:
        _fail(f"{path}: {exc}")
    if _is_manifest(obj) and kind is None:
        return bundle_mod.validate_bundle(bundle_mod.load_bundle(path, policy))
    doc_kind = kind if kind in codec.DOC_KINDS else detect_document_kind(obj)
    if doc_kind is None:
        _fail(f"cannot infer document kind for {path}; pass --kind")
    _, report = codec.read_document(data, doc_kind, policy)
    return report


def _emit_report(entries, fmt: str) -> None:
    if fmt == "json":
        total = {"error": 0, "warning": 0, "info": 0}
        payload = []
        for name, report in entries:
            obj = report.to_obj()
            obj["input"] = name
            payload.append(obj)
            for key in total:
                total[key] += obj["counts"][key]
        click.echo(json.dumps({"inputs": payload, "counts": total}, indent=2))
    else:
        for name, report in entries:
            click.echo(f"== {name}")
            click.echo(report.to_text(), nl=False)


@click.group()
def main() -> None:
    """Tools for the five-stream football match data format."""


_KIND_CHOICES = click.Choice(sorted(codec.DOC_KINDS + codec.STREAM_KINDS))


@main.command()
@click.argument("paths", nargs=-1, type=click.Path(path_type=Path))
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.option("--strict-warnings", is_flag=True, help="Treat warnings as failures.")
@click.option("--stdin", "use_stdin", is_flag=True, help="Validate a stream from standard input.")
@click.option("--kind", type=_KIND_CHOICES, default=None, help="Input kind when not inferable.")
@click.option("--missing", type=click.Choice(list(codec.MISSING_POLICIES)), default=None)
@click.option("--positions", "lineup_file", type=click.Path(path_type=Path), default=None,
              help="Lineup JSON ({team_id, lines, labels}) to check position labels.")
@click.option("--config", "config_file", type=click.Path(path_type=Path), default=None)
@click.option("--jobs", type=int, default=1, help="Worker cap (processing stays deterministic).")
def validate(paths, fmt, strict_warnings, use_stdin, kind, missing, lineup_file, config_file, jobs):
    """Validate documents, streams, bundle directories or manifests."""
    del jobs  # accepted for interface stability; validation is sequential
    config = _read_config(config_file)
    policy = _resolve_policy(missing, config)
    fmt = config.get("format", fmt) if fmt == "text" else fmt

    entries = []
    if use_stdin:
        if kind not in codec.STREAM_KINDS:
            _fail("--stdin requires --kind with a stream kind")
        entries.append(
            ("<stdin>", _validate_stream_source(sys.stdin.buffer, kind, policy))
        )
    if not paths and not use_stdin and lineup_file is None:
        _fail("no inputs given")
    for path in paths:
        if not path.exists():
            _fail(f"no such path: {path}")
        try:
            entries.append((str(path), _validate_path(path, policy, kind)))
        except (CdfError, OSError) as exc:
            _fail(f"{path}: {exc}")
    if lineup_file is not None:
        try:
            lineup = json.loads(Path(lineup_file).read_text(encoding="utf-8"))
            assignment = positions.LineupAssignment(
                team_id=lineup.get("team_id", ""),
                labels=tuple(sorted(lineup.get("labels", {}).items())),
            )
            entries.append(
                (
                    str(lineup_file),
                    positions.validate_lineup(assignment, lineup.get("lines", ())),
                )
            )
        except (CdfError, OSError, ValueError) as exc:
            _fail(f"{lineup_file}: {exc}")

    _emit_report(entries, fmt)
    merged = ValidationReport()
    for _, report in entries:
        merged.merge(report)
    sys.exit(_exit_code(merged, strict_warnings))


def _side_assignments(meta) -> dict[str, SideAssignment]:
    out = {}
    if meta is None:
        return out
    for detail in meta.period_details:
        if detail.type and detail.left_team_id and detail.right_team_id:
            out[detail.type] = SideAssignment(
                detail.type, detail.left_team_id, detail.right_team_id
            )
    return out


@main.command()
@click.argument("input_path", type=click.Path(exists=True, path_type=Path))
@click.argument("output_path", type=click.Path(path_type=Path), required=False)
@click.option("--kind", type=_KIND_CHOICES, default=None)
@click.option("--sides", type=click.Choice(["cdf", "actual"]), default="cdf")
@click.option("--missing", "out_policy", type=click.Choice(["null", "sentinel"]), default="null")
@click.option("--precision", type=int, default=3, show_default=True,
              help="Decimal places (the format fixes this at 3).")
@click.option("--meta", "meta_path", type=click.Path(exists=True, path_type=Path), default=None,
              help="Match meta providing per-period sides for --sides=actual.")
@click.option("--force", is_flag=True, help="Emit output despite error findings.")
@click.option("--config", "config_file", type=click.Path(path_type=Path), default=None)
def normalize(input_path, output_path, kind, sides, out_policy, precision, meta_path, force, config_file):
    """Rewrite a document or stream in canonical form."""
    if precision != 3:
        _fail("the format mandates exactly three decimal places")
    config = _read_config(config_file)
    in_policy = _resolve_policy(None, config)

    meta = None
    if meta_path is not None:
        meta, _ = codec.read_document(meta_path.read_bytes(), "meta", in_policy)
    assignments = _side_assignments(meta)
    if sides == "actual" and meta is None:
        _fail("--sides=actual requires --meta with per-period sides")

    data = input_path.read_bytes()
    sink = open(output_path, "wb") if output_path else sys.stdout.buffer

    def transform(record, stream_kind):
        if sides == "actual" and meta is not None:
            assignment = assignments.get(record.period)
            home_id = meta.home_team.id
            if assignment is not None and home_id is not None:
                record = to_actual_sides(record, assignment, home_id)
        return record

    try:
        if input_path.suffix == ".jsonl" or kind in codec.STREAM_KINDS:
            stream_kind = kind if kind in codec.STREAM_KINDS else _stream_kind_for(input_path)
            if stream_kind is None:
                _fail(f"cannot infer stream kind for {input_path}; pass --kind")
            had_errors = False
            lines = []
            for record, report in codec.read_line_stream(data, stream_kind, in_policy):
                if report.has_errors:
                    had_errors = True
                if record is not None:
                    lines.append(
                        codec.encode_record(
                            transform(record, stream_kind), stream_kind, out_policy
                        )
                    )
            if had_errors and not force:
                click.echo("error findings present; use --force to emit anyway", err=True)
                sys.exit(2)
            for line in lines:
                sink.write(line)
        else:
            obj = json.loads(data.decode("utf-8"))
            doc_kind = kind if kind in codec.DOC_KINDS else detect_document_kind(obj)
            if doc_kind is None:
                _fail(f"cannot infer document kind for {input_path}; pass --kind")
            doc, report = codec.read_document(data, doc_kind, in_policy)
            if report.has_errors and not force:
                click.echo("error findings present; use --force to emit anyway", err=True)
                sys.exit(2)
            sink.write(codec.write_document(doc, doc_kind, out_policy))
    except CdfError as exc:
        _fail(str(exc))
    finally:
        if output_path:
            sink.close()
    sys.exit(0)


@main.command()
@click.argument("bundle_path", type=click.Path(exists=True, path_type=Path))
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.option("--figures", "figures_dir", type=click.Path(path_type=Path), default=None,
              help="Also render summary charts into this directory.")
@click.option("--missing", type=click.Choice(list(codec.MISSING_POLICIES)), default=None)
def summarize(bundle_path, fmt, figures_dir, missing):
    """Digest a bundle: identity, result, event and frame counts."""
    policy = _resolve_policy(missing, {})
    try:
        loaded = bundle_mod.load_bundle(bundle_path, policy)
        summary = bundle_mod.summarize_bundle(loaded)
    except (CdfError, OSError, ValueError) as exc:
        _fail(f"{bundle_path}: {exc}")
    if figures_dir is not None:
        from . import figures

        for path in figures.render_summary_figures(summary, figures_dir):
            click.echo(f"wrote {path}", err=True)
    if fmt == "json":
        click.echo(json.dumps(summary, indent=2))
    else:
        click.echo(f"match:   {summary['match_id']}")
        click.echo(
            f"teams:   {summary['teams']['home']} vs {summary['teams']['away']}"
        )
        result = summary["result"] or "unknown"
        if summary["winning_team_id"]:
            result += f", winner {summary['winning_team_id']}"
        click.echo(f"result:  {result}")
        click.echo(f"events:  {summary['event_counts'] or '{}'}")
        click.echo(f"frames:  {summary['frame_counts'] or '{}'}")
        click.echo(f"budget:  {summary['frame_budget']}")
        f = summary["findings"]
        click.echo(
            f"findings: {f['error']} error(s), {f['warning']} warning(s), {f['info']} info"
        )
    errors = summary["findings"]["error"]
    warnings = summary["findings"]["warning"]
    sys.exit(2 if errors else (1 if warnings else 0))


@main.command("gen-fixture")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--minutes", type=float, default=1.0, show_default=True,
              help="Playing time per half.")
@click.option("--fps", type=int, default=25, show_default=True)
@click.option("--events", "event_count", type=int, default=12, show_default=True)
@click.option("--skeletal", is_flag=True, help="Include skeletal tracking.")
@click.option("--out", "out_dir", type=click.Path(path_type=Path), required=True)
def gen_fixture(seed, minutes, fps, event_count, skeletal, out_dir):
    """Write a deterministic synthetic bundle to a directory."""
    try:
        spec = fixtures.FixtureSpec(
            seed=seed,
            minutes=minutes,
            fps=fps,
            event_count=event_count,
            include_skeletal=skeletal,
        )
        written = fixtures.write_bundle(spec, out_dir)
    except (CdfError, OSError) as exc:
        _fail(str(exc))
    for kind, path in sorted(written.items()):
        click.echo(f"wrote {kind}: {path}", err=True)
    sys.exit(0)


if __name__ == "__main__":  # pragma: no cover
    main()
