"""Command-line behavior: exit codes, formats, normalization, figures."""

import json

import pytest
from click.testing import CliRunner

from cdfkit import cli, fixtures


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def bundle_dir(tmp_path):
    out = tmp_path / "match"
    fixtures.write_bundle(fixtures.MUTATION_SPEC, out)
    return out


def test_validate_clean_bundle_exits_zero(runner, bundle_dir):
    result = runner.invoke(cli.main, ["validate", str(bundle_dir)])
    assert result.exit_code == 0, result.output


def test_validate_reports_errors_with_exit_two(runner, tmp_path, bundle_dir):
    sheet = json.loads((bundle_dir / "match_sheet.json").read_text())
    del sheet["match"]["id"]
    (bundle_dir / "match_sheet.json").write_text(json.dumps(sheet))
    result = runner.invoke(cli.main, ["validate", str(bundle_dir)])
    assert result.exit_code == 2
    assert "MS-001" in result.output


def test_validate_warning_exit_and_strict_promotion(runner, bundle_dir):
    sheet = json.loads((bundle_dir / "match_sheet.json").read_text())
    sheet["teams"]["home"]["players"][0]["is_starter"] = 0  # ten starters: warning
    (bundle_dir / "match_sheet.json").write_text(json.dumps(sheet))
    sheet_path = str(bundle_dir / "match_sheet.json")

    relaxed = runner.invoke(cli.main, ["validate", sheet_path])
    assert relaxed.exit_code == 1
    assert "MS-110" in relaxed.output

    strict = runner.invoke(cli.main, ["validate", "--strict-warnings", sheet_path])
    assert strict.exit_code == 2


def test_validate_json_format_carries_counts(runner, bundle_dir):
    result = runner.invoke(
        cli.main, ["validate", "--format", "json", str(bundle_dir)]
    )
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["counts"] == {"error": 0, "warning": 0, "info": 0}
    assert payload["inputs"][0]["input"] == str(bundle_dir)


def test_validate_single_document_and_stream_files(runner, bundle_dir):
    for name in ("meta.json", "events.jsonl", "tracking.jsonl", "skeletal.jsonl"):
        result = runner.invoke(cli.main, ["validate", str(bundle_dir / name)])
        assert result.exit_code == 0, (name, result.output)


def test_validate_stdin_stream(runner, bundle_dir):
    payload = (bundle_dir / "events.jsonl").read_bytes()
    result = runner.invoke(
        cli.main, ["validate", "--stdin", "--kind", "event"], input=payload
    )
    assert result.exit_code == 0, result.output


def test_validate_stdin_requires_a_stream_kind(runner):
    result = runner.invoke(cli.main, ["validate", "--stdin"], input=b"{}\n")
    assert result.exit_code == 3


def test_validate_missing_path_is_a_usage_failure(runner, tmp_path):
    result = runner.invoke(cli.main, ["validate", str(tmp_path / "nope.json")])
    assert result.exit_code == 3


def test_validate_no_inputs_is_a_usage_failure(runner):
    result = runner.invoke(cli.main, ["validate"])
    assert result.exit_code == 3


def test_validate_lineup_file(runner, tmp_path):
    lineup = {
        "team_id": "t1",
        "lines": [4, 4, 2],
        "labels": {
            "p01": "GK", "p02": "LB", "p03": "LCB", "p04": "RCB", "p05": "RB",
            "p06": "LM", "p07": "LCM", "p08": "RCM", "p09": "RM",
            "p10": "LCF", "p11": "RCF",
        },
    }
    path = tmp_path / "lineup.json"
    path.write_text(json.dumps(lineup))
    result = runner.invoke(cli.main, ["validate", "--positions", str(path)])
    assert result.exit_code == 0, result.output

    lineup["labels"]["p11"] = "LCF"  # duplicate label
    path.write_text(json.dumps(lineup))
    result = runner.invoke(cli.main, ["validate", "--positions", str(path)])
    assert result.exit_code == 2
    assert "PL-202" in result.output


def test_policy_resolution_order(runner, bundle_dir, tmp_path):
    config = tmp_path / "cdf.conf"
    config.write_text("missing = sentinel\n")
    sheet_path = str(bundle_dir / "match_sheet.json")
    # flag > environment > config; all resolve without failure
    result = runner.invoke(
        cli.main,
        ["validate", "--missing", "null", "--config", str(config), sheet_path],
        env={"CDF_MISSING_POLICY": "accept_both"},
    )
    assert result.exit_code in (0, 1)
    bad_env = runner.invoke(
        cli.main, ["validate", sheet_path], env={"CDF_MISSING_POLICY": "bogus"}
    )
    assert bad_env.exit_code == 3


def test_normalize_stream_is_idempotent(runner, bundle_dir, tmp_path):
    source = bundle_dir / "tracking.jsonl"
    once = tmp_path / "once.jsonl"
    twice = tmp_path / "twice.jsonl"
    assert runner.invoke(
        cli.main, ["normalize", str(source), str(once)]
    ).exit_code == 0
    assert runner.invoke(
        cli.main, ["normalize", "--kind", "tracking_com", str(once), str(twice)]
    ).exit_code == 0
    assert once.read_bytes() == twice.read_bytes()


def test_normalize_document_to_stdout(runner, bundle_dir):
    result = runner.invoke(cli.main, ["normalize", str(bundle_dir / "meta.json")])
    assert result.exit_code == 0
    assert json.loads(result.output)["match"]["id"]


def test_normalize_sentinel_output(runner, bundle_dir, tmp_path):
    out = tmp_path / "events.jsonl"
    result = runner.invoke(
        cli.main,
        ["normalize", "--missing", "sentinel", str(bundle_dir / "events.jsonl"), str(out)],
    )
    assert result.exit_code == 0
    text = out.read_text()
    assert '"None"' in text or "-9999" in text


def test_normalize_rejects_other_precisions(runner, bundle_dir):
    result = runner.invoke(
        cli.main, ["normalize", "--precision", "2", str(bundle_dir / "meta.json")]
    )
    assert result.exit_code == 3


def test_normalize_blocks_broken_input_without_force(runner, tmp_path, bundle_dir):
    broken = tmp_path / "events.jsonl"
    broken.write_bytes(b"not json\n" + (bundle_dir / "events.jsonl").read_bytes())
    blocked = runner.invoke(cli.main, ["normalize", str(broken), str(tmp_path / "o.jsonl")])
    assert blocked.exit_code == 2
    forced = runner.invoke(
        cli.main, ["normalize", "--force", str(broken), str(tmp_path / "o.jsonl")]
    )
    assert forced.exit_code == 0


def test_summarize_text_and_json(runner, bundle_dir):
    text = runner.invoke(cli.main, ["summarize", str(bundle_dir)])
    assert text.exit_code == 0, text.output
    assert "match:" in text.output
    as_json = runner.invoke(cli.main, ["summarize", "--format", "json", str(bundle_dir)])
    summary = json.loads(as_json.output)
    assert summary["findings"]["error"] == 0
    assert summary["frame_budget"] == "within tolerance"


def test_summarize_renders_figures(runner, bundle_dir, tmp_path):
    figures_dir = tmp_path / "charts"
    result = runner.invoke(
        cli.main, ["summarize", "--figures", str(figures_dir), str(bundle_dir)]
    )
    assert result.exit_code == 0, result.output
    created = sorted(p.name for p in figures_dir.glob("*.png"))
    assert created == ["event_types.png", "frames_per_period.png"]
    for p in figures_dir.glob("*.png"):
        assert p.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_gen_fixture_round_trips_through_validate(runner, tmp_path):
    out = tmp_path / "gen"
    made = runner.invoke(
        cli.main,
        ["gen-fixture", "--seed", "3", "--minutes", "0.1", "--skeletal",
         "--out", str(out)],
    )
    assert made.exit_code == 0, made.output
    checked = runner.invoke(cli.main, ["validate", str(out)])
    assert checked.exit_code == 0, checked.output
