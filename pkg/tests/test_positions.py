"""Position labels and formation-line consistency."""

import itertools

import pytest

from cdfkit import positions
from cdfkit.model import CdfDomainError


def _assignment(labels):
    return positions.LineupAssignment(
        team_id="t1",
        labels=tuple((f"p{i:02d}", label) for i, label in enumerate(labels)),
    )


def _compositions_of_ten():
    """All orderings of at most four line sizes in 1..5 summing to 10."""
    out = []
    for n in (1, 2, 3, 4):
        for combo in itertools.product(range(1, 6), repeat=n):
            if sum(combo) == 10:
                out.append(combo)
    return out


def test_label_vocabulary():
    assert len(positions.POSITION_LABELS) == 22
    assert positions.GOALKEEPER in positions.POSITION_LABELS
    assert {"LB", "CB", "RB", "CDM", "CM", "CAM", "CF", "LW", "RW"} <= set(
        positions.POSITION_LABELS
    )


def test_line_shapes_for_each_size():
    band = positions.DEFENSE_BAND  # (LB, LCB, CB, RCB, RB)
    assert positions.allowed_line_sets(band, 1) == (frozenset({"CB"}),)
    assert set(positions.allowed_line_sets(band, 2)) == {
        frozenset({"LB", "RB"}),
        frozenset({"LCB", "RCB"}),
    }
    assert set(positions.allowed_line_sets(band, 3)) == {frozenset({"LB", "CB", "RB"})}
    assert set(positions.allowed_line_sets(band, 4)) == {
        frozenset({"LB", "LCB", "RCB", "RB"})
    }
    assert set(positions.allowed_line_sets(band, 5)) == {frozenset(band)}


def test_three_wide_bands_have_no_four_player_line():
    assert positions.allowed_line_sets(positions.DEFENSIVE_MID_BAND, 4) == ()
    assert positions.allowed_line_sets(positions.DEFENSIVE_MID_BAND, 2) == (
        frozenset({"LDM", "RDM"}),
    )


def test_classic_back_four_midfield_four_front_two():
    labels = ["GK", "LB", "LCB", "RCB", "RB", "LM", "LCM", "RCM", "RM", "LCF", "RCF"]
    report = positions.validate_lineup(_assignment(labels), (4, 4, 2))
    assert not report.findings, report.to_text()


def test_holding_pair_plus_playmaker():
    labels = ["GK", "LB", "LCB", "RCB", "RB", "LDM", "RDM", "CAM", "LW", "CF", "RW"]
    report = positions.validate_lineup(_assignment(labels), (4, 2, 1, 3))
    assert not report.findings, report.to_text()


def test_unknown_label_is_flagged():
    labels = ["GK", "LB", "LCB", "RCB", "RB", "LM", "LCM", "RCM", "RM", "LCF", "SWEEPER"]
    report = positions.validate_lineup(_assignment(labels), (4, 4, 2))
    assert any(f.rule_id == "PL-201" for f in report.findings)


def test_duplicate_label_is_flagged():
    labels = ["GK", "LB", "LCB", "RCB", "RB", "LM", "LCM", "RCM", "RM", "LCF", "LCF"]
    report = positions.validate_lineup(_assignment(labels), (4, 4, 2))
    assert any(f.rule_id == "PL-202" for f in report.findings)


def test_goalkeeper_count_must_be_one():
    labels = ["GK", "GK", "LCB", "RCB", "RB", "LM", "LCM", "RCM", "RM", "LCF", "RCF"]
    report = positions.validate_lineup(_assignment(labels), (4, 4, 2))
    assert any(f.rule_id == "PL-203" for f in report.findings)


def test_eleven_players_required():
    labels = ["GK", "LB", "LCB", "RCB", "RB", "LM", "LCM", "RCM", "RM", "LCF"]
    report = positions.validate_lineup(_assignment(labels), (4, 4, 2))
    assert any(f.rule_id == "PL-204" for f in report.findings)


def test_invalid_back_line_is_flagged():
    # LB+LCB is not a valid two-player back line (outer or inner pairs only)
    labels = ["GK", "LB", "LCB", "LDM", "CDM", "RDM", "LM", "RM", "LW", "CF", "RW"]
    report = positions.validate_lineup(_assignment(labels), (2, 3, 2, 3))
    assert any(f.rule_id == "PL-205" for f in report.findings)


def test_impossible_middle_partition_is_flagged():
    # CDM + CAM + CM cannot form a single 3-player line in one band
    labels = ["GK", "LB", "LCB", "RCB", "RB", "CDM", "CM", "CAM", "LW", "CF", "RW"]
    report = positions.validate_lineup(_assignment(labels), (4, 3, 3))
    assert any(f.rule_id == "PL-207" for f in report.findings)


def test_line_sizes_must_be_sane():
    labels = ["GK", "LB", "LCB", "RCB", "RB", "LM", "LCM", "RCM", "RM", "LCF", "RCF"]
    with pytest.raises(CdfDomainError):
        positions.validate_lineup(_assignment(labels), (4, 4, 3))  # sums to 11
    with pytest.raises(CdfDomainError):
        positions.validate_lineup(_assignment(labels), (6, 2, 2))
    with pytest.raises(CdfDomainError):
        positions.validate_lineup(_assignment(labels), ())


def test_enumeration_agrees_with_validator_on_sample_formations():
    for lines in ((4, 4, 2), (4, 2, 3, 1), (3, 5, 2), (5, 4, 1), (1, 4, 5)):
        valid_sets = positions.enumerate_valid_label_sets(lines)
        for label_set in valid_sets:
            labels = ["GK", *sorted(label_set)]
            report = positions.validate_lineup(_assignment(labels), lines)
            assert not report.findings, (lines, sorted(label_set), report.to_text())


def test_enumeration_rejects_off_by_one_label_swaps():
    lines = (4, 4, 2)
    valid_sets = positions.enumerate_valid_label_sets(lines)
    base = next(iter(valid_sets))
    for removed in sorted(base):
        for added in sorted(set(positions.POSITION_LABELS) - {"GK"} - base):
            candidate = (base - {removed}) | {added}
            labels = ["GK", *sorted(candidate)]
            report = positions.validate_lineup(_assignment(labels), lines)
            assert bool(report.findings) == (candidate not in valid_sets), (
                sorted(candidate)
            )


def test_every_composition_has_consistent_enumeration():
    for lines in _compositions_of_ten():
        for label_set in positions.enumerate_valid_label_sets(lines):
            assert len(label_set) == 10
            labels = ["GK", *sorted(label_set)]
            report = positions.validate_lineup(_assignment(labels), lines)
            assert not report.findings, (lines, sorted(label_set))
