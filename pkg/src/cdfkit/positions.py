"""Pre-match position labels: closed vocabulary and line-composition rules.

Labels are spatial assignments, not roles. Each team may use a label at
most once among the 11 players in play. A formation is described by its
outfield line sizes back to front (e.g. 4-4-2); the defensive line draws
from the back band, the attacking line from the forward band, and every
middle line from exactly one of the defensive-midfield, midfield or
attacking-midfield bands.

Composition rules per line of size n drawn from a five-label band
(L, LC, C, RC, R):

* n = 1: the central label;
* n = 2: the outer pair (L, R) or the inner pair (LC, RC);
* n = 3: L, C and R;
* n = 4: all but the central label;
* n = 5: all five.

Three-label bands (DM, AM) follow the same pattern (center / outer pair
/ all three) and can never supply a line of four or five players - those
must use the five midfield labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .model import CdfDomainError, ValidationReport

GOALKEEPER = "GK"

DEFENSE_BAND: tuple[str, ...] = ("LB", "LCB", "CB", "RCB", "RB")
DEFENSIVE_MID_BAND: tuple[str, ...] = ("LDM", "CDM", "RDM")
MIDFIELD_BAND: tuple[str, ...] = ("LM", "LCM", "CM", "RCM", "RM")
ATTACKING_MID_BAND: tuple[str, ...] = ("LAM", "CAM", "RAM")
FORWARD_BAND: tuple[str, ...] = ("LW", "LCF", "CF", "RCF", "RW")

#: Bands eligible for middle (neither first nor last) formation lines.
MIDDLE_BANDS: tuple[tuple[str, ...], ...] = (
    DEFENSIVE_MID_BAND,
    MIDFIELD_BAND,
    ATTACKING_MID_BAND,
)

POSITION_LABELS: frozenset[str] = frozenset(
    (GOALKEEPER,)
    + DEFENSE_BAND
    + DEFENSIVE_MID_BAND
    + MIDFIELD_BAND
    + ATTACKING_MID_BAND
    + FORWARD_BAND
)

POSITION_GROUPS: dict[str, str] = {GOALKEEPER: "GK"}
for _band, _group in (
    (DEFENSE_BAND, "D"),
    (DEFENSIVE_MID_BAND, "DM"),
    (MIDFIELD_BAND, "M"),
    (ATTACKING_MID_BAND, "AM"),
    (FORWARD_BAND, "F"),
):
    for _label in _band:
        POSITION_GROUPS[_label] = _group


def allowed_line_sets(band: tuple[str, ...], size: int) -> tuple[frozenset, ...]:
    """All label sets a line of ``size`` players may draw from a band."""
    n = len(band)
    center = band[n // 2]
    if size == 1:
        return (frozenset({center}),)
    if size == 2:
        outer = frozenset({band[0], band[-1]})
        if n == 3:
            return (outer,)
        return (outer, frozenset({band[1], band[-2]}))
    if size == 3:
        return (frozenset({band[0], center, band[-1]}),)
    if size == 4 and n == 5:
        return (frozenset(band) - {center},)
    if size == 5 and n == 5:
        return (frozenset(band),)
    return ()


@dataclass(frozen=True, slots=True)
class LineupAssignment:
    """One team's labeled players in play: player id -> position label."""

    team_id: str
    labels: tuple[tuple[str, str], ...]  # (player_id, label) pairs

    def label_list(self) -> list[str]:
        return [label for _, label in self.labels]


def _check_lines(lines) -> tuple[int, ...]:
    lines = tuple(lines)
    if not lines or any(not isinstance(s, int) or not 1 <= s <= 5 for s in lines):
        raise CdfDomainError("formation lines must be sizes in 1..5")
    if sum(lines) != 10:
        raise CdfDomainError(f"formation lines must sum to 10, got {sum(lines)}")
    return lines


def validate_lineup(assignment: LineupAssignment, lines) -> ValidationReport:
    """Check a team's label assignment against a declared formation.

    ``lines`` are the outfield line sizes back to front. Findings cover
    unknown labels, duplicates, goalkeeper count, and line compositions
    that no band assignment can satisfy.
    """
    lines = _check_lines(lines)
    report = ValidationReport()
    labels = assignment.label_list()

    seen: set[str] = set()
    for player_id, label in assignment.labels:
        path = f"players/{player_id}"
        if label not in POSITION_LABELS:
            report.add("PL-201", "error", path, f"unknown position label {label!r}")
        elif label in seen:
            report.add("PL-202", "error", path, f"duplicate position label {label!r}")
        seen.add(label)

    gk_count = labels.count(GOALKEEPER)
    if gk_count != 1:
        report.add(
            "PL-203",
            "error",
            "players",
            f"expected exactly one goalkeeper, found {gk_count}",
        )
    if len(labels) != 11:
        report.add(
            "PL-204",
            "error",
            "players",
            f"expected 11 labeled players in play, found {len(labels)}",
        )
    if report.has_errors:
        return report  # line composition is meaningless on broken input

    outfield = frozenset(labels) - {GOALKEEPER}
    defense = outfield & frozenset(DEFENSE_BAND)
    attack = outfield & frozenset(FORWARD_BAND)
    middle = outfield - defense - attack

    if defense not in allowed_line_sets(DEFENSE_BAND, lines[0]):
        report.add(
            "PL-205",
            "error",
            "lines/defense",
            f"defensive labels {sorted(defense)} are not a valid "
            f"{lines[0]}-player back line",
        )
    if attack not in allowed_line_sets(FORWARD_BAND, lines[-1]):
        report.add(
            "PL-206",
            "error",
            "lines/attack",
            f"attacking labels {sorted(attack)} are not a valid "
            f"{lines[-1]}-player front line",
        )
    middle_sizes = lines[1:-1] if len(lines) > 1 else ()
    if not _middle_partition_exists(middle, middle_sizes):
        report.add(
            "PL-207",
            "error",
            "lines/middle",
            f"middle labels {sorted(middle)} cannot form lines of sizes "
            f"{list(middle_sizes)}",
        )
    return report


def _middle_partition_exists(labels: frozenset, sizes) -> bool:
    """Can ``labels`` be split into valid band lines of the given sizes?"""
    if not sizes:
        return not labels
    if len(labels) != sum(sizes):
        return False
    size, rest = sizes[0], sizes[1:]
    for picked in combinations(sorted(labels), size):
        picked_set = frozenset(picked)
        if any(
            picked_set in allowed_line_sets(band, size) for band in MIDDLE_BANDS
        ) and _middle_partition_exists(labels - picked_set, rest):
            return True
    return False


def enumerate_valid_label_sets(lines) -> frozenset[frozenset]:
    """Every outfield label set valid for the given formation lines.

    Exhaustive by construction: the cartesian product of each line's
    allowed sets, filtered for global label uniqueness. Serves as the
    brute-force oracle for :func:`validate_lineup`.
    """
    lines = _check_lines(lines)
    per_line: list[tuple[frozenset, ...]] = []
    for i, size in enumerate(lines):
        if i == 0:
            options = allowed_line_sets(DEFENSE_BAND, size)
        elif i == len(lines) - 1:
            options = allowed_line_sets(FORWARD_BAND, size)
        else:
            options = tuple(
                s for band in MIDDLE_BANDS for s in allowed_line_sets(band, size)
            )
        if not options:
            return frozenset()
        per_line.append(options)

    out = set()
    for combo in product(*per_line):
        union = frozenset().union(*combo)
        if len(union) == sum(lines):  # all labels distinct across lines
            out.add(union)
    return frozenset(out)
