"""Skeletal hierarchy declaration: parsing, validation and pose geometry.

The hierarchy is a glTF-2.0-style node list: each node has a snake_case
``name`` (direction indicator as suffix), a ``translation`` 3-vector
expressing its direction relative to its parent, a ``rotation``
quaternion in (x, y, z, w) order (w last, identity = [0, 0, 0, 1]) and a
``children`` list of node indices. A valid hierarchy is a single rooted
tree.

Translations are unit direction indicators, not metric limb lengths, so
the derived T-pose is topological rather than anthropometric.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass

from .model import CdfDomainError, SkeletonFrame, ValidationReport

_NAME_RE = re.compile(r"^[a-z][a-z0-9]*(?:_[a-z0-9]+)*$")

#: Tolerance on quaternion norm deviation from 1.
QUAT_NORM_TOLERANCE = 1e-6


@dataclass(frozen=True, slots=True)
class LimbNode:
    name: str
    translation: tuple[float, float, float]
    rotation: tuple[float, float, float, float]  # (x, y, z, w)
    children: tuple[int, ...]


@dataclass(frozen=True, slots=True)
class SkeletonHierarchy:
    nodes: tuple[LimbNode, ...]
    root: int

    def names(self) -> frozenset[str]:
        return frozenset(node.name for node in self.nodes)

    def parent_of(self, index: int) -> int | None:
        for i, node in enumerate(self.nodes):
            if index in node.children:
                return i
        return None

    def depth(self) -> int:
        """Longest root-to-leaf edge count."""
        def walk(i: int) -> int:
            node = self.nodes[i]
            if not node.children:
                return 0
            return 1 + max(walk(c) for c in node.children)

        return walk(self.root)


def validate_hierarchy_json(text: str) -> tuple[SkeletonHierarchy | None, ValidationReport]:
    """Validate a hierarchy given as the raw JSON text of the node array."""
    report = ValidationReport()
    try:
        raw = json.loads(text)
    except ValueError as exc:
        report.add("SK-201", "error", "limb_nodes", f"not valid JSON: {exc}")
        return None, report
    hierarchy, parsed_report = validate_hierarchy(raw)
    report.merge(parsed_report)
    return hierarchy, report


def validate_hierarchy(raw) -> tuple[SkeletonHierarchy | None, ValidationReport]:
    """Parse and validate a raw (JSON-decoded) limb-node array.

    Returns the hierarchy (or ``None`` if structurally unusable) plus a
    report. All defects are findings; nothing raises.
    """
    report = ValidationReport()
    if not isinstance(raw, list) or not raw:
        report.add("SK-201", "error", "limb_nodes", "hierarchy must be a non-empty array")
        return None, report

    nodes: list[LimbNode] = []
    usable = True
    names_seen: dict[str, int] = {}
    for i, item in enumerate(raw):
        path = f"limb_nodes[{i}]"
        if not isinstance(item, dict):
            report.add("SK-201", "error", path, "node is not an object")
            usable = False
            continue
        name = item.get("name")
        if not isinstance(name, str) or not name:
            report.add("SK-201", "error", f"{path}/name", "missing or non-text name")
            name = f"node_{i}"
            usable = False
        elif not _NAME_RE.match(name):
            report.add(
                "SK-208",
                "error",
                f"{path}/name",
                f"name {name!r} does not follow snake_case naming",
            )
        elif any(part in ("left", "right") for part in name.split("_")[:-1]):
            report.add(
                "SK-208",
                "error",
                f"{path}/name",
                f"direction indicator in {name!r} must be a suffix",
            )
        if name in names_seen:
            report.add(
                "SK-209",
                "error",
                f"{path}/name",
                f"name {name!r} already used by node {names_seen[name]}",
            )
        names_seen.setdefault(name, i)

        translation = _vector(item.get("translation"), 3)
        if translation is None:
            report.add("SK-201", "error", f"{path}/translation", "expected a 3-vector")
            translation = (0.0, 0.0, 0.0)
        rotation = _vector(item.get("rotation"), 4)
        if rotation is None:
            report.add("SK-201", "error", f"{path}/rotation", "expected a 4-component quaternion")
            rotation = (0.0, 0.0, 0.0, 1.0)
        else:
            norm = math.sqrt(sum(c * c for c in rotation))
            if abs(norm - 1.0) > QUAT_NORM_TOLERANCE:
                report.add(
                    "SK-206",
                    "error",
                    f"{path}/rotation",
                    f"quaternion norm {norm!r} deviates from 1 beyond tolerance",
                )
        children_raw = item.get("children", [])
        children: list[int] = []
        if not isinstance(children_raw, list):
            report.add("SK-201", "error", f"{path}/children", "expected an index array")
        else:
            for c in children_raw:
                if not isinstance(c, int) or isinstance(c, bool) or not 0 <= c < len(raw):
                    report.add(
                        "SK-202",
                        "error",
                        f"{path}/children",
                        f"child index {c!r} out of range",
                    )
                elif c == i:
                    report.add("SK-204", "error", f"{path}/children", "node lists itself as child")
                else:
                    children.append(c)
        nodes.append(LimbNode(name, translation, rotation, tuple(children)))

    if not usable:
        return None, report

    parent: dict[int, int] = {}
    for i, node in enumerate(nodes):
        for c in node.children:
            if c in parent:
                report.add(
                    "SK-203",
                    "error",
                    f"limb_nodes[{c}]",
                    f"node has multiple parents ({parent[c]} and {i})",
                )
            else:
                parent[c] = i

    roots = [i for i in range(len(nodes)) if i not in parent]
    if len(roots) != 1:
        report.add(
            "SK-205",
            "error",
            "limb_nodes",
            f"hierarchy must have exactly one root, found {len(roots)}",
        )
        if not roots:
            return None, report
    root = roots[0]

    # Cycle detection: every node must be reachable from the root exactly
    # once; anything unvisited sits on a cycle (or under a second root,
    # already reported above).
    visited: set[int] = set()
    stack = [root]
    while stack:
        i = stack.pop()
        if i in visited:
            report.add("SK-204", "error", f"limb_nodes[{i}]", "cycle through this node")
            continue
        visited.add(i)
        stack.extend(nodes[i].children)
    unvisited = set(range(len(nodes))) - visited
    if unvisited and len(roots) == 1:
        for i in sorted(unvisited):
            report.add(
                "SK-204", "error", f"limb_nodes[{i}]", "node unreachable from the root"
            )

    _symmetry_lint(nodes, parent, report)

    hierarchy = SkeletonHierarchy(tuple(nodes), root)
    if report.has_errors:
        return None, report
    return hierarchy, report


def _vector(raw, size: int):
    if (
        not isinstance(raw, list)
        or len(raw) != size
        or any(isinstance(c, bool) or not isinstance(c, (int, float)) for c in raw)
        or any(math.isnan(c) or math.isinf(c) for c in raw)
    ):
        return None
    return tuple(float(c) for c in raw)


def _symmetry_lint(nodes, parent, report: ValidationReport) -> None:
    """Warn when a *_left node lacks a *_right counterpart with x-negated
    translation; a symmetric T-pose satisfies this."""
    by_name = {node.name: i for i, node in enumerate(nodes)}
    for i, node in enumerate(nodes):
        if not node.name.endswith("_left"):
            continue
        twin_name = node.name[: -len("_left")] + "_right"
        twin_index = by_name.get(twin_name)
        twin = nodes[twin_index] if twin_index is not None else None
        if (
            twin is None
            or twin.translation != (-node.translation[0],) + node.translation[1:]
        ):
            report.add(
                "SK-207",
                "warning",
                f"limb_nodes[{i}]",
                f"{node.name!r} has no mirrored sibling {twin_name!r}",
            )


# ---------------------------------------------------------------------------
# Pose geometry
# ---------------------------------------------------------------------------


def t_pose_positions(hierarchy: SkeletonHierarchy) -> dict[str, tuple[float, float, float]]:
    """Node positions in the declared T-pose: root at the origin, each node
    at its parent's position plus the parent-chain-rotated translation.

    With all-identity rotations this reduces to prefix sums of the
    translations along root paths.
    """
    if not isinstance(hierarchy, SkeletonHierarchy):
        raise CdfDomainError("t_pose_positions requires a validated hierarchy")
    positions: dict[str, tuple[float, float, float]] = {}
    identity = (0.0, 0.0, 0.0, 1.0)

    def walk(index: int, origin, orientation) -> None:
        node = hierarchy.nodes[index]
        position = tuple(
            o + d for o, d in zip(origin, _rotate(orientation, node.translation))
        )
        positions[node.name] = position
        child_orientation = _compose(orientation, node.rotation)
        for child in node.children:
            walk(child, position, child_orientation)

    root = hierarchy.nodes[hierarchy.root]
    positions[root.name] = (0.0, 0.0, 0.0)
    orientation = root.rotation if root.rotation != identity else identity
    for child in root.children:
        walk(child, (0.0, 0.0, 0.0), orientation)
    return positions


def _compose(q1, q2):
    """Hamilton product q1 * q2, both in (x, y, z, w) order."""
    x1, y1, z1, w1 = q1
    x2, y2, z2, w2 = q2
    return (
        w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
        w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
        w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
        w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
    )


def _rotate(q, v):
    """Rotate vector v by quaternion q (x, y, z, w)."""
    qx, qy, qz, qw = q
    vq = (v[0], v[1], v[2], 0.0)
    conj = (-qx, -qy, -qz, qw)
    rx, ry, rz, _ = _compose(_compose(q, vq), conj)
    return (rx, ry, rz)


# ---------------------------------------------------------------------------
# Frame cross-checks
# ---------------------------------------------------------------------------


def cross_check_limbs(hierarchy: SkeletonHierarchy, frame: SkeletonFrame) -> ValidationReport:
    """Check that each player's tracked limb names equal the hierarchy's
    declared name set; report per-player supersets and subsets."""
    report = ValidationReport()
    declared = hierarchy.names()
    for side, players in (("home", frame.home_players), ("away", frame.away_players)):
        for i, player in enumerate(players):
            path = f"teams/{side}/players[{i}]"
            names = player.limb_names()
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
                    f"limb {absent!r} missing for player {player.id!r}",
                )
    return report
