"""
Graded quivers and Ext-dimension tables.

A half quiver Q has arrows of degrees floor((3-d)/2)..0; its double Q̄ adds
one dual arrow a*: j -> i of degree 2-d-r for every arrow a: i -> j of
degree r. Ext tables record dim Ext^k(E_i, E_j) for 0 <= k <= d and are
converted to and from quivers by the bookkeeping k = 1 - r.
"""

import logging
import re
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Tuple

from .exceptions import ForbiddenCycleError, QuiverError

IDENTIFIER_RE = re.compile(
    r"[A-Za-z_][A-Za-z0-9_']*(?::-?[A-Za-z0-9_]+(?:->-?[A-Za-z0-9_]+)?)*"
)
RESERVED_PREFIXES = ("alpha_", "beta_")
DUAL_PREFIX = "xi:"


def degree_range(d):
    """Arrow degrees allowed in a half quiver, from 0 down to floor((3-d)/2)."""
    return list(range(0, (3 - d) // 2 - 1, -1))


def middle_degree(d):
    """The self-dual degree (2-d)/2 for even d, None for odd d."""
    if d % 2:
        return None
    return (2 - d) // 2


@dataclass(frozen=True)
class Arrow:
    id: str
    src: str
    tgt: str
    deg: int
    # Partner id in a double quiver; on the x-side it names a*, on the star side a.
    dual: Optional[str] = None
    star: bool = False

    def is_loop(self):
        return self.src == self.tgt


@dataclass(frozen=True)
class GradedQuiver:
    """Vertices, integer-graded arrows, the CY dimension d and the half flag."""

    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...]
    d: int
    half: bool = True

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))

    def arrow(self, arrow_id):
        for a in self.arrows:
            if a.id == arrow_id:
                return a
        raise KeyError(arrow_id)

    def vertex_index(self, vertex):
        return self.vertices.index(vertex)

    def half_arrows(self):
        """Arrows of Q: all arrows of a half quiver, the x-side of a double one."""
        return tuple(a for a in self.arrows if not a.star)

    def dual_pairs(self):
        """(a, a*) pairs of a double quiver, in arrow order of the x-side."""
        by_id = {a.id: a for a in self.arrows}
        return [(a, by_id[a.dual]) for a in self.half_arrows() if a.dual in by_id]

    def forbidden_cycles(self):
        """Pairs of Q-arrows i -> j, j -> i (i != j) both of the middle degree."""
        middle = middle_degree(self.d)
        if middle is None:
            return []
        candidates = [a for a in self.half_arrows() if a.deg == middle and not a.is_loop()]
        found = []
        for n, a in enumerate(candidates):
            for b in candidates[n + 1 :]:
                if a.src == b.tgt and a.tgt == b.src:
                    found.append((a.id, b.id))
        return found

    def validate(self):
        """Returns the list of violated quiver invariants, empty when valid."""
        violations = []
        if self.d < 2:
            violations.append(f"d must be at least 2, got {self.d}")
        if len(set(self.vertices)) != len(self.vertices):
            violations.append("duplicate vertex ids")
        ids = [a.id for a in self.arrows]
        for arrow_id in sorted({i for i in ids if ids.count(i) > 1}):
            violations.append(f"duplicate arrow id {arrow_id!r}")
        allowed = set(degree_range(self.d))
        for a in self.arrows:
            if not IDENTIFIER_RE.fullmatch(a.id):
                violations.append(f"arrow id {a.id!r} is not a valid identifier")
            if a.id.startswith(RESERVED_PREFIXES):
                violations.append(f"arrow id {a.id!r} uses a reserved prefix")
            if a.src not in self.vertices or a.tgt not in self.vertices:
                violations.append(f"arrow {a.id!r} has an unknown endpoint")
            if not a.star and a.deg not in allowed:
                violations.append(
                    f"arrow {a.id!r} has degree {a.deg} outside {min(allowed)}..0"
                )
        for first, second in self.forbidden_cycles():
            violations.append(f"forbidden 2-cycle: arrows {first!r} and {second!r}")
        if self.half:
            if any(a.star for a in self.arrows):
                violations.append("half quiver contains dual arrows")
        else:
            violations.extend(self._pairing_violations())
        return violations

    def _pairing_violations(self):
        violations = []
        by_id = {a.id: a for a in self.arrows}
        partners = {}
        for a in self.half_arrows():
            b = by_id.get(a.dual) if a.dual else None
            if b is None or not b.star:
                violations.append(f"arrow {a.id!r} has no dual arrow")
                continue
            partners[b.id] = a.id
            if (b.src, b.tgt) != (a.tgt, a.src):
                violations.append(f"dual {b.id!r} does not reverse the endpoints of {a.id!r}")
            if b.deg != 2 - self.d - a.deg:
                violations.append(
                    f"dual {b.id!r} has degree {b.deg}, expected {2 - self.d - a.deg}"
                )
        for b in self.arrows:
            if b.star and partners.get(b.id) != b.dual:
                violations.append(f"dual arrow {b.id!r} is not paired")
        return violations


class Violation(NamedTuple):
    rule: str
    i: Optional[str]
    j: Optional[str]
    k: Optional[int]

    def __str__(self):
        where = ", ".join(str(p) for p in (self.i, self.j, self.k) if p is not None)
        return f"{self.rule} at ({where})" if where else self.rule


@dataclass
class ValidationReport:
    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def rules(self):
        return {v.rule for v in self.violations}

    def messages(self):
        return [str(v) for v in self.violations]


@dataclass(frozen=True, eq=False)
class ExtTable:
    """dims[(i, j)][k] = dim Ext^k(E_i, E_j); missing pairs and k outside 0..d are zero."""

    d: int
    vertices: Tuple[str, ...]
    dims: Dict[Tuple[str, str], Tuple[int, ...]]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(
            self,
            "dims",
            {(str(i), str(j)): tuple(int(n) for n in v) for (i, j), v in self.dims.items()},
        )

    def dim(self, i, j, k):
        if k < 0 or k > self.d:
            return 0
        row = self.dims.get((i, j))
        if row is None or k >= len(row):
            return 0
        return row[k]

    def row(self, i, j):
        return tuple(self.dim(i, j, k) for k in range(self.d + 1))

    def normalized(self):
        """All vertex pairs present, each with exactly d+1 entries."""
        return {(i, j): self.row(i, j) for i in self.vertices for j in self.vertices}

    def __eq__(self, other):
        if not isinstance(other, ExtTable):
            return NotImplemented
        return (
            self.d == other.d
            and self.vertices == other.vertices
            and self.normalized() == other.normalized()
        )

    def __hash__(self):
        return hash((self.d, self.vertices, tuple(sorted(self.normalized().items()))))


@dataclass(frozen=True)
class OrientationChoice:
    """Direction carrying the middle-degree x-arrows for each unordered vertex pair."""

    directions: Dict[FrozenSet[str], Tuple[str, str]] = field(default_factory=dict)

    @classmethod
    def default(cls, table):
        """Orients every pair from the vertex listed first to the one listed later."""
        middle = middle_degree(table.d)
        directions = {}
        if middle is not None:
            k = table.d // 2
            for n, i in enumerate(table.vertices):
                for j in table.vertices[n + 1 :]:
                    if table.dim(i, j, k) > 0:
                        directions[frozenset((i, j))] = (i, j)
        return cls(directions)

    def direction(self, i, j):
        try:
            return self.directions[frozenset((i, j))]
        except KeyError:
            raise QuiverError(f"no orientation chosen for vertices {i!r} and {j!r}")


def validate_ext_table(table):
    """Checks the hypotheses an Ext table must satisfy; never raises."""
    report = ValidationReport()
    add = report.violations.append
    d = table.d
    if d < 2:
        add(Violation("d below 2", None, None, d))
    for i, j in sorted(table.dims):
        if i not in table.vertices or j not in table.vertices:
            add(Violation("unknown vertex", i, j, None))
            continue
        row = table.dims[(i, j)]
        if len(row) != d + 1:
            add(Violation("degree out of range", i, j, len(row) - 1))
        for k, n in enumerate(row):
            if n < 0:
                add(Violation("negative dimension", i, j, k))
    for i in table.vertices:
        for j in table.vertices:
            if i == j and table.dim(i, i, 0) != 1:
                add(Violation("Ext^0 of a generator is not one-dimensional", i, i, 0))
            if i != j and table.dim(i, j, 0) != 0:
                add(Violation("Ext^0 between distinct generators", i, j, 0))
            for k in range(d + 1):
                if table.dim(i, j, k) != table.dim(j, i, d - k):
                    add(Violation("CY symmetry", i, j, k))
        if d % 2 == 0 and table.dim(i, i, d // 2) % 2:
            add(Violation("middle dimension odd", i, i, d // 2))
    return report


def quiver_from_ext_table(table, orient=None):
    """Builds the half quiver Q whose arrows count the Ext groups of the table."""
    report = validate_ext_table(table)
    if not report.ok:
        raise QuiverError("invalid Ext table: " + "; ".join(report.messages()), report.messages())
    if orient is None:
        orient = OrientationChoice.default(table)
    d = table.d
    middle = middle_degree(d)
    counts: Dict[Tuple[str, str, int], int] = {}
    arrows = []

    def add_arrows(i, j, r, multiplicity):
        for _ in range(multiplicity):
            n = counts.get((i, j, r), 0) + 1
            counts[(i, j, r)] = n
            arrows.append(Arrow(f"x:{i}->{j}:{r}:{n}", i, j, r))

    for r in degree_range(d):
        if r == middle:
            continue
        for i in table.vertices:
            for j in table.vertices:
                add_arrows(i, j, r, table.dim(i, j, 1 - r))
    if middle is not None:
        k = d // 2
        for n, i in enumerate(table.vertices):
            add_arrows(i, i, middle, table.dim(i, i, k) // 2)
            for j in table.vertices[n + 1 :]:
                multiplicity = table.dim(i, j, k)
                if multiplicity:
                    src, tgt = orient.direction(i, j)
                    add_arrows(src, tgt, middle, multiplicity)
    logging.info(f"Built half quiver with {len(arrows)} arrows from Ext table (d={d})")
    return GradedQuiver(table.vertices, tuple(arrows), d, half=True)


def double_quiver(quiver):
    """Adds the dual arrow xi:<id> of degree 2-d-r for every arrow of Q."""
    if not quiver.half:
        raise QuiverError("double_quiver expects a half quiver")
    cycles = quiver.forbidden_cycles()
    if cycles:
        raise ForbiddenCycleError(*cycles[0])
    violations = quiver.validate()
    if violations:
        raise QuiverError("invalid quiver: " + "; ".join(violations), violations)
    arrows = []
    for a in quiver.arrows:
        dual_id = DUAL_PREFIX + a.id
        arrows.append(Arrow(a.id, a.src, a.tgt, a.deg, dual=dual_id))
        arrows.append(Arrow(dual_id, a.tgt, a.src, 2 - quiver.d - a.deg, dual=a.id, star=True))
    return GradedQuiver(quiver.vertices, tuple(arrows), quiver.d, half=False)


def ext_table_from_quiver(qbar):
    """Reads dim Ext^k(E_i, E_j) back from a double quiver (k = 1 - degree)."""
    if qbar.half:
        raise QuiverError("ext_table_from_quiver expects a double quiver")
    d = qbar.d
    rows = {(i, j): [0] * (d + 1) for i in qbar.vertices for j in qbar.vertices}
    for i in qbar.vertices:
        rows[(i, i)][0] = 1
        rows[(i, i)][d] += 1
    for a in qbar.arrows:
        k = 1 - a.deg
        if not 0 <= k <= d:
            raise QuiverError(f"arrow {a.id!r} has degree {a.deg} outside the Ext range")
        rows[(a.src, a.tgt)][k] += 1
    return ExtTable(d, qbar.vertices, {key: tuple(v) for key, v in rows.items()})


def quiver_to_dict(quiver):
    arrows = []
    for a in quiver.arrows:
        record = {"id": a.id, "src": a.src, "tgt": a.tgt, "deg": a.deg}
        if not quiver.half and not a.star:
            record["dual"] = a.dual
        arrows.append(record)
    return {"d": quiver.d, "vertices": list(quiver.vertices), "arrows": arrows, "half": quiver.half}


def quiver_from_dict(data):
    """Decodes the quiver document; double quivers pair arrows by "dual" or the xi: prefix."""
    try:
        d = int(data["d"])
        vertices = tuple(str(v) for v in data["vertices"])
        records = list(data.get("arrows", []))
        half = bool(data.get("half", True))
        raw = [
            (str(r["id"]), str(r["src"]), str(r["tgt"]), int(r["deg"]), r.get("dual"))
            for r in records
        ]
    except (KeyError, TypeError, ValueError) as e:
        raise QuiverError(f"malformed quiver document: {e}")
    if half:
        arrows = tuple(Arrow(i, s, t, r) for i, s, t, r, _ in raw)
        return GradedQuiver(vertices, arrows, d, half=True)

    ids = {i for i, *_ in raw}
    partner_of = {}
    for arrow_id, _, _, _, dual in raw:
        if dual is None and f"{DUAL_PREFIX}{arrow_id}" in ids:
            dual = f"{DUAL_PREFIX}{arrow_id}"
        if dual is not None:
            partner_of[arrow_id] = str(dual)
    starred = set(partner_of.values())
    arrows = []
    for arrow_id, src, tgt, deg, _ in raw:
        if arrow_id in starred:
            x_side = next(a for a, b in partner_of.items() if b == arrow_id)
            arrows.append(Arrow(arrow_id, src, tgt, deg, dual=x_side, star=True))
        else:
            arrows.append(Arrow(arrow_id, src, tgt, deg, dual=partner_of.get(arrow_id)))
    quiver = GradedQuiver(vertices, tuple(arrows), d, half=False)
    violations = quiver.validate()
    if violations:
        raise QuiverError("invalid double quiver: " + "; ".join(violations), violations)
    return quiver


def ext_table_to_dict(table):
    return {
        "d": table.d,
        "dims": {f"{i},{j}": list(row) for (i, j), row in table.normalized().items()},
    }


def ext_table_from_dict(data):
    try:
        d = int(data["d"])
        dims = {}
        for key, row in data["dims"].items():
            i, j = (part.strip() for part in key.split(","))
            dims[(i, j)] = tuple(int(n) for n in row)
    except (KeyError, TypeError, ValueError, AttributeError) as e:
        raise QuiverError(f"malformed Ext table document: {e}")
    vertices = data.get("vertices")
    if vertices is None:
        seen: List[str] = []
        for i, j in dims:
            for v in (i, j):
                if v not in seen:
                    seen.append(v)
        vertices = seen
    return ExtTable(d, tuple(str(v) for v in vertices), dims)
