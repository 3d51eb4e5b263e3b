"""The two-colouring strategy against a concrete host, its verifier and audit.

Strategy: every edge touching a vertex of degree >= d+1 (E_high) is red.
Among the components of G', pick the one whose rooted embeddings into the
trimmed host (host minus E_high) use the fewest root vertices, call that
root set V_r, and colour every edge at V_r red too.  All other edges are
blue.  Blue then lies inside the trimmed host with every V_r vertex blue
isolated, so the chosen component has no blue copy at all.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .constructor import GPrime
from .embedder import gprime_embeds, root_candidates, shared_root_indices
from .errors import InvalidColoring, InvalidParameter, ParseError, TooLarge
from .graph import Edge, Graph, content_lines, edge_subgraph, parse_edge_line, parse_int

RED, BLUE = "R", "B"


@dataclass(frozen=True)
class Coloring:
    num_vertices: int
    assignment: dict[Edge, str]  # canonical edge -> "R" | "B"

    @property
    def red(self) -> frozenset[Edge]:
        return frozenset(e for e, c in self.assignment.items() if c == RED)

    @property
    def blue(self) -> frozenset[Edge]:
        return frozenset(e for e, c in self.assignment.items() if c == BLUE)

    def check_against(self, host: Graph) -> None:
        if self.num_vertices != host.num_vertices:
            raise InvalidColoring(f"coloring has {self.num_vertices} vertices, host has {host.num_vertices}")
        if set(self.assignment) != host.edges:
            missing = len(host.edges - set(self.assignment))
            extra = len(set(self.assignment) - host.edges)
            raise InvalidColoring(f"coloring does not cover the host edges ({missing} missing, {extra} foreign)")
        if any(c not in (RED, BLUE) for c in self.assignment.values()):
            raise InvalidColoring("colors must be R or B")


def serialize_coloring(coloring: Coloring) -> str:
    lines = [f"coloring {coloring.num_vertices}"]
    lines.extend(f"e {u} {v} {coloring.assignment[(u, v)]}" for u, v in sorted(coloring.assignment))
    return "\n".join(lines) + "\n"


def parse_coloring(text: str) -> Coloring:
    lines = content_lines(text)
    header = next(lines, None)
    if header is None or len(header[1]) != 2 or header[1][0] != "coloring":
        raise ParseError("expected 'coloring <num_vertices>' header", header[0] if header else 1)
    n = parse_int(header[1][1], header[0], "vertex count")
    seen: set[Edge] = set()
    assignment = {}
    for lineno, tokens in lines:
        if tokens[0] != "e" or len(tokens) != 4 or tokens[3] not in (RED, BLUE):
            raise ParseError(f"malformed coloring line {' '.join(tokens)!r}", lineno)
        assignment[parse_edge_line(tokens, lineno, n, seen)] = tokens[3]
    return Coloring(n, assignment)


# -- strategy ------------------------------------------------------------------


def high_degree_edges(host: Graph, d: int) -> frozenset[Edge]:
    if d < 2:
        raise InvalidParameter(f"need d >= 2, got {d}")
    return frozenset((u, v) for u, v in host.edges if host.degree(u) > d or host.degree(v) > d)


def _shared_indices_chunk(host: Graph, gprime: GPrime, vertices: list[int]) -> list[frozenset[int]]:
    return [shared_root_indices(host, v, gprime) for v in vertices]


def all_shared_root_indices(host: Graph, gprime: GPrime, workers: int = 1) -> dict[int, frozenset[int]]:
    """shared_root_indices for every non-isolated vertex."""
    vertices = host.non_isolated()
    if workers <= 1 or len(vertices) < 2 * workers:
        results = _shared_indices_chunk(host, gprime, vertices)
    else:
        chunks = [vertices[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_shared_indices_chunk, [host] * workers, [gprime] * workers, chunks))
        by_vertex = {v: s for chunk, part in zip(chunks, parts) for v, s in zip(chunk, part)}
        results = [by_vertex[v] for v in vertices]
    return dict(zip(vertices, results))


@dataclass(frozen=True)
class Target:
    i0: int
    root_set: frozenset[int]  # V_r
    shared: dict[int, frozenset[int]]  # vertex -> component indices rooted there
    candidate_counts: tuple[int, ...]  # |root candidates| per component

    def max_shared(self) -> int:
        return max((len(s) for s in self.shared.values()), default=0)

    def pigeonhole_premise(self, r: int) -> bool:
        """Every vertex hosts rooted copies of fewer than r components."""
        return self.max_shared() < r


def select_target(trimmed: Graph, gprime: GPrime, r: int, workers: int = 1) -> Target:
    if gprime.h < 1:
        raise InvalidParameter("G' has no components")
    if r < 1:
        raise InvalidParameter(f"need r >= 1, got {r}")
    shared = all_shared_root_indices(trimmed, gprime, workers)
    candidates: list[set[int]] = [set() for _ in range(gprime.h)]
    for v, indices in shared.items():
        for i in indices:
            candidates[i].add(v)
    counts = tuple(len(c) for c in candidates)
    i0 = min(range(gprime.h), key=lambda i: (counts[i], i))
    return Target(i0, frozenset(candidates[i0]), shared, counts)


@dataclass(frozen=True)
class InequalityRecord:
    name: str
    left: Fraction
    relation: str  # "<", "<=", ">", ">="
    right: Fraction
    holds: bool


@dataclass(frozen=True)
class AuditReport:
    records: tuple[InequalityRecord, ...]

    def __getitem__(self, name: str) -> InequalityRecord:
        for rec in self.records:
            if rec.name == name:
                return rec
        raise KeyError(name)

    @property
    def all_hold(self) -> bool:
        return all(rec.holds for rec in self.records)


@dataclass(frozen=True)
class AdversaryReport:
    d: int
    r: int
    i0: int
    root_set: frozenset[int]
    high_edges: frozenset[Edge]
    shared_counts: dict[int, int]  # non-isolated trimmed vertex -> number of indices
    candidate_counts: tuple[int, ...]
    pigeonhole_premise: bool
    audit: AuditReport


def build_coloring(host: Graph, gprime: GPrime, d: int, r: int, workers: int = 1) -> tuple[Coloring, AdversaryReport]:
    high = high_degree_edges(host, d)
    trimmed = edge_subgraph(host, host.edges - high)
    target = select_target(trimmed, gprime, r, workers)
    vr = target.root_set
    assignment = {
        e: RED if e in high or e[0] in vr or e[1] in vr else BLUE
        for e in host.edges
    }
    coloring = Coloring(host.num_vertices, assignment)
    audit = audit_inequalities(host, coloring, gprime, d, r, root_set=vr, target=target)
    report = AdversaryReport(
        d=d,
        r=r,
        i0=target.i0,
        root_set=vr,
        high_edges=high,
        shared_counts={v: len(s) for v, s in target.shared.items()},
        candidate_counts=target.candidate_counts,
        pigeonhole_premise=target.pigeonhole_premise(r),
        audit=audit,
    )
    return coloring, report


# -- verification ----------------------------------------------------------------


class Verdict(str, Enum):
    NO_COPY = "no-copy"
    CONTAINS = "contains"
    UNDETERMINED = "undetermined"


class Outcome(str, Enum):
    DEFEATED = "defeated"
    NOT_DEFEATED = "not-defeated"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class ColorVerdict:
    verdict: Verdict
    # component with no rooted copy anywhere, when that settled the verdict
    missing_component: int | None = None
    witness: dict[int, int] | None = None


@dataclass(frozen=True)
class VerifyResult:
    blue: ColorVerdict
    red: ColorVerdict
    audit: AuditReport | None = field(default=None)

    @property
    def outcome(self) -> Outcome:
        verdicts = (self.blue.verdict, self.red.verdict)
        if Verdict.CONTAINS in verdicts:
            return Outcome.NOT_DEFEATED
        if verdicts == (Verdict.NO_COPY, Verdict.NO_COPY):
            return Outcome.DEFEATED
        return Outcome.UNDETERMINED


def _judge_color(sub: Graph, gprime: GPrime, force_large: bool) -> ColorVerdict:
    # a component with no rooted copy at any vertex rules out G' cheaply
    for i, comp in enumerate(gprime.components):
        if not root_candidates(sub, comp):
            return ColorVerdict(Verdict.NO_COPY, missing_component=i)
    try:
        found, witness = gprime_embeds(sub, gprime, force=force_large)
    except TooLarge:
        return ColorVerdict(Verdict.UNDETERMINED)
    return ColorVerdict(Verdict.CONTAINS, witness=witness) if found else ColorVerdict(Verdict.NO_COPY)


def verify_coloring(host: Graph, coloring: Coloring, gprime: GPrime, force_large: bool = False,
                    d: int | None = None, r: int | None = None) -> VerifyResult:
    """Decide, per colour, whether the coloured subgraph contains G'.

    The blue check looks for a component without any rooted blue copy, which
    for an adversary colouring is always the chosen component; only if every
    component has one does it fall back to the disjoint search, like red.
    Instances beyond the search guard come back UNDETERMINED; pass ``d`` and
    ``r`` to attach the inequality audit.
    """
    coloring.check_against(host)
    blue = _judge_color(Graph(host.num_vertices, coloring.blue), gprime, force_large)
    red = _judge_color(Graph(host.num_vertices, coloring.red), gprime, force_large)
    audit = None
    if d is not None and r is not None:
        audit = audit_inequalities(host, coloring, gprime, d, r, red_witness=red.witness)
    return VerifyResult(blue, red, audit)


# -- audit -------------------------------------------------------------------------


def _record(name: str, left, relation: str, right) -> InequalityRecord:
    left, right = Fraction(left), Fraction(right)
    holds = {"<": left < right, "<=": left <= right, ">": left > right, ">=": left >= right}[relation]
    return InequalityRecord(name, left, relation, right, holds)


def audit_inequalities(host: Graph, coloring: Coloring, gprime: GPrime, d: int, r: int, *,
                       root_set: frozenset[int] | None = None, target: Target | None = None,
                       red_witness: dict[int, int] | None = None) -> AuditReport:
    """Evaluate the counting steps of the red-side argument on this instance.

    Each record states the direction the argument needs; ``holds`` says
    whether the instance satisfies it.  Without a red embedding witness,
    |I| is replaced by its upper bound min(h, |E_red minus E_high|), giving
    the weakest lower form that any red copy of G' would force.
    """
    coloring.check_against(host)
    if d < 2 or r < 1:
        raise InvalidParameter(f"need d >= 2 and r >= 1, got d={d}, r={r}")
    h, k = gprime.h, gprime.k
    high = high_degree_edges(host, d)
    trimmed = edge_subgraph(host, host.edges - high)
    if target is None:
        target = select_target(trimmed, gprime, r)
    if root_set is None:
        root_set = target.root_set
    red_extra = coloring.red - high
    active = len(trimmed.non_isolated())
    high_vertices = sum(1 for deg in host.degrees() if deg > d)

    if red_witness is not None:
        size = gprime.components[0].num_vertices
        touched = set()
        for u, v in gprime.graph.edges:
            a, b = red_witness[u], red_witness[v]
            if (min(a, b), max(a, b)) in red_extra:
                touched.add(u // size)
        spoiled = len(touched)
    else:
        spoiled = min(h, len(red_extra))

    records = (
        _record("red_nonhigh_le_degree_budget", len(red_extra), "<=", d * len(root_set)),
        _record("root_set_le_pigeonhole", len(root_set), "<=", Fraction(r * active, h)),
        _record("red_nonhigh_lt_half_h", len(red_extra), "<", Fraction(h, 2)),
        _record("high_count_lt_lower_form", high_vertices, "<", (h - spoiled) * 2 ** (k - 1)),
        _record("high_count_le_upper_form", high_vertices, "<=", Fraction(2 * host.num_edges, d)),
        _record("final_inequality_fails", Fraction(h, 2) * 2 ** (k - 1), ">", Fraction(2 * host.num_edges, d)),
    )
    return AuditReport(records)


def blue_has_rooted_copy(coloring: Coloring, gprime: GPrime, i0: int) -> bool:
    """Exhaustive check over all vertices for a blue rooted copy of component i0."""
    blue = Graph(coloring.num_vertices, coloring.blue)
    return bool(root_candidates(blue, gprime.components[i0]))
