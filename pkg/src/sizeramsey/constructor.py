"""Random pattern graphs U_k and G', and the parameter formulas.

Layout conventions
------------------
The depth-k tree uses heap numbering: vertex 0 is the root, the children of
``i`` are ``2i+1`` and ``2i+2``, and the leaves are ``2^k-1 .. 2^(k+1)-2``.
G' places component ``i`` on ids ``[i*s, (i+1)*s)`` with ``s = 2^(k+1)-1``,
followed by isolated padding vertices up to ``n``.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import mpmath

from .errors import InvalidParameter, ParseError, RegimeTooSmall
from .graph import (
    Edge,
    Graph,
    content_lines,
    disjoint_union,
    edge_set,
    parse_edge_line,
    parse_int,
)
from .rng import SEED_MASK, Rng

# log n at which floor(exp(sqrt(log n)/100)) first reaches 2; k >= 2 needs only log n >= 400
MIN_LOG_N = (100 * math.log(2)) ** 2
# above this, floor(e^log_n) is not materialized and h is reported through log_h
EXACT_H_MAX_LOG_N = 1e5


def component_size(k: int) -> int:
    return (1 << (k + 1)) - 1


@dataclass(frozen=True)
class UkGraph:
    graph: Graph
    k: int
    root: int
    leaves: tuple[int, ...]
    tree_edges: frozenset[Edge]
    cycle_edges: frozenset[Edge]

    @property
    def num_vertices(self) -> int:
        return self.graph.num_vertices


def build_tree(k: int) -> tuple[Graph, int, tuple[int, ...]]:
    if k < 1:
        raise InvalidParameter(f"tree depth must be >= 1, got {k}")
    n = component_size(k)
    edges = [(i, c) for i in range((1 << k) - 1) for c in (2 * i + 1, 2 * i + 2)]
    leaves = tuple(range((1 << k) - 1, n))
    return Graph(n, edges), 0, leaves


def cycle_from_order(order: Sequence[int]) -> frozenset[Edge]:
    m = len(order)
    return edge_set((order[i], order[(i + 1) % m]) for i in range(m))


def sequential_leaf_cycle(leaves: Sequence[int], rng: Rng) -> frozenset[Edge]:
    """Uniform spanning cycle on ``leaves``.

    ``leaves[0]`` stays fixed as v_0; v_1, v_2, ... are drawn uniformly
    without replacement from what is left (one swap step per draw).
    """
    m = len(leaves)
    if m < 3:
        raise InvalidParameter(f"a simple spanning cycle needs >= 3 leaves, got {m}")
    rest = list(leaves[1:])
    for i in range(len(rest) - 1):
        j = i + rng.below(len(rest) - i)
        rest[i], rest[j] = rest[j], rest[i]
    return cycle_from_order([leaves[0], *rest])


def uk_with_cycle(k: int, cycle_edges: frozenset[Edge]) -> UkGraph:
    """Assemble U_k from the heap tree and a given leaf cycle (no validation)."""
    tree, root, leaves = build_tree(k)
    graph = Graph(tree.num_vertices, tree.edges | cycle_edges)
    return UkGraph(graph, k, root, leaves, tree.edges, frozenset(cycle_edges))


def build_uk(k: int, rng: Rng) -> UkGraph:
    if k < 2:
        raise InvalidParameter(f"U_k needs k >= 2, got {k}")
    _, _, leaves = build_tree(k)
    return uk_with_cycle(k, sequential_leaf_cycle(leaves, rng))


def check_uk(uk: UkGraph) -> None:
    """Raise InvalidParameter unless ``uk`` satisfies every U_k invariant."""
    k = uk.k
    tree, root, leaves = build_tree(k)
    g = uk.graph
    problems = []
    if g.num_vertices != component_size(k):
        problems.append(f"{g.num_vertices} vertices")
    if uk.root != root or tuple(uk.leaves) != leaves:
        problems.append("root/leaves do not follow heap layout")
    if uk.tree_edges != tree.edges:
        problems.append("tree edges are not the complete binary tree")
    if uk.tree_edges & uk.cycle_edges:
        problems.append("tree and cycle edges overlap")
    if g.edges != uk.tree_edges | uk.cycle_edges:
        problems.append("edge set is not tree + cycle")
    if not _is_spanning_cycle(uk.cycle_edges, leaves):
        problems.append("cycle edges are not one cycle spanning the leaves")
    if not problems:
        degs = g.degrees()
        if degs[root] != 2 or any(d != 3 for v, d in enumerate(degs) if v != root):
            problems.append("degree sequence is not (2, 3, 3, ...)")
    if problems:
        raise InvalidParameter("invalid U_k: " + "; ".join(problems))


def _is_spanning_cycle(cycle: frozenset[Edge], vertices: Sequence[int]) -> bool:
    if len(cycle) != len(vertices) or len(vertices) < 3:
        return False
    nbrs: dict[int, list[int]] = {v: [] for v in vertices}
    for u, v in cycle:
        if u not in nbrs or v not in nbrs:
            return False
        nbrs[u].append(v)
        nbrs[v].append(u)
    if any(len(ns) != 2 for ns in nbrs.values()):
        return False
    # walk from one vertex; a single cycle returns after visiting everything
    start = vertices[0]
    prev, cur, steps = start, nbrs[start][0], 1
    while cur != start:
        a, b = nbrs[cur]
        prev, cur = cur, (b if a == prev else a)
        steps += 1
    return steps == len(vertices)


def uk_from_graph(g: Graph) -> UkGraph:
    """Recover a heap-layout U_k from a plain graph (as written by ``gen-uk``)."""
    n = g.num_vertices
    k = (n + 1).bit_length() - 2
    if k < 2 or component_size(k) != n:
        raise InvalidParameter(f"{n} vertices is not 2^(k+1)-1 for any k >= 2")
    tree, _, _ = build_tree(k)
    uk = UkGraph(g, k, 0, tuple(range((1 << k) - 1, n)), tree.edges, g.edges - tree.edges)
    check_uk(uk)
    return uk


# -- G' ----------------------------------------------------------------------


@dataclass(frozen=True)
class GPrime:
    graph: Graph
    k: int
    h: int
    seed: int
    components: tuple[UkGraph, ...]  # local ids; component i lives at offsets[i]
    offsets: tuple[int, ...]
    padding: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.graph.num_vertices

    @property
    def roots(self) -> tuple[int, ...]:
        return tuple(off + c.root for off, c in zip(self.offsets, self.components))

    def component_vertices(self, i: int) -> range:
        off = self.offsets[i]
        return range(off, off + self.components[i].num_vertices)


def gprime_h(n: int, k: int) -> int:
    return n >> (k + 1)


def _assemble_gprime(n: int, k: int, seed: int, components: Sequence[UkGraph]) -> GPrime:
    union, offsets = disjoint_union([c.graph for c in components])
    graph = Graph(n, union.edges)
    padding = tuple(range(union.num_vertices, n))
    return GPrime(graph, k, len(components), seed, tuple(components), tuple(offsets), padding)


def build_gprime(n: int, k: int, seed: int) -> GPrime:
    """h = floor(n / 2^(k+1)) independent U_k copies padded to n vertices.

    Component ``i`` draws its cycle from ``Rng(seed).split(i)``.
    """
    if k < 2:
        raise InvalidParameter(f"U_k needs k >= 2, got {k}")
    h = gprime_h(n, k)
    if h < 1:
        raise InvalidParameter(f"n={n} is too small for one U_{k} component (h = 0)")
    base = Rng(seed)
    components = [build_uk(k, base.split(i)) for i in range(h)]
    return _assemble_gprime(n, k, seed, components)


def serialize_gprime(gp: GPrime) -> str:
    lines = [f"gprime {gp.n} {gp.k} {gp.h} {gp.seed}"]
    lines.extend(f"root {i} {r}" for i, r in enumerate(gp.roots))
    lines.extend(f"e {u} {v}" for u, v in gp.graph.sorted_edges())
    return "\n".join(lines) + "\n"


def parse_gprime(text: str) -> GPrime:
    lines = list(content_lines(text))
    if not lines:
        raise ParseError("empty input, expected 'gprime <n> <k> <h> <seed>' header", 1)
    lineno, tokens = lines[0]
    if len(tokens) != 5 or tokens[0] != "gprime":
        raise ParseError("expected 'gprime <n> <k> <h> <seed>' header", lineno)
    n, k, h, seed = (parse_int(t, lineno) for t in tokens[1:])
    if k < 2:
        raise ParseError(f"k must be >= 2, got {k}", lineno)
    if seed > SEED_MASK:
        raise ParseError("seed exceeds 64 bits", lineno)
    if h != gprime_h(n, k) or h < 1:
        raise ParseError(f"h={h} does not equal floor(n / 2^(k+1)) = {gprime_h(n, k)} (must be >= 1)", lineno)
    size = component_size(k)
    rest = lines[1:]
    if len(rest) < h:
        raise ParseError(f"expected {h} root lines", lines[-1][0])
    for i, (lineno, tokens) in enumerate(rest[:h]):
        if len(tokens) != 3 or tokens[0] != "root":
            raise ParseError("expected 'root <i> <vertex>' line", lineno)
        idx, vertex = parse_int(tokens[1], lineno), parse_int(tokens[2], lineno)
        if idx != i or vertex != i * size:
            raise ParseError(f"component {i} must be rooted at vertex {i * size}", lineno)
    per_component: list[list[Edge]] = [[] for _ in range(h)]
    seen: set[Edge] = set()
    for lineno, tokens in rest[h:]:
        if tokens[0] != "e" or len(tokens) != 3:
            raise ParseError(f"malformed edge line {' '.join(tokens)!r}", lineno)
        u, v = parse_edge_line(tokens, lineno, n, seen)
        i = u // size
        if i >= h or v // size != i:
            raise ParseError(f"edge ({u}, {v}) crosses components or touches padding", lineno)
        per_component[i].append((u - i * size, v - i * size))
    components = []
    for i, local in enumerate(per_component):
        try:
            components.append(uk_from_graph(Graph(size, local)))
        except InvalidParameter as exc:
            raise ParseError(f"component {i}: {exc}") from None
    return _assemble_gprime(n, k, seed, components)


# -- parameter formulas ---------------------------------------------------------


@dataclass(frozen=True)
class Params:
    log_n: float
    d: int
    k: int
    r: int
    h: int | None  # exact floor(2^(-k-1) n) when materialized
    log_h: float  # natural log of h (of 2^(-k-1) n, floor not applied, when h is None)
    h_floor_applied: bool
    r_le_h: bool
    warnings: tuple[str, ...] = field(default=())


def paper_params(log_n: float, n: int | None = None) -> Params:
    """Evaluate d, k, r, h for the given natural log of n.

    ``d = floor(exp(sqrt(log n)/100))``, ``k = floor(sqrt(log n)/10)``,
    ``r = d * d^(k+1)``, ``h = floor(2^(-k-1) n)``.  Pass ``n`` to get an exact
    h for an exact n; otherwise h is materialized only up to
    ``EXACT_H_MAX_LOG_N``.
    """
    if n is not None:
        if n < 2:
            raise InvalidParameter(f"n must be >= 2, got {n}")
        log_n = math.log(n)
    if not log_n > 0:
        raise InvalidParameter(f"log_n must be positive, got {log_n}")
    with mpmath.workdps(40):
        L = mpmath.mpf(log_n)
        root = mpmath.sqrt(L)
        d = int(mpmath.floor(mpmath.exp(root / 100)))
        k = int(mpmath.floor(root / 10))
    if d < 2 or k < 2:
        raise RegimeTooSmall(f"log_n={log_n} gives d={d}, k={k} (need d >= 2 and k >= 2)", MIN_LOG_N)
    r = d ** (k + 2)

    h: int | None = None
    if n is not None:
        h = n >> (k + 1)
    elif log_n <= EXACT_H_MAX_LOG_N:
        digits = int(log_n / math.log(10)) + 30
        with mpmath.workdps(digits):
            h = int(mpmath.floor(mpmath.exp(mpmath.mpf(log_n)) / mpmath.mpf(2) ** (k + 1)))
    if h is not None:
        log_h = math.log(h) if h > 0 else float("-inf")
        r_le_h = r <= h
    else:
        log_h = log_n - (k + 1) * math.log(2)
        r_le_h = (k + 2) * math.log(d) <= log_h

    warnings = []
    if not r_le_h:
        warnings.append("r > h: the constraint 1 <= r <= h fails at this n")
    return Params(log_n, d, k, r, h, log_h, h is not None, r_le_h, tuple(warnings))
