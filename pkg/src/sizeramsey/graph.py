"""Immutable simple undirected graphs on vertices ``0..n-1``."""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence

from .errors import ForeignEdge, InvalidEdge, InvalidVertex, ParseError

Edge = tuple[int, int]
EdgeSet = frozenset  # frozenset[Edge], canonical pairs with u < v


def canon(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def edge_set(pairs: Iterable[tuple[int, int]]) -> frozenset[Edge]:
    """Canonicalize an iterable of pairs into an order-insensitive edge set."""
    return frozenset(canon(u, v) for u, v in pairs)


class Graph:
    """Simple undirected graph with contiguous integer vertex ids.

    Instances never change after construction.  ``adj[v]`` is the sorted
    neighbour tuple of ``v`` and ``nbrs[v]`` the same as a frozenset, for
    constant-time adjacency tests in the search code.
    """

    __slots__ = ("num_vertices", "edges", "adj", "nbrs", "_degrees")

    def __init__(self, num_vertices: int, edges: Iterable[tuple[int, int]] = ()):
        if num_vertices < 0:
            raise InvalidVertex(f"negative vertex count {num_vertices}")
        canonical = set()
        for u, v in edges:
            u, v = int(u), int(v)
            for x in (u, v):
                if not 0 <= x < num_vertices:
                    raise InvalidVertex(f"vertex {x} out of range [0, {num_vertices})")
            if u == v:
                raise InvalidEdge(f"self-loop at vertex {u}")
            canonical.add(canon(u, v))
        neighbours: list[list[int]] = [[] for _ in range(num_vertices)]
        for u, v in canonical:
            neighbours[u].append(v)
            neighbours[v].append(u)
        self.num_vertices = num_vertices
        self.edges: frozenset[Edge] = frozenset(canonical)
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(ns)) for ns in neighbours)
        self.nbrs: tuple[frozenset[int], ...] = tuple(frozenset(ns) for ns in neighbours)
        self._degrees = tuple(len(ns) for ns in neighbours)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return self._degrees[v]

    def degrees(self) -> tuple[int, ...]:
        return self._degrees

    def max_degree(self) -> int:
        return max(self._degrees, default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.nbrs[u]

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def non_isolated(self) -> list[int]:
        return [v for v, deg in enumerate(self._degrees) if deg > 0]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.num_vertices == other.num_vertices and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.num_vertices, self.edges))

    def __repr__(self) -> str:
        return f"Graph(num_vertices={self.num_vertices}, num_edges={self.num_edges})"


def build_graph(num_vertices: int, edge_list: Iterable[tuple[int, int]]) -> Graph:
    return Graph(num_vertices, edge_list)


def max_degree(g: Graph) -> int:
    return g.max_degree()


def edge_subgraph(g: Graph, keep: Iterable[tuple[int, int]]) -> Graph:
    """Same vertex set as ``g``, edge set exactly ``keep``."""
    keep = edge_set(keep)
    foreign = keep - g.edges
    if foreign:
        u, v = min(foreign)
        raise ForeignEdge(f"edge ({u}, {v}) is not an edge of the graph")
    return Graph(g.num_vertices, keep)


def disjoint_union(parts: Sequence[Graph]) -> tuple[Graph, list[int]]:
    """Union of vertex-disjoint copies; returns the graph and per-part offsets.

    Local vertex ``x`` of part ``i`` becomes global vertex ``offsets[i] + x``.
    """
    offsets = []
    edges: list[Edge] = []
    total = 0
    for part in parts:
        offsets.append(total)
        edges.extend((u + total, v + total) for u, v in part.edges)
        total += part.num_vertices
    return Graph(total, edges), offsets


def complete_graph(n: int) -> Graph:
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def bfs_ball(g: Graph, v: int, radius: int) -> set[int]:
    seen = {v}
    frontier = [v]
    for _ in range(radius):
        nxt = []
        for u in frontier:
            for w in g.adj[u]:
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


# -- text format -----------------------------------------------------------


def serialize(g: Graph) -> str:
    lines = [f"graph {g.num_vertices}"]
    lines.extend(f"e {u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def content_lines(text: str) -> Iterator[tuple[int, list[str]]]:
    """Yield ``(line_number, tokens)`` for every non-comment, non-blank line."""
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        yield lineno, line.split()


def parse_int(token: str, lineno: int, what: str = "integer") -> int:
    if not token.isdigit():
        raise ParseError(f"expected nonnegative {what}, got {token!r}", lineno)
    return int(token)


def parse_edge_line(tokens: list[str], lineno: int, n: int, seen: set[Edge]) -> Edge:
    """Validate an ``e <u> <v>`` line (extra tokens are the caller's business)."""
    u = parse_int(tokens[1], lineno, "vertex id")
    v = parse_int(tokens[2], lineno, "vertex id")
    if u >= n or v >= n:
        raise ParseError(f"vertex id out of range for {n} vertices", lineno)
    if u == v:
        raise ParseError(f"self-loop at vertex {u}", lineno)
    if u > v:
        raise ParseError(f"edge ({u}, {v}) not in canonical u < v order", lineno)
    if (u, v) in seen:
        raise ParseError(f"duplicate edge ({u}, {v})", lineno)
    seen.add((u, v))
    return (u, v)


def parse(text: str) -> Graph:
    lines = content_lines(text)
    header = next(lines, None)
    if header is None:
        raise ParseError("empty input, expected 'graph <num_vertices>' header", 1)
    lineno, tokens = header
    if len(tokens) != 2 or tokens[0] != "graph":
        raise ParseError("expected 'graph <num_vertices>' header", lineno)
    n = parse_int(tokens[1], lineno, "vertex count")
    seen: set[Edge] = set()
    for lineno, tokens in lines:
        if tokens[0] != "e" or len(tokens) != 3:
            raise ParseError(f"malformed edge line {' '.join(tokens)!r}", lineno)
        parse_edge_line(tokens, lineno, n, seen)
    return Graph(n, seen)
