"""Shared fixtures and independent oracles.

The oracles here deliberately avoid the package's search code: plain
permutation enumeration for rooted embeddings and tree counts, and networkx's
VF2 monomorphism iterator for disjoint packings of G' components.
"""

import itertools
import random

import networkx as nx
import pytest
from networkx.algorithms import isomorphism

from sizeramsey.constructor import build_tree, cycle_from_order, uk_with_cycle
from sizeramsey.graph import Graph, complete_graph


# -- naive enumerators -------------------------------------------------------


def naive_rooted_embedding(host: Graph, pattern: Graph, root: int, v: int) -> bool:
    others = [x for x in range(pattern.num_vertices) if x != root]
    pool = [x for x in range(host.num_vertices) if x != v]
    edges = list(pattern.edges)
    for images in itertools.permutations(pool, len(others)):
        phi = dict(zip(others, images))
        phi[root] = v
        if all(host.has_edge(phi[a], phi[b]) for a, b in edges):
            return True
    return False


def naive_tree_count(host: Graph, k: int, v: int) -> int:
    tree, root, _ = build_tree(k)
    others = list(range(1, tree.num_vertices))
    pool = [x for x in range(host.num_vertices) if x != v]
    count = 0
    for images in itertools.permutations(pool, len(others)):
        phi = dict(zip(others, images))
        phi[root] = v
        if all(host.has_edge(phi[a], phi[b]) for a, b in tree.edges):
            count += 1
    return count


def to_nx(g: Graph) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(range(g.num_vertices))
    out.add_edges_from(g.edges)
    return out


def vf2_image_sets(host: Graph, pattern: Graph) -> set[frozenset[int]]:
    """Vertex sets of all (non-induced) copies of ``pattern`` in ``host``."""
    matcher = isomorphism.GraphMatcher(to_nx(host), to_nx(pattern))
    return {frozenset(m) for m in matcher.subgraph_monomorphisms_iter()}


def vf2_rooted_roots(host: Graph, pattern: Graph, root: int) -> set[int]:
    matcher = isomorphism.GraphMatcher(to_nx(host), to_nx(pattern))
    return {hv for m in matcher.subgraph_monomorphisms_iter() for hv, pv in m.items() if pv == root}


def vf2_rooted_exists(host: Graph, pattern: Graph, root: int, v: int) -> bool:
    """VF2 monomorphism test with the pattern root pinned to host vertex ``v``."""
    gh, gp = to_nx(host), to_nx(pattern)
    nx.set_node_attributes(gh, {x: x == v for x in gh}, "pin")
    nx.set_node_attributes(gp, {x: x == root for x in gp}, "pin")
    matcher = isomorphism.GraphMatcher(gh, gp, node_match=isomorphism.categorical_node_match("pin", False))
    return matcher.subgraph_is_monomorphic()


def naive_disjoint_packing(host: Graph, gprime) -> bool:
    """Whether every component of G' has a copy, all copies pairwise disjoint."""
    options = [sorted(vf2_image_sets(host, c.graph), key=sorted) for c in gprime.components]
    if any(not opts for opts in options):
        return False

    def pick(i: int, used: frozenset) -> bool:
        if i == len(options):
            return True
        return any(not (s & used) and pick(i + 1, used | s) for s in options[i])

    return pick(0, frozenset())


# -- graph corpora -------------------------------------------------------------


def random_bounded_graph(n: int, max_deg: int, edges_wanted: int, rnd: random.Random) -> Graph:
    deg = [0] * n
    edges = set()
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rnd.shuffle(pairs)
    for u, v in pairs:
        if len(edges) >= edges_wanted:
            break
        if deg[u] < max_deg and deg[v] < max_deg:
            edges.add((u, v))
            deg[u] += 1
            deg[v] += 1
    return Graph(n, edges)


def planted_host(gprime, extra_vertices: int, extra_edges: int, rnd: random.Random, drop: int = 0) -> Graph:
    """G' components relabelled into a larger host with noise edges, minus ``drop`` edges."""
    used = [v for i in range(gprime.h) for v in gprime.component_vertices(i)]
    n = len(used) + extra_vertices
    relabel = dict(zip(used, rnd.sample(range(n), len(used))))
    edges = {tuple(sorted((relabel[u], relabel[v]))) for u, v in gprime.graph.edges}
    for e in rnd.sample(sorted(edges), drop):
        edges.discard(e)
    while extra_edges:
        u, v = rnd.sample(range(n), 2)
        edges.add((min(u, v), max(u, v)))
        extra_edges -= 1
    return Graph(n, edges)


def u2_with_order(order) -> Graph:
    """U_2 with leaf cycle visiting heap leaves in ``order``."""
    return uk_with_cycle(2, cycle_from_order(order)).graph


# leaves 3,4 are children of 1; 5,6 children of 2
U2_SIBLINGS_ADJACENT = (3, 4, 5, 6)
U2_SIBLINGS_DIAGONAL = (3, 5, 4, 6)


@pytest.fixture
def k7() -> Graph:
    return complete_graph(7)


@pytest.fixture
def bare_tree2() -> Graph:
    return build_tree(2)[0]


def small_host_corpus(count: int = 24, seed: int = 20240611) -> list[Graph]:
    """Hosts with max degree <= 4 and <= 14 vertices."""
    rnd = random.Random(seed)
    hosts = [
        u2_with_order(U2_SIBLINGS_ADJACENT),
        u2_with_order(U2_SIBLINGS_DIAGONAL),
        complete_graph(5),
        build_tree(2)[0],
    ]
    while len(hosts) < count:
        n = rnd.randint(7, 14)
        max_deg = rnd.choice([3, 4])
        hosts.append(random_bounded_graph(n, max_deg, rnd.randint(n, n * max_deg // 2), rnd))
    return hosts


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    verdict: dict[int, tuple[list[str], bool]] = {}
    for number, label, ok, _ in results:
        labels, prior = verdict.get(number, ([], True))
        verdict[number] = (labels + [("" if ok else "[failed] ") + label], prior and ok)
    terminalreporter.section("acceptance criteria")
    for number in sorted(verdict):
        labels, ok = verdict[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {'; '.join(labels)}")
