"""Rooted embeddings of U_k into bounded-degree hosts.

Embeddings are labelled, not necessarily induced: an injective vertex map
sending every pattern edge to a host edge.  The search places the tree top
down in depth-first order so that each leaf is placed right after its
sibling, and checks a cycle edge as soon as both of its endpoints are placed.
"""

from __future__ import annotations

from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from functools import lru_cache

from .constructor import GPrime, UkGraph, build_tree
from .errors import InvalidVertex, TooLarge
from .graph import Graph

# gprime_embeds refuses bigger instances unless forced
MAX_GUARD_COMPONENTS = 4
MAX_GUARD_HOST_VERTICES = 40


@dataclass(frozen=True)
class _Plan:
    order: tuple[int, ...]  # pattern vertices in placement order
    parent: tuple[int, ...]  # position of the tree parent, -1 for the root
    back: tuple[tuple[int, ...], ...]  # earlier positions that must be adjacent too
    degree: tuple[int, ...]  # pattern degree per position
    num_vertices: int


def _make_plan(pattern: Graph, root: int, tree_parent: Mapping[int, int]) -> _Plan:
    children: dict[int, list[int]] = {}
    for child, par in tree_parent.items():
        children.setdefault(par, []).append(child)
    order: list[int] = []
    stack = [root]
    while stack:
        v = stack.pop()
        order.append(v)
        stack.extend(sorted(children.get(v, ()), reverse=True))
    pos = {v: i for i, v in enumerate(order)}
    parent, back = [], []
    for i, v in enumerate(order):
        p = pos[tree_parent[v]] if v in tree_parent else -1
        parent.append(p)
        back.append(tuple(sorted(pos[w] for w in pattern.adj[v] if pos[w] < i and pos[w] != p)))
    degree = tuple(pattern.degree(v) for v in order)
    return _Plan(tuple(order), tuple(parent), tuple(back), degree, pattern.num_vertices)


def _heap_parents(k: int) -> dict[int, int]:
    return {c: (c - 1) // 2 for c in range(1, (1 << (k + 1)) - 1)}


@lru_cache(maxsize=4096)
def _uk_plan(pattern_graph: Graph, k: int, root: int) -> _Plan:
    return _make_plan(pattern_graph, root, _heap_parents(k))


@lru_cache(maxsize=64)
def _tree_plan(k: int) -> _Plan:
    tree, root, _ = build_tree(k)
    return _make_plan(tree, root, _heap_parents(k))


def plan_for(pattern: UkGraph) -> _Plan:
    return _uk_plan(pattern.graph, pattern.k, pattern.root)


def _search(host: Graph, plan: _Plan, root_image: int, forbidden: frozenset[int] | set[int] = frozenset()) -> Iterator[list[int]]:
    """Yield image lists (indexed by plan position) of all embeddings with root fixed.

    The yielded list is reused between yields; copy it if you keep it.
    """
    size = len(plan.order)
    if size > host.num_vertices or root_image in forbidden:
        return
    if host.degree(root_image) < plan.degree[0]:
        return
    degree_of = host.degrees()
    adj, nbrs = host.adj, host.nbrs
    parent, back, pdeg = plan.parent, plan.back, plan.degree
    image = [-1] * size
    used = set(forbidden)
    image[0] = root_image
    used.add(root_image)

    def extend(p: int) -> Iterator[list[int]]:
        if p == size:
            yield image
            return
        need = pdeg[p]
        checks = back[p]
        for cand in adj[image[parent[p]]]:
            if cand in used or degree_of[cand] < need:
                continue
            if checks and not all(image[q] in nbrs[cand] for q in checks):
                continue
            image[p] = cand
            used.add(cand)
            yield from extend(p + 1)
            used.discard(cand)
        image[p] = -1

    yield from extend(1)


def _as_mapping(plan: _Plan, image: list[int]) -> dict[int, int]:
    return {pv: hv for pv, hv in zip(plan.order, image)}


def _check_vertex(host: Graph, v: int) -> None:
    if not 0 <= v < host.num_vertices:
        raise InvalidVertex(f"vertex {v} out of range [0, {host.num_vertices})")


def is_embedding(host: Graph, pattern: Graph, mapping: Mapping[int, int]) -> bool:
    """Independent re-validation of a witness."""
    if set(mapping) != set(range(pattern.num_vertices)):
        return False
    images = list(mapping.values())
    if len(set(images)) != len(images) or not all(0 <= x < host.num_vertices for x in images):
        return False
    return all(host.has_edge(mapping[u], mapping[v]) for u, v in pattern.edges)


def find_rooted_embedding(host: Graph, pattern: UkGraph, v: int) -> dict[int, int] | None:
    _check_vertex(host, v)
    plan = plan_for(pattern)
    for image in _search(host, plan, v):
        return _as_mapping(plan, image)
    return None


def rooted_embedding_exists(host: Graph, pattern: UkGraph, v: int) -> tuple[bool, dict[int, int] | None]:
    """Whether U_k embeds into ``host`` with its root at ``v``, plus a witness."""
    witness = find_rooted_embedding(host, pattern, v)
    return witness is not None, witness


def root_candidates(host: Graph, pattern: UkGraph) -> frozenset[int]:
    plan = plan_for(pattern)
    need = plan.degree[0]
    return frozenset(
        v for v in range(host.num_vertices)
        if host.degree(v) >= need and next(_search(host, plan, v), None) is not None
    )


def count_tree_embeddings(host: Graph, k: int, v: int) -> int:
    """Number of labelled embeddings of the depth-k binary tree with root at ``v``."""
    _check_vertex(host, v)
    return sum(1 for _ in _search(host, _tree_plan(k), v))


def tree_embeddings(host: Graph, k: int, v: int) -> Iterator[dict[int, int]]:
    """All labelled tree embeddings rooted at ``v``, keyed by heap-layout ids."""
    _check_vertex(host, v)
    plan = _tree_plan(k)
    for image in _search(host, plan, v):
        yield _as_mapping(plan, image)


def shared_root_indices(host: Graph, v: int, gprime: GPrime) -> frozenset[int]:
    _check_vertex(host, v)
    return frozenset(
        i for i, comp in enumerate(gprime.components)
        if next(_search(host, plan_for(comp), v), None) is not None
    )


def gprime_embeds(host: Graph, gprime: GPrime, force: bool = False) -> tuple[bool, dict[int, int] | None]:
    """Search for pairwise vertex-disjoint embeddings of every component.

    Padding vertices are ignored.  The witness maps global G' vertex ids of
    the components to host vertices.
    """
    active = len(host.non_isolated())
    if not force and (gprime.h > MAX_GUARD_COMPONENTS or active > MAX_GUARD_HOST_VERTICES):
        raise TooLarge(
            f"disjoint search limited to h <= {MAX_GUARD_COMPONENTS} and "
            f"<= {MAX_GUARD_HOST_VERTICES} non-isolated host vertices (got h={gprime.h}, {active})"
        )
    plans = [plan_for(c) for c in gprime.components]
    if sum(p.num_vertices for p in plans) > active:
        return False, None
    candidates = [sorted(root_candidates(host, c)) for c in gprime.components]
    # fail-first: fewest root candidates first
    order = sorted(range(gprime.h), key=lambda i: (len(candidates[i]), i))
    if not candidates[order[0]]:
        return False, None
    chosen: dict[int, list[int]] = {}
    used: set[int] = set()

    def place(t: int) -> bool:
        if t == len(order):
            return True
        i = order[t]
        for root_image in candidates[i]:
            if root_image in used:
                continue
            for image in _search(host, plans[i], root_image, used):
                chosen[i] = list(image)
                used.update(image)
                if place(t + 1):
                    return True
                used.difference_update(chosen.pop(i))
        return False

    if not place(0):
        return False, None
    witness = {}
    for i, image in chosen.items():
        off = gprime.offsets[i]
        witness.update({off + pv: hv for pv, hv in zip(plans[i].order, image)})
    return True, dict(sorted(witness.items()))


def serialize_witness(mapping: Mapping[int, int]) -> str:
    return "".join(f"map {p} {h}\n" for p, h in sorted(mapping.items()))
