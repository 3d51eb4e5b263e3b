"""Random bounded-degree host graphs from the pairing (configuration) model."""

from __future__ import annotations

from .errors import InvalidParameter
from .graph import Graph, canon
from .rng import Rng

MAX_PAIRING_ATTEMPTS = 100


def gen_host(num_vertices: int, degree: int, seed: int) -> Graph:
    """Random graph with maximum degree <= ``degree``.

    Each attempt shuffles ``degree`` stubs per vertex and pairs them up; the
    first attempt without loops or repeated pairs is returned as a
    ``degree``-regular graph.  If every attempt fails, the last pairing is
    kept with its offending pairs dropped.
    """
    if num_vertices < 1 or degree < 0:
        raise InvalidParameter("need num_vertices >= 1 and degree >= 0")
    if degree >= num_vertices:
        raise InvalidParameter(f"degree {degree} must be < num_vertices {num_vertices}")
    if (degree * num_vertices) % 2:
        raise InvalidParameter(f"degree * num_vertices = {degree * num_vertices} is odd")
    stubs = [v for v in range(num_vertices) for _ in range(degree)]
    base = Rng(seed)
    edges: set[tuple[int, int]] = set()
    for attempt in range(MAX_PAIRING_ATTEMPTS):
        shuffled = base.split(attempt).generator.permutation(stubs).tolist()
        edges = set()
        simple = True
        for u, v in zip(shuffled[::2], shuffled[1::2]):
            e = canon(u, v)
            if u == v or e in edges:
                simple = False
                continue
            edges.add(e)
        if simple:
            break
    return Graph(num_vertices, edges)
