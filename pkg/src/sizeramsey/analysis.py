"""Exact and Monte Carlo checks of the probability bounds, and bound evaluation.

Exact oracles enumerate every leaf ordering (or every distinct leaf cycle),
so they are limited to ``2^k <= 8``.  Bound expressions are evaluated in log
space through :class:`~sizeramsey.lognum.LogNumber`.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from collections.abc import Mapping

import mpmath
from mpmath import mpf

from .constructor import Params, build_tree, cycle_from_order, sequential_leaf_cycle, uk_with_cycle
from .embedder import find_rooted_embedding, is_embedding
from .errors import InvalidParameter, InvalidVertex, TooLarge
from .graph import Graph, bfs_ball
from .lognum import LogNumber, log_binomial, log_factorial, log_int
from .rng import Rng

MAX_ENUM_LEAVES = 8


def _check_dk(d: int, k: int) -> None:
    if d < 2 or k < 2:
        raise InvalidParameter(f"need d >= 2 and k >= 2, got d={d}, k={k}")


def _check_enum(k: int) -> None:
    if k < 2:
        raise InvalidParameter(f"need k >= 2, got {k}")
    if 1 << k > MAX_ENUM_LEAVES:
        raise TooLarge(f"exact enumeration limited to 2^k <= {MAX_ENUM_LEAVES} leaves (k={k})")


# -- bound expressions ----------------------------------------------------------


def extension_bound(d: int, k: int) -> LogNumber:
    """d^(2^k-1) / (2^k-1)!"""
    _check_dk(d, k)
    m = (1 << k) - 1
    return LogNumber.from_log(m * log_int(d) - log_factorial(m))


def extension_bound_product(d: int, k: int) -> LogNumber:
    """The same quantity as a product of per-step factors d/l, l = 1..2^k-1."""
    _check_dk(d, k)
    return LogNumber.from_log(mpf(math.fsum(math.log(d / ell) for ell in range(1, 1 << k))))


def lemma_bound(d: int, k: int) -> LogNumber:
    """d^(2^k-1) * d^(2^(k+1)) / (2^k-1)!"""
    _check_dk(d, k)
    m = (1 << k) - 1
    return LogNumber.from_log((m + (1 << (k + 1))) * log_int(d) - log_factorial(m))


def graph_count_bound(d: int, k: int) -> LogNumber:
    """(d^(k+1))^(d * d^(k+1)): crude count of degree-d graphs on d^(k+1) labelled vertices."""
    _check_dk(d, k)
    return LogNumber.from_log(mpf(d ** (k + 2)) * (k + 1) * log_int(d))


def corollary_bound(d: int, k: int, r: int) -> LogNumber:
    _check_dk(d, k)
    if r < 1:
        raise InvalidParameter(f"need r >= 1, got {r}")
    return lemma_bound(d, k) ** r * graph_count_bound(d, k)


@dataclass(frozen=True)
class FailureBound:
    exact: LogNumber  # C(h, r) * corollary_bound
    simplified: LogNumber  # (e h / r)^r * lemma^r * graph count
    final: LogNumber | None  # last line of the chain, needs log n

    @property
    def exact_certified(self) -> bool:
        return self.exact < LogNumber(1, 0)

    @property
    def simplified_certified(self) -> bool:
        return self.simplified < LogNumber(1, 0)

    @property
    def final_certified(self) -> bool | None:
        return None if self.final is None else self.final < LogNumber(1, 0)


def failure_bound(h: int | None, r: int, d: int, k: int, *, log_h=None, log_n=None) -> FailureBound:
    """Union-bound mass subtracted from 1 in the lower bound on P(E).

    ``h`` may be omitted in favour of ``log_h`` when it is too large to
    materialize; ``C(h, r)`` is then evaluated through its r << h expansion.
    The simplified term uses ``C(h, r) <= (e h / r)^r``; when
    ``r = d * d^(k+1)`` it coincides with ``(e h d^(2^k-1) d^(2^(k+1)) / (d (2^k-1)!))^r``.
    """
    _check_dk(d, k)
    if r < 1:
        raise InvalidParameter(f"need r >= 1, got {r}")
    log_r = log_int(r)
    if h is not None:
        if r > h:
            raise InvalidParameter(f"need r <= h, got r={r}, h={h}")
        log_c = log_binomial(h, r)
        lh = log_int(h)
    else:
        if log_h is None:
            raise InvalidParameter("need h or log_h")
        lh = mpf(log_h)
        if log_r > lh:
            raise InvalidParameter("need r <= h")
        if lh - log_r < 20:
            raise InvalidParameter("log-form h needs r << h; pass h exactly")
        # sum_{j<r} log(1 - j/h) ~ -r^2 / (2h)
        log_c = mpf(r) * lh - mpmath.exp(2 * log_r - lh - mpmath.log(2)) - log_factorial(r)
    rest = corollary_bound(d, k, r)
    exact = LogNumber.from_log(log_c) * rest
    simplified = LogNumber.from_log(mpf(r) * (1 + lh - log_r)) * rest
    final = None
    if log_n is not None:
        m = (1 << k) - 1
        base = 1 + mpf(log_n) + m + mpf(4 * (m + 1)) * mpmath.sqrt(mpf(log_n)) / 100 - m * log_int(m)
        final = LogNumber.from_log(mpf(r) * base)
    return FailureBound(exact, simplified, final)


def params_failure_bound(params: Params) -> FailureBound:
    return failure_bound(params.h, params.r, params.d, params.k, log_h=params.log_h, log_n=params.log_n)


# -- exact oracles -------------------------------------------------------------


def _check_tree_embedding(host: Graph, tree_embedding: Mapping[int, int], k: int) -> tuple[int, ...]:
    tree, _, leaves = build_tree(k)
    if not is_embedding(host, tree, tree_embedding):
        raise InvalidParameter("tree_embedding is not an embedding of the depth-k tree into host")
    return leaves


def exact_extension_probability(host: Graph, tree_embedding: Mapping[int, int], k: int) -> Fraction:
    """Fraction of leaf orderings whose cycle lands on host edges under the tree map."""
    _check_enum(k)
    leaves = _check_tree_embedding(host, tree_embedding, k)
    img = [tree_embedding[x] for x in leaves]
    nbrs = host.nbrs
    hits = total = 0
    for rest in itertools.permutations(range(1, len(leaves))):
        order = (0, *rest)
        total += 1
        if all(img[order[i - 1]] in nbrs[img[order[i]]] for i in range(len(order))):
            hits += 1
    return Fraction(hits, total)


def distinct_leaf_cycles(k: int):
    """Every distinct spanning cycle on the heap leaves, each once."""
    _, _, leaves = build_tree(k)
    first, rest = leaves[0], leaves[1:]
    for perm in itertools.permutations(rest):
        if perm[0] < perm[-1]:  # one of the two traversal directions
            yield cycle_from_order((first, *perm))


def exact_rooted_probability(host: Graph, v: int, k: int) -> Fraction:
    """P(some embedding of U_k sends its root to v), over the uniform leaf cycle."""
    _check_enum(k)
    if not 0 <= v < host.num_vertices:
        raise InvalidVertex(f"vertex {v} out of range")
    hits = total = 0
    for cycle in distinct_leaf_cycles(k):
        total += 1
        if find_rooted_embedding(host, uk_with_cycle(k, cycle), v) is not None:
            hits += 1
    return Fraction(hits, total)


@dataclass(frozen=True)
class StepReport:
    d: int
    prefixes_checked: int
    max_probability: Fraction
    max_ratio: Fraction  # conditional probability / (d / remaining)

    @property
    def holds(self) -> bool:
        return self.max_ratio <= 1


def conditional_step_check(host: Graph, tree_embedding: Mapping[int, int], k: int) -> StepReport:
    """Check every conditional adjacency step of the sequential cycle generation.

    Given the prefix v_0..v_i, v_(i+1) is uniform over the ``2^k-1-i`` unused
    leaves; the chance that its image neighbours the image of v_i must not
    exceed ``d / (2^k-1-i)`` with d the host's maximum degree.
    """
    _check_enum(k)
    leaves = _check_tree_embedding(host, tree_embedding, k)
    img = [tree_embedding[x] for x in leaves]
    d = host.max_degree()
    nbrs = host.nbrs
    m = len(leaves)
    checked = 0
    max_p = Fraction(0)
    max_ratio = Fraction(0)
    for i in range(m - 1):
        remaining = m - 1 - i
        for prefix in itertools.permutations(range(1, m), i):
            last = prefix[-1] if prefix else 0
            unused = set(range(1, m)).difference(prefix)
            adjacent = sum(1 for u in unused if img[u] in nbrs[img[last]])
            p = Fraction(adjacent, remaining)
            ratio = Fraction(adjacent, d) if d else Fraction(0)
            max_p = max(max_p, p)
            max_ratio = max(max_ratio, ratio)
            checked += 1
    return StepReport(d, checked, max_p, max_ratio)


@dataclass(frozen=True)
class BallReport:
    size: int
    bound: int

    @property
    def holds(self) -> bool:
        return self.size <= self.bound


def ball_size_check(host: Graph, v: int, k: int, d: int) -> BallReport:
    if host.max_degree() > d:
        raise InvalidParameter(f"host max degree {host.max_degree()} exceeds d={d}")
    if not 0 <= v < host.num_vertices:
        raise InvalidVertex(f"vertex {v} out of range")
    return BallReport(len(bfs_ball(host, v, k)), d ** (k + 1))


# -- Monte Carlo -----------------------------------------------------------------


@dataclass(frozen=True)
class Estimate:
    hits: int
    trials: int

    @property
    def p_hat(self) -> float:
        return self.hits / self.trials

    @property
    def half_width_95(self) -> float:
        p = self.p_hat
        return 1.96 * math.sqrt(p * (1 - p) / self.trials)


def _count_hits(host: Graph, v: int, k: int, seed: int, start: int, stop: int) -> int:
    _, _, leaves = build_tree(k)
    base = Rng(seed)
    # the outcome depends only on the sampled cycle
    cache: dict[frozenset, bool] = {}
    hits = 0
    for t in range(start, stop):
        cycle = sequential_leaf_cycle(leaves, base.split(t))
        found = cache.get(cycle)
        if found is None:
            found = find_rooted_embedding(host, uk_with_cycle(k, cycle), v) is not None
            cache[cycle] = found
        hits += found
    return hits


def estimate_rooted_prob(host: Graph, v: int, k: int, trials: int, seed: int, workers: int = 1) -> Estimate:
    """Monte Carlo estimate of the rooted-embedding probability.

    Trial ``t`` samples its cycle from ``Rng(seed).split(t)``, so the result
    is identical for every ``workers`` value.
    """
    if trials < 1:
        raise InvalidParameter(f"trials must be >= 1, got {trials}")
    if k < 2:
        raise InvalidParameter(f"need k >= 2, got {k}")
    if not 0 <= v < host.num_vertices:
        raise InvalidVertex(f"vertex {v} out of range")
    Rng(seed)  # validates the seed range up front
    if workers <= 1:
        return Estimate(_count_hits(host, v, k, seed, 0, trials), trials)
    bounds = [trials * i // workers for i in range(workers + 1)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(_count_hits, host, v, k, seed, lo, hi)
            for lo, hi in zip(bounds, bounds[1:]) if hi > lo
        ]
        hits = sum(f.result() for f in futures)
    return Estimate(hits, trials)
