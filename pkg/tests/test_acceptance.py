"""Acceptance suite: one test per criterion, each under its runtime budget.

Every test records a PASS/FAIL line (printed immediately with ``-s`` and
collected into the terminal summary by conftest).
"""

import itertools
import math
import random
import time
from collections import Counter
from contextlib import contextmanager
from fractions import Fraction

import pytest
from networkx.algorithms import isomorphism
from scipy.stats import chisquare

from conftest import naive_disjoint_packing, naive_tree_count, planted_host, random_bounded_graph, small_host_corpus, to_nx
from sizeramsey.adversary import RED, Coloring, Outcome, Verdict, build_coloring, high_degree_edges, verify_coloring
from sizeramsey.analysis import (
    conditional_step_check,
    corollary_bound,
    estimate_rooted_prob,
    exact_extension_probability,
    exact_rooted_probability,
    extension_bound,
    failure_bound,
    lemma_bound,
)
from sizeramsey.cli import run
from sizeramsey.constructor import MIN_LOG_N, build_gprime, build_tree, build_uk, paper_params, sequential_leaf_cycle
from sizeramsey.embedder import count_tree_embeddings, root_candidates, tree_embeddings
from sizeramsey.errors import RegimeTooSmall
from sizeramsey.graph import Graph, complete_graph, edge_subgraph
from sizeramsey.hosts import gen_host
from sizeramsey.lognum import LogNumber
from sizeramsey.rng import Rng

pytestmark = pytest.mark.acceptance

RESULTS: list[tuple[int, str, bool, float]] = []


@contextmanager
def criterion(number: int, label: str, budget: float):
    start = time.perf_counter()
    ok = False
    try:
        yield
        elapsed = time.perf_counter() - start
        assert elapsed < budget, f"runtime {elapsed:.2f}s exceeds {budget}s"
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        RESULTS.append((number, label, ok, elapsed))
        print(f"\ncriterion {number:>2} {'PASS' if ok else 'FAIL'} {label} ({elapsed:.2f}s)")


def log_of(x: Fraction) -> float:
    return math.log(x.numerator) - math.log(x.denominator)


def monomorphic(host: Graph, pattern: Graph) -> bool:
    return isomorphism.GraphMatcher(to_nx(host), to_nx(pattern)).subgraph_is_monomorphic()


class ScriptedRng:
    def __init__(self, draws):
        self.draws = list(draws)

    def below(self, bound):
        value = self.draws.pop(0)
        assert 0 <= value < bound
        return value


# -- 1 ---------------------------------------------------------------------------------


def test_criterion_01_structure():
    with criterion(1, "U_k structure, k=2..6 x 100 seeds", 5.0):
        for k in range(2, 7):
            for seed in range(100):
                uk = build_uk(k, Rng(seed))
                g = uk.graph
                assert g.num_vertices == 2 ** (k + 1) - 1
                assert g.num_edges == 3 * 2**k - 2
                assert g.degree(uk.root) == 2
                assert all(g.degree(v) == 3 for v in range(g.num_vertices) if v != uk.root)
                assert not uk.tree_edges & uk.cycle_edges
                assert uk.tree_edges | uk.cycle_edges == g.edges
                cyc = Graph(g.num_vertices, uk.cycle_edges)
                assert all(cyc.degree(x) == 2 for x in uk.leaves)
                assert {x for e in uk.cycle_edges for x in e} == set(uk.leaves)
                seen, stack = {uk.leaves[0]}, [uk.leaves[0]]
                while stack:
                    for w in cyc.adj[stack.pop()]:
                        if w not in seen:
                            seen.add(w)
                            stack.append(w)
                assert seen == set(uk.leaves)


# -- 2, 3 ------------------------------------------------------------------------------


def test_criterion_02_cycle_uniformity_exact():
    with criterion(2, "all 3! draw sequences give each cycle twice", 1.0):
        produced = Counter(
            sequential_leaf_cycle([3, 4, 5, 6], ScriptedRng(draws)) for draws in itertools.product(range(3), range(2))
        )
        assert sum(produced.values()) == 6
        assert len(produced) == 3
        assert sorted(produced.values()) == [2, 2, 2]


def test_criterion_03_cycle_uniformity_statistical():
    with criterion(3, "3e5 samples within 1/3 +- 0.01", 30.0):
        samples = 300_000
        rng = Rng(20240611)
        leaves = [3, 4, 5, 6]
        counts = Counter(sequential_leaf_cycle(leaves, rng) for _ in range(samples))
        assert len(counts) == 3
        for c in counts.values():
            assert abs(c / samples - 1 / 3) <= 0.01
        assert chisquare(list(counts.values())).pvalue > 1e-3


# -- 4 ---------------------------------------------------------------------------------


def test_criterion_04_extension_claim():
    with criterion(4, "extension probability <= d^3/6 and step ratios <= 1", 60.0):
        corpus = small_host_corpus(24)
        assert len(corpus) >= 20
        embeddings_checked = 0
        for host in corpus:
            d = host.max_degree()
            assert d <= 4 and host.num_vertices <= 14
            if d < 2:
                continue
            bound = extension_bound(d, 2)
            assert bound.to_float() == pytest.approx(d**3 / 6, rel=1e-12)
            for v in range(host.num_vertices):
                for emb in tree_embeddings(host, 2, v):
                    p = exact_extension_probability(host, emb, 2)
                    assert p <= Fraction(d**3, 6)
                    report = conditional_step_check(host, emb, 2)
                    assert report.max_ratio <= 1
                    embeddings_checked += 1
        assert embeddings_checked > 0


# -- 5 ---------------------------------------------------------------------------------


def _hosts_with_known_probability(count: int):
    picked = [(complete_graph(7), 0, Fraction(1))]
    for host in small_host_corpus(200, seed=5):
        for v in range(host.num_vertices):
            p = exact_rooted_probability(host, v, 2)
            if 0 < p < 1:
                picked.append((host, v, p))
                break
        if len(picked) >= count:
            break
    return picked


def test_criterion_05_monte_carlo_vs_exact():
    with criterion(5, "|p_hat - exact| <= 0.02 at 1e5 trials, >= 10 hosts", 120.0):
        cases = _hosts_with_known_probability(12)
        assert len(cases) >= 10
        for i, (host, v, exact) in enumerate(cases):
            est = estimate_rooted_prob(host, v, 2, 100_000, seed=1000 + i, workers=2)
            assert est.trials == 100_000
            assert abs(est.p_hat - float(exact)) <= 0.02


# -- 6 ---------------------------------------------------------------------------------


def test_criterion_06_tree_count():
    with criterion(6, "tree counts 8 and 720, naive agreement, <= d^(2^(k+1))", 10.0):
        tree = build_tree(2)[0]
        assert count_tree_embeddings(tree, 2, 0) == 8 == naive_tree_count(tree, 2, 0)
        k7 = complete_graph(7)
        for v in range(7):
            assert count_tree_embeddings(k7, 2, v) == 720
        assert naive_tree_count(k7, 2, 0) == 720
        rnd = random.Random(6)
        for _ in range(6):
            host = random_bounded_graph(rnd.randint(7, 9), 3, rnd.randint(7, 12), rnd)
            d = host.max_degree()
            for v in range(host.num_vertices):
                c = count_tree_embeddings(host, 2, v)
                assert c == naive_tree_count(host, 2, v)
                assert c <= d ** (2**3)


# -- 7 ---------------------------------------------------------------------------------


def test_criterion_07_lemma_bound_literal():
    # the stated literal; the arithmetic 3^11 / 6 = 29524.5 has log10 4.4701826
    with criterion(7, "lemma_bound(3,2) log10 = 4.470360 +- 1e-6", 5.0):
        assert lemma_bound(3, 2).to_float() == pytest.approx(29524.5, rel=1e-12)
        assert abs(lemma_bound(3, 2).log10 - 4.470360) <= 1e-6


def test_criterion_07_bound_arithmetic():
    with criterion(7, "corollary, failure bound, big-rational agreement", 5.0):
        assert abs(corollary_bound(2, 2, 1).log10 - 16.98271) <= 1e-4
        fb = failure_bound(7, 2, 2, 2)
        assert abs(fb.exact.log10 - 20.838) <= 1e-3
        assert not fb.exact_certified

        def lemma_frac(d, k):
            return Fraction(d ** (2**k - 1) * d ** (2 ** (k + 1)), math.factorial(2**k - 1))

        checked = 0
        for d in range(2, 9):
            for k in range(2, 5):
                exact = lemma_frac(d, k)
                for r in range(1, 5):
                    cor = exact**r * Fraction(d ** (k + 1)) ** (d * d ** (k + 1))
                    for value, oracle in ((lemma_bound(d, k), exact), (corollary_bound(d, k, r), cor)):
                        if oracle < 10**300:
                            assert abs(math.expm1(float(value.log_mag) - log_of(oracle))) < 1e-9
                            checked += 1
        rnd = random.Random(7)
        for _ in range(2000):
            a = Fraction(rnd.randint(-(10**40), 10**40), rnd.randint(1, 10**12))
            b = Fraction(rnd.randint(-(10**40), 10**40), rnd.randint(1, 10**12))
            la, lb = LogNumber.from_value(a), LogNumber.from_value(b)
            results = [(la * lb, a * b)]
            if b:
                results.append((la / lb, a / b))
            if a * b >= 0:
                results.append((la + lb, a + b))
            for got, want in results:
                if want:
                    assert got.sign == (1 if want > 0 else -1)
                    assert abs(math.expm1(float(got.log_mag) - log_of(abs(want)))) < 1e-9
                    checked += 1
        assert checked > 4000


# -- 8 ---------------------------------------------------------------------------------


def _adversary_instances():
    rnd = random.Random(8)
    sizes = {2: 16, 3: 24, 4: 32}
    instances = []
    for t in range(60):
        h = (2, 3, 4)[t % 3]
        gp = build_gprime(sizes[h] + rnd.randint(0, 7), 2, seed=t)
        assert gp.h == h
        kind = t % 4
        if kind == 0:
            host = gp.graph
        elif kind == 1:
            n = rnd.randrange(20, 61, 2)
            host = gen_host(n, 3, seed=t)
        elif kind == 2:
            host = random_bounded_graph(rnd.randint(20, 60), 3, rnd.randint(20, 80), rnd)
        else:
            host = planted_host(gp, rnd.randint(0, 60 - 7 * h), rnd.randint(0, 10), rnd)
        instances.append((gp, host, rnd.choice([2, 3])))
    return instances


def test_criterion_08_adversary_end_to_end():
    with criterion(8, "partition, trimmed degree, no blue rooted copy of i0", 300.0):
        instances = _adversary_instances()
        assert len(instances) >= 50
        nonempty = 0
        for gp, host, d in instances:
            assert host.num_vertices <= 60
            coloring, report = build_coloring(host, gp, d=d, r=2)
            high = high_degree_edges(host, d)
            assert coloring.red | coloring.blue == host.edges
            assert not coloring.red & coloring.blue
            assert high <= coloring.red
            assert edge_subgraph(host, host.edges - high).max_degree() <= d
            for u, v in host.edges:
                if u in report.root_set or v in report.root_set:
                    assert coloring.assignment[(u, v)] == RED
            blue = Graph(host.num_vertices, coloring.blue)
            component = gp.components[report.i0]
            assert root_candidates(blue, component) == frozenset()
            assert not monomorphic(blue, component.graph)
            nonempty += bool(report.root_set)
        assert nonempty > 0


# -- 9 ---------------------------------------------------------------------------------


def _verify_instances():
    rnd = random.Random(9)
    out = []
    for t in range(24):
        gp = build_gprime(rnd.choice([16, 24]) + rnd.randint(0, 7), 2, seed=100 + t)
        spare = 30 - 7 * gp.h
        if t % 3 == 2:
            host = random_bounded_graph(rnd.randint(14, 30), 4, rnd.randint(15, 45), rnd)
        else:
            host = planted_host(gp, rnd.randint(0, spare), rnd.randint(0, 8), rnd, drop=t % 2)
        choice = t % 4
        if choice == 0:
            coloring = Coloring(host.num_vertices, {e: RED for e in host.edges})
        elif choice == 1:
            coloring = build_coloring(host, gp, d=3, r=2)[0]
        else:
            coloring = Coloring(host.num_vertices, {e: rnd.choice("RB") if choice == 2 else "B" for e in host.edges})
        out.append((gp, host, coloring))
    # the canonical NOT-defeated case: G' itself, every edge red
    gp = build_gprime(24, 2, seed=2)
    out.append((gp, gp.graph, Coloring(gp.n, {e: RED for e in gp.graph.edges})))
    return out


def test_criterion_09_verifier_matches_naive_packing():
    with criterion(9, "verify_coloring agrees with naive disjoint packing", 300.0):
        outcomes = Counter()
        saw_all_red_not_defeated = False
        for gp, host, coloring in _verify_instances():
            assert gp.h <= 3 and host.num_vertices <= 30
            result = verify_coloring(host, coloring, gp)
            for verdict, edges in ((result.blue, coloring.blue), (result.red, coloring.red)):
                naive = naive_disjoint_packing(Graph(host.num_vertices, edges), gp)
                assert verdict.verdict == (Verdict.CONTAINS if naive else Verdict.NO_COPY)
            defeated = result.blue.verdict == result.red.verdict == Verdict.NO_COPY
            assert result.outcome == (Outcome.DEFEATED if defeated else Outcome.NOT_DEFEATED)
            outcomes[result.outcome] += 1
            if not coloring.blue and result.outcome == Outcome.NOT_DEFEATED:
                saw_all_red_not_defeated = True
        assert sum(outcomes.values()) >= 20
        assert saw_all_red_not_defeated
        assert outcomes[Outcome.DEFEATED] and outcomes[Outcome.NOT_DEFEATED]


# -- 10 --------------------------------------------------------------------------------


def test_criterion_10_params():
    with criterion(10, "params at 40000, regime error at 100, threshold", 1.0):
        p = paper_params(40000)
        assert (p.d, p.k, p.r) == (7, 20, 7**22)
        with pytest.raises(RegimeTooSmall) as info:
            paper_params(100)
        threshold = (100 * math.log(2)) ** 2
        assert abs(info.value.min_log_n - threshold) <= 0.1
        assert abs(MIN_LOG_N - threshold) <= 0.1
        assert paper_params(threshold + 0.1).d >= 2
        with pytest.raises(RegimeTooSmall):
            paper_params(threshold - 0.1)


# -- 11 --------------------------------------------------------------------------------


def test_criterion_11_reproducibility(tmp_path, capsys):
    with criterion(11, "byte-identical generators, parallel == sequential", 30.0):
        commands = [
            ["gen-uk", "--k", "4", "--seed", "7"],
            ["gen-gprime", "--n", "100", "--k", "2", "--seed", "7"],
            ["gen-host", "--vertices", "40", "--degree", "3", "--seed", "7"],
        ]
        for i, argv in enumerate(commands):
            a, b = tmp_path / f"{i}a", tmp_path / f"{i}b"
            assert run([*argv, "--out", str(a)]) == 0
            assert run([*argv, "--out", str(b)]) == 0
            assert a.read_bytes() == b.read_bytes() and a.stat().st_size > 0
        capsys.readouterr()
        host = gen_host(30, 4, seed=11)
        for v in (0, 5):
            sequential = estimate_rooted_prob(host, v, 2, 20_000, seed=3)
            parallel = estimate_rooted_prob(host, v, 2, 20_000, seed=3, workers=4)
            assert sequential == parallel
