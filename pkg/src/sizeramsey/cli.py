"""Command-line front end: ``sizeramsey <command> [flags]``.

Output is line-oriented ``key value`` text.  Exit codes: 0 success, 1 domain
error (``error: <ErrorName>: message`` on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

import mpmath

from . import adversary, analysis, constructor, embedder, graph
from .errors import InvalidParameter, SizeRamseyError
from .hosts import gen_host
from .rng import Rng


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{float(x):.6f}"
    if isinstance(x, float):
        return f"{x:.6f}"
    if isinstance(x, mpmath.mpf):
        return mpmath.nstr(x, 12)
    return str(x)


def _log10(value: analysis.LogNumber) -> str:
    v = value.log10
    if isinstance(v, float) and abs(v) < 1e15:
        return f"{v:.6f}"
    return mpmath.nstr(mpmath.mpf(v), 12)


class _Out:
    def __init__(self):
        self.lines: list[str] = []

    def kv(self, key: str, value) -> None:
        self.lines.append(f"{key} {_fmt(value)}")

    def text(self) -> str:
        return "".join(line + "\n" for line in self.lines)


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _audit_lines(o: _Out, audit: adversary.AuditReport) -> None:
    for rec in audit.records:
        o.kv(f"{rec.name}_left", rec.left)
        o.kv(f"{rec.name}_relation", rec.relation)
        o.kv(f"{rec.name}_right", rec.right)
        o.kv(f"{rec.name}_holds", rec.holds)
    o.kv("audit_all_hold", audit.all_hold)


# -- commands ----------------------------------------------------------------------


def cmd_gen_uk(a) -> None:
    uk = constructor.build_uk(a.k, Rng(a.seed))
    _emit(f"# U_k k={a.k} seed={a.seed} root=0\n" + graph.serialize(uk.graph), a.out)


def cmd_gen_gprime(a) -> None:
    _emit(constructor.serialize_gprime(constructor.build_gprime(a.n, a.k, a.seed)), a.out)


def cmd_gen_host(a) -> None:
    _emit(graph.serialize(gen_host(a.vertices, a.degree, a.seed)), a.out)


def cmd_params(a) -> None:
    p = constructor.paper_params(a.log_n)
    o = _Out()
    o.kv("log_n", a.log_n)
    o.kv("d", p.d)
    o.kv("k", p.k)
    o.kv("r", p.r)
    if p.h is not None and p.h.bit_length() <= 190:
        o.kv("h", p.h)
    o.kv("h_log10", p.log_h / 2.302585092994046)
    o.kv("h_exact", p.h_floor_applied)
    o.kv("r_le_h", p.r_le_h)
    o.kv("min_log_n", constructor.MIN_LOG_N)
    if p.r_le_h:
        fb = analysis.params_failure_bound(p)
        o.kv("failure_exact_log10", _log10(fb.exact))
        o.kv("failure_exact_certified", fb.exact_certified)
        o.kv("failure_simplified_log10", _log10(fb.simplified))
        o.kv("failure_simplified_certified", fb.simplified_certified)
        o.kv("failure_final_log10", _log10(fb.final))
        o.kv("failure_final_certified", fb.final_certified)
    for w in p.warnings:
        print(f"warning: {w}", file=sys.stderr)
    _emit(o.text(), None)


def cmd_embed(a) -> None:
    host = graph.parse(_read(a.host))
    pattern = constructor.uk_from_graph(graph.parse(_read(a.pattern)))
    o = _Out()
    if a.root is not None:
        exists, witness = embedder.rooted_embedding_exists(host, pattern, a.root)
        o.kv("root", a.root)
        o.kv("exists", exists)
    else:
        cands = sorted(embedder.root_candidates(host, pattern))
        o.kv("candidates", len(cands))
        o.lines.append("candidate_set" + "".join(f" {v}" for v in cands))
        exists = bool(cands)
        witness = embedder.find_rooted_embedding(host, pattern, cands[0]) if cands and a.witness else None
    text = o.text()
    if a.witness and witness is not None:
        text += embedder.serialize_witness(witness)
    _emit(text, None)


def cmd_color(a) -> None:
    host = graph.parse(_read(a.host))
    gp = constructor.parse_gprime(_read(a.gprime))
    coloring, report = adversary.build_coloring(host, gp, a.d, a.r, workers=a.workers)
    o = _Out()
    o.kv("i0", report.i0)
    o.kv("root_set_size", len(report.root_set))
    o.lines.append("root_set" + "".join(f" {v}" for v in sorted(report.root_set)))
    o.kv("high_edges", len(report.high_edges))
    o.kv("red_edges", len(coloring.red))
    o.kv("blue_edges", len(coloring.blue))
    o.kv("max_shared_indices", max(report.shared_counts.values(), default=0))
    o.lines.append("candidate_counts" + "".join(f" {c}" for c in report.candidate_counts))
    o.kv("pigeonhole_premise", report.pigeonhole_premise)
    _audit_lines(o, report.audit)
    body = adversary.serialize_coloring(coloring)
    if a.out:
        _emit(body, a.out)
        _emit(o.text(), None)
    else:
        # report as comment lines keeps stdout a valid coloring file
        _emit(body + "".join("# " + line + "\n" for line in o.lines), None)


def _load_triplet(a):
    host = graph.parse(_read(a.host))
    coloring = adversary.parse_coloring(_read(a.coloring))
    gp = constructor.parse_gprime(_read(a.gprime))
    return host, coloring, gp


def cmd_verify(a) -> None:
    host, coloring, gp = _load_triplet(a)
    if (a.d is None) != (a.r is None):
        raise InvalidParameter("--d and --r must be given together")
    result = adversary.verify_coloring(host, coloring, gp, force_large=a.force_large, d=a.d, r=a.r)
    o = _Out()
    for name, cv in (("blue", result.blue), ("red", result.red)):
        o.kv(f"{name}_verdict", cv.verdict.value)
        if cv.missing_component is not None:
            o.kv(f"{name}_missing_component", cv.missing_component)
    o.kv("outcome", result.outcome.value)
    if result.audit is not None:
        _audit_lines(o, result.audit)
    _emit(o.text(), None)


def cmd_audit(a) -> None:
    host, coloring, gp = _load_triplet(a)
    o = _Out()
    _audit_lines(o, adversary.audit_inequalities(host, coloring, gp, a.d, a.r))
    _emit(o.text(), None)


def cmd_estimate(a) -> None:
    host = graph.parse(_read(a.host))
    est = analysis.estimate_rooted_prob(host, a.vertex, a.k, a.trials, a.seed, workers=a.workers)
    o = _Out()
    o.kv("p_hat", est.p_hat)
    o.kv("hits", est.hits)
    o.kv("trials", est.trials)
    o.kv("half_width_95", est.half_width_95)
    _emit(o.text(), None)


def cmd_exact(a) -> None:
    host = graph.parse(_read(a.host))
    p = analysis.exact_rooted_probability(host, a.vertex, a.k)
    o = _Out()
    o.kv("probability", f"{p.numerator}/{p.denominator}")
    o.kv("probability_float", float(p))
    d = host.max_degree()
    if d >= 2:
        o.kv("lemma_bound_log10", _log10(analysis.lemma_bound(d, a.k)))
    _emit(o.text(), None)


def cmd_bounds(a) -> None:
    o = _Out()
    o.kv("lemma_bound_log10", _log10(analysis.lemma_bound(a.d, a.k)))
    o.kv("extension_bound_log10", _log10(analysis.extension_bound(a.d, a.k)))
    o.kv("graph_count_log10", _log10(analysis.graph_count_bound(a.d, a.k)))
    if a.r is not None:
        o.kv("corollary_bound_log10", _log10(analysis.corollary_bound(a.d, a.k, a.r)))
        if a.h is not None:
            fb = analysis.failure_bound(a.h, a.r, a.d, a.k)
            o.kv("failure_exact_log10", _log10(fb.exact))
            o.kv("failure_exact_certified", fb.exact_certified)
            o.kv("failure_simplified_log10", _log10(fb.simplified))
            o.kv("failure_simplified_certified", fb.simplified_certified)
    elif a.h is not None:
        raise InvalidParameter("--h requires --r")
    _emit(o.text(), None)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sizeramsey", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(func=func)
        return sp

    sp = add("gen-uk", cmd_gen_uk, "sample a U_k realization")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--out")

    sp = add("gen-gprime", cmd_gen_gprime, "sample G' on n vertices")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--out")

    sp = add("gen-host", cmd_gen_host, "random host of bounded degree (pairing model)")
    sp.add_argument("--vertices", type=int, required=True)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--out")

    sp = add("params", cmd_params, "evaluate d, k, r, h and the failure bound for log n")
    sp.add_argument("--log-n", type=float, required=True)

    sp = add("embed", cmd_embed, "rooted embedding query")
    sp.add_argument("--host", required=True)
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--root", type=int)
    sp.add_argument("--witness", action="store_true")

    sp = add("color", cmd_color, "build the adversarial coloring")
    sp.add_argument("--host", required=True)
    sp.add_argument("--gprime", required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--out")

    sp = add("verify", cmd_verify, "decide whether a coloring avoids a monochromatic G'")
    sp.add_argument("--host", required=True)
    sp.add_argument("--coloring", required=True)
    sp.add_argument("--gprime", required=True)
    sp.add_argument("--force-large", action="store_true")
    sp.add_argument("--d", type=int)
    sp.add_argument("--r", type=int)

    sp = add("estimate", cmd_estimate, "Monte Carlo rooted-embedding probability")
    sp.add_argument("--host", required=True)
    sp.add_argument("--vertex", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--trials", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--workers", type=int, default=1)

    sp = add("exact", cmd_exact, "exact rooted-embedding probability (2^k <= 8)")
    sp.add_argument("--host", required=True)
    sp.add_argument("--vertex", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)

    sp = add("bounds", cmd_bounds, "evaluate the bound expressions in log space")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--r", type=int)
    sp.add_argument("--h", type=int)

    sp = add("audit", cmd_audit, "audit the counting inequalities on an instance")
    sp.add_argument("--host", required=True)
    sp.add_argument("--coloring", required=True)
    sp.add_argument("--gprime", required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except SizeRamseyError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: IOError: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())
