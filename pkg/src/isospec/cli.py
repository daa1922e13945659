"""Command-line interface.

Exit codes: 0 when every check passed (findings that only contradict unproven
statements are recorded, not failed), 1 when an assertion failed, 2 on input
errors (bad documents, unmet preconditions, exceeded caps).
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .chains import natural_walk
from .corpus import corpus_chains
from .documents import parse_chain, parse_graph, parse_map
from .errors import IsospecError, InvalidDocument, CapExceeded, PreconditionUnmet
from .graphs import circulant_graph, three_clique_graph
from .homomorphism import comparison_check, no_hom_search, validate_hom, comparison_constants
from .isoperimetry import (
    DEFAULT_CAP,
    complete_graph_reference,
    isoperimetric_constant,
    supergeometric_classify,
)
from .nodal import (
    cheeger_lower,
    cheeger_upper,
    eigenfunction_compatible_set,
    gen_cheeger_probe,
    sign_decomposition,
)
from .reports import SCHEMA_VERSION, canonical_json, digest_file, jsonable
from .spectral import spectrum


def _is_complete_graph(graph):
    n = graph.vertex_count
    return len(graph.arcs) == n * (n - 1) and all(
        (u, v) in graph.arcs for u in range(n) for v in range(n) if u != v
    )


def _read(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InvalidDocument(f"cannot read {path}: {exc}") from exc


def _load_chain(path, args):
    backend = "float" if args.float else ("exact" if args.exact else None)
    return parse_chain(_read(path), backend=backend)


# ---------------------------------------------------------------------------
# Subcommands: each returns (payload, checks, findings)
# ---------------------------------------------------------------------------

def cmd_spectrum(args):
    chain = _load_chain(args.graph, args)
    rep = spectrum(chain)
    payload = {
        "pi": chain.pi,
        "lambdas": rep.lambdas,
        "alphas": rep.alphas,
        "mean_lambdas": rep.mean_lambdas,
        "eigenbasis": rep.eigenbasis,
        "degenerate": rep.degenerate,
        "offdiag_residual": rep.offdiag_residual,
    }
    return payload, [], []


def cmd_iso(args):
    chain = _load_chain(args.graph, args)
    rep = isoperimetric_constant(chain, args.n, args.mode, args.cap)
    payload = {"n": args.n, "mode": args.mode, "families_examined": rep.families_examined}
    if rep.iota is not None:
        payload["iota"] = rep.iota
        payload["witness"] = [sorted(c) for c in rep.witness.classes]
    if rep.iota_tilde is not None:
        payload["iota_tilde"] = rep.iota_tilde
        payload["witness_tilde"] = [sorted(c) for c in rep.witness_tilde.classes]
    findings = []
    if _is_complete_graph(chain.graph) and rep.iota is not None:
        ref = complete_graph_reference(chain.graph.vertex_count, args.n)
        ref["enumerated"] = rep.iota
        findings.append({"kind": "complete_graph_formula", **ref})
    return payload, [], findings


def cmd_supergeometric(args):
    chain = _load_chain(args.graph, args)
    rep = supergeometric_classify(chain, args.max_n, args.cap)
    payload = {
        "rows": [
            {"n": n, "iota": a, "iota_tilde": b, "geometric": geo}
            for n, a, b, geo in rep.rows
        ],
        "supergeometric": rep.supergeometric,
        "max_n": rep.max_n,
    }
    return payload, [], []


def cmd_cheeger(args):
    chain = _load_chain(args.graph, args)
    spec = spectrum(chain)
    iso = isoperimetric_constant(chain, args.n, "both", args.cap)
    checks = [
        {
            "name": f"mean_lambda_{args.n} <= iota_{args.n}",
            "passed": cheeger_lower(spec, iso),
            "mean_lambda": spec.mean_lambda(args.n),
            "iota": iso.iota,
        }
    ]
    if args.n == 2:
        lam2 = spec.lambdas[1]
        iota2 = float(iso.iota)
        checks.append(
            {
                "name": "classical sandwich lambda_2/2 <= iota_2 <= sqrt(2 lambda_2)",
                "passed": 0.5 * lam2 <= iota2 + 1e-9 and iota2 * iota2 <= 2 * lam2 + 1e-9,
                "lambda_2": lam2,
                "iota_2": iso.iota,
            }
        )
        checks.append(
            {
                "name": "iota_2 equals iota_tilde_2",
                "passed": iso.iota == iso.iota_tilde,
            }
        )
    payload = {"n": args.n, "iota": iso.iota, "iota_tilde": iso.iota_tilde,
               "mean_lambda": spec.mean_lambda(args.n)}
    return payload, checks, []


def cmd_nodal(args):
    chain = _load_chain(args.graph, args)
    spec = spectrum(chain)
    k = args.eigen
    if not 1 <= k <= chain.graph.vertex_count:
        raise InvalidDocument(f"--eigen must be in 1..{chain.graph.vertex_count}")
    f = spec.eigenbasis[k - 1]
    dec = sign_decomposition(chain.graph, f)
    iso = isoperimetric_constant(chain, dec.kappa, "disjoint", args.cap)
    cs = eigenfunction_compatible_set(chain, spec, k)
    upper = cheeger_upper(chain, cs, iso)
    lam = spec.lambdas[k - 1]
    checks = [
        {
            "name": f"lambda_kappa <= lambda_{k}",
            "passed": spec.lambdas[dec.kappa - 1] <= lam + 1e-9,
            "kappa": dec.kappa,
        },
        {
            "name": f"lambda_{k} >= iota_kappa^2 / 2",
            "passed": upper["holds"],
            "iota_kappa": iso.iota,
        },
    ]
    payload = {
        "eigen_index": k,
        "lambda": lam,
        "eigenfunction": f,
        "degenerate": spec.degenerate[k - 1],
        "positives": sorted(dec.positives),
        "negatives": sorted(dec.negatives),
        "zeros": sorted(dec.zeros),
        "positive_components": [sorted(c) for c in dec.positive_components],
        "negative_components": [sorted(c) for c in dec.negative_components],
        "kappa_plus": dec.kappa_plus,
        "kappa_minus": dec.kappa_minus,
        "kappa": dec.kappa,
    }
    return payload, checks, []


def cmd_compare(args):
    chain_from = _load_chain(args.graph_from, args)
    chain_to = _load_chain(args.graph_to, args)
    sigma = parse_map(_read(args.map), chain_from.graph, chain_to.graph)
    witness = validate_hom(chain_from.graph, chain_to.graph, sigma)
    payload = {"classification": witness.classification, "map": list(witness.mapping)}
    checks = []
    if witness.is_hom:
        cc = comparison_constants(chain_from, chain_to, witness)
        payload["constants"] = cc
        if args.check != "none":
            rep = comparison_check(chain_from, chain_to, witness, args.check, args.cap)
            payload["comparison"] = {
                "part_a": rep["part_a"],
                "part_b": rep["part_b"],
            }
            checks.append({"name": "comparison bounds", "passed": rep["holds"]})
    return payload, checks, []


def cmd_nohom(args):
    g_from, _ = parse_graph(_read(args.graph_from))
    g_to, _ = parse_graph(_read(args.graph_to))
    witness = no_hom_search(g_from, g_to, args.mode, args.cap_maps)
    if witness is None:
        payload = {"verdict": "none exists", "mode": args.mode}
    else:
        payload = {"verdict": "witness found", "mode": args.mode, "map": list(witness.mapping)}
    return payload, [], []


def _three_clique_point(n):
    chain = natural_walk(three_clique_graph(n))
    iso = isoperimetric_constant(chain, 3, "both")
    from fractions import Fraction

    expected_hub = Fraction(1, n * n - n + 2)
    return {
        "block_size": n,
        "vertices": chain.graph.vertex_count,
        "pi_hub": chain.pi[0],
        "pi_hub_expected": expected_hub,
        "pi_hub_matches": chain.pi[0] == expected_hub,
        "iota_3": iso.iota,
        "iota_tilde_3": iso.iota_tilde,
        "strict_gap": iso.iota < iso.iota_tilde,
        "iota_3_times_n_sq": iso.iota * n * n,
        "witness": [sorted(c) for c in iso.witness.classes],
    }


def _gencheeger_point(item):
    name, max_n = item
    chain = dict(corpus_chains())[name]
    spec = spectrum(chain)
    out = []
    for n in range(2, min(max_n, chain.graph.vertex_count) + 1):
        finding = gen_cheeger_probe(chain, n, spectrum_report=spec)
        finding["chain"] = name
        out.append(finding)
    return out


def _parallel_map(fn, items, jobs):
    if jobs <= 1:
        return [fn(x) for x in items]
    import multiprocessing

    with multiprocessing.Pool(jobs) as pool:
        return pool.map(fn, items)


def cmd_probe(args):
    findings = []
    if args.experiment == "three-clique":
        lo, hi = args.sweep
        if 3 * hi + 1 > args.cap:
            raise CapExceeded(
                f"three-clique sweep needs {3 * hi + 1} vertices; cap is {args.cap}"
            )
        points = _parallel_map(_three_clique_point, list(range(lo, hi + 1)), args.jobs)
        findings = [{"kind": "three_clique", **p} for p in points]
        payload = {"experiment": "three-clique", "points": points}
        checks = [
            {
                "name": "hub stationary mass matches 1/(n^2-n+2)",
                "passed": all(p["pi_hub_matches"] for p in points),
            }
        ]
    elif args.experiment == "circulant":
        order = args.order
        connections = [int(x) for x in args.connections.split(",") if x.strip()]
        if order > args.cap:
            raise CapExceeded(f"order {order} exceeds cap {args.cap}")
        from .chains import lazy_max_degree_kernel

        graph = circulant_graph(order, connections)
        chain = lazy_max_degree_kernel(graph)
        rep = supergeometric_classify(chain, cap=args.cap)
        payload = {
            "experiment": "circulant",
            "order": order,
            "connections": connections,
            "uniform_pi_stationary": chain.uniform_pi_stationary,
            "rows": [
                {"n": n, "iota": a, "iota_tilde": b, "geometric": geo}
                for n, a, b, geo in rep.rows
            ],
            "supergeometric": rep.supergeometric,
        }
        findings = [
            {
                "kind": "circulant_supergeometric",
                "order": order,
                "connections": connections,
                "verdict": rep.supergeometric,
            }
        ]
        checks = []
    elif args.experiment == "gencheeger":
        names = [
            name
            for name, chain in corpus_chains()
            if chain.graph.vertex_count <= args.max_vertices
        ]
        batches = _parallel_map(
            _gencheeger_point, [(name, args.max_n or DEFAULT_CAP) for name in names], args.jobs
        )
        findings = [f for batch in batches for f in batch]
        payload = {"experiment": "gencheeger", "findings_count": len(findings)}
        checks = []
    else:
        raise InvalidDocument(f"unknown experiment {args.experiment!r}")
    return payload, checks, findings


# ---------------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="isospec",
        description="Isoperimetric and Laplacian spectra of Markov chains on directed graphs",
    )
    parser.add_argument("--json", action="store_true", help="emit the structured report")
    parser.add_argument("--out", metavar="FILE", help="write the report to FILE")
    parser.add_argument("--exact", action="store_true", help="demand the exact rational backend")
    parser.add_argument("--float", action="store_true", help="force the float backend")
    parser.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration cap on vertices")
    parser.add_argument("--jobs", type=int, default=1, help="parallel workers for sweeps")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="eigenvalues and eigenbasis of the weighted Laplacian")
    p.add_argument("graph")
    p.set_defaults(fn=cmd_spectrum)

    p = sub.add_parser("iso", help="isoperimetric constants with witnesses")
    p.add_argument("graph")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--mode", choices=["disjoint", "partition", "both"], default="both")
    p.set_defaults(fn=cmd_iso)

    p = sub.add_parser("supergeometric", help="per-n geometric flags and overall verdict")
    p.add_argument("graph")
    p.add_argument("--max-n", type=int, default=None, dest="max_n")
    p.set_defaults(fn=cmd_supergeometric)

    p = sub.add_parser("cheeger", help="mean-spectrum vs isoperimetric bounds")
    p.add_argument("graph")
    p.add_argument("-n", type=int, required=True)
    p.set_defaults(fn=cmd_cheeger)

    p = sub.add_parser("nodal", help="sign-graph analysis of an eigenfunction")
    p.add_argument("graph")
    p.add_argument("--eigen", type=int, required=True)
    p.set_defaults(fn=cmd_nodal)

    p = sub.add_parser("compare", help="homomorphism comparison bounds")
    p.add_argument("graph_from")
    p.add_argument("graph_to")
    p.add_argument("--map", required=True)
    p.add_argument("--check", choices=["a", "b", "both", "none"], default="both")
    p.set_defaults(fn=cmd_compare)

    p = sub.add_parser("nohom", help="exhaustive onto-homomorphism search")
    p.add_argument("graph_from")
    p.add_argument("graph_to")
    p.add_argument("--mode", choices=["vertex_onto", "edge_onto"], default="vertex_onto")
    p.add_argument("--cap-maps", type=int, default=10 ** 8, dest="cap_maps")
    p.set_defaults(fn=cmd_nohom)

    p = sub.add_parser("probe", help="experiment probes (findings, not assertions)")
    p.add_argument("experiment", choices=["three-clique", "circulant", "gencheeger"])
    p.add_argument("--sweep", type=_parse_range, default=(3, 3),
                   help="three-clique block-size range A..B")
    p.add_argument("--order", type=int, default=5)
    p.add_argument("--connections", default="1")
    p.add_argument("--max-n", type=int, default=None, dest="max_n")
    p.add_argument("--max-vertices", type=int, default=6, dest="max_vertices")
    p.set_defaults(fn=cmd_probe)
    return parser


def _parse_range(text):
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    v = int(text)
    return v, v


def _input_paths(args):
    paths = []
    for attr in ("graph", "graph_from", "graph_to", "map"):
        value = getattr(args, attr, None)
        if value:
            paths.append(value)
    return paths


def _render_text(report):
    lines = [f"isospec {report['version']} :: {' '.join(report['command'])}"]
    payload = report["payload"]
    lines.append(json.dumps(jsonable(payload), indent=2, sort_keys=True))
    for check in report["checks"]:
        status = "PASS" if check["passed"] else "FAIL"
        lines.append(f"[{status}] {check['name']}")
    for finding in report["findings"]:
        lines.append(f"[finding] {canonical_json(finding)}")
    lines.append(f"elapsed: {report['timing_s']:.3f}s")
    return "\n".join(lines)


def run(argv):
    """Execute one CLI invocation; returns (exit_code, report dict)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (2 if exc.code not in (0, None) else 0), None
    start = time.time()
    try:
        payload, checks, findings = args.fn(args)
        code = 0 if all(c["passed"] for c in checks) else 1
    except (InvalidDocument, CapExceeded, PreconditionUnmet, ValueError) as exc:
        return 2, {"error": str(exc), "command": list(argv)}
    except IsospecError as exc:
        return 2, {"error": str(exc), "command": list(argv)}
    report = {
        "version": __version__,
        "schema": SCHEMA_VERSION,
        "command": list(argv),
        "inputs": {path: digest_file(path) for path in _input_paths(args)},
        "payload": payload,
        "checks": checks,
        "findings": findings,
        "timing_s": time.time() - start,
    }
    return code, report


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    code, report = run(argv)
    if report is None:
        return code
    if "error" in report:
        print(f"error: {report['error']}", file=sys.stderr)
        return code
    json_mode = "--json" in argv
    text = canonical_json(
        {k: v for k, v in report.items() if k != "timing_s"}
    ) if json_mode else _render_text(report)
    if report.get("command") and "--out" in argv:
        idx = argv.index("--out")
        with open(argv[idx + 1], "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
