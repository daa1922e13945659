"""Graph homomorphisms, comparison constants, spectral transfer bounds, and no-hom search."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CapExceeded, PreconditionUnmet
from .nodal import CHEEGER_TOL, sign_decomposition
from .spectral import spectrum


@dataclass(frozen=True)
class HomWitness:
    mapping: tuple
    is_hom: bool
    vertex_onto: bool
    edge_onto: bool

    @property
    def classification(self):
        if not self.is_hom:
            return "not_hom"
        if self.edge_onto:
            return "onto_edge"
        if self.vertex_onto:
            return "onto_vertex"
        return "hom"


def validate_hom(graph_from, graph_to, sigma):
    """Classify a total vertex map as not_hom / hom / onto_vertex / onto_edge."""
    sigma = tuple(int(x) for x in sigma)
    if len(sigma) != graph_from.vertex_count:
        raise ValueError("map is not total on the source vertex set")
    for x in sigma:
        if not 0 <= x < graph_to.vertex_count:
            raise ValueError(f"map image {x} out of range")
    is_hom = all(graph_to.has_arc(sigma[u], sigma[v]) for u, v in graph_from.arcs)
    vertex_onto = len(set(sigma)) == graph_to.vertex_count
    hit = {(sigma[u], sigma[v]) for u, v in graph_from.arcs}
    edge_onto = is_hom and graph_to.arcs <= hit
    return HomWitness(sigma, is_hom, vertex_onto and is_hom, edge_onto)


def iter_homomorphisms(graph_from, graph_to, cap=10 ** 8):
    """All arc-preserving maps in lexicographic order, by backtracking."""
    n, m = graph_from.vertex_count, graph_to.vertex_count
    if m ** n > cap:
        raise CapExceeded(f"{m}^{n} maps exceeds the search cap {cap}")
    arcs_at = [[] for _ in range(n)]
    for u, v in graph_from.arcs:
        arcs_at[max(u, v)].append((u, v))
    partial = [0] * n

    def rec(pos):
        if pos == n:
            yield tuple(partial)
            return
        for img in range(m):
            partial[pos] = img
            ok = True
            for u, v in arcs_at[pos]:
                if not graph_to.has_arc(partial[u], partial[v]):
                    ok = False
                    break
            if ok:
                yield from rec(pos + 1)

    yield from rec(0)


def onto_homomorphisms(graph_from, graph_to, mode="vertex_onto", cap=10 ** 8):
    for sigma in iter_homomorphisms(graph_from, graph_to, cap):
        w = validate_hom(graph_from, graph_to, sigma)
        if mode == "vertex_onto" and w.vertex_onto:
            yield w
        elif mode == "edge_onto" and w.edge_onto:
            yield w


def no_hom_search(graph_from, graph_to, mode="vertex_onto", cap=10 ** 8):
    """First onto homomorphism in lexicographic order, or None when none exists."""
    for w in onto_homomorphisms(graph_from, graph_to, mode, cap):
        return w
    return None


# ---------------------------------------------------------------------------
# Comparison constants
# ---------------------------------------------------------------------------

def _phibar_extremes(chain):
    n = chain.graph.vertex_count
    vals = [
        chain.phibar[u][v]
        for u in range(n)
        for v in range(n)
        if u != v and chain.phibar[u][v] != 0
    ]
    return max(vals), min(vals)


@dataclass(frozen=True)
class ComparisonConstants:
    m_sigma: int
    m_sup: int
    s_sigma: int
    s_sup: int
    pi_max_from: object
    pi_min_from: object
    pi_max_to: object
    pi_min_to: object
    phibar_max_from: object
    phibar_min_from: object
    phibar_max_to: object
    phibar_min_to: object
    tau_from_to: object
    tau_to_from: object


def comparison_constants(chain_from, chain_to, witness):
    """Fiber edge-count and fiber-size extremes of the map plus kernel extremes.

    Edge counts run over arcs of the symmetric directed view of the source;
    the minimum skips empty fiber-pair arc sets.
    """
    sigma = witness.mapping
    m = chain_to.graph.vertex_count
    counts = {}
    for u, v in chain_from.graph.sdg_arcs():
        key = (sigma[u], sigma[v])
        counts[key] = counts.get(key, 0) + 1
    fiber_sizes = [0] * m
    for x in sigma:
        fiber_sizes[x] += 1
    f_max, f_min = _phibar_extremes(chain_from)
    t_max, t_min = _phibar_extremes(chain_to)
    pi_from = chain_from.pi
    pi_to = chain_to.pi
    tau_from_to = (max(pi_to) / min(pi_from)) * (f_max / t_min)
    tau_to_from = (max(pi_from) / min(pi_to)) * (t_max / f_min)
    return ComparisonConstants(
        m_sigma=min(counts.values()) if counts else 0,
        m_sup=max(counts.values()) if counts else 0,
        s_sigma=min(fiber_sizes),
        s_sup=max(fiber_sizes),
        pi_max_from=max(pi_from),
        pi_min_from=min(pi_from),
        pi_max_to=max(pi_to),
        pi_min_to=min(pi_to),
        phibar_max_from=f_max,
        phibar_min_from=f_min,
        phibar_max_to=t_max,
        phibar_min_to=t_min,
        tau_from_to=tau_from_to,
        tau_to_from=tau_to_from,
    )


def comparison_check(chain_from, chain_to, witness, part="both", cap=14, tol=CHEEGER_TOL):
    """Transfer bounds along an onto homomorphism.

    Part (a), vertex-onto: lambda^G_k <= factor * lambda^H_k and
    iota^G_k <= factor * iota^H_k for k = 1..|V(H)|, with
    factor = (M^sigma / S_sigma) (phibar^M_G pi^M_H) / (phibar^m_H pi^m_G).
    Part (b), edge-onto: lambda^G_{n-m+k} >= factor' * lambda^H_k with the
    dual factor.  Eigenvalue comparisons carry a float tolerance; the iota
    comparisons are exact.
    """
    from .isoperimetry import isoperimetric_constant

    cc = comparison_constants(chain_from, chain_to, witness)
    n = chain_from.graph.vertex_count
    m = chain_to.graph.vertex_count
    spec_from = spectrum(chain_from)
    spec_to = spectrum(chain_to)
    report = {"constants": cc, "part_a": None, "part_b": None}

    if part in ("a", "both"):
        if not witness.vertex_onto:
            raise PreconditionUnmet("part (a) needs a vertex-onto homomorphism")
        factor = (
            Fraction(cc.m_sup, cc.s_sigma)
            * (cc.phibar_max_from * cc.pi_max_to)
            / (cc.phibar_min_to * cc.pi_min_from)
        )
        rows = []
        ok = True
        for k in range(1, m + 1):
            lam_ok = spec_from.lambdas[k - 1] <= float(factor) * spec_to.lambdas[k - 1] + tol
            iota_from = isoperimetric_constant(chain_from, k, "disjoint", cap).iota
            iota_to = isoperimetric_constant(chain_to, k, "disjoint", cap).iota
            iota_ok = iota_from <= factor * iota_to
            ok = ok and lam_ok and iota_ok
            rows.append(
                {
                    "k": k,
                    "lambda_from": spec_from.lambdas[k - 1],
                    "lambda_to": spec_to.lambdas[k - 1],
                    "lambda_holds": lam_ok,
                    "iota_from": iota_from,
                    "iota_to": iota_to,
                    "iota_holds": iota_ok,
                }
            )
        report["part_a"] = {"factor": factor, "rows": rows, "holds": ok}

    if part in ("b", "both"):
        if not witness.edge_onto:
            raise PreconditionUnmet("part (b) needs an edge-onto homomorphism")
        factor = (
            Fraction(cc.m_sigma, cc.s_sup)
            * (cc.phibar_min_from * cc.pi_min_to)
            / (cc.phibar_max_to * cc.pi_max_from)
        )
        rows = []
        ok = True
        for k in range(1, m + 1):
            lhs = spec_from.lambdas[n - m + k - 1]
            rhs = float(factor) * spec_to.lambdas[k - 1]
            holds = lhs >= rhs - tol
            ok = ok and holds
            rows.append({"k": k, "lambda_from": lhs, "lambda_to": spec_to.lambdas[k - 1], "holds": holds})
        report["part_b"] = {"factor": factor, "rows": rows, "holds": ok}

    report["holds"] = all(
        report[key] is None or report[key]["holds"] for key in ("part_a", "part_b")
    )
    return report


# ---------------------------------------------------------------------------
# Courant-Hilbert style transfer of sign-graph counts
# ---------------------------------------------------------------------------

def courant_hilbert_check(chain_from, chain_to, witness, f, zeta, theorem, tol=CHEEGER_TOL):
    """Transfer a sign-graph count of a function on the target into an
    eigenvalue index bound on the source.

    theorem "excessive" (vertex-onto):  lambda^G_{kappa+(f)} <= (M^s/S_s) tau(G,H) zeta
    theorem "deficient_a" (edge-onto):  alpha^G_{kappa+(f)} >= (M_s/S^s) tau(H,G)^-1 zeta
    theorem "deficient_b" (edge-onto, kappa-(f) != 0, target strongly
    connected): strict bound at index |Comp(P_f union O_f)|.
    """
    from .nodal import excessive_check

    cc = comparison_constants(chain_from, chain_to, witness)
    dec = sign_decomposition(chain_to.graph, f)
    spec_from = spectrum(chain_from)
    report = {"theorem": theorem, "kappa_plus": dec.kappa_plus, "kappa_minus": dec.kappa_minus}

    if theorem == "excessive":
        if not witness.vertex_onto:
            raise PreconditionUnmet("excessive transfer needs a vertex-onto homomorphism")
        if not excessive_check(chain_to, f, zeta, "Delta", "excessive"):
            raise PreconditionUnmet("f is not zeta-excessive for the target Laplacian")
        if dec.kappa_plus == 0:
            raise PreconditionUnmet("f has no positive sign-graph")
        lhs = spec_from.lambdas[dec.kappa_plus - 1]
        rhs = float(Fraction(cc.m_sup, cc.s_sigma) * cc.tau_from_to) * float(zeta)
        report.update({"lhs": lhs, "rhs": rhs, "holds": lhs <= rhs + tol})
        return report

    if theorem in ("deficient_a", "deficient_b"):
        if not witness.edge_onto:
            raise PreconditionUnmet("deficient transfer needs an edge-onto homomorphism")
        if not excessive_check(chain_to, f, zeta, "K_bar", "deficient"):
            raise PreconditionUnmet("f is not zeta-deficient for the target K_bar")
        factor = float(Fraction(cc.m_sigma, cc.s_sup) / cc.tau_to_from)
        rhs = factor * float(zeta)
        if theorem == "deficient_a":
            if dec.kappa_plus == 0:
                raise PreconditionUnmet("f has no positive sign-graph")
            lhs = spec_from.alphas[dec.kappa_plus - 1]
            report.update({"lhs": lhs, "rhs": rhs, "holds": lhs >= rhs - tol})
            return report
        if dec.kappa_minus == 0:
            raise PreconditionUnmet("strict variant needs kappa-(f) != 0")
        if not chain_to.graph.is_strongly_connected():
            raise PreconditionUnmet("strict variant needs a strongly connected target")
        comp_count = len(chain_to.graph.undirected_components(dec.positives | dec.zeros))
        lhs = spec_from.alphas[comp_count - 1]
        report.update(
            {"index": comp_count, "lhs": lhs, "rhs": rhs, "holds": lhs - rhs > tol}
        )
        return report

    raise ValueError(f"unknown theorem {theorem!r}")
