"""Markov kernels on graphs: stationary laws, flows, reversibilization, cut functionals."""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import KernelError, NoNowherezeroStationary, ConvergenceError
from .graphs import Graph

FLOAT_ROW_TOL = 1e-12
FLOAT_STATIONARY_TOL = 1e-13


class MarkovChain:
    """A row-stochastic kernel on a base graph with its stationary distribution.

    Stores the induced flow phi(u,v) = K(u,v) pi(u), the additive
    reversibilization K_bar = (K + K*)/2 and its flow phi_bar.  In exact mode
    every entry is a Fraction; otherwise floats.  Immutable after construction.
    """

    __slots__ = (
        "graph", "kernel", "pi", "exact", "uniform_pi_stationary",
        "phi", "kbar", "phibar",
        "_pi_num", "_pi_den", "_phi_num", "_phi_den", "_out_num",
    )

    def __init__(self, graph, kernel, pi, exact, uniform_pi_stationary=None):
        n = graph.vertex_count
        self.graph = graph
        self.kernel = tuple(tuple(row) for row in kernel)
        self.pi = tuple(pi)
        self.exact = exact
        self.uniform_pi_stationary = uniform_pi_stationary

        K, p = self.kernel, self.pi
        half = Fraction(1, 2) if exact else 0.5
        self.phi = tuple(tuple(K[u][v] * p[u] for v in range(n)) for u in range(n))
        self.kbar = tuple(
            tuple(half * (K[u][v] + K[v][u] * p[v] / p[u]) for v in range(n))
            for u in range(n)
        )
        self.phibar = tuple(
            tuple(half * (self.phi[u][v] + self.phi[v][u]) for v in range(n))
            for u in range(n)
        )

        # Integer-scaled caches drive the enumeration hot paths.
        if exact:
            pi_den = _lcm_all(x.denominator for x in p)
            phi_den = _lcm_all(x.denominator for row in self.phi for x in row)
            self._pi_den = pi_den
            self._phi_den = phi_den
            self._pi_num = tuple(int(x * pi_den) for x in p)
            self._phi_num = tuple(
                tuple(int(x * phi_den) for x in row) for row in self.phi
            )
        else:
            self._pi_den = 1
            self._phi_den = 1
            self._pi_num = self.pi
            self._phi_num = self.phi
        self._out_num = tuple(
            sum(self._phi_num[u][v] for v in range(n) if v != u) for u in range(n)
        )

    # -- cut functionals ---------------------------------------------------

    def pi_mass(self, subset):
        return sum(self.pi[v] for v in subset)

    def directed_boundary(self, subset):
        """Total flow out of `subset`: sum of phi(u,v) over arcs leaving it."""
        q = set(subset)
        if not q:
            raise ValueError("boundary of the empty set is undefined")
        total = 0
        for u in q:
            for v in self.graph.out_neighbors(u):
                if v not in q:
                    total += self.phi[u][v]
        return total

    def inflow(self, subset):
        q = set(subset)
        if not q:
            raise ValueError("inflow of the empty set is undefined")
        total = 0
        for u in q:
            for v in self.graph.in_neighbors(u):
                if v not in q:
                    total += self.phi[v][u]
        return total

    def boundary_ratio(self, subset):
        """Normalized outflow boundary(Q)/pi(Q)."""
        return self.directed_boundary(subset) / self.pi_mass(subset)

    def trace(self):
        return sum(self.kernel[u][u] for u in range(self.graph.vertex_count))

    def __repr__(self):
        mode = "exact" if self.exact else "float"
        return f"MarkovChain({self.graph!r}, {mode})"


def _lcm_all(values):
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


def _support_graph_strongly_connected(graph, kernel):
    n = graph.vertex_count
    arcs = [
        (u, v)
        for u in range(n)
        for v in range(n)
        if u != v and kernel[u][v] != 0
    ]
    return graph.is_strongly_connected(arcs)


def _validate_kernel(graph, kernel, exact):
    n = graph.vertex_count
    if len(kernel) != n or any(len(row) != n for row in kernel):
        raise KernelError(f"kernel must be {n}x{n}")
    one = Fraction(1) if exact else 1.0
    for u in range(n):
        row_sum = sum(kernel[u])
        if exact:
            if row_sum != 1:
                raise KernelError(f"row {u} sums to {row_sum}, expected 1")
        elif abs(row_sum - one) > FLOAT_ROW_TOL:
            raise KernelError(f"row {u} sums to {row_sum!r}, expected 1")
        for v in range(n):
            if kernel[u][v] < 0:
                raise KernelError(f"negative kernel entry at ({u},{v})")
            if u != v and kernel[u][v] != 0 and not graph.has_arc(u, v):
                raise KernelError(f"kernel entry ({u},{v}) has no supporting arc")


def solve_stationary_exact(kernel):
    """Left fixed vector of a rational kernel via Gaussian elimination on K^T - I.

    Requires a one-dimensional null space and an everywhere-positive solution.
    """
    n = len(kernel)
    m = [[Fraction(kernel[j][i]) - (1 if i == j else 0) for j in range(n)] for i in range(n)]
    piv_rows = []
    piv_cols = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, n) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(n):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        piv_rows.append(r)
        piv_cols.append(c)
        r += 1
    free = [c for c in range(n) if c not in piv_cols]
    if len(free) != 1:
        raise NoNowherezeroStationary(
            f"stationary distribution is not unique (null space dimension {len(free)})"
        )
    x = [Fraction(0)] * n
    x[free[0]] = Fraction(1)
    for row, col in zip(piv_rows, piv_cols):
        x[col] = -m[row][free[0]]
    total = sum(x)
    if total == 0:
        raise NoNowherezeroStationary("stationary solution has zero total mass")
    x = [v / total for v in x]
    if any(v <= 0 for v in x):
        raise NoNowherezeroStationary("stationary distribution has a nonpositive entry")
    return tuple(x)


def solve_stationary_float(kernel, tol=FLOAT_STATIONARY_TOL, max_iters=500000):
    """Power iteration on the half-lazy kernel (K + I)/2, which shares pi with K."""
    n = len(kernel)
    x = [1.0 / n] * n
    for _ in range(max_iters):
        y = [0.0] * n
        for u in range(n):
            xu = x[u]
            row = kernel[u]
            for v in range(n):
                y[v] += xu * row[v]
        y = [0.5 * (a + b) for a, b in zip(x, y)]
        s = sum(y)
        y = [v / s for v in y]
        resid = sum(abs(sum(y[u] * kernel[u][v] for u in range(n)) - y[v]) for v in range(n))
        if resid < tol:
            if any(v <= 0 for v in y):
                raise NoNowherezeroStationary("stationary distribution has a nonpositive entry")
            return tuple(y)
        x = y
    raise ConvergenceError("power iteration did not reach target residual", residual=resid)


def build_chain(graph, kernel, exact=None, pi=None, uniform_pi_stationary=None):
    """Validate a kernel on a graph and construct the chain, solving for pi if needed."""
    kernel = tuple(tuple(row) for row in kernel)
    if exact is None:
        exact = all(
            isinstance(x, (Fraction, int)) and not isinstance(x, bool)
            for row in kernel for x in row
        )
    if exact:
        kernel = tuple(tuple(Fraction(x) for x in row) for row in kernel)
    else:
        kernel = tuple(tuple(float(x) for x in row) for row in kernel)
    _validate_kernel(graph, kernel, exact)
    if not _support_graph_strongly_connected(graph, kernel):
        raise NoNowherezeroStationary("kernel support graph is not strongly connected")
    if pi is None:
        pi = solve_stationary_exact(kernel) if exact else solve_stationary_float(kernel)
    else:
        pi = tuple(Fraction(x) for x in pi) if exact else tuple(float(x) for x in pi)
        _check_stationary(kernel, pi, exact)
    return MarkovChain(graph, kernel, pi, exact, uniform_pi_stationary)


def _check_stationary(kernel, pi, exact):
    n = len(kernel)
    if any(p <= 0 for p in pi):
        raise NoNowherezeroStationary("supplied pi has a nonpositive entry")
    total = sum(pi)
    for v in range(n):
        lhs = sum(pi[u] * kernel[u][v] for u in range(n))
        if exact:
            if lhs != pi[v] or total != 1:
                raise NoNowherezeroStationary("supplied pi is not stationary")
        elif abs(lhs - pi[v]) > 1e-10 or abs(total - 1) > 1e-10:
            raise NoNowherezeroStationary("supplied pi is not stationary")


def natural_walk(graph):
    """Out-degree random walk: K(u,v) = 1/outdeg(u) on every arc uv."""
    n = graph.vertex_count
    rows = []
    for u in range(n):
        d = graph.out_degree(u)
        if d == 0:
            raise KernelError(f"vertex {graph.labels[u]!r} has out-degree 0")
        row = [Fraction(0)] * n
        for v in graph.out_neighbors(u):
            row[v] = Fraction(1, d)
        rows.append(tuple(row))
    return build_chain(graph, rows, exact=True)


def lazy_max_degree_kernel(graph):
    """Max-out-degree lazy kernel: 1/d_max on non-loop arcs, remainder on the diagonal.

    The stationary distribution is solved, never assumed uniform; the
    uniform_pi_stationary flag on the result records whether uniform would
    have been stationary (true exactly when every column also sums to 1).
    """
    n = graph.vertex_count
    dmax = graph.max_out_degree()
    if dmax < 1:
        raise KernelError("graph has no arcs")
    rows = []
    for u in range(n):
        d = graph.out_degree(u)
        row = [Fraction(0)] * n
        for v in graph.out_neighbors(u):
            if v != u:
                row[v] = Fraction(1, dmax)
        if graph.has_arc(u, u):
            row[u] = Fraction(dmax - d + 1, dmax)
        else:
            row[u] = Fraction(dmax - d, dmax)
        if row[u] < 0:
            raise KernelError(f"vertex {u} out-degree exceeds the maximum")
        rows.append(tuple(row))
    uniform = all(sum(rows[u][v] for u in range(n)) == 1 for v in range(n))
    return build_chain(graph, rows, exact=True, uniform_pi_stationary=uniform)


def explicit_chain(graph, matrix, exact=None):
    return build_chain(graph, matrix, exact=exact)


def reversibilize(chain):
    """Chain with kernel K_bar on the symmetric base graph; pi is unchanged."""
    g = chain.graph
    base = Graph(g.labels, g.sdg_arcs())
    return build_chain(base, chain.kbar, exact=chain.exact, pi=chain.pi)
