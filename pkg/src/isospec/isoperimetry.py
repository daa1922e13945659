"""Isoperimetric spectra: exact minimization over disjoint families and partitions.

The n'th isoperimetric value of a chain is the minimum over families of n
pairwise-disjoint nonempty vertex sets of the mean normalized outflow
(1/n) sum_i boundary(Q_i)/pi(Q_i); the tilde variant restricts the minimum
to partitions.  Minimization is exact: boundaries and masses are accumulated
as integers over fixed common denominators and only the per-class ratios are
materialized as Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .calculus import gradient_norm1
from .errors import CapExceeded, InvalidFamily
from .graphs import SubsetFamily, subset_family

DEFAULT_CAP = 14


@dataclass(frozen=True)
class IsoperimetricReport:
    n: int
    iota: object
    iota_tilde: object
    witness: object
    witness_tilde: object
    families_examined: int


@dataclass(frozen=True)
class PositiveOrthonormalFamily:
    """Nonzero nonnegative functions, pi-unit in L1, with pairwise disjoint supports."""

    functions: tuple


# ---------------------------------------------------------------------------
# Family enumeration (restricted-growth labelings; label 0 = unassigned)
# ---------------------------------------------------------------------------

def enumerate_families(vcount, n, mode):
    """Yield every canonical family exactly once, in label-lexicographic order."""
    if not 1 <= n <= vcount:
        raise ValueError(f"n must be in 1..{vcount}, got {n}")
    if mode not in ("disjoint", "partition"):
        raise ValueError(f"unknown mode {mode!r}")
    labels = [0] * vcount

    def rec(pos, used):
        if pos == vcount:
            if used == n:
                classes = [[] for _ in range(n)]
                for v, lab in enumerate(labels):
                    if lab:
                        classes[lab - 1].append(v)
                yield SubsetFamily(tuple(frozenset(c) for c in classes), mode)
            return
        if vcount - pos < n - used:
            return
        choices = range(1, min(used + 1, n) + 1) if mode == "partition" else range(0, min(used + 1, n) + 1)
        for lab in choices:
            labels[pos] = lab
            yield from rec(pos + 1, used + (1 if lab == used + 1 else 0))
        labels[pos] = 0

    yield from rec(0, 0)


def family_objective(chain, fam):
    """Mean normalized outflow of a subset family."""
    total = sum(chain.boundary_ratio(cls) for cls in fam.classes)
    return total / len(fam.classes)


# ---------------------------------------------------------------------------
# Exact minimization
# ---------------------------------------------------------------------------

def _minimize(chain, n, mode):
    """Minimum mean normalized outflow over canonical families, with its witness.

    Classes are built one at a time in canonical order (class anchors are the
    increasing class minima).  Once a class is completed its ratio is final, so
    a partial sum at or above the incumbent prunes the branch: the chain is
    strongly connected, hence every remaining class ratio is strictly positive.
    Ties between complete families go to the lexicographically smallest
    canonical labeling.
    """
    g = chain.graph
    vcount = g.vertex_count
    pi_num = chain._pi_num
    pi_den = chain._pi_den
    phi_num = chain._phi_num
    phi_den = chain._phi_den
    out_num = chain._out_num
    exact = chain.exact

    best_sum = None
    best_labels = None
    labels = [0] * vcount
    leaves = 0

    def close_ratio(bnum, pnum):
        if exact:
            return Fraction(bnum * pi_den, pnum * phi_den)
        return (bnum * pi_den) / (pnum * phi_den)

    def finish(total):
        nonlocal best_sum, best_labels, leaves
        leaves += 1
        if best_sum is None or total < best_sum:
            best_sum = total
            best_labels = tuple(labels)
        elif total == best_sum:
            cand = tuple(labels)
            if cand < best_labels:
                best_labels = cand

    def pick_class(k, avail, partial):
        # avail is sorted; choose class k's anchor (its minimum), then members.
        # In disjoint mode vertices before the anchor stay unassigned forever,
        # since every later class has a larger minimum.
        if mode == "partition":
            anchors = [0]
        else:
            anchors = [i for i in range(len(avail)) if len(avail) - i - 1 >= n - k]
        for ai in anchors:
            anchor = avail[ai]
            labels[anchor] = k
            rest = avail[ai + 1:]
            if mode == "partition" and k == n:
                # the last partition class absorbs everything that is left
                psum = pi_num[anchor]
                osum = out_num[anchor]
                inner = 0
                members = [anchor]
                for t in rest:
                    labels[t] = k
                    for m in members:
                        inner += phi_num[t][m] + phi_num[m][t]
                    members.append(t)
                    psum += pi_num[t]
                    osum += out_num[t]
                finish(partial + close_ratio(osum - inner, psum))
                for t in rest:
                    labels[t] = 0
                labels[anchor] = 0
                continue

            members = [anchor]

            def extend(idx, psum, osum, inner):
                if idx == len(rest):
                    total = partial + close_ratio(osum - inner, psum)
                    if k == n:
                        finish(total)
                        return
                    if best_sum is not None and total >= best_sum:
                        return
                    nxt = [v for v in rest if labels[v] == 0]
                    if len(nxt) >= n - k:
                        pick_class(k + 1, nxt, total)
                    return
                t = rest[idx]
                extend(idx + 1, psum, osum, inner)
                add = 0
                for m in members:
                    add += phi_num[t][m] + phi_num[m][t]
                members.append(t)
                labels[t] = k
                extend(idx + 1, psum + pi_num[t], osum + out_num[t], inner + add)
                members.pop()
                labels[t] = 0

            extend(0, pi_num[anchor], out_num[anchor], 0)
            labels[anchor] = 0

    pick_class(1, list(range(vcount)), Fraction(0) if exact else 0.0)
    witness_classes = [[] for _ in range(n)]
    for v, lab in enumerate(best_labels):
        if lab:
            witness_classes[lab - 1].append(v)
    witness = SubsetFamily(tuple(frozenset(c) for c in witness_classes), mode)
    value = best_sum / n
    return value, witness, leaves


def isoperimetric_constant(chain, n, mode="both", cap=DEFAULT_CAP):
    """Exact iota_n / iota~_n with minimizing witnesses.

    mode selects which side is computed ("disjoint", "partition" or "both");
    the unsolved side is reported as None.
    """
    vcount = chain.graph.vertex_count
    if not 1 <= n <= vcount:
        raise ValueError(f"n must be in 1..{vcount}, got {n}")
    if vcount > cap:
        raise CapExceeded(
            f"{vcount} vertices exceeds the enumeration cap {cap}; pass a larger cap"
        )
    iota = iota_tilde = witness = witness_tilde = None
    examined = 0
    if mode in ("disjoint", "both"):
        iota, witness, k = _minimize(chain, n, "disjoint")
        examined += k
    if mode in ("partition", "both"):
        iota_tilde, witness_tilde, k = _minimize(chain, n, "partition")
        examined += k
    return IsoperimetricReport(n, iota, iota_tilde, witness, witness_tilde, examined)


def isoperimetric_table(chain, max_n=None, cap=DEFAULT_CAP):
    """Reports for n = 1..max_n (default the vertex count)."""
    vcount = chain.graph.vertex_count
    if max_n is None:
        max_n = vcount
    return tuple(isoperimetric_constant(chain, n, "both", cap) for n in range(1, max_n + 1))


# ---------------------------------------------------------------------------
# Classical Cheeger constants
# ---------------------------------------------------------------------------

def classical_cheeger(chain, version="mean"):
    """min over nonempty proper Q of boundary(Q)/(2 pi(Q)(1-pi(Q))), or the
    min-version restricted to pi(Q) <= 1/2 with denominator pi(Q)."""
    vcount = chain.graph.vertex_count
    if vcount < 2:
        raise ValueError("need at least two vertices")
    if vcount > 24:
        raise CapExceeded("classical_cheeger enumerates all cuts; graph too large")
    best = None
    half = Fraction(1, 2) if chain.exact else 0.5
    one = Fraction(1) if chain.exact else 1.0
    for mask in range(1, (1 << vcount) - 1):
        q = [v for v in range(vcount) if mask >> v & 1]
        bnd = chain.directed_boundary(q)
        mass = chain.pi_mass(q)
        if version == "mean":
            val = bnd / (2 * mass * (one - mass))
        elif version == "min":
            if mass > half:
                continue
            val = bnd / mass
        else:
            raise ValueError(f"unknown version {version!r}")
        if best is None or val < best:
            best = val
    return best


# ---------------------------------------------------------------------------
# Functional objective, level-set rounding, random families
# ---------------------------------------------------------------------------

def _lcm(a, b):
    return a * b // gcd(a, b)


def validate_positive_family(chain, fam):
    """Exact check of the positive-orthonormal family invariants."""
    vcount = chain.graph.vertex_count
    seen = set()
    for i, f in enumerate(fam.functions):
        if len(f) != vcount:
            raise InvalidFamily(f"function {i} has wrong length")
        supp = set()
        for v, x in enumerate(f):
            if x < 0:
                raise InvalidFamily(f"function {i} is negative at vertex {v}")
            if x != 0:
                supp.add(v)
        if not supp:
            raise InvalidFamily(f"function {i} is identically zero")
        if supp & seen:
            raise InvalidFamily(f"function {i} overlaps an earlier support")
        seen |= supp
        norm = sum(f[v] * chain.pi[v] for v in supp)
        if chain.exact:
            if norm != 1:
                raise InvalidFamily(f"function {i} has L1 pi-norm {norm}, expected 1")
        elif abs(norm - 1.0) > 1e-10:
            raise InvalidFamily(f"function {i} has L1 pi-norm {norm!r}, expected 1")


def gamma_objective(chain, fam):
    """Mean directed-gradient L1 norm of a validated positive-orthonormal family."""
    validate_positive_family(chain, fam)
    n = len(fam.functions)
    if chain.exact:
        total = Fraction(0)
        phi_num = chain._phi_num
        arcs = sorted(chain.graph.sdg_arcs())
        for f in fam.functions:
            den = 1
            for x in f:
                den = _lcm(den, x.denominator)
            g = [int(x * den) for x in f]
            acc = 0
            for u, v in arcs:
                d = g[u] - g[v]
                if d > 0:
                    acc += d * phi_num[u][v]
            total += Fraction(acc, den * chain._phi_den)
        return total / n
    total = 0.0
    for f in fam.functions:
        total += gradient_norm1(chain, [float(x) for x in f], "directed")
    return total / n


def level_set_rounding(chain, fam):
    """Per function, the superlevel set minimizing boundary/mass; the co-area
    identity makes the resulting family objective at most the functional one."""
    validate_positive_family(chain, fam)
    pi_num = chain._pi_num
    phi_num = chain._phi_num
    out_num = chain._out_num
    classes = []
    for f in fam.functions:
        order = sorted(range(len(f)), key=lambda v: (f[v], v), reverse=True)
        order = [v for v in order if f[v] > 0]
        members = []
        psum = 0
        osum = 0
        inner = 0
        best = None
        best_set = None
        i = 0
        while i < len(order):
            j = i
            while j < len(order) and f[order[j]] == f[order[i]]:
                t = order[j]
                for m in members:
                    inner += phi_num[t][m] + phi_num[m][t]
                members.append(t)
                psum += pi_num[t]
                osum += out_num[t]
                j += 1
            if chain.exact:
                ratio = Fraction((osum - inner) * chain._pi_den, psum * chain._phi_den)
            else:
                ratio = ((osum - inner) * chain._pi_den) / (psum * chain._phi_den)
            if best is None or ratio < best:
                best = ratio
                best_set = tuple(members)
            i = j
        classes.append(best_set)
    return subset_family(classes, "disjoint", chain.graph.vertex_count)


def characteristic_family(chain, fam):
    """The normalized indicator family chi_Q / pi(Q) over a subset family."""
    functions = []
    for cls in fam.classes:
        mass = chain.pi_mass(cls)
        functions.append(
            tuple(
                (1 / mass if v in cls else Fraction(0) if chain.exact else 0.0)
                for v in range(chain.graph.vertex_count)
            )
        )
    return PositiveOrthonormalFamily(tuple(functions))


def random_positive_family(chain, n, rng, partition=False):
    """Random supports (one anchor per class, the rest uniform) with independent
    positive rational values, L1-normalized per class."""
    vcount = chain.graph.vertex_count
    perm = rng.sample(range(vcount), vcount)
    labels = [0] * vcount
    for k in range(n):
        labels[perm[k]] = k + 1
    lo = 1 if partition else 0
    for v in perm[n:]:
        labels[v] = rng.randint(lo, n)
    functions = []
    for k in range(1, n + 1):
        vals = [Fraction(0)] * vcount
        for v in range(vcount):
            if labels[v] == k:
                vals[v] = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        norm = sum(x * p for x, p in zip(vals, chain.pi))
        functions.append(tuple(x / norm for x in vals))
    return PositiveOrthonormalFamily(tuple(functions))


def random_disjoint_family(chain, n, rng, partition=False):
    vcount = chain.graph.vertex_count
    perm = rng.sample(range(vcount), vcount)
    labels = [0] * vcount
    for k in range(n):
        labels[perm[k]] = k + 1
    lo = 1 if partition else 0
    for v in perm[n:]:
        labels[v] = rng.randint(lo, n)
    classes = [[v for v in range(vcount) if labels[v] == k] for k in range(1, n + 1)]
    return subset_family(classes, "partition" if partition else "disjoint", vcount)


# ---------------------------------------------------------------------------
# Supergeometric classification and the structural-inequality suite
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SupergeometricReport:
    rows: tuple          # (n, iota, iota_tilde, geometric)
    supergeometric: object   # bool when max_n covers the vertex count, else None
    max_n: int


def supergeometric_classify(chain, max_n=None, cap=DEFAULT_CAP):
    vcount = chain.graph.vertex_count
    if max_n is None:
        max_n = vcount
    if not 2 <= max_n <= vcount:
        raise ValueError(f"max_n must be in 2..{vcount}")
    rows = []
    for n in range(2, max_n + 1):
        rep = isoperimetric_constant(chain, n, "both", cap)
        rows.append((n, rep.iota, rep.iota_tilde, rep.iota == rep.iota_tilde))
    overall = all(r[3] for r in rows) if max_n == vcount else None
    return SupergeometricReport(tuple(rows), overall, max_n)


def complete_graph_reference(n, t):
    """Closed-form complete-graph values: the mean definition gives
    n(t-1)/(t(n-1)).  The variant without the 1/t mean factor circulates in
    the literature, so both are reported with a discrepancy flag."""
    corrected = Fraction(n * (t - 1), t * (n - 1))
    printed = Fraction(n, n - 1) * (t - 1)
    return {
        "n": n,
        "t": t,
        "corrected": corrected,
        "printed": printed,
        "discrepancy": corrected != printed,
    }


def proposition_bounds_check(chain, fam):
    """The two weighted-mean bounds for merging a class with the leftover set
    (S, needs a disjoint family) or merging two classes (T, drops one class).

    Returns per-bound dicts with lhs (the min), rhs, and holds flags.
    """
    classes = fam.classes
    n_classes = len(classes)
    ratios = [chain.boundary_ratio(c) for c in classes]
    covered = set().union(*classes)
    q_star = [v for v in range(chain.graph.vertex_count) if v not in covered]
    pi_star = chain.pi_mass(q_star) if q_star else Fraction(0) if chain.exact else 0.0
    b_star = chain.directed_boundary(q_star) if q_star else Fraction(0) if chain.exact else 0.0

    out = {}
    n = n_classes
    s_values = []
    for j in range(n):
        merged = set(classes[j]) | set(q_star)
        val = chain.boundary_ratio(merged) + sum(ratios[i] for i in range(n) if i != j)
        s_values.append(val / n)
    s_rhs = (
        (n - 2) * b_star + (1 + (n - 2) * pi_star) * sum(ratios)
    ) / (n * (1 + (n - 1) * pi_star))
    out["S"] = {"lhs": min(s_values), "rhs": s_rhs, "holds": min(s_values) <= s_rhs}

    if n_classes >= 2:
        m = n_classes - 1
        t_values = []
        for j in range(n_classes):
            for k in range(j + 1, n_classes):
                merged = set(classes[j]) | set(classes[k])
                val = chain.boundary_ratio(merged) + sum(
                    ratios[i] for i in range(n_classes) if i not in (j, k)
                )
                t_values.append(val / m)
        t_rhs = b_star / (m * m * (1 - pi_star)) + Fraction(m - 1, m * m) * sum(ratios) \
            if chain.exact else b_star / (m * m * (1 - pi_star)) + (m - 1) / (m * m) * sum(ratios)
        out["T"] = {"lhs": min(t_values), "rhs": t_rhs, "holds": min(t_values) <= t_rhs}
    return out


def structural_inequalities_check(chain, samples=200, rng=None, reports=None, cap=DEFAULT_CAP):
    """Exact verification of the structural inequalities tying iota and iota~ together.

    Checks, per n: 0 <= iota~_n - iota_n <= 1/n, iota~_2 = iota_2, the
    (1 - 1/n^2) partition monotonicity, disjoint monotonicity, the full chain
    0 = iota_1 <= ... <= iota_V with endpoint 1 - trace(K)/V, plus the S/T
    weighted-mean bounds on `samples` random disjoint families per n.
    Violations are returned as findings, not raised.
    """
    import random as _random

    vcount = chain.graph.vertex_count
    if reports is None:
        reports = isoperimetric_table(chain, cap=cap)
    rng = rng or _random.Random(20240)
    findings = []

    def record(name, ok, detail):
        if not ok:
            findings.append({"check": name, "detail": detail})

    iotas = [rep.iota for rep in reports]
    tildes = [rep.iota_tilde for rep in reports]
    for idx, rep in enumerate(reports, start=1):
        gap = rep.iota_tilde - rep.iota
        record("gap_lower", gap >= 0, f"n={idx} gap={gap}")
        record("gap_upper", gap <= Fraction(1, idx) if chain.exact else gap <= 1 / idx,
               f"n={idx} gap={gap}")
    if vcount >= 2:
        record("two_geometric", tildes[1] == iotas[1], f"{tildes[1]} != {iotas[1]}")
    for n in range(1, vcount):
        bound = (1 - Fraction(1, n * n)) if chain.exact else 1 - 1 / (n * n)
        record("partition_monotone", tildes[n - 1] <= bound * tildes[n],
               f"n={n}: {tildes[n-1]} > (1-1/n^2)*{tildes[n]}")
        record("disjoint_monotone", iotas[n - 1] <= iotas[n],
               f"n={n}: {iotas[n-1]} > {iotas[n]}")
    record("chain_start", iotas[0] == 0, f"iota_1={iotas[0]}")
    endpoint = 1 - chain.trace() / vcount
    record("chain_endpoint", iotas[-1] == endpoint,
           f"iota_{vcount}={iotas[-1]} expected {endpoint}")

    prop_checked = 0
    for n in range(1, vcount + 1):
        for _ in range(samples):
            fam = random_disjoint_family(chain, n, rng)
            res = proposition_bounds_check(chain, fam)
            for name, r in res.items():
                prop_checked += 1
                record(f"proposition_{name}", r["holds"],
                       f"n={n} lhs={r['lhs']} rhs={r['rhs']}")
    return {
        "vertex_count": vcount,
        "iota_chain": tuple(iotas),
        "iota_tilde_chain": tuple(tildes),
        "endpoint": endpoint,
        "proposition_samples": prop_checked,
        "findings": findings,
        "passed": not findings,
    }
