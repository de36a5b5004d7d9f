"""Orthogonal polynomial ensembles on a finite grid, by exact enumeration.

Subsets are index tuples ``(i_1 < ... < i_m)`` into the grid and are always
listed in colexicographic order.  Kernels come in two forms:

``symmetric``
    ``sqrt(w_j w_k) sum_{i<m} P_i(x_j) P_i(x_k) / p_i``.  Needs square roots,
    so on the rational backend it only works for square weights.
``conjugated``
    ``w_j sum_{i<m} P_i(x_j) P_i(x_k) / p_i``, the symmetric form conjugated
    by ``diag(sqrt w)``.  Always rational; same principal minors.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from . import linalg
from .duality import DualPair
from .errors import BudgetExceeded, InvalidArgument
from .grid import Grid, WeightTable, dual_weight
from .orthopoly import OrthoSystem, kernel_sum
from .report import ResidualTracker, VerificationReport

DEFAULT_BUDGET = 10**6

FORMS = ("symmetric", "conjugated")


def colex_subsets(n: int, m: int):
    """All ``m``-subsets of ``range(n)`` in colexicographic order."""
    return sorted(combinations(range(n), m), key=lambda t: t[::-1])


@dataclass(frozen=True)
class SubsetMeasure:
    grid: Grid
    m: int
    probs: dict = field(hash=False)

    def __getitem__(self, subset):
        return self.probs.get(tuple(sorted(subset)), self.grid.points[0] * 0)

    def total(self):
        return sum(self.probs.values(), self.grid.points[0] * 0)


def _check_budget(n: int, m: int, budget: int):
    count = comb(n, m)
    if count > budget:
        raise BudgetExceeded(f"C({n}, {m}) = {count} subsets exceeds budget {budget}")


def ensemble(g: Grid, w: WeightTable, m: int, budget: int = DEFAULT_BUDGET) -> SubsetMeasure:
    """Measure proportional to the squared Vandermonde of the subset times its weights."""
    if not 1 <= m <= g.M:
        raise InvalidArgument(f"ensemble size {m} outside 1..{g.M}")
    _check_budget(g.size, m, budget)
    xs, wv = g.points, w.values
    raw = {}
    for subset in colex_subsets(g.size, m):
        val = xs[0] * 0 + 1
        for a, b in combinations(subset, 2):
            d = xs[a] - xs[b]
            val *= d * d
        for i in subset:
            val *= wv[i]
        raw[subset] = val
    total = sum(raw.values(), xs[0] * 0)
    return SubsetMeasure(g, m, {s: p / total for s, p in raw.items()})


def complement_measure(mu: SubsetMeasure) -> SubsetMeasure:
    """Push ``mu`` forward under ``A -> X minus A``."""
    everything = set(range(mu.grid.size))
    image = {tuple(sorted(everything.difference(s))): p for s, p in mu.probs.items()}
    m = mu.grid.size - mu.m
    ordered = {s: image[s] for s in colex_subsets(mu.grid.size, m) if s in image}
    return SubsetMeasure(mu.grid, m, ordered)


def correlation_bruteforce(mu: SubsetMeasure, A) -> object:
    """``sum_{B >= A} mu(B)``."""
    A = set(A)
    if not A:
        raise InvalidArgument("correlation needs a non-empty index set")
    zero = mu.grid.points[0] * 0
    if len(A) > mu.m:
        return zero
    return sum((p for s, p in mu.probs.items() if A.issubset(s)), zero)


@dataclass(frozen=True)
class KernelMatrix:
    grid: Grid
    m: int
    entries: tuple
    form: str
    weight: tuple
    complemented: bool = False

    def __getitem__(self, jk):
        j, k = jk
        return self.entries[j][k]

    @property
    def size(self) -> int:
        return len(self.entries)


def kernel(s: OrthoSystem, m: int, form: str = "conjugated") -> KernelMatrix:
    if form not in FORMS:
        raise InvalidArgument(f"unknown kernel form {form!r}")
    if not 0 <= m <= s.M + 1:
        raise InvalidArgument(f"kernel order {m} outside 0..{s.M + 1}")
    n = s.grid.size
    w = s.weight.values
    sums = [[None] * n for _ in range(n)]
    for j in range(n):
        for k in range(j, n):
            sums[j][k] = sums[k][j] = kernel_sum(s, m, j, k)
    if form == "conjugated":
        rows = tuple(tuple(w[j] * sums[j][k] for k in range(n)) for j in range(n))
    else:
        sqrt = s.backend.sqrt
        roots = [[None] * n for _ in range(n)]
        for j in range(n):
            for k in range(j, n):
                roots[j][k] = roots[k][j] = sqrt(w[j] * w[k])
        rows = tuple(tuple(roots[j][k] * sums[j][k] for k in range(n)) for j in range(n))
    return KernelMatrix(s.grid, m, rows, form, w)


def complement_kernel(K: KernelMatrix) -> KernelMatrix:
    """``I - K``; its principal minors are the correlations of the complementary process."""
    one = K.grid.backend.coerce(1)
    n = K.size
    rows = tuple(tuple((one if j == k else one * 0) - K.entries[j][k] for k in range(n))
                 for j in range(n))
    return KernelMatrix(K.grid, n - K.m, rows, K.form, K.weight, not K.complemented)


def correlation_determinantal(K: KernelMatrix, A) -> object:
    idx = sorted(set(A))
    if not idx:
        raise InvalidArgument("correlation needs a non-empty index set")
    return linalg.det(linalg.submatrix(K.entries, idx))


def projection_report(K: KernelMatrix, tol=None) -> VerificationReport:
    """Idempotence, trace, symmetry and (exact backends) rank of a kernel."""
    report = VerificationReport(f"projection m={K.m} form={K.form}")
    E = K.entries
    n = K.size
    sq = linalg.matmul(E, E)
    idem = ResidualTracker("idempotent", tol, floor=1)
    for j in range(n):
        for k in range(n):
            idem.compare(sq[j][k], E[j][k], (j, k))
    report.add(idem.result())

    tr = ResidualTracker("trace", tol, floor=1)
    tr.compare(linalg.trace(E), K.m)
    report.add(tr.result())

    # the symmetric form must be symmetric bit for bit on every backend
    exact_sym = K.form == "symmetric" or K.grid.backend.exact
    sym = ResidualTracker("symmetric", None if exact_sym else tol, floor=1)
    w = K.weight
    for j in range(n):
        for k in range(j + 1, n):
            if K.form == "symmetric":
                sym.compare(E[j][k], E[k][j], (j, k))
            else:
                sym.compare(E[j][k] * w[k], E[k][j] * w[j], (j, k))
    report.add(sym.result(note="" if K.form == "symmetric" else "w-weighted symmetry"))

    if K.grid.backend.exact:
        r = linalg.rank(E)
        tracker = ResidualTracker("rank", None)
        tracker.compare(r, K.m)
        report.add(tracker.result())
    return report


def inclusion_exclusion(mu: SubsetMeasure, A) -> tuple:
    """``(sum_{D <= A} (-1)^|D| rho_|D|(D | mu), rho(A | complement of mu))``."""
    A = sorted(set(A))
    one = mu.grid.points[0] * 0 + 1
    alt = one  # D = empty set contributes total mass 1
    for r in range(1, len(A) + 1):
        sign = -1 if r % 2 else 1
        for D in combinations(A, r):
            alt += sign * correlation_bruteforce(mu, D)
    return alt, correlation_bruteforce(complement_measure(mu), A)


def verify_prop2(g: Grid, u: WeightTable, m: int, budget: int = DEFAULT_BUDGET) -> VerificationReport:
    """Compare the ``u``-ensemble of size ``m`` with the complement of the ``v``-ensemble."""
    v = dual_weight(g, u)
    lhs = ensemble(g, u, m, budget)
    rhs = complement_measure(ensemble(g, v, g.M - m + 1, budget))
    tol = None if g.backend.exact else _float_tol(g)
    tracker = ResidualTracker("measure_equality", tol, floor=1)
    keys = set(lhs.probs) | set(rhs.probs)
    for s in colex_subsets(g.size, m):
        if s in keys:
            tracker.compare(lhs[s], rhs[s], s)
    report = VerificationReport(f"prop2 m={m}")
    report.add(tracker.result())
    return report


def _float_tol(g: Grid):
    return g.backend.ctx.mpf(2) ** (-(g.backend.bits // 2))


def _all_index_subsets(n: int, max_size: int | None = None):
    top = n if max_size is None else min(n, max_size)
    for r in range(1, top + 1):
        yield from colex_subsets(n, r)


def verify_theorem5(pair: DualPair, m: int, tol=None, max_minor_size: int | None = None) -> VerificationReport:
    """Kernel duality ``K_u^(m) = D (I - K_v^(M-m+1)) D`` with ``D = diag(eps)``.

    On an exact backend the identity is checked without square roots: equal
    principal minors (all of them unless ``max_minor_size`` caps the size),
    equal products of mirrored off-diagonal entries, the sign pattern
    ``eps_j eps_k``, and the weighted entrywise relation
    ``Ku[j][k] u_k v_j pi_j pi_k = (I - Kv)[j][k]``.
    On a float backend the symmetric forms are compared entrywise at ``tol``.
    """
    M = pair.M
    if not 0 <= m <= M:
        raise InvalidArgument(f"order {m} outside 0..{M}")
    g = pair.grid
    eps = g.epsilons
    n = g.size
    report = VerificationReport(f"theorem5 m={m}")

    if g.backend.exact:
        Ku = kernel(pair.primal, m, "conjugated")
        Kvb = complement_kernel(kernel(pair.dual, M - m + 1, "conjugated"))
        A, B = Ku.entries, Kvb.entries

        minors = ResidualTracker("principal_minors", None)
        for idx in _all_index_subsets(n, max_minor_size):
            minors.compare(linalg.det(linalg.submatrix(A, idx)),
                           linalg.det(linalg.submatrix(B, idx)), idx)
        report.add(minors.result())

        squares = ResidualTracker("offdiag_squares", None)
        signs = ResidualTracker("offdiag_signs", None)
        weighted = ResidualTracker("offdiag_weighted", None)
        u, v, pi = pair.primal.weight.values, pair.dual.weight.values, g.node_products
        for j in range(n):
            for k in range(n):
                if j == k:
                    continue
                squares.compare(A[j][k] * A[k][j], B[j][k] * B[k][j], (j, k))
                if _sign(A[j][k]) != eps[j] * eps[k] * _sign(B[j][k]):
                    signs.flag((j, k))
                weighted.compare(A[j][k] * u[k] * v[j] * pi[j] * pi[k], B[j][k], (j, k))
        report.add(squares.result())
        report.add(signs.result())
        report.add(weighted.result())
        return report

    tol = tol if tol is not None else _float_tol(g)
    Ku = kernel(pair.primal, m, "symmetric")
    Kvb = complement_kernel(kernel(pair.dual, M - m + 1, "symmetric"))
    entry = ResidualTracker("matrix_identity", tol, floor=1)
    for j in range(n):
        for k in range(n):
            entry.compare(Ku.entries[j][k], eps[j] * eps[k] * Kvb.entries[j][k], (j, k))
    report.add(entry.result())
    return report


def _sign(x) -> int:
    return (x > 0) - (x < 0)
