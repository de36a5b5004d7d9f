"""Krawtchouk and Hahn polynomials on ``{0, ..., N}``.

Closed forms (hypergeometric values, leading coefficients, norms, dual
weights) are checked here against the generic machinery of
:mod:`finiteop.orthopoly` and :mod:`finiteop.duality`, and the reflection
identities are checked pointwise and through the 2F1/3F2 transformations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .duality import dual_system, verify_theorem1
from .errors import GammaPole, InvalidArgument
from .grid import WeightTable, dual_weight, make_grid
from .hypernum import (RATIONAL, eval_terminating, hyp, is_nonpositive_integer,
                       pfaff_transform_rhs, pochhammer, thomae_lhs, thomae_transform_rhs)
from .orthopoly import orthogonalize
from .report import ClauseResult, ResidualTracker, VerificationReport


def _binom(N: int, k: int) -> int:
    return math.comb(N, k)


# -- Krawtchouk ---------------------------------------------------------------

@dataclass(frozen=True)
class KrawtchoukParams:
    p: object
    N: int

    def __post_init__(self):
        if not isinstance(self.N, int) or self.N < 1:
            raise InvalidArgument("N must be a positive integer")
        if not 0 < self.p < 1:
            raise InvalidArgument("p must lie strictly between 0 and 1")


def krawtchouk_value(n: int, x: int, params: KrawtchoukParams, backend=RATIONAL):
    """``K_n(x; p, N) = 2F1(-n, -x; -N; 1/p)``."""
    N = params.N
    if not (0 <= n <= N and 0 <= x <= N):
        raise InvalidArgument(f"need 0 <= n, x <= {N}")
    p = backend.coerce(params.p)
    return eval_terminating(hyp((-n, -x), (-N,), 1 / p))


def krawtchouk_data(n: int, params: KrawtchoukParams, backend=RATIONAL):
    """Leading coefficient ``a_n`` and squared norm ``p_n`` (binomial weight)."""
    N = params.N
    if not 0 <= n <= N:
        raise InvalidArgument(f"need 0 <= n <= {N}")
    p = backend.coerce(params.p)
    b = backend.coerce(_binom(N, n))
    a_n = (-1) ** n / (b * math.factorial(n) * p ** n)
    p_n = ((1 - p) / p) ** n / b
    return a_n, p_n


def krawtchouk_weight(params: KrawtchoukParams, backend=RATIONAL):
    N = params.N
    p = backend.coerce(params.p)
    g = make_grid(range(N + 1), backend)
    return g, WeightTable(g, tuple(_binom(N, x) * p ** x * (1 - p) ** (N - x) for x in range(N + 1)))


def krawtchouk_dual_weight_closed_form(params: KrawtchoukParams, backend=RATIONAL):
    N = params.N
    p = backend.coerce(params.p)
    scale = 1 / (math.factorial(N) ** 2 * (p * (1 - p)) ** N)
    return tuple(scale * _binom(N, x) * (1 - p) ** x * p ** (N - x) for x in range(N + 1))


def krawtchouk_system(params: KrawtchoukParams, backend=RATIONAL):
    """Generic orthogonalisation of the binomial weight, normalised by ``a_n``."""
    g, u = krawtchouk_weight(params, backend)
    leading = [krawtchouk_data(n, params, backend)[0] for n in range(params.N + 1)]
    return orthogonalize(g, u, leading)


def krawtchouk_dual_constant(params: KrawtchoukParams, backend=RATIONAL):
    """``(-1)^N (1-p)^N N!``, the claimed ratio ``Q_n / K_n(.; 1-p, N)``."""
    N = params.N
    p = backend.coerce(params.p)
    return (-1) ** N * (1 - p) ** N * math.factorial(N)


def verify_identity_2(params: KrawtchoukParams, backend=RATIONAL, tol=None) -> VerificationReport:
    """Krawtchouk reflection ``K_n(x;p,N) = (-1)^x ((1-p)/p)^x K_{N-n}(x;1-p,N)``.

    Clauses: the identity itself, the Pfaff route, the duality report of the
    Krawtchouk pair, the dual-weight closed form, and the dual normalisation
    constant measured from the independently built dual system.
    """
    N = params.N
    p = backend.coerce(params.p)
    q = KrawtchoukParams(1 - p, N)
    report = VerificationReport(f"krawtchouk p={params.p} N={N}")
    rng = range(N + 1)

    ident = ResidualTracker("identity_2", tol)
    pfaff = ResidualTracker("pfaff_route", tol)
    for n in rng:
        for x in rng:
            lhs = krawtchouk_value(n, x, params, backend)
            rhs = (-1) ** x * ((1 - p) / p) ** x * krawtchouk_value(N - n, x, q, backend)
            ident.compare(lhs, rhs, (n, x))
            pfaff.compare(lhs, pfaff_transform_rhs(backend.coerce(-n), backend.coerce(-x),
                                                   backend.coerce(-N), 1 / p), (n, x))
    report.add(ident.result())
    report.add(pfaff.result())

    system = krawtchouk_system(params, backend)
    generic = ResidualTracker("generic_values", tol)
    for n in rng:
        a_n, p_n = krawtchouk_data(n, params, backend)
        generic.compare(system.norms[n], p_n, ("norm", n))
        for x in rng:
            generic.compare(system.values[n][x], krawtchouk_value(n, x, params, backend), (n, x))
    report.add(generic.result())

    pair = dual_system(system)
    for clause in verify_theorem1(pair, tol).clauses:
        clause.clause = "theorem1_" + clause.clause
        report.add(clause)

    closed = ResidualTracker("dual_weight_closed_form", tol)
    for x, (a, b) in enumerate(zip(pair.dual.weight.values,
                                   krawtchouk_dual_weight_closed_form(params, backend))):
        closed.compare(a, b, (x,))
    report.add(closed.result())

    const = ResidualTracker("dual_constant", tol)
    expected = krawtchouk_dual_constant(params, backend)
    for n in rng:
        for x in rng:
            k = krawtchouk_value(n, x, q, backend)
            const.compare(pair.dual.values[n][x], expected * k, (n, x))
    report.add(const.result(note="Q_n = (-1)^N (1-p)^N N! K_n(x; 1-p, N)"))
    return report


# -- Hahn ---------------------------------------------------------------------

@dataclass(frozen=True)
class HahnParams:
    alpha: object
    beta: object
    N: int
    branch: str = field(init=False)

    def __post_init__(self):
        if not isinstance(self.N, int) or self.N < 1:
            raise InvalidArgument("N must be a positive integer")
        a, b, N = self.alpha, self.beta, self.N
        if a > -1 and b > -1:
            branch = "positive"
        elif a < -N and b < -N:
            branch = "signed"
        else:
            raise InvalidArgument("need alpha, beta > -1 or alpha, beta < -N")
        object.__setattr__(self, "branch", branch)

    def reflected(self) -> "HahnParams":
        """Parameters ``(-beta-N-1, -alpha-N-1, N)`` of the dual family."""
        return HahnParams(-self.beta - self.N - 1, -self.alpha - self.N - 1, self.N)


def hahn_value(n: int, x: int, params: HahnParams, backend=RATIONAL):
    """``H_n(x) = 3F2(-n, n+a+b+1, -x; a+1, -N; 1)``."""
    N = params.N
    if not (0 <= n <= N and 0 <= x <= N):
        raise InvalidArgument(f"need 0 <= n, x <= {N}")
    a, b = backend.coerce(params.alpha), backend.coerce(params.beta)
    one = backend.coerce(1)
    return eval_terminating(hyp((-n, n + a + b + 1, -x), (a + 1, -N), one))


def hahn_weight_values(params: HahnParams, backend=RATIONAL) -> tuple:
    """``binom(a+x, x) binom(b+N-x, N-x)`` written with Pochhammers."""
    N = params.N
    a, b = backend.coerce(params.alpha), backend.coerce(params.beta)
    return tuple(pochhammer(a + 1, x) / math.factorial(x)
                 * pochhammer(b + 1, N - x) / math.factorial(N - x) for x in range(N + 1))


def hahn_weight(params: HahnParams, backend=RATIONAL):
    if params.branch != "positive":
        raise InvalidArgument("only the positive branch defines a weight table")
    g = make_grid(range(params.N + 1), backend)
    return g, WeightTable(g, hahn_weight_values(params, backend))


def hahn_data(n: int, params: HahnParams, backend=RATIONAL):
    """Leading coefficient ``a_n`` and squared norm ``p_n`` (positive branch)."""
    N = params.N
    if params.branch != "positive":
        raise InvalidArgument("hahn_data is stated for alpha, beta > -1")
    if not 0 <= n <= N:
        raise InvalidArgument(f"need 0 <= n <= {N}")
    a, b = backend.coerce(params.alpha), backend.coerce(params.beta)
    s = n + a + b + 1
    a_n = pochhammer(s, n) / (pochhammer(a + 1, n) * pochhammer(backend.coerce(-N), n))
    # (s)_{N+1} / (2n+a+b+1); for n = 0 the two factors s cancel symbolically
    if n == 0:
        ratio = pochhammer(s + 1, N)
    else:
        ratio = pochhammer(s, N + 1) / (2 * n + a + b + 1)
    p_n = ((-1) ** n * ratio * pochhammer(b + 1, n) * math.factorial(n)
           / (pochhammer(a + 1, n) * pochhammer(backend.coerce(-N), n) * math.factorial(N)))
    return a_n, p_n


def hahn_system(params: HahnParams, backend=RATIONAL):
    g, u = hahn_weight(params, backend)
    leading = [hahn_data(n, params, backend)[0] for n in range(params.N + 1)]
    return orthogonalize(g, u, leading)


def hahn_dual_weight_closed_form(params: HahnParams, backend=RATIONAL) -> tuple:
    N = params.N
    a, b = backend.coerce(params.alpha), backend.coerce(params.beta)
    scale = (-1) ** N / (pochhammer(a + 1, N) * pochhammer(b + 1, N))
    return tuple(scale * w for w in hahn_weight_values(params.reflected(), backend))


def hahn_constant_candidates(params: HahnParams, backend=RATIONAL) -> dict:
    """Two readings of the Hahn dual normalisation constant."""
    N = params.N
    b = backend.coerce(params.beta)
    return {
        "power": (-1) ** N * (b + 1) ** N,
        "pochhammer": (-1) ** N * pochhammer(b + 1, N),
    }


def measure_hahn_constant(pair, params: HahnParams, backend=RATIONAL):
    """Ratio ``Q_n(x) / H_n(x; reflected)`` at the first node where the latter is non-zero.

    Returns ``(ratio, consistent)`` where ``consistent`` says whether the same
    ratio reproduces every node of every degree.
    """
    refl = params.reflected()
    N = params.N
    ratio = None
    for x in range(N + 1):
        h = hahn_value(0, x, refl, backend)
        if h != 0:
            ratio = pair.dual.values[0][x] / h
            break
    consistent = all(pair.dual.values[n][x] == ratio * hahn_value(n, x, refl, backend)
                     for n in range(N + 1) for x in range(N + 1))
    return ratio, consistent


def verify_identity_3(params: HahnParams, backend=RATIONAL, tol=None) -> VerificationReport:
    """Hahn reflection ``H_n(x;a,b,N) = (-b-N)_x / (a+1)_x H_{N-n}(x; -b-N-1, -a-N-1, N)``.

    The Thomae route is used only where its Gamma prefactor has no poles.
    The normalisation constant of the dual family is measured from the
    independently orthogonalised dual system and compared with both the
    power reading ``(-1)^N (b+1)^N`` and the Pochhammer reading
    ``(-1)^N (b+1)_N``.
    """
    if params.branch != "positive":
        raise InvalidArgument("identity 3 is verified for alpha, beta > -1")
    N = params.N
    a, b = backend.coerce(params.alpha), backend.coerce(params.beta)
    refl = params.reflected()
    report = VerificationReport(f"hahn alpha={params.alpha} beta={params.beta} N={N}")
    rng = range(N + 1)
    one = backend.coerce(1)

    ident = ResidualTracker("identity_3", tol)
    thomae = ResidualTracker("thomae_route", tol)
    skipped = 0
    for n in rng:
        for x in rng:
            lhs = hahn_value(n, x, params, backend)
            pref = pochhammer(-b - N, x) / pochhammer(a + 1, x)
            ident.compare(lhs, pref * hahn_value(N - n, x, refl, backend), (n, x))
            try:
                route = thomae_transform_rhs(one * -n, n + a + b + 1, one * -x, a + 1, one * -N)
            except GammaPole:
                skipped += 1
                continue
            thomae.compare(lhs, route, (n, x))
            thomae.compare(lhs, thomae_lhs(one * -n, n + a + b + 1, one * -x, a + 1, one * -N), (n, x))
    report.add(ident.result())
    report.add(thomae.result(note=f"{skipped} Gamma-pole points checked directly only" if skipped else ""))

    system = hahn_system(params, backend)
    generic = ResidualTracker("generic_values", tol)
    for n in rng:
        generic.compare(system.norms[n], hahn_data(n, params, backend)[1], ("norm", n))
        for x in rng:
            generic.compare(system.values[n][x], hahn_value(n, x, params, backend), (n, x))
    report.add(generic.result())

    pair = dual_system(system)
    for clause in verify_theorem1(pair, tol).clauses:
        clause.clause = "theorem1_" + clause.clause
        report.add(clause)

    closed = ResidualTracker("dual_weight_closed_form", tol)
    g = system.grid
    generic_dual = dual_weight(g, system.weight).values
    for x, (lhs, rhs) in enumerate(zip(generic_dual, hahn_dual_weight_closed_form(params, backend))):
        closed.compare(lhs, rhs, (x,))
    report.add(closed.result())

    ratio, consistent = measure_hahn_constant(pair, params, backend)
    candidates = hahn_constant_candidates(params, backend)
    holds = [name for name, value in candidates.items() if value == ratio]
    report.add(ClauseResult("dual_constant_consistent", 0, consistent,
                            note="one constant relates Q_n and the reflected Hahn family"))
    report.add(ClauseResult(
        "dual_constant_pochhammer", abs(ratio - candidates["pochhammer"]),
        "pochhammer" in holds,
        note="measured constant = " + str(ratio) + "; readings matching: " + (", ".join(holds) or "none")))
    return report


# -- limit transition -----------------------------------------------------------

@dataclass
class ConvergenceReport:
    p: object
    N: int
    t_values: list
    deviations: list
    reflected_deviations: list
    slope: float
    reflected_slope: float
    slope_tolerance: float = 0.1

    @property
    def passed(self) -> bool:
        return (abs(self.slope + 1) <= self.slope_tolerance
                and abs(self.reflected_slope + 1) <= self.slope_tolerance)

    def to_dict(self) -> dict:
        return {
            "report": "limit_transition",
            "p": str(self.p),
            "N": self.N,
            "t": [str(t) for t in self.t_values],
            "max_deviation": [f"{d:.6e}" for d in self.deviations],
            "reflected_max_deviation": [f"{d:.6e}" for d in self.reflected_deviations],
            "slope": self.slope,
            "reflected_slope": self.reflected_slope,
            "pass": self.passed,
        }


def _loglog_slope(ts, ds) -> float:
    xs = [math.log(float(t)) for t in ts]
    ys = [math.log(float(d)) for d in ds]
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    num = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    den = sum((x - mx) ** 2 for x in xs)
    return num / den


def limit_transition_check(p, N: int, t_values, max_degree: int | None = None) -> ConvergenceReport:
    """Hahn with ``alpha = p t``, ``beta = (1-p) t`` against Krawtchouk ``K_n(x; p, N)``.

    Both sides of the Hahn reflection identity are tracked: the primal family
    tends to ``K_n(x; p, N)`` and the reflected one to ``K_n(x; 1-p, N)``.
    Deviations are exact rationals, reduced to floats only for the fit.
    """
    p = Fraction(p)
    ts = [Fraction(t) for t in t_values]
    if any(t <= 0 for t in ts) or any(b <= a for a, b in zip(ts, ts[1:])):
        raise InvalidArgument("t values must be positive and increasing")
    if len(ts) < 2:
        raise InvalidArgument("need at least two t values for a slope")
    top = N if max_degree is None else max_degree
    kp = KrawtchoukParams(p, N)
    kq = KrawtchoukParams(1 - p, N)
    devs, rdevs = [], []
    for t in ts:
        params = HahnParams(p * t, (1 - p) * t, N)
        refl = params.reflected()
        d = r = Fraction(0)
        for n in range(top + 1):
            for x in range(N + 1):
                d = max(d, abs(hahn_value(n, x, params) - krawtchouk_value(n, x, kp)))
                r = max(r, abs(hahn_value(n, x, refl) - krawtchouk_value(n, x, kq)))
        devs.append(d)
        rdevs.append(r)
    positive = [(t, d) for t, d in zip(ts, devs) if d > 0]
    rpositive = [(t, d) for t, d in zip(ts, rdevs) if d > 0]
    slope = _loglog_slope(*zip(*positive)) if len(positive) >= 2 else float("nan")
    rslope = _loglog_slope(*zip(*rpositive)) if len(rpositive) >= 2 else float("nan")
    return ConvergenceReport(p, N, ts, [float(d) for d in devs], [float(d) for d in rdevs],
                             slope, rslope)
