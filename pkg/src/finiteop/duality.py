"""Dual orthogonal systems and the nodal duality check.

The dual system is orthogonalised independently over the dual weight and only
then compared with the primal one, so a passing report is evidence rather than
a restatement of the construction.
"""
from __future__ import annotations

from dataclasses import dataclass

from .grid import dual_weight
from .orthopoly import OrthoSystem, orthogonalize
from .report import ResidualTracker, VerificationReport


@dataclass(frozen=True)
class DualPair:
    primal: OrthoSystem
    dual: OrthoSystem

    @property
    def grid(self):
        return self.primal.grid

    @property
    def epsilons(self):
        return self.primal.grid.epsilons

    @property
    def M(self):
        return self.primal.M


def dual_normalization(primal: OrthoSystem) -> tuple:
    """Leading coefficients ``b_i = p_{M-i} / a_{M-i}`` for the dual system."""
    M = primal.M
    return tuple(primal.norms[M - i] / primal.leading[M - i] for i in range(M + 1))


def dual_system(primal: OrthoSystem) -> DualPair:
    g = primal.grid
    v = dual_weight(g, primal.weight)
    return DualPair(primal, orthogonalize(g, v, dual_normalization(primal)))


def verify_theorem1(pair: DualPair, tol=None) -> VerificationReport:
    """Check every duality clause; ``tol=None`` demands exact equality.

    Clauses:
      * ``nodal``: ``Q_{M-i}(x_k) = pi_k P_i(x_k) u_k``
      * ``norms``: ``q_{M-i} = p_i``
      * ``coefficients``: ``a_i b_{M-i} = p_i``
      * ``sqrt_form`` (float backends only):
        ``P_i(x_k) sqrt(u_k) = eps_k Q_{M-i}(x_k) sqrt(v_k)``
    """
    P, Q = pair.primal, pair.dual
    g = pair.grid
    M = g.M
    u, v = P.weight.values, Q.weight.values
    report = VerificationReport("duality")

    nodal = ResidualTracker("nodal", tol)
    for i in range(M + 1):
        for k in range(M + 1):
            nodal.compare(Q.values[M - i][k], g.node_products[k] * P.values[i][k] * u[k], (i, k))
    report.add(nodal.result())

    norms = ResidualTracker("norms", tol)
    coeffs = ResidualTracker("coefficients", tol)
    for i in range(M + 1):
        norms.compare(Q.norms[M - i], P.norms[i], (i,))
        coeffs.compare(P.leading[i] * Q.leading[M - i], P.norms[i], (i,))
    report.add(norms.result())
    report.add(coeffs.result())

    if not g.backend.exact:
        sqrt = g.backend.sqrt
        root = ResidualTracker("sqrt_form", tol)
        for i in range(M + 1):
            for k in range(M + 1):
                root.compare(P.values[i][k] * sqrt(u[k]),
                             g.epsilons[k] * Q.values[M - i][k] * sqrt(v[k]), (i, k))
        report.add(root.result())
    return report


def double_dual_proportional(pair: DualPair) -> bool:
    """Dualising twice returns the primal weight and, degree by degree, proportional values.

    Exact comparison; meant for the rational backend.
    """
    again = dual_system(pair.dual)
    P, R = pair.primal, again.dual
    if R.weight.values != P.weight.values:
        return False
    for row_p, row_r in zip(P.values, R.values):
        k = next(k for k, p in enumerate(row_p) if p != 0)
        ratio = row_r[k] / row_p[k]
        if any(r != ratio * p for p, r in zip(row_p, row_r)):
            return False
    return True
