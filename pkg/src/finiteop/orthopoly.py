"""Orthogonal polynomials on a finite grid.

Systems are built with the Stieltjes procedure: the monic polynomials are
generated by their three-term recurrence, evaluated only at the grid nodes,
and the recurrence coefficients come from the discrete inner product
``<f, g> = sum_k f(x_k) g(x_k) w_k``.  Any other normalisation is a rescaling
of the monic system.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import IndexOutOfRange, InvalidArgument
from .grid import Grid, WeightTable


@dataclass(frozen=True)
class OrthoSystem:
    """Polynomials ``P_0 .. P_M`` orthogonal for ``weight`` on ``grid``.

    ``values[i][k]`` is ``P_i(x_k)``, ``leading[i]`` is ``a_i`` and ``norms[i]``
    is ``p_i = sum_k P_i(x_k)^2 w_k``.  The monic polynomials satisfy
    ``pi_{i+1}(x) = (x - alphas[i]) pi_i(x) - betas[i] pi_{i-1}(x)``, where
    ``betas[0]`` is the total mass of the weight.
    """

    grid: Grid
    weight: WeightTable
    values: tuple
    leading: tuple
    norms: tuple
    alphas: tuple
    betas: tuple

    @property
    def M(self) -> int:
        return self.grid.M

    @property
    def backend(self):
        return self.grid.backend


def _inner(f, g, w):
    total = w[0] * 0
    for fk, gk, wk in zip(f, g, w):
        total += fk * gk * wk
    return total


def orthogonalize(g: Grid, w: WeightTable, normalization="monic") -> OrthoSystem:
    """Build the orthogonal system for ``w`` on ``g``.

    ``normalization`` is ``"monic"`` or a sequence of ``M+1`` non-zero leading
    coefficients.
    """
    if w.grid is not g and w.grid != g:
        raise InvalidArgument("weight table belongs to a different grid")
    size = g.size
    if normalization == "monic":
        leading = tuple(g.backend.coerce(1) for _ in range(size))
    else:
        leading = tuple(g.backend.coerce(c) for c in normalization)
        if len(leading) != size:
            raise InvalidArgument(f"need {size} leading coefficients, got {len(leading)}")
        if any(c == 0 for c in leading):
            raise InvalidArgument("leading coefficients must be non-zero")

    xs, wv = g.points, w.values
    zero = xs[0] * 0
    prev = [zero] * size
    cur = [zero + 1] * size
    monic = []
    monic_norms = []
    alphas = []
    betas = []
    for i in range(size):
        monic.append(tuple(cur))
        nrm = _inner(cur, cur, wv)
        monic_norms.append(nrm)
        alpha = sum((xk * ck * ck * wk for xk, ck, wk in zip(xs, cur, wv)), zero) / nrm
        beta = nrm if i == 0 else nrm / monic_norms[i - 1]
        alphas.append(alpha)
        betas.append(beta)
        if i + 1 < size:
            coef = zero if i == 0 else beta
            nxt = [(xk - alpha) * ck - coef * pk for xk, ck, pk in zip(xs, cur, prev)]
            prev, cur = cur, nxt

    values = tuple(tuple(c * v for v in row) for c, row in zip(leading, monic))
    norms = tuple(c * c * n for c, n in zip(leading, monic_norms))
    return OrthoSystem(g, w, values, leading, norms, tuple(alphas), tuple(betas))


def evaluate(s: OrthoSystem, i: int, x):
    """``P_i(x)`` at an arbitrary point via the stored recurrence."""
    if not 0 <= i <= s.M:
        raise IndexOutOfRange(f"degree {i} outside 0..{s.M}")
    x = s.backend.coerce(x)
    prev, cur = x * 0, x * 0 + 1
    for j in range(i):
        coef = 0 if j == 0 else s.betas[j]
        prev, cur = cur, (x - s.alphas[j]) * cur - coef * prev
    return s.leading[i] * cur


def kernel_sum(s: OrthoSystem, m: int, j: int, k: int):
    """``sum_{i<m} P_i(x_j) P_i(x_k) / p_i`` (no weight factor)."""
    V = s.values
    total = s.norms[0] * 0
    for i in range(m):
        total += V[i][j] * V[i][k] / s.norms[i]
    return total


def cd_kernel_offdiag(s: OrthoSystem, m: int, j: int, k: int, form: str = "conjugated"):
    """Christoffel-Darboux value of the order-``m`` kernel at nodes ``j != k``.

    ``form="conjugated"`` multiplies by ``w_j`` (rational-exact);
    ``form="symmetric"`` multiplies by ``sqrt(w_j w_k)``.
    """
    if not 1 <= m <= s.M:
        raise InvalidArgument(f"order {m} outside 1..{s.M}")
    if j == k:
        raise InvalidArgument("Christoffel-Darboux form is only used off the diagonal")
    V, a, xs = s.values, s.leading, s.grid.points
    core = (a[m - 1] / (a[m] * s.norms[m - 1])
            * (V[m][j] * V[m - 1][k] - V[m - 1][j] * V[m][k]) / (xs[j] - xs[k]))
    return _weight_factor(s, j, k, form) * core


def _weight_factor(s: OrthoSystem, j: int, k: int, form: str):
    w = s.weight.values
    if form == "conjugated":
        return w[j]
    if form == "symmetric":
        return s.backend.sqrt(w[j] * w[k])
    raise InvalidArgument(f"unknown kernel form {form!r}")


@dataclass(frozen=True)
class SymmetricTable:
    """Elementary symmetric functions ``E_s`` of the grid points, ``s = 0..M+1``."""

    points: tuple
    E: tuple

    def omitted(self, m: int) -> tuple:
        """``e_s`` of all points except ``x_m``, for ``s = 0..M``.

        Uses ``e_s(hat m) = E_s - x_m e_{s-1}(hat m)``, the nested form of the
        alternating sum ``E_s - x_m E_{s-1} + x_m^2 E_{s-2} - ...``.
        """
        xm = self.points[m]
        out = [self.E[0]]
        for s in range(1, len(self.points)):
            out.append(self.E[s] - xm * out[-1])
        return tuple(out)


def elementary_symmetric(g: Grid) -> SymmetricTable:
    # coefficients of prod (1 + x_k t)
    one = g.backend.coerce(1)
    coeffs = [one]
    for x in g.points:
        nxt = coeffs + [one * 0]
        for s in range(1, len(nxt)):
            nxt[s] += x * coeffs[s - 1]
        coeffs = nxt
    return SymmetricTable(g.points, tuple(coeffs))


def interpolation_leading_coeffs(g: Grid, values: Sequence, table: SymmetricTable | None = None):
    """Monomial coefficients ``c_0 .. c_M`` of the interpolant through ``(x_k, values_k)``.

    The coefficient of ``x^n`` is
    ``(-1)^(M-n) sum_m values_m / pi_m * e_{M-n}(x_0, .., hat x_m, .., x_M)``.
    """
    M = g.M
    if len(values) != M + 1:
        raise InvalidArgument(f"need {M + 1} values, got {len(values)}")
    table = table or elementary_symmetric(g)
    scaled = [g.backend.coerce(v) / pk for v, pk in zip(values, g.node_products)]
    omitted = [table.omitted(m) for m in range(M + 1)]
    coeffs = []
    for n in range(M + 1):
        s = M - n
        acc = sum((c * omitted[m][s] for m, c in enumerate(scaled)), scaled[0] * 0)
        coeffs.append(acc if s % 2 == 0 else -acc)
    return coeffs


def divided_difference_coeffs(g: Grid, values: Sequence):
    """Same interpolant as :func:`interpolation_leading_coeffs`, via Newton's form."""
    xs = g.points
    n = len(xs)
    if len(values) != n:
        raise InvalidArgument(f"need {n} values, got {len(values)}")
    dd = [g.backend.coerce(v) for v in values]
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level])
    # Horner expansion of the Newton form into monomial coefficients
    zero = xs[0] * 0
    coeffs = [dd[-1]]
    for i in range(n - 2, -1, -1):
        shifted = [zero] + coeffs
        for r, c in enumerate(coeffs):
            shifted[r] -= xs[i] * c
        shifted[0] += dd[i]
        coeffs = shifted
    return coeffs


def polynomial_degree(coeffs: Sequence) -> int:
    """Index of the highest non-zero coefficient, ``-1`` for the zero polynomial."""
    for n in range(len(coeffs) - 1, -1, -1):
        if coeffs[n] != 0:
            return n
    return -1
