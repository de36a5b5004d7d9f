import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import strategies as st

from finiteop.grid import WeightTable, make_grid


def random_instance(rng: random.Random, M: int, square_weights: bool = False):
    """Random rational grid of M+1 distinct points with a positive rational weight."""
    points = set()
    while len(points) < M + 1:
        points.add(Fraction(rng.randint(-12, 12), rng.randint(1, 3)))
    g = make_grid(sorted(points))
    if square_weights:
        weights = [Fraction(rng.randint(1, 5), rng.randint(1, 4)) ** 2 for _ in range(M + 1)]
    else:
        weights = [Fraction(rng.randint(1, 9), rng.randint(1, 5)) for _ in range(M + 1)]
    return g, WeightTable(g, weights)


@pytest.fixture
def uniform3():
    g = make_grid([0, 1, 2])
    return g, WeightTable(g, (1, 1, 1))


@st.composite
def grids_and_weights(draw, min_size=1, max_size=6):
    n = draw(st.integers(min_size, max_size))
    points = draw(st.lists(st.fractions(min_value=-10, max_value=10, max_denominator=4),
                           min_size=n, max_size=n, unique=True))
    weights = draw(st.lists(st.fractions(min_value=Fraction(1, 6), max_value=8, max_denominator=6),
                            min_size=n, max_size=n))
    g = make_grid(points)
    return g, WeightTable(g, weights)


# -- independent oracles --------------------------------------------------------

def gram_schmidt_monic(g, w):
    """Monic orthogonal polynomials as coefficient lists, by Gram-Schmidt on monomials."""
    xs, wv = g.points, w.values

    def ev(c, x):
        return sum(ck * x ** k for k, ck in enumerate(c))

    def inner(c, d):
        return sum(ev(c, x) * ev(d, x) * wk for x, wk in zip(xs, wv))

    basis = []
    for n in range(len(xs)):
        c = [Fraction(0)] * n + [Fraction(1)]
        for b in basis:
            f = inner(c, b) / inner(b, b)
            c = [ci - f * (b[i] if i < len(b) else 0) for i, ci in enumerate(c)]
        basis.append(c)
    values = [[ev(c, x) for x in xs] for c in basis]
    norms = [inner(c, c) for c in basis]
    return basis, values, norms


def elementary_by_subsets(values, s):
    total = Fraction(0)
    for combo in combinations(values, s):
        prod = Fraction(1)
        for v in combo:
            prod *= v
        total += prod
    return total


def solve_exact(A, b):
    """Gauss-Jordan over Fractions (used as a Vandermonde solver oracle)."""
    n = len(A)
    rows = [list(map(Fraction, r)) + [Fraction(bi)] for r, bi in zip(A, b)]
    for c in range(n):
        p = next(i for i in range(c, n) if rows[i][c] != 0)
        rows[c], rows[p] = rows[p], rows[c]
        rows[c] = [v / rows[c][c] for v in rows[c]]
        for i in range(n):
            if i != c and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * bb for a, bb in zip(rows[i], rows[c])]
    return [r[-1] for r in rows]


def det_leibniz(A):
    """Determinant by cofactor expansion; exponential, for tiny matrices only."""
    n = len(A)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return A[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in A[1:]]
        total += (-1) ** j * A[0][j] * det_leibniz(minor)
    return total
