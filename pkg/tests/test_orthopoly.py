import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from finiteop.errors import IndexOutOfRange, InvalidArgument
from finiteop.grid import WeightTable, make_grid
from finiteop.hypernum import FloatBackend
from finiteop.orthopoly import (cd_kernel_offdiag, divided_difference_coeffs,
                                elementary_symmetric, evaluate, interpolation_leading_coeffs,
                                kernel_sum, orthogonalize, polynomial_degree)

from conftest import (elementary_by_subsets, gram_schmidt_monic, grids_and_weights,
                      random_instance, solve_exact)


def test_uniform_three_points(uniform3):
    g, u = uniform3
    s = orthogonalize(g, u)
    assert s.values[0] == (1, 1, 1)
    assert s.values[1] == (-1, 0, 1)
    assert s.values[2] == (F(1, 3), F(-2, 3), F(1, 3))
    assert s.norms == (3, 2, F(2, 3))
    assert s.leading == (1, 1, 1)


def test_single_point_system():
    g = make_grid([F(4, 3)])
    s = orthogonalize(g, WeightTable(g, (F(5, 2),)))
    assert s.values == ((1,),)
    assert s.norms == (F(5, 2),)


@settings(max_examples=60, deadline=None)
@given(grids_and_weights(max_size=7))
def test_matches_gram_schmidt_oracle(gw):
    g, w = gw
    s = orthogonalize(g, w)
    _, values, norms = gram_schmidt_monic(g, w)
    assert [list(r) for r in s.values] == values
    assert list(s.norms) == norms


@pytest.mark.parametrize("seed", range(6))
def test_orthogonality_exact_up_to_m12(seed):
    rng = random.Random(seed)
    g, w = random_instance(rng, 12 if seed < 2 else rng.randint(3, 11))
    s = orthogonalize(g, w)
    n = g.size
    for i in range(n):
        assert s.norms[i] > 0
        for j in range(i + 1, n):
            assert sum(s.values[i][k] * s.values[j][k] * w[k] for k in range(n)) == 0
    for i in range(1, n):
        assert s.betas[i] == s.norms[i] / s.norms[i - 1] > 0


@given(grids_and_weights(max_size=7))
def test_degree_exactness(gw):
    g, w = gw
    lead = [F(i + 2, 3) * (-1) ** i for i in range(g.size)]
    s = orthogonalize(g, w, lead)
    for i in range(g.size):
        coeffs = interpolation_leading_coeffs(g, s.values[i])
        assert polynomial_degree(coeffs) == i
        assert coeffs[i] == lead[i]


def test_leading_normalization_rescales_norms(uniform3):
    g, u = uniform3
    s = orthogonalize(g, u, [2, -1, 3])
    assert s.values[2] == (1, -2, 1)
    assert s.norms == (12, 2, 6)
    with pytest.raises(InvalidArgument):
        orthogonalize(g, u, [1, 0, 1])
    with pytest.raises(InvalidArgument):
        orthogonalize(g, u, [1, 1])


def test_evaluate(uniform3):
    g, u = uniform3
    s = orthogonalize(g, u, [F(7), 1, 1])
    assert evaluate(s, 1, 5) == 4
    assert evaluate(s, 0, F(-11, 3)) == 7
    with pytest.raises(IndexOutOfRange):
        evaluate(s, 3, 0)


@given(grids_and_weights(max_size=7))
def test_evaluate_on_nodes_and_against_coefficients(gw):
    g, w = gw
    s = orthogonalize(g, w)
    for i in range(g.size):
        for k, x in enumerate(g.points):
            assert evaluate(s, i, x) == s.values[i][k]
        coeffs = divided_difference_coeffs(g, s.values[i])
        y = F(17, 5)
        assert evaluate(s, i, y) == sum(c * y ** n for n, c in enumerate(coeffs))


def test_cd_examples(uniform3):
    g, u = uniform3
    s = orthogonalize(g, u)
    assert kernel_sum(s, 2, 0, 2) == F(-1, 6)
    assert cd_kernel_offdiag(s, 2, 0, 2) == F(-1, 6)
    for j in range(3):
        for k in range(3):
            if j != k:
                assert cd_kernel_offdiag(s, 1, j, k) == F(1, 3)
    with pytest.raises(InvalidArgument):
        cd_kernel_offdiag(s, 2, 1, 1)
    with pytest.raises(InvalidArgument):
        cd_kernel_offdiag(s, 3, 0, 1)


@settings(max_examples=40, deadline=None)
@given(grids_and_weights(min_size=2, max_size=8))
def test_cd_matches_direct_sum(gw):
    g, w = gw
    s = orthogonalize(g, w, [F(i + 1, 2) for i in range(g.size)])
    for m in range(1, g.M + 1):
        for j in range(g.size):
            for k in range(g.size):
                if j != k:
                    assert cd_kernel_offdiag(s, m, j, k) == w[j] * kernel_sum(s, m, j, k)


def test_cd_symmetric_form_float():
    fb = FloatBackend(256)
    g = make_grid([0, F(1, 2), 2, 3], fb)
    s = orthogonalize(g, WeightTable(g, (1, 2, 3, F(1, 2))))
    for m in range(1, 4):
        direct = fb.sqrt(s.weight[0] * s.weight[2]) * kernel_sum(s, m, 0, 2)
        assert abs(cd_kernel_offdiag(s, m, 0, 2, "symmetric") - direct) < fb.ctx.mpf(10) ** -70


def test_elementary_symmetric_examples(uniform3):
    g, _ = uniform3
    t = elementary_symmetric(g)
    assert t.E == (1, 3, 2, 0)
    assert t.omitted(1)[1] == 2
    assert t.omitted(1) == (1, 2, 0)


@given(grids_and_weights(max_size=7))
def test_elementary_symmetric_against_subsets(gw):
    g, _ = gw
    t = elementary_symmetric(g)
    assert t.E[0] == 1
    for s in range(g.size + 1):
        assert t.E[s] == elementary_by_subsets(g.points, s)
    for m in range(g.size):
        others = g.points[:m] + g.points[m + 1:]
        om = t.omitted(m)
        for s in range(g.size):
            assert om[s] == elementary_by_subsets(others, s)
            # alternating-sum form
            assert om[s] == sum((-g.points[m]) ** r * t.E[s - r] for r in range(s + 1))


def test_interpolation_examples(uniform3):
    g, _ = uniform3
    assert interpolation_leading_coeffs(g, [2, -1, 2]) == [2, -6, 3]
    assert interpolation_leading_coeffs(g, [F(5, 2)] * 3) == [F(5, 2), 0, 0]


@settings(max_examples=60, deadline=None)
@given(grids_and_weights(max_size=8))
def test_interpolation_three_routes_agree(gw):
    g, w = gw
    values = [wk * (k - 2) for k, wk in enumerate(w.values)]
    vandermonde = [[x ** n for n in range(g.size)] for x in g.points]
    oracle = solve_exact(vandermonde, values)
    assert interpolation_leading_coeffs(g, values) == oracle
    assert divided_difference_coeffs(g, values) == oracle


@given(grids_and_weights(min_size=3, max_size=8))
def test_low_degree_samples_have_vanishing_top(gw):
    g, _ = gw
    d = g.M - 2
    poly = [F(n + 1, 3) for n in range(d + 1)]
    values = [sum(c * x ** n for n, c in enumerate(poly)) for x in g.points]
    coeffs = interpolation_leading_coeffs(g, values)
    assert coeffs[:d + 1] == poly
    assert all(c == 0 for c in coeffs[d + 1:])
