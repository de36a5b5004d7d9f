import random
from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, settings

from finiteop import linalg
from finiteop.duality import dual_system
from finiteop.errors import BudgetExceeded, InvalidArgument, IrrationalSqrt
from finiteop.grid import WeightTable, dual_weight, make_grid
from finiteop.hypernum import FloatBackend
from finiteop.ensembles import (colex_subsets, complement_kernel, complement_measure,
                                correlation_bruteforce, correlation_determinantal, ensemble,
                                inclusion_exclusion, kernel, projection_report, verify_prop2,
                                verify_theorem5)
from finiteop.orthopoly import orthogonalize

from conftest import det_leibniz, grids_and_weights, random_instance


def test_colex_order():
    assert colex_subsets(4, 2) == [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]


def test_uniform_m2(uniform3):
    g, u = uniform3
    mu = ensemble(g, u, 2)
    assert mu.probs == {(0, 1): F(1, 6), (0, 2): F(2, 3), (1, 2): F(1, 6)}
    assert mu.total() == 1
    comp = complement_measure(mu)
    assert comp.probs == {(0,): F(1, 6), (1,): F(2, 3), (2,): F(1, 6)}
    assert complement_measure(comp).probs == mu.probs
    assert correlation_bruteforce(mu, [0]) == F(5, 6)
    assert correlation_bruteforce(mu, [0, 1, 2]) == 0


def test_m1_is_proportional_to_weight():
    g = make_grid([0, 3, 5, 9])
    w = WeightTable(g, (1, 2, 3, 4))
    assert ensemble(g, w, 1).probs == {(k,): F(k + 1, 10) for k in range(4)}


def test_ensemble_ranges_and_budget(uniform3):
    g, u = uniform3
    with pytest.raises(InvalidArgument):
        ensemble(g, u, 3)
    with pytest.raises(InvalidArgument):
        ensemble(g, u, 0)
    big = make_grid(range(30))
    with pytest.raises(BudgetExceeded):
        ensemble(big, WeightTable(big, [1] * 30), 15)
    with pytest.raises(BudgetExceeded):
        ensemble(g, u, 2, budget=2)


def test_uniform_measure_complement():
    g = make_grid(range(5))
    mu = ensemble(g, WeightTable(g, [1] * 5), 1)
    comp = complement_measure(mu)
    assert set(comp.probs.values()) == {F(1, 5)}
    assert all(len(s) == 4 for s in comp.probs)


def test_deterministic_measure_full_support():
    g = make_grid([0, 1])
    mu = ensemble(g, WeightTable(g, (1, 1)), 1)
    comp = complement_measure(complement_measure(mu))
    assert comp.probs == mu.probs


def test_kernel_examples(uniform3):
    g, u = uniform3
    s = orthogonalize(g, u)
    assert kernel(s, 0).entries == ((0,) * 3,) * 3
    assert kernel(s, 3).entries == linalg.identity(3)
    K1 = kernel(s, 1)
    assert K1.entries == ((F(1, 3),) * 3,) * 3
    assert linalg.trace(K1.entries) == 1
    K2 = kernel(s, 2)
    assert correlation_determinantal(K2, [0]) == F(5, 6) == K2[0, 0]
    with pytest.raises(InvalidArgument):
        kernel(s, 4)
    assert complement_kernel(kernel(s, 3)).entries == ((0,) * 3,) * 3
    assert complement_kernel(complement_kernel(K2)).entries == K2.entries


def test_symmetric_form_rational_needs_squares():
    g = make_grid([0, 1, 3])
    with pytest.raises(IrrationalSqrt):
        kernel(orthogonalize(g, WeightTable(g, (1, 2, 1))), 1, "symmetric")
    s = orthogonalize(g, WeightTable(g, (F(1, 4), 4, 9)))
    K = kernel(s, 2, "symmetric")
    C = kernel(s, 2, "conjugated")
    assert projection_report(K).passed
    # diagonal conjugation preserves every principal minor
    for r in range(1, 4):
        for A in combinations(range(3), r):
            assert correlation_determinantal(K, A) == correlation_determinantal(C, A)


@settings(max_examples=30, deadline=None)
@given(grids_and_weights(max_size=7))
def test_projection_laws(gw):
    g, w = gw
    s = orthogonalize(g, w)
    for m in range(g.size + 1):
        K = kernel(s, m)
        rep = projection_report(K)
        assert rep.passed, rep.to_json()
        assert projection_report(complement_kernel(K)).passed
    assert kernel(s, g.size).entries == linalg.identity(g.size, F(1))


def test_det_against_leibniz():
    rng = random.Random(5)
    for n in range(1, 6):
        A = [[F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)] for _ in range(n)]
        assert linalg.det(A) == det_leibniz(A)
    assert linalg.det([[F(0), F(1)], [F(1), F(0)]]) == -1
    assert linalg.rank([[F(1), F(2)], [F(2), F(4)]]) == 1


@pytest.mark.parametrize("seed", range(3))
def test_correlations_match_bruteforce(seed):
    g, u = random_instance(random.Random(seed), 5)
    s = orthogonalize(g, u)
    for m in range(1, g.M + 1):
        mu = ensemble(g, u, m)
        K = kernel(s, m)
        comp = complement_measure(mu)
        Kc = complement_kernel(K)
        for r in range(1, g.size + 1):
            for A in combinations(range(g.size), r):
                assert correlation_determinantal(K, A) == correlation_bruteforce(mu, A)
                assert correlation_determinantal(Kc, A) == correlation_bruteforce(comp, A)
                if r > m:
                    assert correlation_bruteforce(mu, A) == 0


@pytest.mark.parametrize("seed", range(3))
def test_inclusion_exclusion(seed):
    g, u = random_instance(random.Random(100 + seed), 5)
    for m in range(1, g.M + 1):
        mu = ensemble(g, u, m)
        for r in range(1, 4):
            for A in combinations(range(g.size), r):
                lhs, rhs = inclusion_exclusion(mu, A)
                assert lhs == rhs


def test_prop2_uniform(uniform3):
    g, u = uniform3
    assert verify_prop2(g, u, 1).passed
    assert verify_prop2(g, u, 2).passed
    v = dual_weight(g, u)
    q = complement_measure(ensemble(g, v, 2))
    assert q.probs == {(0,): F(1, 3), (1,): F(1, 3), (2,): F(1, 3)}


@settings(max_examples=20, deadline=None)
@given(grids_and_weights(min_size=2, max_size=7))
def test_prop2_random(gw):
    g, u = gw
    for m in range(1, g.M + 1):
        assert verify_prop2(g, u, m).passed


def test_prop2_symmetric_grid_reduces_to_complement_symmetry():
    g = make_grid([-2, -1, 1, 2])
    u = WeightTable(g, [1] * 4)
    M = g.M
    assert verify_prop2(g, u, M).passed


def test_theorem5_uniform(uniform3):
    g, u = uniform3
    pair = dual_system(orthogonalize(g, u))
    for m in range(3):
        assert verify_theorem5(pair, m).passed
    assert kernel(pair.dual, 3).entries == linalg.identity(3)
    Kv2 = complement_kernel(kernel(pair.dual, 2))
    D = g.epsilons
    conj = [[D[j] * D[k] * Kv2.entries[j][k] for k in range(3)] for j in range(3)]
    # with u == 1 the conjugated form of K_u is already symmetric
    assert [list(r) for r in kernel(pair.primal, 1).entries] == [[F(1, 3)] * 3] * 3
    for j in range(3):
        assert conj[j][j] == F(1, 3)
    with pytest.raises(InvalidArgument):
        verify_theorem5(pair, 3)


@pytest.mark.parametrize("seed", range(3))
def test_theorem5_negative_control(seed):
    """Dropping the sign matrix D must break the literal identity for M >= 1."""
    fb = FloatBackend(128)
    g0, u0 = random_instance(random.Random(seed), 4)
    g = make_grid(g0.points, fb)
    pair = dual_system(orthogonalize(g, WeightTable(g, u0.values)))
    Ku = kernel(pair.primal, 2, "symmetric")
    Kvb = complement_kernel(kernel(pair.dual, g.M - 1, "symmetric"))
    assert any(abs(Ku.entries[j][k] - Kvb.entries[j][k]) > fb.coerce(F(1, 10**6))
               for j in range(g.size) for k in range(g.size))
    assert verify_theorem5(pair, 2).passed


@settings(max_examples=15, deadline=None)
@given(grids_and_weights(max_size=6))
def test_theorem5_random(gw):
    g, u = gw
    pair = dual_system(orthogonalize(g, u))
    for m in range(g.M + 1):
        rep = verify_theorem5(pair, m)
        assert rep.passed, rep.to_json()


def test_theorem5_float():
    fb = FloatBackend(256)
    g0, u0 = random_instance(random.Random(9), 6)
    g = make_grid(g0.points, fb)
    pair = dual_system(orthogonalize(g, WeightTable(g, u0.values)))
    for m in range(g.M + 1):
        rep = verify_theorem5(pair, m, tol=fb.coerce(F(1, 10**30)))
        assert rep.passed
        assert rep.clause("matrix_identity").max_residual < fb.coerce(F(1, 10**60))
