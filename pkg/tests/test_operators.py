import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from helpers import wave_loop_oracle

from tropcoh import catalog
from tropcoh.cohomology import _model_of, build_cochain_complex, cohomology
from tropcoh.errors import NonOrientable, WrongDimension
from tropcoh.exactlin import Multivector, matmul, matvec
from tropcoh.operators import (AffineSimplex, SuperformExpr, cap_fundamental_class, check_monodromy_wave_identity,
                               contract_prime, cup_evaluate, duality_pairing, fundamental_class,
                               integrate_one_form, monodromy, pair_prime, random_identity_instance,
                               run_identity_trials, smooth_curve_check, wave_matrix, wave_on_cohomology)
from tropcoh.polyhedral import make_cycle


def test_monodromy_of_basis_forms():
    a = SuperformExpr.basis_form(3, (0, 1))
    # d′x1∧d′x2 ↦ -d′x2∧d″x1 + d′x1∧d″x2
    assert monodromy(a).as_dict() == {((1,), (0,)): -1, ((0,), (1,)): 1}
    assert monodromy(SuperformExpr.basis_form(2, (0,), (0,))).as_dict() == {}
    assert monodromy(a).bidegree == (1, 1)


def test_contraction_and_pairing():
    a = SuperformExpr.from_dict(2, {((0,), (1,)): 3, ((1,), (1,)): 5})
    v = Multivector.from_vector([1, 2])
    assert contract_prime(a, v).as_dict() == {((), (1,)): 13}
    assert pair_prime(SuperformExpr.basis_form(2, (1,)), v) == 2


def test_integrate_one_form():
    delta = AffineSimplex(((0, 0), (2, 1)))
    form = SuperformExpr.from_dict(2, {((), (0,)): 3, ((), (1,)): 1})
    assert integrate_one_form(form, delta) == 7
    unb = AffineSimplex(((0, 0), (2, 1)), frozenset({0}))
    assert integrate_one_form(form, unb) == 1


def test_identity_trials():
    trials = run_identity_trials(100, 7)
    assert len(trials) == 100
    assert all(c.holds for _, _, c in trials)
    assert {p for p, _, _ in trials} == {1, 2, 3}
    assert {n for _, n, _ in trials} == {2, 3, 4}


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 9), st.sampled_from([(1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (3, 3)]), st.booleans())
def test_identity_property(seed, pn, infinite):
    p, n = pn
    alpha, v, delta = random_identity_instance(random.Random(seed), p, n, infinite)
    res = check_monodromy_wave_identity(alpha, v, delta)
    assert res.lhs == res.rhs
    assert isinstance(res.lhs, Fraction)


def _chain_map_defect(X, rule):
    tri = _model_of(X, "stellar")
    n = X.dim
    bad = 0
    for p in range(1, n + 1):
        src = build_cochain_complex(tri, p, "Q")
        dst = build_cochain_complex(tri, p - 1, "Q")
        for q in range(n - 1):
            w_q, _, _ = wave_matrix(tri, p, q, "Q", rule=rule)
            w_q1, _, _ = wave_matrix(tri, p, q + 1, "Q", rule=rule)
            lhs = matmul(dst.differential(q + 1), w_q, bcols=src.rank(q))
            rhs = matmul(w_q1, src.differential(q), bcols=src.rank(q))
            bad += sum(1 for r1, r2 in zip(lhs, rhs) for a, b in zip(r1, r2) if a != -b)
    return bad


@pytest.mark.parametrize("name", ["trop_p2", "trop_p1xp1", "square_cycle", "honeycomb_quartic"])
def test_wave_anticommutes_with_coboundary(cycle, name):
    assert _chain_map_defect(cycle(name), "lift") == 0


@pytest.mark.parametrize("name", ["trop_p2", "trop_p1xp1"])
def test_truncated_edges_break_the_chain_map(cycle, name):
    # dropping the infinite coordinates of an edge vector is not compatible with ∂
    assert _chain_map_defect(cycle(name), "truncate") > 0


@pytest.mark.parametrize("side, length", [(1, 4), (3, 12)])
def test_wave_scales_generator_by_lattice_length(side, length):
    X = catalog.square_cycle(side)
    matrix, _, _ = wave_on_cohomology(X, 1, 0, "Z")
    lhs, period = wave_loop_oracle(X)
    assert abs(period) == 1
    assert abs(lhs) == length
    assert matrix == [[lhs / period]]


def test_wave_entries_are_integral(cycle):
    for X in (catalog.square_cycle(1), catalog.square_cycle(3)):
        mat, _, _ = wave_matrix(X, 1, 0, "Z")
        assert all(Fraction(x).denominator == 1 for row in mat for x in row)


def test_wave_with_fractional_vertices_enlarges_ring():
    from tropcoh.polyhedral import GammaSpec
    X = catalog.square_cycle(Fraction(1, 2), GammaSpec((Fraction(1, 2),)))
    matrix, h_src, h_dst = wave_on_cohomology(X, 1, 0, "Z")
    assert str(h_dst.ring) == "Z[1/2]"
    assert abs(matrix[0][0]) == 2


@pytest.mark.parametrize("name", ["square_cycle", "trop_p2", "tropical_line", "honeycomb_quartic"])
def test_cap_vanishes_on_coboundaries(cycle, name):
    X = cycle(name)
    n = X.dim
    ev = fundamental_class(X, "Q")
    cc = ev.complex
    rng = random.Random(name)
    d = cc.differential(n - 1)
    for _ in range(25):
        eta = [rng.randint(-5, 5) for _ in range(cc.rank(n - 1))]
        assert cap_fundamental_class(matvec(d, eta), ev) == 0


@pytest.mark.parametrize("name", ["square_cycle", "trop_p1", "trop_p2", "honeycomb_quartic"])
def test_fundamental_class_detects_top_generator(cycle, name):
    X = cycle(name)
    n = X.dim
    ev = fundamental_class(X, "Z")
    (top,) = cohomology(X, n, n, "Z").representatives
    assert abs(cap_fundamental_class(top, ev)) == 1


def test_fundamental_class_needs_a_cycle():
    seg = catalog.segment(2)
    with pytest.raises(NonOrientable):
        fundamental_class(seg, "Q")
    ev = fundamental_class(seg, "Q", require_cycle=False)
    assert len(ev.signs) == 1


def test_weights_scale_the_fundamental_class():
    X = make_cycle(catalog.fan_p1(), [(0, [[0]], [[1]]), (0, [[0]], [[-1]])], {0: 3, 1: 3})
    ev = fundamental_class(X, "Z")
    (top,) = cohomology(X, 1, 1, "Z").representatives
    assert abs(cap_fundamental_class(top, ev)) == 3


@pytest.mark.parametrize("name", ["trop_p1", "trop_p2", "square_cycle", "trop_p1xp1"])
def test_duality_pairing_is_perfect(cycle, name):
    X = cycle(name)
    n = X.dim
    for p in range(n + 1):
        for q in range(n + 1):
            res = duality_pairing(X, p, q, "Z")
            if res.left.free_rank:
                assert res.nondegenerate
                assert abs(res.determinant) == 1


def test_cup_with_unit_is_evaluation(cycle):
    X = cycle("trop_p1")
    ev = fundamental_class(X, "Z")
    (one,) = cohomology(X, 0, 0, "Z").representatives
    (top,) = cohomology(X, 1, 1, "Z").representatives
    assert cup_evaluate(ev, one, 0, 0, top) == cap_fundamental_class(top, ev)


@pytest.mark.parametrize("name", ["honeycomb_quartic", "tropical_line", "square_cycle"])
def test_smooth_curves(cycle, name):
    rep = smooth_curve_check(cycle(name))
    assert rep.smooth and all(c["smooth"] for c in rep.certificates)


def test_non_smooth_curves():
    heavy = make_cycle(catalog.fan_p2(), [(0, [[0, 0]], [r]) for r in ([1, 0], [0, 1], [-1, -1])], {0: 2})
    assert not smooth_curve_check(heavy).smooth
    with pytest.raises(WrongDimension):
        smooth_curve_check(catalog.trop_p2())
