import random
from fractions import Fraction

import pytest
from helpers import random_disk, random_square_cycle

from tropcoh import catalog
from tropcoh.errors import InvalidFan, NonCompactComplex, ValidationError
from tropcoh.polyhedral import (Fan, GammaSpec, Polyhedron, TropicalToricVariety, check_balancing,
                                check_compact, closure_faces, make_cycle, primitive_normal, triangulate)


def _euler(counts):
    return sum((-1) ** k * c for k, c in enumerate(counts))


def test_fan_of_p1_has_three_cones():
    fan = catalog.fan_p1()
    assert len(fan.cones) == 3
    assert fan.cones[0] == frozenset()
    assert fan.maximal_cones() == [1, 2]


def test_fan_face_closure_and_round_trip():
    fan = catalog.fan_p2()
    assert len(fan.cones) == 7
    d = fan.to_data()
    again = Fan.from_data(d["latticeRank"], d["rays"], d["cones"])
    assert again.cones == fan.cones


def test_fan_rejects_non_pointed_cone():
    with pytest.raises(InvalidFan):
        Fan.from_data(1, [[1], [-1]], [[0, 1]])


def test_fan_rejects_overlapping_cones():
    with pytest.raises(InvalidFan):
        Fan.from_data(2, [[1, 0], [0, 1], [1, 1]], [[0, 1], [0, 2]])


def test_fan_rejects_non_primitive_ray():
    with pytest.raises(InvalidFan):
        Fan.from_data(1, [[2]], [[0]])


def test_polyhedron_vrep_hrep_round_trip():
    sq = Polyhedron.from_vrep(0, 2, [(0, 0), (1, 0), (1, 1), (0, 1), (Fraction(1, 2), Fraction(1, 2))])
    assert len(sq.points) == 4
    eqs, facets = sq.hrep
    assert eqs == [] and len(facets) == 4
    again = Polyhedron.from_hrep(0, 2, facets, eqs)
    assert again.key == sq.key
    assert len(sq.faces()) == 9


def test_polyhedron_empty_hrep():
    assert Polyhedron.from_hrep(0, 1, [((1,), 1), ((-1,), 0)], []) is None


def test_unbounded_polyhedron_faces_exclude_infinity():
    q = Polyhedron.from_vrep(0, 2, [(0, 0)], [(1, 0), (0, 1)])
    assert q.dim == 2
    assert sorted(f.dim for f in q.faces()) == [0, 1, 1, 2]
    assert q.relint_contains((1, 1)) and not q.relint_contains((1, 0))


def test_closure_of_quadrant_in_p2():
    var = TropicalToricVariety(catalog.fan_p2())
    q = Polyhedron.from_vrep(0, 2, [(0, 0)], [(1, 0), (0, 1)])
    assert check_compact(q, var)
    limits = closure_faces(q, var)
    # the quadrant reaches the two rays and the corner between them
    assert sorted(var.fan.dim(c) for c in limits) == [0, 1, 1, 2]


def test_compactness_depends_on_the_fan():
    affine_plane = TropicalToricVariety(Fan.from_data(2, [[1, 0], [0, 1]], [[0, 1]]))
    wide = Polyhedron.from_vrep(0, 2, [(0, 0)], [(1, 0), (-1, 1)])
    assert check_compact(wide, TropicalToricVariety(catalog.fan_p2()))
    assert not check_compact(wide, affine_plane)
    assert check_compact(Polyhedron.from_vrep(0, 2, [(0, 0)], [(1, 0), (1, 1)]), affine_plane)


def test_ray_in_trivial_fan_is_non_compact():
    with pytest.raises(NonCompactComplex):
        make_cycle(catalog.zero_fan(1), [(0, [[0]], [[1]])])


@pytest.mark.parametrize("name, fvec", [
    ("trop_p1", [3, 2]),
    ("trop_p2", [7, 9, 3]),
    ("trop_p1xp1", [9, 12, 4]),
    ("square_cycle", [8, 8]),
])
def test_f_vectors(cycle, name, fvec):
    assert cycle(name).complex.f_vector() == fvec


def test_quartic_combinatorics(cycle):
    X = cycle("honeycomb_quartic")
    cx = X.complex
    assert cx.f_vector() == [28, 30]
    assert sum(1 for v in cx.cells_of_dim(0) if cx.cells[v].stratum == 0) == 16


def test_quartic_genus_by_graph_cycle_rank(cycle):
    nx = pytest.importorskip("networkx")
    cx = cycle("honeycomb_quartic").complex
    g = nx.MultiGraph()
    for e in cx.cells_of_dim(1):
        ends = [v for v in cx.faces_of[e] if cx.cells[v].dim == 0]
        g.add_edge(*ends)
    assert nx.is_connected(g)
    assert g.number_of_edges() - g.number_of_nodes() + nx.number_connected_components(g) == 3


@pytest.mark.parametrize("name", ["tropical_line", "square_cycle", "honeycomb_quartic"])
def test_fixture_cycles_are_balanced(cycle, name):
    assert check_balancing(cycle(name)).balanced


def test_bare_square_is_not_balanced():
    rep = check_balancing(catalog.bare_square())
    assert not rep.balanced
    assert len(rep.certificates) == 4


def test_weights_enter_balancing():
    X = make_cycle(catalog.fan_p2(), [(0, [[0, 0]], [r]) for r in ([1, 0], [0, 1], [-1, -1])], {0: 2})
    assert not check_balancing(X).balanced


def test_zero_weight_rejected():
    with pytest.raises(ValidationError):
        catalog.segment(1, 0)


def test_gamma_rationality_enforced():
    with pytest.raises(ValidationError):
        make_cycle(catalog.zero_fan(1), [(0, [[0], [Fraction(1, 2)]], [])])
    X = make_cycle(catalog.zero_fan(1), [(0, [[0], [Fraction(1, 2)]], [])], gamma=GammaSpec((Fraction(1, 2),)))
    assert X.gamma.denominator == 2


def test_primitive_normal():
    e = Polyhedron.from_vrep(0, 2, [(0, 0), (3, 3)])
    v = Polyhedron.from_vrep(0, 2, [(0, 0)])
    assert primitive_normal(e, v) == (1, 1)


@pytest.mark.parametrize("name", ["trop_p1", "trop_p2", "trop_p1xp1", "square_cycle", "tropical_line"])
@pytest.mark.parametrize("kind", ["stellar", "barycentric"])
def test_triangulation_is_simplicial_with_correct_euler_characteristic(cycle, name, kind):
    cx = cycle(name).complex
    tri = triangulate(cx, kind)
    # the compactified fixtures are contractible except the square cycle, a circle
    expected = 0 if name == "square_cycle" else 1
    assert _euler(tri.counts()) == expected
    for level in tri.simplices:
        for s in level:
            assert list(s) == sorted(set(s))
            assert tri.carrier[s] in range(len(cx))


def test_p2_triangulation_counts(cycle):
    cx = cycle("trop_p2").complex
    assert triangulate(cx, "stellar").counts() == [10, 21, 12]
    assert triangulate(cx, "barycentric").counts() == [19, 42, 24]


def test_triangulation_faces_are_present(cycle):
    tri = triangulate(cycle("trop_p1xp1").complex, "stellar")
    for q in range(1, len(tri.simplices)):
        for s in tri.simplices[q]:
            for k in range(len(s)):
                assert s[:k] + s[k + 1:] in tri.index[q - 1]


@pytest.mark.parametrize("seed", range(5))
def test_random_disks_are_valid_complexes(seed):
    X = random_disk(random.Random(seed), 4)
    assert X.complex.f_vector() == [8, 17, 10]
    assert _euler(X.complex.f_vector()) == 1


@pytest.mark.parametrize("seed", range(5))
def test_random_square_cycles_are_balanced(seed):
    X = random_square_cycle(random.Random(seed))
    assert check_balancing(X).balanced
