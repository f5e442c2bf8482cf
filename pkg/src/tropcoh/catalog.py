"""Standard examples: toric boundaries, curves and small test complexes."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Mapping

from .exactlin import as_int_vector, det, rref
from .polyhedral import Fan, GammaSpec, TropicalCycle, make_cycle


def fan_p1() -> Fan:
    return Fan.from_data(1, [[1], [-1]], [[0], [1]])


def fan_p2() -> Fan:
    return Fan.from_data(2, [[1, 0], [0, 1], [-1, -1]], [[0, 1], [1, 2], [0, 2]])


def fan_p1xp1() -> Fan:
    return Fan.from_data(2, [[1, 0], [0, 1], [-1, 0], [0, -1]], [[0, 1], [1, 2], [2, 3], [3, 0]])


def fan_diagonal() -> Fan:
    """Complete fan with rays (±1, ±1); its toric surface compactifies the square cycle."""
    return Fan.from_data(2, [[1, 1], [-1, 1], [-1, -1], [1, -1]], [[0, 1], [1, 2], [2, 3], [3, 0]])


def zero_fan(n: int) -> Fan:
    return Fan.from_data(n, [], [])


def _full_space(fan: Fan) -> TropicalCycle:
    faces = [(0, [[0] * fan.lattice_rank], fan.cone_rays(c)) for c in fan.maximal_cones()]
    return make_cycle(fan, faces)


def trop_p1() -> TropicalCycle:
    return _full_space(fan_p1())


def trop_p2() -> TropicalCycle:
    return _full_space(fan_p2())


def trop_p1xp1() -> TropicalCycle:
    return _full_space(fan_p1xp1())


def tropical_line() -> TropicalCycle:
    """The standard tropical line in Trop(P^2)."""
    return make_cycle(fan_p2(), [(0, [[0, 0]], [r]) for r in ([1, 0], [0, 1], [-1, -1])])


def point() -> TropicalCycle:
    return make_cycle(zero_fan(1), [(0, [[0]], [])])


def segment(length=1, weight: int = 1) -> TropicalCycle:
    return make_cycle(zero_fan(1), [(0, [[0], [length]], [])], {0: weight})


def bare_square(side=1) -> TropicalCycle:
    """Boundary of [0, s]^2 as four edges; not balanced, useful for structural checks."""
    c = [(0, 0), (side, 0), (side, side), (0, side)]
    return make_cycle(zero_fan(2), [(0, [c[i], c[(i + 1) % 4]], []) for i in range(4)])


def square_cycle(side=1, gamma: GammaSpec | None = None) -> TropicalCycle:
    """Genus one curve: boundary of [0, s]^2 with four diagonal legs, in the toric surface of fan_diagonal."""
    s = side
    c = [(0, 0), (s, 0), (s, s), (0, s)]
    legs = [(-1, -1), (1, -1), (1, 1), (-1, 1)]
    faces = [(0, [c[i], c[(i + 1) % 4]], []) for i in range(4)]
    faces += [(0, [c[i]], [legs[i]]) for i in range(4)]
    return make_cycle(fan_diagonal(), faces, gamma=gamma)


def plane_curve_faces(coeffs: Mapping[tuple[int, int], Fraction]) -> tuple[list, list]:
    """Bounded edges and legs of the max-plus curve of Σ c_ij + i x + j y.

    Requires the induced subdivision of the Newton polygon to be a unimodular
    triangulation.  Returns ``(segments, legs)`` with legs as (vertex, direction).
    """
    pts = sorted(coeffs)
    cval = {k: Fraction(v) for k, v in coeffs.items()}
    tri_vertex = {}
    for t in combinations(pts, 3):
        a, b, c = t
        if abs(det([[b[0] - a[0], b[1] - a[1]], [c[0] - a[0], c[1] - a[1]]])) != 1:
            continue
        # c_a + a·x = c_b + b·x = c_c + c·x
        rows = [[Fraction(a[0] - b[0]), Fraction(a[1] - b[1]), cval[b] - cval[a]],
                [Fraction(a[0] - c[0]), Fraction(a[1] - c[1]), cval[c] - cval[a]]]
        red, _ = rref(rows, 3)
        x = (red[0][2], red[1][2])
        top = cval[a] + a[0] * x[0] + a[1] * x[1]
        if all(cval[k] + k[0] * x[0] + k[1] * x[1] < top for k in pts if k not in t):
            tri_vertex[frozenset(t)] = x
    edges: dict[frozenset, list] = {}
    for t in tri_vertex:
        for e in combinations(sorted(t), 2):
            edges.setdefault(frozenset(e), []).append(t)
    segments, legs = [], []
    for e, ts in sorted(edges.items(), key=lambda kv: sorted(kv[0])):
        if len(ts) == 2:
            segments.append((tri_vertex[ts[0]], tri_vertex[ts[1]]))
        else:
            (t,) = ts
            p, q = sorted(e)
            (r,) = t - e
            normal = as_int_vector([q[1] - p[1], p[0] - q[0]])
            # orient away from the third vertex of the triangle
            if normal[0] * (r[0] - p[0]) + normal[1] * (r[1] - p[1]) > 0:
                normal = tuple(-v for v in normal)
            legs.append((tri_vertex[t], normal))
    return segments, legs


def honeycomb_quartic() -> TropicalCycle:
    """Smooth genus three plane quartic, compactified in Trop(P^2).

    Coefficients c_ij = -(i^2 + ij + j^2) induce the unimodular triangulation of
    the degree four triangle.  Coordinates are negated so that the legs point
    along the rays e1, e2, -e1-e2 of the fan of P^2.
    """
    coeffs = {(i, j): -(i * i + i * j + j * j) for i in range(5) for j in range(5 - i)}
    segments, legs = plane_curve_faces(coeffs)
    neg = lambda v: tuple(-x for x in v)
    faces = [(0, [neg(a), neg(b)], []) for a, b in segments]
    faces += [(0, [neg(v)], [neg(d)]) for v, d in legs]
    return make_cycle(fan_p2(), faces)


def planar_subdivision_cycle(triangles, vertices) -> TropicalCycle:
    """A bounded two dimensional complex in R^2 from triangles given as vertex index triples."""
    faces = [(0, [vertices[i] for i in t], []) for t in triangles]
    return make_cycle(zero_fan(2), faces)
