"""Random complexes shared by the property tests."""

import random
from fractions import Fraction
from math import lcm

from tropcoh import catalog
from tropcoh.cohomology import _model_of, build_cochain_complex, cohomology
from tropcoh.polyhedral import GammaSpec, make_cycle


def _inside(tri, pt):
    a, b, c = tri

    def side(p, q, r):
        return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])

    s = [side(a, b, pt), side(b, c, pt), side(c, a, pt)]
    return all(x > 0 for x in s) or all(x < 0 for x in s)


def random_disk(rng: random.Random, points: int = 3):
    """Triangulated square [0,1]^2 with random interior points inserted one by one."""
    verts = [(Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)), (Fraction(1), Fraction(1)),
             (Fraction(0), Fraction(1))]
    tris = [(0, 1, 2), (0, 2, 3)]
    for _ in range(points):
        t = rng.randrange(len(tris))
        w = [rng.randint(1, 3) for _ in range(3)]
        a, b, c = (verts[i] for i in tris[t])
        s = sum(w)
        p = tuple((w[0] * a[k] + w[1] * b[k] + w[2] * c[k]) / s for k in range(2))
        verts.append(p)
        i, j, k = tris.pop(t)
        n = len(verts) - 1
        tris += [(i, j, n), (j, k, n), (k, i, n)]
    den = lcm(1, *(x.denominator for v in verts for x in v))
    faces = [(0, [verts[i] for i in t], []) for t in tris]
    return make_cycle(catalog.zero_fan(2), faces, gamma=GammaSpec((Fraction(1, den),)))


def random_square_cycle(rng: random.Random, splits: int = 3):
    """The square cycle of side 4 with its bounded edges cut at random lattice points."""
    s = 4
    c = [(0, 0), (s, 0), (s, s), (0, s)]
    legs = [(-1, -1), (1, -1), (1, 1), (-1, 1)]
    faces = []
    for i in range(4):
        a, b = c[i], c[(i + 1) % 4]
        ts = sorted(rng.sample(range(1, s), rng.randint(0, min(splits, s - 1))))
        pts = [a] + [tuple(a[k] + (b[k] - a[k]) * t // s for k in range(2)) for t in ts] + [b]
        faces += [(0, [pts[j], pts[j + 1]], []) for j in range(len(pts) - 1)]
    faces += [(0, [c[i]], [legs[i]]) for i in range(4)]
    return make_cycle(catalog.fan_diagonal(), faces)


def _loop_edges(tri):
    """Finite 1-simplices on the bounded loop of a genus one curve, as a closed walk."""
    fin = [s for s in tri.simplices[1] if all(tri.vertex_stratum(v) == 0 for v in s)]
    adj = {}
    for a, b in fin:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    start = min(v for v in adj if len(adj[v]) == 2)
    walk, prev, cur = [], None, start
    while True:
        nxt = next(w for w in adj[cur] if w != prev and len(adj[w]) == 2)
        walk.append((cur, nxt))
        prev, cur = cur, nxt
        if cur == start:
            return walk


def wave_loop_oracle(X):
    """Brute force periods around the loop: (∮ Wφ, ∮ g) for the H^{1,0} and H^{0,1} generators.

    Wφ is evaluated directly as φ_{δ1}(x_{δ1} - x_{δ0}) from vertex coordinates,
    without the operator module.
    """
    tri = _model_of(X, "stellar")
    cc10 = build_cochain_complex(tri, 1, "Z")
    cc01 = build_cochain_complex(tri, 0, "Z")
    (phi,) = cohomology(X, 1, 0, "Z").representatives
    (g,) = cohomology(X, 0, 1, "Z").representatives
    lhs = period = Fraction(0)
    for a, b in _loop_edges(tri):
        s = (min(a, b), max(a, b))
        sign = 1 if (a, b) == s else -1
        j = tri.index[0][(s[1],)]
        e = [x - y for x, y in zip(tri.vertices[s[1]][1], tri.vertices[s[0]][1])]
        off = cc10.offsets[0][j]
        w = sum(Fraction(c) * phi[off + k] for k, c in enumerate(cc10.fp(0, j).coordinates(e)))
        lhs += sign * w
        period += sign * Fraction(g[cc01.offsets[1][tri.index[1][s]]])
    return lhs, period
