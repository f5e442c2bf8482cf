"""Fans, tropical toric varieties, polyhedral complexes in them, and cycles.

Conventions
-----------
Points of the stratum N(σ) are stored in the coordinates of a fixed basis of
N(σ) = N / (N ∩ span σ), obtained from an integral quotient matrix.  Input
files give points in ambient N coordinates and they are projected here.

A point moving along a direction in the relative interior of a cone σ goes
to the stratum N(σ).  In log|·| coordinates this is the negative of the
direction, i.e. the coordinates used here are -log|·|.  The affine plane
therefore compactifies to [-∞, ∞)^2 reflected, and Trop(A^r) keeps its
usual picture with boundary at +∞ along the cone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import lcm
from typing import Iterable, Sequence

from . import cones as cn
from .errors import InvalidFan, NonCompactComplex, ValidationError
from .exactlin import (
    as_int_vector,
    extend_to_unimodular,
    integer_inverse,
    matmul,
    matvec,
    rational_rank,
    row_space_basis,
    saturated_span,
    solve_rational,
    transpose,
)

Point = tuple[Fraction, ...]
Ray = tuple[int, ...]


def _frac_tuple(v) -> Point:
    return tuple(Fraction(x) for x in v)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b) if x and y)


# ---------------------------------------------------------------------------
# value group


@dataclass(frozen=True)
class GammaSpec:
    """Finitely generated subgroup of Q containing Z.

    Such a group is cyclic, generated by 1/m; ``denominator`` is that m.
    """

    generators: tuple[Fraction, ...] = (Fraction(1),)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(Fraction(g) for g in self.generators))

    @property
    def denominator(self) -> int:
        return lcm(1, *(g.denominator for g in self.generators))

    def contains(self, x) -> bool:
        return self.denominator % Fraction(x).denominator == 0

    def enlarged(self, den: int) -> "GammaSpec":
        m = lcm(self.denominator, den)
        return self if m == self.denominator else GammaSpec(self.generators + (Fraction(1, m),))

    def __str__(self):
        m = self.denominator
        return "Z" if m == 1 else f"(1/{m})Z"


# ---------------------------------------------------------------------------
# polyhedra within one stratum


@dataclass(frozen=True)
class Polyhedron:
    """Pointed rational polyhedron conv(points) + cone(rays) in N(σ) ⊗ Q.

    ``points`` are exactly the vertices and ``rays`` the primitive extreme
    rays, both sorted; use :meth:`from_vrep` to canonicalize raw input.
    """

    stratum: int
    ambient_dim: int
    points: tuple[Point, ...]
    rays: tuple[Ray, ...] = ()

    # -- construction -------------------------------------------------------

    @classmethod
    def from_vrep(cls, stratum: int, ambient_dim: int, points: Iterable, rays: Iterable = ()
                  ) -> "Polyhedron":
        pts = sorted({_frac_tuple(p) for p in points})
        rys = sorted({as_int_vector(r) for r in rays if any(r)})
        if not pts:
            raise ValidationError("empty polyhedron", "a polyhedron needs at least one point")
        for v in pts + [tuple(r) for r in rys]:
            if len(v) != ambient_dim:
                raise ValidationError("coordinate length", f"expected {ambient_dim}, got {len(v)}")
        raw = cls(stratum, ambient_dim, tuple(pts), tuple(rys))
        eqs, facets = raw._homog_hrep
        gens = raw._homog_gens
        d1 = rational_rank(gens)
        keep_p, keep_r = [], []
        for g, is_point, orig in ([(g, True, p) for g, p in zip(gens, pts)]
                                  + [(g, False, r) for g, r in zip(gens[len(pts):], rys)]):
            tight = [f for f in facets if _dot(f, g) == 0]
            face_dim = d1 - (rational_rank(list(eqs) + tight) - len(eqs)) if tight else d1
            if face_dim == 1:
                (keep_p if is_point else keep_r).append(orig)
        if d1 == 1:
            keep_p, keep_r = pts[:1], []
        if rational_rank(list(eqs) + list(facets)) < ambient_dim + 1:
            raise ValidationError("pointed polyhedron", "polyhedron contains a line")
        return cls(stratum, ambient_dim, tuple(sorted(keep_p)), tuple(sorted(keep_r)))

    @classmethod
    def from_hrep(cls, stratum: int, ambient_dim: int, ineqs: Sequence[tuple[Sequence, object]],
                  eqs: Sequence[tuple[Sequence, object]] = ()) -> "Polyhedron | None":
        """{x : a·x >= b for (a, b) in ineqs, a·x = b for (a, b) in eqs}; None if empty."""
        d = ambient_dim
        hin = [[-Fraction(b)] + [Fraction(x) for x in a] for a, b in ineqs]
        hin.append([Fraction(1)] + [Fraction(0)] * d)
        heq = [[-Fraction(b)] + [Fraction(x) for x in a] for a, b in eqs]
        lin, rays = cn.cone_generators(hin, heq, d + 1)
        if lin:
            raise ValidationError("pointed polyhedron", "polyhedron contains a line")
        pts = [tuple(Fraction(x, r[0]) for x in r[1:]) for r in rays if r[0] > 0]
        rys = [r[1:] for r in rays if r[0] == 0]
        if not pts:
            return None
        return cls.from_vrep(stratum, d, pts, rys)

    # -- homogenization -----------------------------------------------------

    @cached_property
    def _homog_gens(self) -> list[tuple]:
        den = lcm(1, *(x.denominator for p in self.points for x in p))
        gens = [tuple([den] + [int(x * den) for x in p]) for p in self.points]
        gens += [tuple([0] + list(r)) for r in self.rays]
        return gens

    @cached_property
    def _homog_hrep(self):
        return cn.cone_facets(self._homog_gens, [], self.ambient_dim + 1)

    # -- basic data -------------------------------------------------------------

    @cached_property
    def dim(self) -> int:
        return rational_rank(self._homog_gens) - 1

    @property
    def is_bounded(self) -> bool:
        return not self.rays

    @property
    def key(self) -> tuple:
        return (self.stratum, self.points, self.rays)

    @cached_property
    def lin_generators(self) -> list[Point]:
        p0 = self.points[0]
        gens = [tuple(a - b for a, b in zip(p, p0)) for p in self.points[1:]]
        gens += [_frac_tuple(r) for r in self.rays]
        return [g for g in gens if any(g)]

    @cached_property
    def lin_basis(self) -> list[list[Fraction]]:
        """Rational basis (echelon form) of Linear(τ)."""
        return row_space_basis(self.lin_generators, self.ambient_dim)

    @cached_property
    def lattice_basis(self) -> tuple[tuple[int, ...], ...]:
        """Basis of the canonical lattice Z(e) = Linear(τ) ∩ N(σ)."""
        return saturated_span(self.lin_generators, self.ambient_dim).basis

    @cached_property
    def interior_point(self) -> Point:
        k = len(self.points)
        c = [sum(p[i] for p in self.points) / k for i in range(self.ambient_dim)]
        for r in self.rays:
            c = [x + y for x, y in zip(c, r)]
        return tuple(c)

    @cached_property
    def hrep(self) -> tuple[list[tuple[tuple, Fraction]], list[tuple[tuple, Fraction]]]:
        """(equalities, finite facet inequalities) as (normal, constant) pairs.

        Equalities read normal·x = constant, facets normal·x >= constant.
        Facets at infinity (containing no vertex) are omitted.
        """
        eqs, facets = self._homog_hrep
        gens = self._homog_gens
        npts = len(self.points)
        out_eq = [(tuple(e[1:]), Fraction(-e[0])) for e in eqs]
        out_f = []
        for f in facets:
            if any(_dot(f, g) == 0 for g in gens[:npts]):
                out_f.append((tuple(f[1:]), Fraction(-f[0])))
        return out_eq, out_f

    def contains(self, x: Sequence) -> bool:
        eqs, facets = self.hrep
        return (all(_dot(a, x) == b for a, b in eqs)
                and all(_dot(a, x) >= b for a, b in facets))

    def relint_contains(self, x: Sequence) -> bool:
        eqs, facets = self.hrep
        return (all(_dot(a, x) == b for a, b in eqs)
                and all(_dot(a, x) > b for a, b in facets))

    def recession_hrep(self):
        return cn.cone_facets(self.rays, [], self.ambient_dim)

    # -- faces --------------------------------------------------------------------

    def faces(self) -> list["Polyhedron"]:
        """All nonempty faces within the stratum, the polyhedron itself included."""
        eqs, facets = self._homog_hrep
        gens = self._homog_gens
        npts = len(self.points)
        full = frozenset(range(len(gens)))
        zero_sets = {frozenset(i for i, g in enumerate(gens) if _dot(f, g) == 0) for f in facets}
        faces = {full}
        frontier = [full]
        while frontier:
            nxt = []
            for s in frontier:
                for z in zero_sets:
                    t = s & z
                    if t not in faces:
                        faces.add(t)
                        nxt.append(t)
            frontier = nxt
        out = []
        for s in faces:
            pts = [self.points[i] for i in sorted(s) if i < npts]
            if not pts:
                continue
            rys = [self.rays[i - npts] for i in sorted(s) if i >= npts]
            out.append(Polyhedron(self.stratum, self.ambient_dim, tuple(pts), tuple(rys)))
        return sorted(out, key=lambda f: (f.dim, f.points, f.rays))

    def project(self, matrix: Sequence[Sequence[int]], stratum: int, dim: int) -> "Polyhedron":
        pts = [tuple(matvec(matrix, p)) if matrix else () for p in self.points]
        rys = [tuple(matvec(matrix, r)) if matrix else () for r in self.rays]
        return Polyhedron.from_vrep(stratum, dim, pts, rys)

    def intersect_halfspace(self, normal: Sequence, const) -> "Polyhedron | None":
        eqs, facets = self.hrep
        return Polyhedron.from_hrep(self.stratum, self.ambient_dim,
                                    list(facets) + [(tuple(normal), const)], eqs)

    def __repr__(self):
        pts = ", ".join("(" + ",".join(str(x) for x in p) + ")" for p in self.points)
        rys = ", ".join(str(r) for r in self.rays)
        tail = f" + cone[{rys}]" if self.rays else ""
        return f"Polyhedron(σ{self.stratum}: conv[{pts}]{tail})"


# ---------------------------------------------------------------------------
# fans


@dataclass(frozen=True)
class Fan:
    """Rational fan: primitive rays plus every cone as a set of ray indices.

    ``cones`` is closed under faces, contains the zero cone at index 0 and is
    sorted by (dimension, ray indices).
    """

    lattice_rank: int
    rays: tuple[Ray, ...]
    cones: tuple[frozenset, ...]

    @classmethod
    def from_data(cls, lattice_rank: int, rays: Sequence[Sequence[int]],
                  cones: Sequence[Sequence[int]]) -> "Fan":
        n = lattice_rank
        rays = [tuple(int(x) for x in r) for r in rays]
        for i, r in enumerate(rays):
            if len(r) != n:
                raise InvalidFan("ray length", f"ray {i} has length {len(r)}, lattice rank {n}")
            if as_int_vector(r) != r or not any(r):
                raise InvalidFan("primitive rays", f"ray {i} = {r} is not primitive")
        if len(set(rays)) != len(rays):
            raise InvalidFan("distinct rays", "a ray is listed twice")
        listed = [frozenset(int(i) for i in c) for c in cones]
        for c in listed:
            if any(not 0 <= i < len(rays) for i in c):
                raise InvalidFan("ray index", f"cone {sorted(c)} refers to a missing ray")
        all_cones: set[frozenset] = {frozenset()}
        for c in listed:
            all_cones |= _cone_faces(c, rays, n)
        for i in range(len(rays)):
            all_cones.add(frozenset([i]))
        ordered = sorted(all_cones, key=lambda c: (len(c), sorted(c)))
        fan = cls(n, tuple(rays), tuple(ordered))
        fan._check_intersections()
        return fan

    def _check_intersections(self):
        maximal = [c for c in self.cones if not any(c < d for d in self.cones)]
        for a, b in combinations(maximal, 2):
            ha = self.cone_hrep(self.cones.index(a))
            hb = self.cone_hrep(self.cones.index(b))
            _, gens = cn.intersect_cones(ha, hb, self.lattice_rank)
            common = {self.rays[i] for i in a & b}
            if set(gens) != common:
                raise InvalidFan("cones meet in a common face",
                                 f"cones {sorted(a)} and {sorted(b)} overlap improperly")

    def cone_rays(self, c: int) -> list[Ray]:
        return [self.rays[i] for i in sorted(self.cones[c])]

    def dim(self, c: int) -> int:
        r = self.cone_rays(c)
        return rational_rank(r) if r else 0

    def cone_index(self, rays: Iterable[int]) -> int:
        key = frozenset(rays)
        try:
            return self.cones.index(key)
        except ValueError:
            raise ValidationError("cone exists", f"no cone with rays {sorted(key)}") from None

    def is_face(self, c: int, d: int) -> bool:
        """Whether cone c is a face of cone d."""
        return self.cones[c] <= self.cones[d]

    def cone_hrep(self, c: int):
        return _cone_hrep_cached(self, c)

    def contains(self, c: int, v: Sequence) -> bool:
        eqs, facets = self.cone_hrep(c)
        return cn.in_cone(v, eqs, facets)

    def relint_contains(self, c: int, v: Sequence) -> bool:
        eqs, facets = self.cone_hrep(c)
        if not self.cones[c]:
            return not any(v)
        return cn.in_cone(v, eqs, facets, strict=True)

    def maximal_cones(self) -> list[int]:
        return [i for i, c in enumerate(self.cones) if not any(c < d for d in self.cones)]

    def to_data(self) -> dict:
        return {
            "latticeRank": self.lattice_rank,
            "rays": [list(r) for r in self.rays],
            "cones": [sorted(self.cones[i]) for i in self.maximal_cones()],
        }


_HREP_CACHE: dict = {}


def _cone_hrep_cached(fan: Fan, c: int):
    key = (fan, c)
    if key not in _HREP_CACHE:
        _HREP_CACHE[key] = cn.cone_facets(fan.cone_rays(c), [], fan.lattice_rank)
    return _HREP_CACHE[key]


def _cone_faces(c: frozenset, rays: Sequence[Ray], n: int) -> set[frozenset]:
    idx = sorted(c)
    gens = [rays[i] for i in idx]
    if not gens:
        return {frozenset()}
    eqs, facets = cn.cone_facets(gens, [], n)
    # pointedness: the dual cone is full dimensional iff the cone is pointed
    if rational_rank(list(facets) + list(eqs)) < n:
        raise InvalidFan("pointed cones", f"cone {idx} contains a line")
    d = rational_rank(gens)
    # every listed ray must be extreme
    for i, g in zip(idx, gens):
        tight = [f for f in facets if _dot(f, g) == 0]
        if rational_rank(list(eqs) + tight) - len(eqs) != d - 1:
            raise InvalidFan("rays of a cone are extreme", f"ray {i} is not extreme in cone {idx}")
    zero_sets = {frozenset(i for i, g in zip(idx, gens) if _dot(f, g) == 0) for f in facets}
    faces = {frozenset(idx)}
    frontier = [frozenset(idx)]
    while frontier:
        nxt = []
        for s in frontier:
            for z in zero_sets:
                t = s & z
                if t not in faces:
                    faces.add(t)
                    nxt.append(t)
        frontier = nxt
    return faces


# ---------------------------------------------------------------------------
# tropical toric variety


@dataclass(frozen=True)
class Stratum:
    cone: int
    rank: int
    quotient: tuple[tuple[int, ...], ...]   # rank x n, kernel = span of the cone
    section: tuple[tuple[int, ...], ...]    # n x rank, quotient @ section = I


class TropicalToricVariety:
    """N_Σ as the disjoint union of the strata N(σ), one per cone of the fan."""

    def __init__(self, fan: Fan):
        self.fan = fan
        n = fan.lattice_rank
        strata = []
        for c in range(len(fan.cones)):
            basis = [list(v) for v in saturated_span(fan.cone_rays(c), n).basis]
            comp = extend_to_unimodular(basis, n)
            full = basis + comp
            inv_t = transpose(integer_inverse(full))
            k = len(basis)
            quotient = tuple(tuple(row) for row in inv_t[k:])
            section = tuple(tuple(row) for row in transpose(comp, n)) if comp else tuple(() for _ in range(n))
            strata.append(Stratum(c, n - k, quotient, section))
        self.strata = tuple(strata)
        self._proj_cache: dict = {}
        self._star_cache: dict = {}

    @property
    def lattice_rank(self) -> int:
        return self.fan.lattice_rank

    def __len__(self):
        return len(self.strata)

    def depth(self, c: int) -> int:
        return self.lattice_rank - self.strata[c].rank

    def projection(self, src: int, dst: int) -> list[list[int]]:
        """Matrix of N(src) -> N(dst) for src a face of dst."""
        if not self.fan.is_face(src, dst):
            raise ValueError(f"cone {src} is not a face of cone {dst}")
        key = (src, dst)
        if key not in self._proj_cache:
            q = [list(r) for r in self.strata[dst].quotient]
            s = [list(r) for r in self.strata[src].section]
            self._proj_cache[key] = matmul(q, s, bcols=self.strata[src].rank) if q else []
        return self._proj_cache[key]

    def project_point(self, src: int, dst: int, x: Sequence) -> Point:
        m = self.projection(src, dst)
        return tuple(Fraction(v) for v in matvec(m, x)) if m else ()

    def from_ambient(self, c: int, x: Sequence) -> Point:
        q = self.strata[c].quotient
        return tuple(Fraction(v) for v in matvec(q, x)) if q else ()

    def to_ambient(self, c: int, y: Sequence) -> Point:
        s = self.strata[c].section
        if not y:
            return tuple(Fraction(0) for _ in range(self.lattice_rank))
        return tuple(Fraction(v) for v in matvec(s, y))

    def star_cone(self, base: int, c: int):
        """H-representation of the image of cone c in N(base), base a face of c."""
        key = (base, c)
        if key not in self._star_cache:
            q = [list(r) for r in self.strata[base].quotient]
            gens = [tuple(matvec(q, r)) for r in self.fan.cone_rays(c)] if q else []
            gens = [g for g in gens if any(g)]
            d = self.strata[base].rank
            self._star_cache[key] = (gens, cn.cone_facets(gens, [], d))
        return self._star_cache[key]

    def cofaces(self, c: int) -> list[int]:
        return [d for d in range(len(self.fan.cones)) if self.fan.is_face(c, d)]

    def star_direction(self, base: int, c: int) -> tuple[int, ...]:
        """A direction in the relative interior of cone c seen from N(base)."""
        gens, _ = self.star_cone(base, c)
        d = self.strata[base].rank
        return tuple(sum(g[i] for g in gens) for i in range(d))


def build_tropical_toric_variety(fan: Fan) -> TropicalToricVariety:
    return TropicalToricVariety(fan)


# ---------------------------------------------------------------------------
# closures in N_Σ


def _recession_meets(variety: TropicalToricVariety, poly: Polyhedron, c: int) -> bool:
    base = poly.stratum
    gens, (eqs, facets) = variety.star_cone(base, c)
    d = variety.strata[base].rank
    if not gens:
        return True
    if not poly.rays:
        return False
    rec = cn.cone_facets(poly.rays, [], d)
    _, k = cn.intersect_cones(rec, (eqs, facets), d)
    return cn.relint_meets(k, facets, eqs, d)


def closure_faces(poly: Polyhedron, variety: TropicalToricVariety) -> dict[int, Polyhedron]:
    """Limit polyhedra of ``poly`` in the strata N(σ') for cones σ' above its stratum.

    A stratum is reached when the recession cone meets the relative interior
    of σ'; the limit is then the projection of the whole polyhedron.
    """
    out = {}
    for c in variety.cofaces(poly.stratum):
        if _recession_meets(variety, poly, c):
            m = variety.projection(poly.stratum, c)
            out[c] = poly.project(m, c, variety.strata[c].rank)
    return out


def closure_cells(poly: Polyhedron, variety: TropicalToricVariety) -> set[Polyhedron]:
    """Every cell of the closure of ``poly`` in N_Σ, itself included."""
    cells = set()
    for f in poly.faces():
        cells.update(closure_faces(f, variety).values())
    return cells


def check_compact(poly: Polyhedron, variety: TropicalToricVariety) -> bool:
    """Whether the closure of ``poly`` in N_Σ is compact.

    True iff the recession cone is covered by the images of the cones above
    the stratum; coverage is certified by checking that every facet of a full
    dimensional piece is either on the boundary of the recession cone or
    shared with another piece.
    """
    if not poly.rays:
        return True
    base = poly.stratum
    d = variety.strata[base].rank
    rec_h = cn.cone_facets(poly.rays, [], d)
    r = rational_rank(poly.rays)
    pieces = []
    for c in variety.cofaces(base):
        _, (eqs, facets) = variety.star_cone(base, c)
        _, k = cn.intersect_cones(rec_h, (eqs, facets), d)
        if k and rational_rank(k) == r:
            pieces.append(k)
    if not pieces:
        return False
    rec_eqs, rec_facets = rec_h
    count: dict[frozenset, int] = {}
    for k in pieces:
        keqs, kfacets = cn.cone_facets(k, [], d)
        for f in kfacets:
            face = frozenset(g for g in k if _dot(f, g) == 0)
            if any(all(_dot(g, x) == 0 for x in face) for g in rec_facets):
                continue
            count[face] = count.get(face, 0) + 1
    return all(v == 2 for v in count.values())


# ---------------------------------------------------------------------------
# polyhedral complexes


class PolyhedralComplex:
    """Closure in N_Σ of finitely many polyhedra, as a cell poset.

    ``cells`` are sorted by (dimension, stratum, vertices, rays);
    ``faces_of[i]`` holds the indices of all cells in the closure of cell i.
    """

    def __init__(self, variety: TropicalToricVariety, polyhedra: Iterable[Polyhedron],
                 require_compact: bool = True):
        self.variety = variety
        polys = list(polyhedra)
        for p in polys:
            if require_compact and not check_compact(p, variety):
                raise NonCompactComplex(f"closure of {p} is not compact in N_Σ")
        closures: dict[Polyhedron, set[Polyhedron]] = {}
        work = list(polys)
        while work:
            p = work.pop()
            if p in closures:
                continue
            cl = closure_cells(p, variety)
            closures[p] = cl
            work.extend(c for c in cl if c not in closures)
        ordered = sorted(closures, key=lambda c: (c.dim, c.stratum, c.points, c.rays))
        self.cells: list[Polyhedron] = ordered
        self.index = {c: i for i, c in enumerate(ordered)}
        self.faces_of = [frozenset(self.index[f] for f in closures[c]) for c in ordered]
        self.cofaces_of = [frozenset(j for j in range(len(ordered)) if i in self.faces_of[j])
                           for i in range(len(ordered))]
        self._check_intersections()

    def _check_intersections(self):
        # relative interiors of distinct cells in one stratum are disjoint;
        # interior points of each cell must avoid every other cell's relint
        for i, c in enumerate(self.cells):
            x = c.interior_point
            for j, d in enumerate(self.cells):
                if i != j and d.stratum == c.stratum and d.dim >= c.dim and d.relint_contains(x):
                    if c.dim == d.dim or i not in self.faces_of[j]:
                        raise ValidationError("faces intersect in common faces",
                                              f"{c} overlaps the interior of {d}")

    def __len__(self):
        return len(self.cells)

    def __eq__(self, other):
        if not isinstance(other, PolyhedralComplex):
            return NotImplemented
        return self.variety.fan == other.variety.fan and self.cells == other.cells

    __hash__ = None

    @cached_property
    def dim(self) -> int:
        return max((c.dim for c in self.cells), default=-1)

    def cells_of_dim(self, k: int) -> list[int]:
        return [i for i, c in enumerate(self.cells) if c.dim == k]

    def is_face(self, i: int, j: int) -> bool:
        return i in self.faces_of[j]

    def facets(self, j: int) -> list[int]:
        d = self.cells[j].dim
        return sorted(i for i in self.faces_of[j] if self.cells[i].dim == d - 1)

    def vertices(self, j: int) -> list[int]:
        return sorted(i for i in self.faces_of[j] if self.cells[i].dim == 0)

    def maximal_cells(self) -> list[int]:
        return [i for i in range(len(self.cells)) if len(self.cofaces_of[i]) == 1]

    def locate(self, stratum: int, x: Sequence) -> int | None:
        """Index of the cell whose relative interior contains x, if any."""
        for i, c in enumerate(self.cells):
            if c.stratum == stratum and c.relint_contains(x):
                return i
        return None

    def is_compact(self) -> bool:
        return all(check_compact(c, self.variety) for c in self.cells)

    def f_vector(self) -> list[int]:
        return [len(self.cells_of_dim(k)) for k in range(self.dim + 1)]


# ---------------------------------------------------------------------------
# tropical cycles


@dataclass
class TropicalCycle:
    """Weighted pure dimensional complex; weights live on top cells of the dense stratum."""

    complex: PolyhedralComplex
    weights: dict[int, int] = field(default_factory=dict)
    gamma: GammaSpec = field(default_factory=GammaSpec)

    def __post_init__(self):
        cx = self.complex
        n = cx.dim
        tops = cx.cells_of_dim(n)
        for i in range(len(cx)):
            if not any(i in cx.faces_of[t] for t in tops):
                raise ValidationError("pure dimension", f"cell {cx.cells[i]} is not in a top cell")
        for t in tops:
            if cx.cells[t].stratum != 0:
                raise ValidationError("top cells in the dense stratum",
                                      f"top cell {cx.cells[t]} lies at infinity")
        w = {}
        for t in tops:
            w[t] = int(self.weights.get(t, 1))
        for i, v in self.weights.items():
            if i not in w:
                raise ValidationError("weights on top cells", f"cell {cx.cells[i]} is not top dimensional")
        if any(v == 0 for v in w.values()):
            raise ValidationError("nonzero weights")
        self.weights = w
        for c in cx.cells:
            for p in c.points:
                for x in p:
                    if not self.gamma.contains(x):
                        raise ValidationError("Γ-rational vertices",
                                              f"coordinate {x} of {c} is not in {self.gamma}")

    @property
    def variety(self) -> TropicalToricVariety:
        return self.complex.variety

    @property
    def dim(self) -> int:
        return self.complex.dim

    @property
    def cells(self) -> list[Polyhedron]:
        return self.complex.cells

    def top_cells(self) -> list[int]:
        return self.complex.cells_of_dim(self.dim)

    def weight(self, cell: int) -> int:
        return self.weights[cell]


def make_cycle(fan: Fan, faces: Sequence[tuple], weights: dict[int, int] | None = None,
               gamma: GammaSpec | None = None) -> TropicalCycle:
    """Build a cycle from ``(stratum_cone, points, rays)`` triples in ambient coordinates.

    ``weights`` is keyed by position in ``faces``.
    """
    variety = TropicalToricVariety(fan)
    polys = []
    for stratum, pts, rays in faces:
        c = stratum if isinstance(stratum, int) else fan.cone_index(stratum)
        d = variety.strata[c].rank
        ppts = [variety.from_ambient(c, p) for p in pts]
        prays = [variety.from_ambient(c, r) for r in rays]
        polys.append(Polyhedron.from_vrep(c, d, ppts, prays))
    cx = PolyhedralComplex(variety, polys)
    w = {}
    for i, v in (weights or {}).items():
        w[cx.index[polys[i]]] = v
    return TropicalCycle(cx, w, gamma or GammaSpec())


# ---------------------------------------------------------------------------
# balancing


def primitive_normal(outer: Polyhedron, inner: Polyhedron) -> tuple[int, ...]:
    """Generator of Z(e_outer)/Z(e_inner) pointing into ``outer``, as a lattice vector."""
    bo = [list(v) for v in outer.lattice_basis]
    bi = [list(v) for v in inner.lattice_basis]
    coords = [solve_rational(bo, v) for v in bi]
    k = len(bo)
    from .exactlin import integer_kernel_basis
    cmat = [[int(x) for x in c] for c in coords]
    ker = integer_kernel_basis(cmat, k) if cmat else [[int(i == j) for j in range(k)] for i in range(k)]
    if len(ker) != 1:
        raise ValueError("inner cell is not a facet of outer cell")
    f = ker[0]
    # functional f on Z(e_outer)-coordinates: rows of cmat lie in its kernel
    # (kernel of cmat is the functional's coefficient vector seen as a column)
    u = [a - b for a, b in zip(outer.interior_point, inner.interior_point)]
    uc = solve_rational(bo, u)
    # find x with f·x = ±1 via extended gcd on the entries of f
    x = _unit_preimage(f)
    val = sum(a * b for a, b in zip(f, uc))
    if val < 0:
        x = [-t for t in x]
    return tuple(sum(x[j] * bo[j][i] for j in range(k)) for i in range(outer.ambient_dim))


def _unit_preimage(f: Sequence[int]) -> list[int]:
    """Integer x with f·x = 1 for a primitive integer vector f."""
    g, coeffs = 0, []
    for i, a in enumerate(f):
        if not coeffs:
            g, coeffs = a, [1]
            continue
        # extend: g' = s*g + t*a
        s, t, g2 = _ext_gcd(g, a)
        coeffs = [c * s for c in coeffs] + [t]
        g = g2
    if g < 0:
        coeffs = [-c for c in coeffs]
        g = -g
    if g != 1:
        raise ValueError("functional is not primitive")
    return coeffs


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_s, old_t, old_r


@dataclass
class BalancingReport:
    balanced: bool
    certificates: list[dict]

    def __bool__(self):
        return self.balanced


def check_balancing(cycle: TropicalCycle) -> BalancingReport:
    """Classical balancing at every codimension one cell of the dense stratum."""
    cx = cycle.complex
    n = cycle.dim
    certs = []
    ok = True
    for nu in cx.cells_of_dim(n - 1):
        cell = cx.cells[nu]
        if cell.stratum != 0:
            continue
        total = [0] * cell.ambient_dim
        adjacent = []
        for t in cycle.top_cells():
            if nu in cx.faces_of[t]:
                u = primitive_normal(cx.cells[t], cell)
                w = cycle.weight(t)
                total = [a + w * b for a, b in zip(total, u)]
                adjacent.append({"cell": t, "weight": w, "normal": list(u)})
        lin = cell.lin_basis
        inside = rational_rank([list(v) for v in lin] + [total]) == len(lin)
        ok &= inside
        certs.append({"face": nu, "adjacent": adjacent, "sum": total, "balanced": inside})
    return BalancingReport(ok, certs)


# ---------------------------------------------------------------------------
# triangulations


@dataclass
class Triangulation:
    """Simplicial structure refining a compact polyhedral complex in N_Σ.

    Each vertex is a point ``(stratum, coords)`` with a carrier cell; vertex
    ids follow the global order (carrier dimension, deeper stratum first,
    stratum, coordinates), so every simplex is a sorted tuple of ids and its
    vertices are listed from the deepest stratum outwards.  Geometry at
    infinity is combinatorial: only carriers, positions and orientations are
    used downstream.
    """

    complex: PolyhedralComplex
    vertices: list[tuple[int, Point]]
    vertex_carrier: list[int]
    simplices: list[list[tuple[int, ...]]]
    carrier: dict[tuple[int, ...], int]
    kind: str = "stellar"

    @cached_property
    def index(self) -> list[dict[tuple[int, ...], int]]:
        return [{s: i for i, s in enumerate(level)} for level in self.simplices]

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    def vertex_stratum(self, v: int) -> int:
        return self.vertices[v][0]

    @cached_property
    def gamma_denominator(self) -> int:
        return lcm(1, *(x.denominator for _, p in self.vertices for x in p))

    def counts(self) -> list[int]:
        return [len(level) for level in self.simplices]


def _vertex_order_key(cx: PolyhedralComplex, stratum: int, coords: Point, carrier: int):
    return (cx.cells[carrier].dim, -cx.variety.depth(stratum), stratum, coords)


def _finish(cx: PolyhedralComplex, raw_vertices: dict, tops: dict, kind: str) -> Triangulation:
    """Renumber vertices in the global order and collect all faces with carriers."""
    order = sorted(raw_vertices, key=lambda k: _vertex_order_key(cx, k[0], k[1], raw_vertices[k]))
    vid = {k: i for i, k in enumerate(order)}
    carrier: dict[tuple[int, ...], int] = {}
    for c in sorted(tops, key=lambda c: cx.cells[c].dim):
        for top in tops[c]:
            ids = sorted(vid[k] for k in top)
            for r in range(1, len(ids) + 1):
                for sub in combinations(ids, r):
                    carrier.setdefault(sub, c)
    n = max((len(s) for s in carrier), default=0)
    levels = [sorted(s for s in carrier if len(s) == k + 1) for k in range(n)]
    return Triangulation(cx, [(k[0], k[1]) for k in order], [raw_vertices[k] for k in order],
                         levels, carrier, kind)


def _strata_chain(cx: PolyhedralComplex, cells: Sequence[int]) -> bool:
    fan = cx.variety.fan
    strata = {cx.cells[i].stratum for i in cells}
    return all(fan.is_face(a, b) or fan.is_face(b, a) for a, b in combinations(strata, 2))


def triangulate(cx: PolyhedralComplex, kind: str = "stellar") -> Triangulation:
    """Simplicial refinement of a compact complex.

    ``stellar`` keeps every cell that is combinatorially a simplex whose
    vertex strata form a chain and cones every other cell from an interior
    apex over its boundary.  ``barycentric`` is the order complex of the face
    poset, with the barycenter of each cell as vertex.
    """
    if kind == "barycentric":
        raw = {}
        tops = {}
        for i, c in enumerate(cx.cells):
            raw[(c.stratum, c.interior_point)] = i
        key = {i: (c.stratum, c.interior_point) for i, c in enumerate(cx.cells)}
        chains: dict[int, list[tuple]] = {}
        for i in sorted(range(len(cx)), key=lambda i: cx.cells[i].dim):
            lower = [f for f in cx.faces_of[i] if f != i]
            if not lower:
                chains[i] = [(key[i],)]
            else:
                chains[i] = [ch + (key[i],) for f in lower if cx.cells[f].dim == cx.cells[i].dim - 1
                             for ch in chains[f]]
            tops[i] = chains[i]
        return _finish(cx, raw, tops, "barycentric")
    if kind != "stellar":
        raise ValueError(f"unknown triangulation kind {kind!r}")
    raw = {}
    tops: dict[int, list[tuple]] = {}
    for i in sorted(range(len(cx)), key=lambda i: cx.cells[i].dim):
        c = cx.cells[i]
        verts = cx.vertices(i)
        if c.dim == 0:
            k = (c.stratum, c.points[0])
            raw[k] = i
            tops[i] = [(k,)]
            continue
        if len(verts) == c.dim + 1 and _strata_chain(cx, verts):
            tops[i] = [tuple((cx.cells[v].stratum, cx.cells[v].points[0]) for v in verts)]
            continue
        apex = (c.stratum, c.interior_point)
        raw[apex] = i
        tops[i] = [s + (apex,) for f in cx.facets(i) for s in tops[f]]
    return _finish(cx, raw, tops, "stellar")
