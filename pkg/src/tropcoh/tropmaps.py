"""Affine maps of tropical toric varieties and their action on points and complexes.

A map is given by an integral linear part L: N -> N', a translation
b ∈ N' ⊗ Γ and a declared cone assignment σ ↦ σ' with L(σ) ⊆ σ'.  On the
stratum N(σ) it acts as x ↦ Q_{σ''} (L S_σ x + b), where σ'' is the
smallest cone of the target fan containing L(σ) (a face of the declared σ').
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import MonomialNotInMonoid, SupportMismatch, ValidationError
from .exactlin import matmul, matvec
from .polyhedral import Polyhedron, PolyhedralComplex, Triangulation, TropicalToricVariety


class _Infinity:
    """The absorbing element of T = R ∪ {∞} (valuation convention)."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __repr__(self):
        return "∞"


INFINITY = _Infinity()


@dataclass(frozen=True)
class TropPoint:
    """A point of N_Σ: a cone index and coordinates in N(σ)."""

    stratum: int
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(x) for x in self.coords))


@dataclass
class AffineToricMap:
    source: TropicalToricVariety
    target: TropicalToricVariety
    linear: list[list[int]]
    translation: tuple[Fraction, ...] = ()
    cone_image: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        n, m = self.source.lattice_rank, self.target.lattice_rank
        self.linear = [[int(x) for x in row] for row in self.linear]
        if len(self.linear) != m or any(len(row) != n for row in self.linear):
            raise ValidationError("linear part shape", f"expected {m} x {n}")
        if not self.translation:
            self.translation = tuple(Fraction(0) for _ in range(m))
        self.translation = tuple(Fraction(x) for x in self.translation)
        if len(self.translation) != m:
            raise ValidationError("translation length", f"expected {m}")
        fan = self.source.fan
        declared = dict(self.cone_image)
        # faces inherit the declared image of any cone containing them
        for c in range(len(fan.cones)):
            if c not in declared:
                for d, img in self.cone_image.items():
                    if fan.is_face(c, d):
                        declared[c] = img
                        break
        self._min_image: dict[int, int] = {}
        # undeclared cones go to the smallest target cone containing their image
        for c in range(len(fan.cones)):
            if c not in declared:
                declared[c] = self.image_cone(c)
        self.cone_image = declared

    @classmethod
    def identity(cls, variety: TropicalToricVariety) -> "AffineToricMap":
        n = variety.lattice_rank
        ident = [[int(i == j) for j in range(n)] for i in range(n)]
        return cls(variety, variety, ident, (), {c: c for c in range(len(variety.fan.cones))})

    def image_cone(self, c: int) -> int:
        """Smallest target cone containing L(σ_c)."""
        if c not in self._min_image:
            fan = self.source.fan
            tfan = self.target.fan
            rays = fan.cone_rays(c)
            s = [sum(r[j] for r in rays) for j in range(fan.lattice_rank)]
            v = matvec(self.linear, s) if self.linear else []
            found = None
            for d in range(len(tfan.cones)):
                if tfan.relint_contains(d, v):
                    found = d
                    break
            if found is None:
                raise ValidationError("compatible cones", f"L maps cone {c} outside the target fan")
            self._min_image[c] = found
        return self._min_image[c]

    def stratum_linear(self, c: int) -> list[list[int]]:
        """Matrix of N(σ_c) -> N'(σ''), σ'' = image_cone(c)."""
        d = self.image_cone(c)
        q = [list(r) for r in self.target.strata[d].quotient]
        s = [list(r) for r in self.source.strata[c].section]
        k = self.source.strata[c].rank
        if not q:
            return []
        return matmul(matmul(q, self.linear, bcols=self.source.lattice_rank), s, bcols=k)

    def stratum_translation(self, c: int) -> tuple[Fraction, ...]:
        d = self.image_cone(c)
        q = self.target.strata[d].quotient
        return tuple(Fraction(x) for x in matvec(q, self.translation)) if q else ()

    def compose(self, other: "AffineToricMap") -> "AffineToricMap":
        """self ∘ other."""
        lin = matmul(self.linear, other.linear, bcols=other.source.lattice_rank)
        tr = tuple(Fraction(x) + y for x, y in zip(matvec(self.linear, other.translation), self.translation))
        ci = {c: self.cone_image[other.cone_image[c]] for c in other.cone_image}
        return AffineToricMap(other.source, self.target, lin, tr, ci)


def check_compatibility(f: AffineToricMap) -> bool:
    """Every cone has a declared image cone containing its image under L."""
    fan, tfan = f.source.fan, f.target.fan
    for c in range(len(fan.cones)):
        d = f.cone_image.get(c)
        if d is None or not 0 <= d < len(tfan.cones):
            return False
        for r in fan.cone_rays(c):
            if not tfan.contains(d, matvec(f.linear, r)):
                return False
    return True


def apply_to_point(f: AffineToricMap, x: TropPoint) -> TropPoint:
    d = f.image_cone(x.stratum)
    m = f.stratum_linear(x.stratum)
    v = matvec(m, x.coords) if m else []
    b = f.stratum_translation(x.stratum)
    return TropPoint(d, tuple(a + c for a, c in zip(v, b)))


def evaluate_monomial(f_variety: TropicalToricVariety, u: Sequence[int], x: TropPoint):
    """Value of the character u at x: ⟨u, x⟩, or ∞ when u is positive on the stratum's cone.

    u must lie in the monoid S_σ = σ^∨ ∩ M of the stratum.
    """
    fan = f_variety.fan
    rays = fan.cone_rays(x.stratum)
    pairings = [sum(a * b for a, b in zip(u, r)) for r in rays]
    if any(p < 0 for p in pairings):
        raise MonomialNotInMonoid(f"{list(u)} pairs negatively with cone {x.stratum}")
    if any(p > 0 for p in pairings):
        return INFINITY
    s = f_variety.strata[x.stratum].section
    if not x.coords:
        return Fraction(0)
    amb = matvec(s, x.coords)
    return sum((Fraction(a) * b for a, b in zip(u, amb)), Fraction(0))


# ---------------------------------------------------------------------------
# images of complexes


def image_polyhedron(f: AffineToricMap, p: Polyhedron) -> Polyhedron:
    d = f.image_cone(p.stratum)
    m = f.stratum_linear(p.stratum)
    b = f.stratum_translation(p.stratum)
    dim = f.target.strata[d].rank
    pts = [tuple(a + c for a, c in zip(matvec(m, x), b)) if m else () for x in p.points]
    rys = [tuple(matvec(m, r)) if m else () for r in p.rays]
    return Polyhedron.from_vrep(d, dim, pts, rys)


def _intersection(p: Polyhedron, q: Polyhedron) -> Polyhedron | None:
    pe, pf = p.hrep
    qe, qf = q.hrep
    return Polyhedron.from_hrep(p.stratum, p.ambient_dim, pf + qf, pe + qe)


def _is_face(f: Polyhedron, p: Polyhedron) -> bool:
    return any(g.key == f.key for g in p.faces())


def _split(p: Polyhedron, hyperplanes) -> list[Polyhedron]:
    pieces = [p]
    for a, b in hyperplanes:
        nxt = []
        for piece in pieces:
            lo = piece.intersect_halfspace([-x for x in a], -b)
            hi = piece.intersect_halfspace(a, b)
            if lo is not None and hi is not None and lo.dim == piece.dim and hi.dim == piece.dim:
                nxt.extend([lo, hi])
            else:
                nxt.append(piece)
        pieces = nxt
    return pieces


def image_of_complex(f: AffineToricMap, cx: PolyhedralComplex) -> PolyhedralComplex:
    """Image of a compact complex, subdivided where images overlap improperly."""
    pieces = {image_polyhedron(f, cx.cells[i]) for i in cx.maximal_cells()}
    changed = True
    while changed:
        changed = False
        plist = sorted(pieces, key=lambda c: (-c.dim, c.stratum, c.points, c.rays))
        for i, p in enumerate(plist):
            for q in plist[i + 1:]:
                if q.stratum != p.stratum:
                    continue
                inter = _intersection(p, q)
                if inter is None or (_is_face(inter, p) and _is_face(inter, q)):
                    continue
                if inter.key == q.key:
                    pieces.discard(q)
                else:
                    pieces.discard(p)
                    pieces.discard(q)
                    pieces.update(_split(p, q.hrep[1]))
                    pieces.update(_split(q, p.hrep[1]))
                changed = True
                break
            if changed:
                break
    return PolyhedralComplex(f.target, sorted(pieces, key=lambda c: (c.dim, c.stratum, c.points, c.rays)))


# ---------------------------------------------------------------------------
# cellular maps between barycentric models


def cellular_vertex_map(f: AffineToricMap, mx: Triangulation, my: Triangulation) -> list[int]:
    """Vertex map of barycentric models induced by f.

    The barycenter of each cell c of X goes to the barycenter of the cell g(c)
    of Y whose relative interior contains f(barycenter); g must be monotone
    for the face orders, which makes the map simplicial.
    """
    cx, cy = mx.complex, my.complex
    bary_y = {cell: v for v, cell in enumerate(my.vertex_carrier)}
    g = {}
    for i, c in enumerate(cx.cells):
        y = apply_to_point(f, TropPoint(c.stratum, c.interior_point))
        j = cy.locate(y.stratum, y.coords)
        if j is None:
            raise SupportMismatch(f"image of {c} is not in the support of the target")
        g[i] = j
    for i in range(len(cx.cells)):
        for k in cx.faces_of[i]:
            if g[k] not in cy.faces_of[g[i]]:
                raise SupportMismatch("map is not cellular for the given subdivisions")
    if mx.kind != "barycentric" or my.kind != "barycentric":
        raise ValueError("cellular vertex maps need barycentric models")
    return [bary_y[g[cell]] for cell in mx.vertex_carrier]
