"""Monodromy on superforms, the wave operator on cochains, the fundamental
class, the cup product pairing and the smoothness check for curves.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Mapping, Sequence

from . import cones as cn
from .cohomology import (
    CochainComplex,
    CohomologyGroup,
    as_ring,
    build_cochain_complex,
    cell_multitangent,
    cohomology_of_complex,
    _model_of,
)
from .errors import NonOrientable, NotTriangulated, WrongDimension
from .exactlin import (
    Multivector,
    det,
    exterior_power_matrix,
    hermite_normal_form,
    matvec,
    rational_rank,
    rref,
    saturated_span,
    sort_with_sign,
    wedge,
    wedge_vectors,
)
from .polyhedral import Triangulation, TropicalCycle, primitive_normal

# ---------------------------------------------------------------------------
# superforms with constant coefficients


Key = tuple[tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True)
class SuperformExpr:
    """Σ c · d′x_I ∧ d″x_J with sorted 0-based index sets I, J."""

    ambient_rank: int
    terms: tuple[tuple[Key, Fraction], ...] = ()

    @classmethod
    def from_dict(cls, n: int, terms: Mapping[Key, object]) -> "SuperformExpr":
        acc: dict[Key, Fraction] = {}
        for (i, j), c in terms.items():
            si, ii = sort_with_sign(i)
            sj, jj = sort_with_sign(j)
            if si == 0 or sj == 0:
                continue
            acc[(ii, jj)] = acc.get((ii, jj), Fraction(0)) + si * sj * Fraction(c)
        return cls(n, tuple(sorted((k, v) for k, v in acc.items() if v)))

    @classmethod
    def basis_form(cls, n: int, i: Sequence[int], j: Sequence[int] = (), c=1) -> "SuperformExpr":
        return cls.from_dict(n, {(tuple(i), tuple(j)): c})

    def as_dict(self) -> dict[Key, Fraction]:
        return dict(self.terms)

    @property
    def bidegree(self) -> tuple[int, int] | None:
        degs = {(len(i), len(j)) for (i, j), _ in self.terms}
        if len(degs) > 1:
            raise ValueError("superform is not homogeneous")
        return degs.pop() if degs else None

    def __add__(self, other: "SuperformExpr") -> "SuperformExpr":
        acc = self.as_dict()
        for k, v in other.terms:
            acc[k] = acc.get(k, Fraction(0)) + v
        return SuperformExpr.from_dict(self.ambient_rank, acc)

    def __rmul__(self, c) -> "SuperformExpr":
        return SuperformExpr.from_dict(self.ambient_rank, {k: c * v for k, v in self.terms})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in self.terms:
            f = " ∧ ".join([f"d′x{a + 1}" for a in i] + [f"d″x{b + 1}" for b in j]) or "1"
            parts.append(f"{c}·{f}")
        return " + ".join(parts)


def monodromy(alpha: SuperformExpr) -> SuperformExpr:
    """M(d′x_I ∧ d″x_J) = Σ_k (-1)^{p-k} d′x_{I∖i_k} ∧ d″x_{i_k} ∧ d″x_J."""
    acc: dict[Key, Fraction] = {}
    for (i, j), c in alpha.terms:
        p = len(i)
        for k in range(1, p + 1):
            ik = i[k - 1]
            if ik in j:
                continue
            rest = i[:k - 1] + i[k:]
            s, jj = sort_with_sign((ik,) + j)
            sign = (-1) ** (p - k) * s
            acc[(rest, jj)] = acc.get((rest, jj), Fraction(0)) + sign * c
    return SuperformExpr.from_dict(alpha.ambient_rank, acc)


def contract_prime(alpha: SuperformExpr, v: Multivector) -> SuperformExpr:
    """⟨α; v⟩: pair the d′ part with a multivector of matching degree."""
    vd = v.as_dict()
    acc: dict[Key, Fraction] = {}
    for (i, j), c in alpha.terms:
        if len(i) != v.degree:
            continue
        coef = vd.get(i, Fraction(0))
        if coef:
            acc[((), j)] = acc.get(((), j), Fraction(0)) + c * coef
    return SuperformExpr.from_dict(alpha.ambient_rank, acc)


def pair_prime(alpha: SuperformExpr, w: Multivector) -> Fraction:
    """⟨α, w⟩ for α of bidegree (p, 0) and w of degree p."""
    wd = w.as_dict()
    return sum((c * wd.get(i, Fraction(0)) for (i, j), c in alpha.terms if not j), Fraction(0))


# ---------------------------------------------------------------------------
# the identity ∫ δ*⟨M α, v⟩ = (-1)^{p-1} ⟨α, e ∧ v⟩


@dataclass(frozen=True)
class AffineSimplex:
    """Affine segment or simplex; coordinates listed in ``unbounded`` run off to infinity."""

    vertices: tuple[tuple[Fraction, ...], ...]
    unbounded: frozenset = frozenset()
    carrier: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(tuple(Fraction(x) for x in v) for v in self.vertices))
        object.__setattr__(self, "unbounded", frozenset(self.unbounded))

    def edge(self) -> tuple[Fraction, ...]:
        a, b = self.vertices[0], self.vertices[1]
        return tuple(Fraction(0) if k in self.unbounded else y - x for k, (x, y) in enumerate(zip(a, b)))


def integrate_one_form(form: SuperformExpr, delta: AffineSimplex) -> Fraction:
    """∫_{[0,1]} δ* of a constant (0,1)-form along an affine segment.

    δ(t) = a + t(b - a), so δ* d″x_j = (b_j - a_j) dt; coordinates that are
    unbounded on the segment are cut off where the form vanishes and drop out.
    """
    a, b = delta.vertices[0], delta.vertices[1]
    total = Fraction(0)
    for (i, j), c in form.terms:
        if i or len(j) != 1:
            raise ValueError("expected a (0,1)-form")
        k = j[0]
        if k in delta.unbounded:
            continue
        total += c * (b[k] - a[k])
    return total


@dataclass
class IdentityCheck:
    lhs: Fraction
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def check_monodromy_wave_identity(alpha: SuperformExpr, v: Multivector, delta: AffineSimplex) -> IdentityCheck:
    bideg = alpha.bidegree
    p = bideg[0] if bideg else v.degree + 1
    n = alpha.ambient_rank
    lhs = integrate_one_form(contract_prime(monodromy(alpha), v), delta)
    e = Multivector.from_vector(delta.edge())
    rhs = (-1) ** (p - 1) * pair_prime(alpha, wedge(e, v)) if p <= n else Fraction(0)
    return IdentityCheck(lhs, rhs)


def random_identity_instance(rng: random.Random, p: int, n: int, infinite: bool = False):
    """Random constant (p,0)-form, degree p-1 multivector and segment."""
    idx = list(combinations(range(n), p))
    terms = {(i, ()): Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for i in rng.sample(idx, rng.randint(1, len(idx)))}
    alpha = SuperformExpr.from_dict(n, terms)
    vidx = list(combinations(range(n), p - 1))
    v = Multivector(n, p - 1, {i: Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for i in vidx})
    a = tuple(Fraction(rng.randint(-20, 20), rng.randint(1, 6)) for _ in range(n))
    b = tuple(Fraction(rng.randint(-20, 20), rng.randint(1, 6)) for _ in range(n))
    unb = frozenset(k for k in range(n) if infinite and rng.random() < 0.3)
    return alpha, v, AffineSimplex((a, b), unb)


def run_identity_trials(trials: int = 100, seed: int = 7) -> list[tuple[int, int, IdentityCheck]]:
    rng = random.Random(seed)
    out = []
    for t in range(trials):
        p = rng.choice((1, 2, 3))
        n = rng.choice([m for m in (2, 3, 4) if m >= p])
        alpha, v, delta = random_identity_instance(rng, p, n, infinite=t % 4 == 3)
        out.append((p, n, check_monodromy_wave_identity(alpha, v, delta)))
    return out


# ---------------------------------------------------------------------------
# vertex lifts and the wave operator


def _solve_affine(rows: list[list[Fraction]], rhs: list[Fraction], n: int) -> list[Fraction] | None:
    if not rows:
        return [Fraction(0)] * n
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, piv = rref(aug, n + 1)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(red, piv):
        x[c] = row[n]
    return x


def vertex_lifts(tri: Triangulation) -> list[tuple[Fraction, ...] | None]:
    """A point L(x) of N_R for every vertex x of the triangulation.

    L(x) projects to x in its own stratum, and to a point of aff(c) in the
    stratum of every cell c whose closure contains the carrier of x.  Edge
    vectors of simplices reaching infinity are then differences of lifts
    projected to the carrier stratum.  None marks an infeasible system.
    """
    cache = tri.__dict__.setdefault("_lifts", None)
    if cache is not None:
        return cache
    cx = tri.complex
    var = cx.variety
    n = var.lattice_rank
    out = []
    for (stratum, coords), carrier in zip(tri.vertices, tri.vertex_carrier):
        if stratum == 0:
            out.append(tuple(coords))
            continue
        rows = [[Fraction(x) for x in r] for r in var.strata[stratum].quotient]
        rhs = list(coords)
        for c in cx.cofaces_of[carrier]:
            cell = cx.cells[c]
            if cell.stratum == stratum:
                continue
            q = var.strata[cell.stratum].quotient
            eqs, _ = cell.hrep
            for a, b in eqs:
                rows.append([sum(Fraction(a[i]) * q[i][j] for i in range(len(a))) for j in range(n)])
                rhs.append(b)
        sol = _solve_affine(rows, rhs, n)
        out.append(tuple(sol) if sol is not None else None)
    tri.__dict__["_lifts"] = out
    return out


def edge_vector(tri: Triangulation, simplex: Sequence[int], rule: str = "lift") -> tuple[Fraction, ...]:
    """Vector from vertex 0 to vertex 1 of a simplex, in the carrier stratum."""
    cx = tri.complex
    c = tri.carrier[tuple(simplex)]
    s = cx.cells[c].stratum
    v0, v1 = simplex[0], simplex[1]
    if rule == "truncate":
        if tri.vertex_stratum(v0) != s:
            return tuple(Fraction(0) for _ in range(cx.cells[c].ambient_dim))
        return tuple(b - a for a, b in zip(tri.vertices[v0][1], tri.vertices[v1][1]))
    if tri.vertex_stratum(v0) == s and tri.vertex_stratum(v1) == s:
        return tuple(b - a for a, b in zip(tri.vertices[v0][1], tri.vertices[v1][1]))
    lifts = vertex_lifts(tri)
    l0, l1 = lifts[v0], lifts[v1]
    if l0 is None or l1 is None:
        raise NotTriangulated("no compatible lift for a vertex at infinity; refine the triangulation")
    q = cx.variety.strata[s].quotient
    diff = [b - a for a, b in zip(l0, l1)]
    return tuple(Fraction(x) for x in matvec(q, diff)) if q else ()


def wave_matrix(X, p: int, q: int, ring="Z", model="stellar", rule: str = "lift"):
    """Matrix of W: C^{p,q} -> C^{p-1,q+1} (rows index C^{p-1,q+1}).

    (Wφ)(v ⊗ δ) = φ((v ∧ e_δ) ⊗ δ|[1..q+1]) with e_δ the first edge vector.
    Entries are exact rationals; with Γ-point vertices they lie in R[Γ].
    """
    ring = as_ring(ring)
    tri = _model_of(X, model)
    cx = tri.complex
    src = build_cochain_complex(tri, p, ring)
    if p == 0:
        return [], src, None
    dst = build_cochain_complex(tri, p - 1, ring)
    rows, cols = dst.rank(q + 1), src.rank(q)
    mat = [[Fraction(0)] * cols for _ in range(rows)]
    if q + 1 >= len(tri.simplices):
        return mat, src, dst
    for i, s in enumerate(tri.simplices[q + 1]):
        c = tri.carrier[s]
        face = s[1:]
        fi = tri.index[q][face]
        cf = tri.carrier[face]
        e = edge_vector(tri, s, rule)
        fv = cell_multitangent(cx, c, p - 1, ring)
        fp = cell_multitangent(cx, cf, p, ring)
        d = cx.cells[c].ambient_dim
        ev = Multivector.from_vector(e)
        for a, b in enumerate(fv.multivectors()):
            w = wedge(b, ev)
            if w.is_zero():
                continue
            coords = w.to_coordinates()
            if cx.cells[cf].stratum != cx.cells[c].stratum:
                m = cx.variety.projection(cx.cells[c].stratum, cx.cells[cf].stratum)
                lam = exterior_power_matrix(m, p, d)
                coords = matvec(lam, coords)
            if rational_rank([list(x) for x in fp.basis] + [coords]) > fp.rank:
                raise NotTriangulated("edge vector leaves the multitangent space")
            cvec = fp.coordinates(coords)
            for bb, val in enumerate(cvec):
                if val:
                    mat[dst.offsets[q + 1][i] + a][src.offsets[q][fi] + bb] += val
    return mat, src, dst


def wave_on_cohomology(X, p: int, q: int, ring="Z", model="stellar", gamma=None):
    """W on H^{p,q}(X, R) -> H^{p-1,q+1}(X, R[Γ]) in the groups' generator bases.

    Returns (matrix, source group, target group); column j is the image of
    the j-th free generator of the source.
    """
    ring = as_ring(ring)
    tri = _model_of(X, model)
    g = gamma if gamma is not None else tri.gamma_denominator
    if isinstance(X, TropicalCycle):
        g = X.gamma.enlarged(tri.gamma_denominator)
    target_ring = ring.with_gamma(g)
    mat, src, _ = wave_matrix(tri, p, q, ring, model)
    h_src = cohomology_of_complex(src, q)
    dst = build_cochain_complex(tri, p - 1, target_ring if not target_ring.is_field else ring)
    h_dst = cohomology_of_complex(dst, q + 1)
    cols = []
    for z in h_src.representatives:
        img = [sum(row[t] * z[t] for t in range(len(z)) if z[t]) for row in mat]
        cols.append(h_dst.coordinates(img))
    matrix = [[cols[j][i] for j in range(len(cols))] for i in range(h_dst.free_rank)]
    return matrix, h_src, h_dst


# ---------------------------------------------------------------------------
# fundamental class


def _orientation_generator(lattice_basis: Sequence[Sequence[int]], n: int) -> list[int]:
    """Generator of Λ^top Z(e) with first nonzero coordinate positive."""
    w = wedge_vectors([list(v) for v in lattice_basis], n).to_coordinates()
    w = [int(x) for x in w]
    first = next(x for x in w if x)
    return [-x for x in w] if first < 0 else w


def _leading_sign(terms: dict[int, Fraction]) -> int:
    for k in sorted(terms, reverse=True):
        if terms[k]:
            return 1 if terms[k] > 0 else -1
    return 0


def simplex_orientation(tri: Triangulation, simplex: Sequence[int], gen: Sequence[int]) -> int:
    """Sign of the ordered simplex against ``gen`` ∈ Λ^top Lin(carrier).

    Vertices at infinity are replaced by L(x) + R^(1000^depth) u_x with u_x a
    direction of the carrier's recession cone inside the vertex's cone; the
    sign is that of the leading coefficient as R grows.
    """
    cx = tri.complex
    c = tri.carrier[tuple(simplex)]
    cell = cx.cells[c]
    var = cx.variety
    d = cell.ambient_dim
    base, direction, expo = [], [], []
    for v in simplex:
        st, coords = tri.vertices[v]
        if st == cell.stratum:
            base.append(list(coords))
            direction.append(None)
            expo.append(0)
            continue
        # a point of aff(cell) over the vertex
        q = var.projection(cell.stratum, st)
        eqs, _ = cell.hrep
        rows = [[Fraction(x) for x in r] for r in q] + [[Fraction(x) for x in a] for a, _ in eqs]
        rhs = list(coords) + [b for _, b in eqs]
        sol = _solve_affine(rows, rhs, d)
        if sol is None:
            raise NonOrientable(f"vertex {v} has no position over cell {c}")
        gens, (ceqs, cfacets) = var.star_cone(cell.stratum, st)
        rec = cn.cone_facets(cell.rays, [], d) if cell.rays else ([[int(i == j) for j in range(d)] for i in range(d)], [])
        _, k = cn.intersect_cones(rec, (ceqs, cfacets), d)
        u = [sum(g[i] for g in k) for i in range(d)]
        base.append(sol)
        direction.append(u)
        expo.append(1000 ** var.depth(st))
    n = len(simplex) - 1
    # expand ∧_{i≥1} (P_i - P_0) with P_i = base_i + t_i u_i
    options = []
    for i in range(1, n + 1):
        opts = [([b - a for a, b in zip(base[0], base[i])], 0)]
        if direction[i] is not None:
            opts.append((list(direction[i]), expo[i]))
        if direction[0] is not None:
            opts.append(([-x for x in direction[0]], expo[0]))
        options.append(opts)
    gen = list(gen)
    gi = next(i for i, x in enumerate(gen) if x)
    terms: dict[int, Fraction] = {}
    for choice in product(*options):
        vecs = [vec for vec, _ in choice]
        w = wedge_vectors(vecs, d).to_coordinates() if vecs else [Fraction(1)]
        if not any(w):
            continue
        ex = sum(e for _, e in choice)
        terms[ex] = terms.get(ex, Fraction(0)) + Fraction(w[gi]) / gen[gi]
    s = _leading_sign(terms)
    if s == 0:
        raise NonOrientable(f"degenerate simplex {tuple(simplex)}")
    return s


@dataclass
class FundamentalClassEvaluator:
    """Oriented weighted top simplices: Σ w_c ω_δ ⊗ δ is a cycle in C_{n,n}."""

    cycle: TropicalCycle
    model: Triangulation
    ring: object
    generators: dict[int, list[int]]
    signs: dict[tuple[int, ...], int]
    chain: list                      # coordinates in C_{n,n} of the fundamental cycle
    complex: CochainComplex

    def evaluate(self, eta: Sequence) -> Fraction:
        return sum((Fraction(a) * b for a, b in zip(self.chain, eta) if a and b), Fraction(0))


def fundamental_class(X: TropicalCycle, ring="Q", model="stellar",
                      require_cycle: bool = True) -> FundamentalClassEvaluator:
    """Orient every top simplex and assemble the weighted fundamental chain.

    With ``require_cycle`` the chain must have zero boundary, which holds for
    balanced cycles whose closure has no boundary; otherwise NonOrientable
    names the simplex where it fails and the adjacent top cells.
    """
    ring = as_ring(ring)
    tri = _model_of(X, model)
    cx = tri.complex
    n = X.dim
    cc = build_cochain_complex(tri, n, ring)
    gens = {}
    for t in X.top_cells():
        cell = cx.cells[t]
        gens[t] = _orientation_generator(cell.lattice_basis, cell.ambient_dim)
    tops = tri.simplices[n] if n < len(tri.simplices) else []
    by_cell: dict[int, list[tuple[int, ...]]] = {}
    for s in tops:
        by_cell.setdefault(tri.carrier[s], []).append(s)
    signs: dict[tuple[int, ...], int] = {}
    for c, simplices in by_cell.items():
        # seed with the simplex having fewest vertices at infinity, then walk
        seed = min(simplices, key=lambda s: (sum(tri.vertex_stratum(v) != 0 for v in s), s))
        signs[seed] = simplex_orientation(tri, seed, gens[c])
        ridges: dict[tuple[int, ...], list[tuple[tuple[int, ...], int]]] = {}
        for s in simplices:
            for k in range(len(s)):
                ridges.setdefault(s[:k] + s[k + 1:], []).append((s, k))
        stack = [seed]
        while stack:
            s = stack.pop()
            for k in range(len(s)):
                r = s[:k] + s[k + 1:]
                if tri.carrier[r] != c:
                    continue
                for s2, k2 in ridges[r]:
                    if s2 == s:
                        continue
                    want = -signs[s] * (-1) ** k * (-1) ** k2
                    if s2 in signs:
                        if signs[s2] != want:
                            raise NonOrientable(f"inconsistent orientation inside cell {c}", (s, s2))
                    else:
                        signs[s2] = want
                        stack.append(s2)
        if any(s not in signs for s in simplices):
            raise NonOrientable(f"cell {c} is not connected through interior ridges")
    chain = [Fraction(0)] * cc.rank(n)
    for i, s in enumerate(tops):
        c = tri.carrier[s]
        fp = cell_multitangent(cx, c, n, ring)
        coords = fp.coordinates([signs[s] * x for x in gens[c]])
        for j, val in enumerate(coords):
            chain[cc.offsets[n][i] + j] = X.weight(c) * val
    # the chain must be a cycle: it annihilates every coboundary
    if n > 0 and require_cycle:
        dmat = cc.differential(n - 1)
        for col in range(cc.rank(n - 1)):
            val = sum((chain[r] * dmat[r][col] for r in range(len(chain)) if dmat[r][col]), Fraction(0))
            if val:
                s_idx, _ = cc.labels[n - 1][col]
                ridge = tri.simplices[n - 1][s_idx]
                adj = [tri.carrier[s] for s in tops if set(ridge) <= set(s)]
                raise NonOrientable(f"fundamental chain has boundary at simplex {ridge}", tuple(adj))
    return FundamentalClassEvaluator(X, tri, ring, gens, signs, chain, cc)


def cap_fundamental_class(eta: Sequence, evaluator: FundamentalClassEvaluator) -> Fraction:
    """Evaluation of an (n, n)-cochain against the fundamental class."""
    return evaluator.evaluate(eta)


# ---------------------------------------------------------------------------
# cup product and the duality pairing


def _coefficient_functional(cc: CochainComplex, q: int, simplex: tuple[int, ...], phi: Sequence,
                            top_cell: int):
    """The linear form a ↦ φ(ι(a) ⊗ simplex) on Λ^p N(top stratum), as a coordinate dict."""
    tri = cc.model
    cx = tri.complex
    i = tri.index[q][simplex]
    cf = tri.carrier[simplex]
    fp = cell_multitangent(cx, cf, cc.p, cc.ring)
    vals = [Fraction(phi[cc.offsets[q][i] + j]) for j in range(fp.rank)]
    return fp, vals, cx.cells[cf].stratum


def _apply(fp, vals, src_stratum, dst_stratum, cx, coords):
    if src_stratum != dst_stratum:
        m = cx.variety.projection(src_stratum, dst_stratum)
        lam = exterior_power_matrix(m, fp.degree, cx.variety.strata[src_stratum].rank)
        coords = matvec(lam, coords)
    c = fp.coordinates(coords)
    return sum((a * b for a, b in zip(c, vals)), Fraction(0))


def cup_evaluate(ev: FundamentalClassEvaluator, phi: Sequence, p: int, q: int, psi: Sequence) -> Fraction:
    """⟨(φ ∪ ψ), [X]⟩ for φ ∈ C^{p,q}, ψ ∈ C^{n-p,n-q}."""
    tri = ev.model
    cx = tri.complex
    X = ev.cycle
    n = X.dim
    ccp = build_cochain_complex(tri, p, ev.ring)
    ccq = build_cochain_complex(tri, n - p, ev.ring)
    total = Fraction(0)
    for s in tri.simplices[n]:
        c = tri.carrier[s]
        cell = cx.cells[c]
        d = cell.ambient_dim
        front, back = s[:q + 1], s[q:]
        fpf, vf, sf = _coefficient_functional(ccp, q, front, phi, c)
        fpb, vb, sb = _coefficient_functional(ccq, n - q, back, psi, c)
        if not any(vf) or not any(vb):
            continue
        basis = [list(v) for v in cell.lattice_basis]
        # ω = λ f_1 ∧ ... ∧ f_n for the lattice basis f of Lin(c)
        w = wedge_vectors(basis, d).to_coordinates()
        gen = [ev.signs[s] * x for x in ev.generators[c]]
        gi = next(i for i, x in enumerate(gen) if x)
        lam = Fraction(gen[gi]) / w[gi]
        acc = Fraction(0)
        for S in combinations(range(n), p):
            Sc = tuple(i for i in range(n) if i not in S)
            sign, _ = sort_with_sign(S + Sc)
            a = wedge_vectors([basis[i] for i in S], d).to_coordinates() if p else [Fraction(1)]
            b = wedge_vectors([basis[i] for i in Sc], d).to_coordinates() if n - p else [Fraction(1)]
            va = _apply(fpf, vf, cell.stratum, sf, cx, a)
            vb_ = _apply(fpb, vb, cell.stratum, sb, cx, b)
            acc += sign * va * vb_
        total += X.weight(c) * lam * acc
    return total


@dataclass
class PairingResult:
    p: int
    q: int
    matrix: list[list[Fraction]]
    left: CohomologyGroup
    right: CohomologyGroup

    @property
    def determinant(self) -> Fraction:
        if len(self.matrix) != len(self.matrix[0] if self.matrix else []):
            return Fraction(0)
        return Fraction(det(self.matrix)) if self.matrix else Fraction(1)

    @property
    def nondegenerate(self) -> bool:
        return self.left.free_rank == self.right.free_rank and self.determinant != 0


def duality_pairing(X: TropicalCycle, p: int, q: int, ring="Z", model="stellar",
                    evaluator: FundamentalClassEvaluator | None = None) -> PairingResult:
    """Matrix of H^{p,q} × H^{n-p,n-q} -> R on free generators."""
    ring = as_ring(ring)
    n = X.dim
    tri = _model_of(X, model)
    ev = evaluator or fundamental_class(X, ring, tri)
    left = cohomology_of_complex(build_cochain_complex(tri, p, ring), q)
    right = cohomology_of_complex(build_cochain_complex(tri, n - p, ring), n - q)
    mat = [[cup_evaluate(ev, a, p, q, b) for b in right.representatives] for a in left.representatives]
    return PairingResult(p, q, mat, left, right)


# ---------------------------------------------------------------------------
# smooth curves


@dataclass
class SmoothnessReport:
    smooth: bool
    certificates: list[dict] = field(default_factory=list)

    def __bool__(self):
        return self.smooth


def smooth_curve_check(X: TropicalCycle) -> SmoothnessReport:
    """Local U_{2,k} model at every vertex of a tropical curve."""
    if X.dim != 1:
        raise WrongDimension(f"smoothness is implemented for curves, got dimension {X.dim}")
    cx = X.complex
    fan = cx.variety.fan
    certs = []
    ok = True
    for v in cx.cells_of_dim(0):
        vert = cx.cells[v]
        edges = [e for e in cx.cofaces_of[v] if cx.cells[e].dim == 1]
        if vert.stratum == 0:
            dirs, weights = [], []
            for e in edges:
                dirs.append(primitive_normal(cx.cells[e], vert))
                weights.append(X.weight(e) if e in X.weights else None)
            k = len(dirs)
            n = vert.ambient_dim
            reasons = []
            if any(w != 1 for w in weights):
                reasons.append("weights")
            if any(sum(d[i] for d in dirs) for i in range(n)):
                reasons.append("direction sum")
            full = saturated_span(dirs, n)
            if full.rank != k - 1:
                reasons.append("rank")
            else:
                target = hermite_normal_form([list(b) for b in full.basis], n)
                for sub in combinations(dirs, k - 1):
                    if hermite_normal_form([list(x) for x in sub], n) != target:
                        reasons.append("basis")
                        break
            good = not reasons
            certs.append({"vertex": v, "valence": k, "directions": [list(d) for d in dirs],
                          "smooth": good, "failed": reasons})
        else:
            reasons = []
            if len(edges) != 1:
                reasons.append("valence")
            else:
                e = edges[0]
                cell = cx.cells[e]
                if cell.stratum != 0 or X.weights.get(e) != 1:
                    reasons.append("weights")
                rays = fan.cone_rays(vert.stratum)
                if len(rays) != 1 or list(cell.rays) != [tuple(rays[0])]:
                    reasons.append("direction")
            good = not reasons
            certs.append({"vertex": v, "atInfinity": True, "smooth": good, "failed": reasons})
        ok &= good
    return SmoothnessReport(ok, certs)
