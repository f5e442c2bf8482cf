"""Multitangent coefficients, cellular (p, q)-cochains and tropical cohomology.

The cochain complex is built on a :class:`~tropcoh.polyhedral.Triangulation`.
A simplex carries the coefficient space of its carrier cell; the boundary of
``b ⊗ δ`` is ``Σ (-1)^i ι(b) ⊗ δ_i`` with ``ι`` the identity in Λ^p
coordinates inside a stratum and Λ^p of the stratum projection otherwise.
The coboundary is the transpose.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Sequence

from .errors import FaceNotFound, InvariantBreach, ParseError, SupportMismatch, ValidationError
from .exactlin import (
    Multivector,
    hermite_normal_form,
    integer_kernel_basis,
    lattice_coordinates,
    rational_kernel_basis,
    exterior_power_matrix,
    integer_inverse,
    invariant_factors,
    matmul,
    rational_rank,
    row_space_basis,
    rref,
    saturated_span,
    smith_normal_form,
    subsets,
    transpose,
    wedge_vectors,
)
from .polyhedral import GammaSpec, PolyhedralComplex, Triangulation, TropicalCycle, triangulate


def prime_factors(m: int) -> tuple[int, ...]:
    m = abs(m)
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return tuple(out)


# ---------------------------------------------------------------------------
# coefficient rings


@dataclass(frozen=True)
class CoefficientSpec:
    """A ring Z ⊆ R ⊆ Q: Z, Q, or Z with the primes in ``inverted`` made units."""

    base: str = "Z"
    inverted: tuple[int, ...] = ()

    def __post_init__(self):
        if self.base not in ("Z", "Q"):
            raise ValidationError("ring", f"unknown base ring {self.base!r}")
        primes = sorted({q for p in self.inverted for q in prime_factors(p)})
        object.__setattr__(self, "inverted", tuple(primes) if self.base == "Z" else ())

    @classmethod
    def parse(cls, text: str) -> "CoefficientSpec":
        t = text.replace(" ", "")
        if t in ("Z", "Q"):
            return cls(t)
        m = re.fullmatch(r"Z\[(.*)\]", t)
        if not m:
            raise ParseError(f"cannot parse ring {text!r}; expected Z, Q or Z[1/m,...]")
        dens = []
        for part in m.group(1).split(","):
            mm = re.fullmatch(r"1/(\d+)", part)
            if not mm or int(mm.group(1)) < 1:
                raise ParseError(f"cannot parse ring generator {part!r} in {text!r}")
            dens.append(int(mm.group(1)))
        return cls("Z", tuple(dens))

    @property
    def is_field(self) -> bool:
        return self.base == "Q"

    @property
    def integral(self) -> bool:
        return self.base == "Z"

    def is_unit(self, d: int) -> bool:
        if self.base == "Q":
            return d != 0
        return d != 0 and all(p in self.inverted for p in prime_factors(d))

    def reduce_factor(self, d: int) -> int:
        """Invariant factor d of a Z-module, after tensoring with this ring."""
        for p in self.inverted:
            while d % p == 0:
                d //= p
        return d

    def contains(self, x) -> bool:
        x = Fraction(x)
        return self.base == "Q" or self.is_unit(x.denominator)

    def with_gamma(self, gamma: GammaSpec | int) -> "CoefficientSpec":
        """R[Γ]: the smallest subring containing R and Γ."""
        den = gamma if isinstance(gamma, int) else gamma.denominator
        if self.base == "Q" or den == 1:
            return self
        return CoefficientSpec("Z", self.inverted + prime_factors(den))

    def __str__(self):
        if self.base == "Q" or not self.inverted:
            return self.base
        return "Z[" + ",".join(f"1/{p}" for p in self.inverted) + "]"


ZZ = CoefficientSpec("Z")
QQ = CoefficientSpec("Q")


def as_ring(ring) -> CoefficientSpec:
    if isinstance(ring, CoefficientSpec):
        return ring
    return CoefficientSpec.parse(str(ring))


# ---------------------------------------------------------------------------
# multitangent spaces


@dataclass(frozen=True)
class MultiTangentSpace:
    """F_p(τ) ⊆ Λ^p N(σ_τ), given by a basis in subset coordinates.

    Over Z (and the rings between Z and Q) the basis is a basis of the
    saturated lattice; over Q it is in reduced echelon form.
    """

    face: int
    degree: int
    stratum: int
    ambient_rank: int
    basis: tuple[tuple, ...]
    ring: CoefficientSpec

    @property
    def rank(self) -> int:
        return len(self.basis)

    def multivectors(self) -> list[Multivector]:
        return [Multivector.from_coordinates(self.ambient_rank, self.degree, b) for b in self.basis]

    @cached_property
    def _solver(self):
        if not self.basis:
            return [], []
        _, piv = rref([list(b) for b in self.basis], len(self.basis[0]))
        sub = [[Fraction(b[j]) for j in piv] for b in self.basis]
        k = len(sub)
        aug = [row + [Fraction(int(i == j)) for j in range(k)] for i, row in enumerate(sub)]
        red, _ = rref(aug, 2 * k)
        return piv, [row[k:] for row in red]

    def coordinates(self, v: Sequence) -> list[Fraction]:
        """Coordinates of v ∈ span(basis); v is assumed to lie in the span."""
        piv, inv = self._solver
        w = [Fraction(v[j]) for j in piv]
        return [sum((w[i] * inv[i][j] for i in range(len(w))), Fraction(0)) for j in range(len(w))]

    def contains(self, v: Sequence) -> bool:
        c = self.coordinates(v)
        back = [sum((c[i] * self.basis[i][j] for i in range(len(c))), Fraction(0))
                for j in range(len(v))]
        if back != [Fraction(x) for x in v]:
            return False
        return self.ring.is_field or all(x.denominator == 1 for x in c)


def cell_multitangent(cx: PolyhedralComplex, cell: int, p: int, ring: CoefficientSpec) -> MultiTangentSpace:
    cache = cx.__dict__.setdefault("_fp_cache", {})
    exact = "Q" if ring.is_field else "Z"
    key = (cell, p, exact)
    if key in cache:
        return cache[key]
    c = cx.cells[cell]
    d = c.ambient_dim
    n_coords = len(subsets(d, p)) if 0 <= p <= d else 0
    gens = []
    if 0 <= p <= d:
        for j in cx.cofaces_of[cell]:
            other = cx.cells[j]
            if other.stratum != c.stratum:
                continue
            lb = other.lin_basis
            if p > len(lb):
                continue
            for idx in combinations(range(len(lb)), p):
                w = wedge_vectors([lb[i] for i in idx], d) if p else Multivector.scalar(d)
                gens.append(w.to_coordinates())
    if not gens:
        basis = ()
    elif exact == "Q":
        basis = tuple(tuple(r) for r in row_space_basis(gens, n_coords))
    else:
        basis = saturated_span(gens, n_coords).basis
    out = MultiTangentSpace(cell, p, c.stratum, d, tuple(basis), ring)
    cache[key] = out
    return out


def multitangent(X: TropicalCycle | PolyhedralComplex, face: int, p: int, ring="Z") -> MultiTangentSpace:
    """F_p(τ) for the cell with index ``face``."""
    cx = X.complex if isinstance(X, TropicalCycle) else X
    if not 0 <= face < len(cx.cells):
        raise FaceNotFound(f"no face with index {face}")
    return cell_multitangent(cx, face, p, as_ring(ring))


def transition_matrix(cx: PolyhedralComplex, src: int, dst: int, p: int, ring: CoefficientSpec):
    """Matrix of ι: F_p(src) -> F_p(dst) in the chosen bases, columns indexed by src."""
    cache = cx.__dict__.setdefault("_iota_cache", {})
    exact = "Q" if ring.is_field else "Z"
    key = (src, dst, p, exact)
    if key in cache:
        return cache[key]
    fs = cell_multitangent(cx, src, p, ring)
    fd = cell_multitangent(cx, dst, p, ring)
    s_str, d_str = cx.cells[src].stratum, cx.cells[dst].stratum
    if s_str == d_str:
        images = [list(b) for b in fs.basis]
    else:
        m = cx.variety.projection(s_str, d_str)
        lam = exterior_power_matrix(m, p, cx.cells[src].ambient_dim)
        images = [[sum(row[j] * b[j] for j in range(len(b)) if b[j]) for row in lam] for b in fs.basis]
    cols = []
    for v in images:
        if not fd.contains(v):
            raise InvariantBreach(f"transition map leaves F_{p} at cell {dst}")
        cols.append(fd.coordinates(v))
    mat = [[cols[j][i] for j in range(len(cols))] for i in range(fd.rank)]
    if exact == "Z":
        mat = [[int(x) for x in row] for row in mat]
    cache[key] = mat
    return mat


# ---------------------------------------------------------------------------
# cochain complexes


def _model_of(X, model) -> Triangulation:
    if isinstance(model, Triangulation):
        return model
    cx = X.complex if isinstance(X, TropicalCycle) else X
    if isinstance(X, Triangulation):
        return X
    cache = cx.__dict__.setdefault("_model_cache", {})
    if model not in cache:
        cache[model] = triangulate(cx, model)
    return cache[model]


@dataclass
class CochainComplex:
    """C^{p,•}: ``labels[q]`` lists (simplex index, basis index) pairs and
    ``d[q]`` is the matrix of C^{p,q} -> C^{p,q+1} (rows index C^{p,q+1})."""

    model: Triangulation
    p: int
    ring: CoefficientSpec
    labels: list[list[tuple[int, int]]]
    offsets: list[dict[int, int]]
    d: list[list[list]]

    def rank(self, q: int) -> int:
        return len(self.labels[q]) if 0 <= q < len(self.labels) else 0

    def ranks(self) -> list[int]:
        return [len(level) for level in self.labels]

    def differential(self, q: int) -> list[list]:
        if 0 <= q < len(self.d):
            return self.d[q]
        return [[0] * self.rank(q) for _ in range(self.rank(q + 1))]

    def fp(self, q: int, simplex: int) -> MultiTangentSpace:
        s = self.model.simplices[q][simplex]
        return cell_multitangent(self.model.complex, self.model.carrier[s], self.p, self.ring)

    def check(self):
        for q in range(len(self.d) - 1):
            a, b = self.d[q], self.d[q + 1]
            prod = matmul(b, a, bcols=self.rank(q)) if b else []
            if any(x for row in prod for x in row):
                raise InvariantBreach(f"coboundary squares to a nonzero map at q={q}")


def build_cochain_complex(X, p: int, ring="Z", model: str | Triangulation = "stellar") -> CochainComplex:
    """C^{p,•}(X, R) on a triangulation of X (built automatically if needed)."""
    ring = as_ring(ring)
    tri = _model_of(X, model)
    cx = tri.complex
    labels, offsets = [], []
    for q, level in enumerate(tri.simplices):
        lab, off = [], {}
        for i, s in enumerate(level):
            off[i] = len(lab)
            r = cell_multitangent(cx, tri.carrier[s], p, ring).rank
            lab.extend((i, j) for j in range(r))
        labels.append(lab)
        offsets.append(off)
    d = []
    for q in range(len(tri.simplices) - 1):
        rows, cols = len(labels[q + 1]), len(labels[q])
        zero = 0 if ring.integral else Fraction(0)
        mat = [[zero] * cols for _ in range(rows)]
        idx_q = tri.index[q]
        for i, s in enumerate(tri.simplices[q + 1]):
            cs = tri.carrier[s]
            ri = offsets[q + 1][i]
            for k in range(len(s)):
                face = s[:k] + s[k + 1:]
                fi = idx_q[face]
                cf = tri.carrier[face]
                t = transition_matrix(cx, cs, cf, p, ring)
                ci = offsets[q][fi]
                sign = -1 if k % 2 else 1
                # chain boundary ∂(e_j ⊗ s) = Σ_k (-1)^k ι(e_j) ⊗ s_k; coboundary = transpose
                for a in range(len(t)):
                    for b in range(len(t[a])):
                        if t[a][b]:
                            mat[ri + b][ci + a] += sign * t[a][b]
        d.append(mat)
    cc = CochainComplex(tri, p, ring, labels, offsets, d)
    cc.check()
    return cc


# ---------------------------------------------------------------------------
# cohomology groups


@dataclass
class _KernelData:
    basis: list[list[int]]        # kernel basis vectors in C^q coordinates
    coord: list[list[int]]        # rows: linear map C^q -> kernel coordinates (valid on the kernel)


def _integer_kernel(d: list[list[int]], n: int) -> _KernelData:
    if not d or not any(x for row in d for x in row):
        ident = [[int(i == j) for j in range(n)] for i in range(n)]
        return _KernelData(ident, ident)
    snf = smith_normal_form(d, n)
    r = snf.rank
    right = snf.right
    inv = integer_inverse(right)
    basis = [[right[i][j] for i in range(n)] for j in range(r, n)]
    return _KernelData(basis, [inv[j] for j in range(r, n)])


@dataclass
class CohomologyGroup:
    """H^{p,q}(X, R) with explicit representative cocycles.

    ``representatives`` generate the free part and ``torsion_representatives``
    the cyclic summands of order ``torsion[i]`` (Z-type rings only).
    """

    p: int
    q: int
    ring: CoefficientSpec
    free_rank: int
    torsion: tuple[int, ...]
    representatives: list[list]
    torsion_representatives: list[list]
    basis_labels: list[tuple[tuple[int, ...], int]]
    _coord_map: object = field(default=None, repr=False)

    def coordinates(self, cocycle: Sequence) -> list:
        """Class coordinates of a cocycle: free coordinates, then torsion residues."""
        return self._coord_map(cocycle)

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def summary(self) -> str:
        s = str(self.free_rank)
        if self.torsion:
            s += " + " + " + ".join(f"Z/{t}" for t in self.torsion)
        return s


def _cohomology_integral(cc: CochainComplex, q: int) -> CohomologyGroup:
    n = cc.rank(q)
    ker = _integer_kernel(cc.differential(q), n)
    k = len(ker.basis)
    prev = cc.differential(q - 1) if q > 0 else []
    m = cc.rank(q - 1) if q > 0 else 0
    # image of the previous coboundary in kernel coordinates (k x m)
    img = [[sum(ker.coord[i][t] * prev[t][j] for t in range(n) if prev[t][j]) for j in range(m)]
           for i in range(k)] if m else [[] for _ in range(k)]
    snf = smith_normal_form(img, m) if k and m else None
    if snf is None:
        diag, left = (), [[int(i == j) for j in range(k)] for i in range(k)]
    else:
        diag, left = snf.diagonal, snf.left
    r = len(diag)
    left_inv = integer_inverse(left) if k else []
    gens_k = [[left_inv[i][j] for i in range(k)] for j in range(k)]   # columns of left^{-1}

    def to_cochain(c):
        return [sum(c[j] * ker.basis[j][t] for j in range(k) if c[j]) for t in range(n)]

    free_idx = list(range(r, k))
    tors_idx = []
    tors = []
    for i, dv in enumerate(diag):
        red = cc.ring.reduce_factor(dv)
        if red != 1:
            tors_idx.append(i)
            tors.append(red)

    def coords(z):
        kc = [sum(ker.coord[i][t] * z[t] for t in range(n) if z[t]) for i in range(k)]
        lc = [sum(left[i][j] * kc[j] for j in range(k) if kc[j]) for i in range(k)]
        return [lc[i] for i in free_idx] + [lc[i] % t for i, t in zip(tors_idx, tors)]

    labels = [(cc.model.simplices[q][s], j) for s, j in cc.labels[q]] if q < len(cc.labels) else []
    return CohomologyGroup(cc.p, q, cc.ring, len(free_idx), tuple(tors),
                           [to_cochain(gens_k[i]) for i in free_idx],
                           [to_cochain(gens_k[i]) for i in tors_idx], labels, coords)


def _cohomology_rational(cc: CochainComplex, q: int) -> CohomologyGroup:
    n = cc.rank(q)
    dq = cc.differential(q)
    ker = rational_kernel_basis(dq, n) if dq else [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    prev = cc.differential(q - 1) if q > 0 else []
    m = cc.rank(q - 1) if q > 0 else 0
    img_cols = [[Fraction(prev[t][j]) for t in range(n)] for j in range(m)]
    img = row_space_basis(img_cols, n) if img_cols else []
    reps = []
    span = [list(v) for v in img]
    for v in ker:
        if rational_rank(span + [v]) > len(span):
            span.append(list(v))
            reps.append(list(v))
    nr = len(reps)
    basis = reps + [list(v) for v in img]

    def coords(z):
        if not basis:
            return []
        # solve basis^T c = z
        aug = [[basis[j][t] for j in range(len(basis))] + [Fraction(z[t])] for t in range(n)]
        red, piv = rref(aug, len(basis) + 1)
        c = [Fraction(0)] * len(basis)
        for row, pc in zip(red, piv):
            if pc < len(basis):
                c[pc] = row[-1]
        return c[:nr]

    labels = [(cc.model.simplices[q][s], j) for s, j in cc.labels[q]] if q < len(cc.labels) else []
    return CohomologyGroup(cc.p, q, cc.ring, nr, (), reps, [], labels, coords)


def cohomology_of_complex(cc: CochainComplex, q: int) -> CohomologyGroup:
    if q < 0 or q >= len(cc.labels):
        return CohomologyGroup(cc.p, q, cc.ring, 0, (), [], [], [], lambda z: [])
    if cc.ring.is_field:
        return _cohomology_rational(cc, q)
    return _cohomology_integral(cc, q)


def cohomology(X, p: int, q: int, ring="Z", model: str | Triangulation = "stellar") -> CohomologyGroup:
    """H^{p,q}_trop(X, R)."""
    cc = build_cochain_complex(X, p, ring, model)
    return cohomology_of_complex(cc, q)


def all_bidegrees(X, ring="Z", model: str | Triangulation = "stellar") -> dict[tuple[int, int], CohomologyGroup]:
    tri = _model_of(X, model)
    n = tri.complex.dim
    out = {}
    for p in range(n + 1):
        cc = build_cochain_complex(tri, p, ring)
        for q in range(n + 1):
            out[(p, q)] = cohomology_of_complex(cc, q)
    return out


def hodge_grid(groups: dict[tuple[int, int], CohomologyGroup]) -> list[list[int]]:
    """Matrix of free ranks indexed [p][q]."""
    n = max(p for p, _ in groups)
    return [[groups[(p, q)].free_rank for q in range(n + 1)] for p in range(n + 1)]


# ---------------------------------------------------------------------------
# homomorphisms between finitely generated abelian groups


@dataclass
class HomReport:
    kernel: tuple[int, tuple[int, ...]]      # (free rank, torsion) of the kernel
    cokernel: tuple[int, tuple[int, ...]]

    @property
    def injective(self) -> bool:
        return self.kernel == (0, ())

    @property
    def surjective(self) -> bool:
        return self.cokernel == (0, ())

    @property
    def isomorphism(self) -> bool:
        return self.injective and self.surjective


def _orders(g: CohomologyGroup) -> list[int]:
    """Relation orders of the generators: 0 for free, t for Z/t."""
    return [0] * g.free_rank + list(g.torsion)


def hom_report(matrix: list[list], src: CohomologyGroup, dst: CohomologyGroup) -> HomReport:
    """Kernel and cokernel of the map given by ``matrix`` (columns = images of src generators)."""
    a = _orders(src)
    b = _orders(dst)
    na, nb = len(a), len(b)
    if src.ring.is_field:
        rk = rational_rank(matrix) if matrix and na else 0
        return HomReport((na - rk, ()), (nb - rk, ()))
    rel_b = [[(b[i] if i == j else 0) for j in range(nb)] for i in range(nb)]
    rel_b = [[row[j] for j in range(nb) if b[j]] for row in rel_b]
    big = [list(matrix[i]) + rel_b[i] for i in range(nb)]
    ncols = na + len(rel_b[0] if rel_b else [])
    # cokernel of Z^na ⊕ Z^(torsion) -> Z^nb
    if nb:
        inv = invariant_factors(big, ncols) if ncols else ()
        rank = len(inv)
        coker = (nb - rank, tuple(d for d in inv if d != 1))
    else:
        coker = (0, ())
    # kernel: {x : M x ∈ rel_b} modulo rel_a
    if not na:
        return HomReport((0, ()), coker)
    if nb:
        kb = integer_kernel_basis(big, ncols)
        kx = [v[:na] for v in kb]
    else:
        kx = [[int(i == j) for j in range(na)] for i in range(na)]
    if not kx or not any(any(v) for v in kx):
        return HomReport((0, ()), coker)
    # basis of the lattice Kx (not saturated in general): HNF of its generators
    kbasis = hermite_normal_form([list(v) for v in kx], na)
    rel_a = [[(a[i] if i == j else 0) for j in range(na)] for i in range(na) if a[i]]
    coords = [lattice_coordinates(kbasis, r) for r in rel_a]
    if any(c is None for c in coords):
        raise InvariantBreach("map on cohomology is not well defined on torsion")
    kk = len(kbasis)
    if coords:
        inv = invariant_factors(transpose(coords, len(coords)) if coords else [], len(coords))
    else:
        inv = ()
    kernel = (kk - len(inv), tuple(d for d in inv if d != 1))
    return HomReport(kernel, coker)


# ---------------------------------------------------------------------------
# pullbacks


def pullback_cochain_matrix(fmap, X: TropicalCycle, Y: TropicalCycle, p: int, q: int,
                            ring: CoefficientSpec, mx: Triangulation, my: Triangulation):
    """Matrix of f^*: C^{p,q}(Y) -> C^{p,q}(X) on barycentric models."""
    from .tropmaps import cellular_vertex_map
    ccx = build_cochain_complex(mx, p, ring)
    ccy = build_cochain_complex(my, p, ring)
    vmap = cellular_vertex_map(fmap, mx, my)
    zero = 0 if ring.integral else Fraction(0)
    rows, cols = ccx.rank(q), ccy.rank(q)
    mat = [[zero] * cols for _ in range(rows)]
    if q >= len(mx.simplices):
        return mat, ccx, ccy
    for i, s in enumerate(mx.simplices[q]):
        img = tuple(vmap[v] for v in s)
        if len(set(img)) < len(img):
            continue
        if list(img) != sorted(img):
            raise InvariantBreach("cellular map does not preserve the vertex order")
        j = my.index[q].get(img)
        if j is None:
            raise SupportMismatch(f"image of simplex {s} is not a simplex of the target")
        cx_cell = mx.carrier[s]
        cy_cell = my.carrier[img]
        fx = cell_multitangent(mx.complex, cx_cell, p, ring)
        fy = cell_multitangent(my.complex, cy_cell, p, ring)
        sx = mx.complex.cells[cx_cell].stratum
        lin = fmap.stratum_linear(sx)
        lam = exterior_power_matrix(lin, p, mx.complex.cells[cx_cell].ambient_dim) if p else [[1]]
        for a, b in enumerate(fx.basis):
            v = [sum(row[t] * b[t] for t in range(len(b)) if b[t]) for row in lam]
            if not fy.contains(v):
                raise SupportMismatch("map does not send multitangent spaces into multitangent spaces")
            c = fy.coordinates(v)
            for bb, val in enumerate(c):
                if val:
                    mat[ccx.offsets[q][i] + a][ccy.offsets[q][j] + bb] += int(val) if ring.integral else val
    return mat, ccx, ccy


@dataclass
class PullbackResult:
    source: CohomologyGroup      # group on the target cycle Y
    target: CohomologyGroup      # group on the source cycle X
    matrix: list[list]           # columns: images of source generators in target class coordinates
    report: HomReport


def pullback_on_cohomology(fmap, X: TropicalCycle, Y: TropicalCycle, p: int, q: int,
                           ring="Z") -> PullbackResult:
    """f^*: H^{p,q}(Y) -> H^{p,q}(X) for a map f: X -> Y of cycles."""
    ring = as_ring(ring)
    mx = _model_of(X, "barycentric")
    my = _model_of(Y, "barycentric")
    mat, ccx, ccy = pullback_cochain_matrix(fmap, X, Y, p, q, ring, mx, my)
    hy = cohomology_of_complex(ccy, q)
    hx = cohomology_of_complex(ccx, q)
    gens = hy.representatives + hy.torsion_representatives
    cols = []
    for g in gens:
        img = [sum(mat[r][c] * g[c] for c in range(len(g)) if g[c]) for r in range(len(mat))]
        cols.append(hx.coordinates(img))
    nrow = hx.free_rank + len(hx.torsion)
    matrix = [[cols[j][i] for j in range(len(cols))] for i in range(nrow)]
    return PullbackResult(hy, hx, matrix, hom_report(matrix, hy, hx))


# ---------------------------------------------------------------------------
# finite direct limits


@dataclass
class RefinementDiagram:
    """Chain X_0 <- X_1 <- ... ; ``arrows[i]`` maps objects[i+1] to objects[i]."""

    objects: list[TropicalCycle]
    arrows: list

    def __post_init__(self):
        if len(self.arrows) != len(self.objects) - 1:
            raise ValidationError("diagram shape", "need one arrow between consecutive objects")


@dataclass
class ColimitReport:
    colimit: CohomologyGroup
    groups: list[CohomologyGroup]
    arrows: list[PullbackResult]
    stabilized_at: int | None
    kernels_to_colimit: list[tuple[int, tuple[int, ...]]]

    @property
    def stabilized(self) -> bool:
        return self.stabilized_at is not None


def colimit_of_chain(diagram: RefinementDiagram, p: int, q: int, ring="Z") -> ColimitReport:
    """Colimit of H^{p,q}(X_0) -> H^{p,q}(X_1) -> ... along the pullbacks.

    For a finite chain the colimit is the last group; the report records which
    arrows are isomorphisms, the index from which all later arrows are, and the
    kernel of each composite into the last group.
    """
    ring = as_ring(ring)
    results = []
    for i, f in enumerate(diagram.arrows):
        results.append(pullback_on_cohomology(f, diagram.objects[i + 1], diagram.objects[i], p, q, ring))
    groups = [r.source for r in results] + ([results[-1].target] if results else
                                            [cohomology(diagram.objects[0], p, q, ring, "barycentric")])
    stab = None
    for k in range(len(results), -1, -1):
        if all(r.report.isomorphism for r in results[k:]):
            stab = k
        else:
            break
    kernels = []
    for i in range(len(groups)):
        comp = None
        for r in results[i:]:
            comp = r.matrix if comp is None else matmul(r.matrix, comp, bcols=len(comp[0]) if comp else 0)
        if comp is None:
            kernels.append((0, ()))
            continue
        last = groups[-1]
        comp = [[x % t for x in row] if t else row for row, t in zip(comp, _orders(last))]
        kernels.append(hom_report(comp, groups[i], last).kernel)
    return ColimitReport(groups[-1], groups, results, stab, kernels)
