"""Exact integer and rational linear algebra, plus a small exterior algebra.

Matrices are plain lists of row lists holding ``int`` or ``Fraction`` entries.
Nothing in here ever touches a float.  Functions that may receive an empty
matrix take an explicit ``ncols`` so that kernels of 0 x n maps come out right.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

Number = int | Fraction
IntMatrix = list[list[int]]


# ---------------------------------------------------------------------------
# basic matrix helpers


def identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> list[list[int]]:
    return [[0] * cols for _ in range(rows)]


def transpose(m: Sequence[Sequence[Number]], ncols: int | None = None) -> list[list]:
    if not m:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence[Number]], b: Sequence[Sequence[Number]],
           inner: int | None = None, bcols: int | None = None) -> list[list]:
    """Product ``a @ b``. ``bcols`` is needed when ``b`` has no rows."""
    if bcols is None:
        bcols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * bcols
        for k, x in enumerate(row):
            if x:
                brow = b[k]
                for j in range(bcols):
                    if brow[j]:
                        acc[j] += x * brow[j]
        out.append(acc)
    return out


def matvec(m: Sequence[Sequence[Number]], v: Sequence[Number]) -> list:
    return [sum(x * y for x, y in zip(row, v) if x and y) for row in m]


def det(m: Sequence[Sequence[Number]]) -> Number:
    """Exact determinant by fraction-free Gaussian elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [[Fraction(x) for x in row] for row in m]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        p = a[c][c]
        result *= p
        for r in range(c + 1, n):
            if a[r][c]:
                f = a[r][c] / p
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    out = sign * result
    return int(out) if out.denominator == 1 else out


def as_int_vector(v: Iterable[Number]) -> tuple[int, ...]:
    """Clear denominators and divide by content. Zero maps to zero."""
    v = [Fraction(x) for x in v]
    den = lcm(*(x.denominator for x in v)) if v else 1
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    """``left @ original @ right`` equals ``diag(diagonal)`` padded with zeros."""

    diagonal: tuple[int, ...]
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]
    shape: tuple[int, int]

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    def padded(self) -> IntMatrix:
        rows, cols = self.shape
        d = zeros(rows, cols)
        for i, x in enumerate(self.diagonal):
            d[i][i] = x
        return d


def smith_normal_form(m: Sequence[Sequence[int]], ncols: int | None = None) -> SmithDecomposition:
    """Smith normal form by gcd pivoting, smallest-magnitude pivot first."""
    rows = len(m)
    cols = len(m[0]) if rows else (ncols or 0)
    a = [list(map(int, r)) for r in m]
    left = identity(rows)
    right = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in right:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, f):
        # row_dst += f * row_src
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        left[dst] = [x + f * y for x, y in zip(left[dst], left[src])]

    def add_col(dst, src, f):
        for r in a:
            r[dst] += f * r[src]
        for r in right:
            r[dst] += f * r[src]

    diag = []
    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = a[i][j]
                if x and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            changed = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            p = a[t][t]
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]
        diag.append(a[t][t])
        t += 1
    return SmithDecomposition(
        diagonal=tuple(diag),
        left=tuple(map(tuple, left)),
        right=tuple(map(tuple, right)),
        shape=(rows, cols),
    )


def invariant_factors(m: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[int, ...]:
    return smith_normal_form(m, ncols).diagonal


# ---------------------------------------------------------------------------
# rational elimination


def rref(m: Sequence[Sequence[Number]], ncols: int | None = None):
    """Reduced row echelon form over Q. Returns (nonzero rows, pivot columns)."""
    cols = len(m[0]) if m else (ncols or 0)
    a = [[Fraction(x) for x in row] for row in m]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rational_rank(m: Sequence[Sequence[Number]]) -> int:
    return len(rref(m)[1])


def rational_kernel_basis(m: Sequence[Sequence[Number]], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {v : m v = 0} over Q, one vector per free column."""
    cols = len(m[0]) if m else (ncols or 0)
    red, pivots = rref(m, cols)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def row_space_basis(vectors: Sequence[Sequence[Number]], ncols: int) -> list[list[Fraction]]:
    return rref(vectors, ncols)[0]


def solve_rational(basis: Sequence[Sequence[Number]], v: Sequence[Number]) -> list[Fraction] | None:
    """Coefficients c with sum c_i basis_i = v, or None if v is outside the span.

    ``basis`` must be linearly independent.
    """
    k = len(basis)
    n = len(v)
    # augmented system: columns are basis vectors
    aug = [[Fraction(basis[i][j]) for i in range(k)] + [Fraction(v[j])] for j in range(n)]
    red, pivots = rref(aug, k + 1)
    if k in pivots:
        return None
    c = [Fraction(0)] * k
    for row, pc in zip(red, pivots):
        c[pc] = row[k]
    return c


# ---------------------------------------------------------------------------
# lattices


def hermite_normal_form(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Output rows are a basis; pivots positive, entries above pivots reduced into
    [0, pivot).  Two bases span the same lattice iff their forms coincide.
    """
    a = [list(map(int, r)) for r in rows if any(r)]
    out = []
    r = 0
    for c in range(ncols):
        # gcd-reduce column c among rows r..end
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[i0] = a[i0], a[r]
            done = True
            for i in range(r + 1, len(a)):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if r < len(a) and a[r][c]:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
            r += 1
        a = a[:r] + [row for row in a[r:] if any(row)]
    out = a[:r]
    return out


@dataclass(frozen=True)
class SubLattice:
    """Sublattice of Z^n given by linearly independent integer row vectors."""

    ambient_rank: int
    basis: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.basis and rational_rank(self.basis) != len(self.basis):
            raise ValueError("sublattice basis vectors must be linearly independent")

    @property
    def rank(self) -> int:
        return len(self.basis)

    def canonical(self) -> "SubLattice":
        return SubLattice(self.ambient_rank,
                          tuple(map(tuple, hermite_normal_form(self.basis, self.ambient_rank))))

    def contains(self, v: Sequence[Number]) -> bool:
        return lattice_coordinates(self.basis, v) is not None

    def is_saturated(self) -> bool:
        if not self.basis:
            return True
        return all(d == 1 for d in smith_normal_form(self.basis).diagonal)


def saturate(lat: SubLattice) -> SubLattice:
    """Smallest saturated sublattice with the same rational span."""
    return saturated_span(lat.basis, lat.ambient_rank)


def saturated_span(vectors: Iterable[Sequence[Number]], n: int) -> SubLattice:
    """span_Q(vectors) ∩ Z^n, as a canonical (Hermite) basis."""
    vecs = [as_int_vector(v) for v in vectors]
    vecs = [v for v in vecs if any(v)]
    if not vecs:
        return SubLattice(n)
    # the Q-span is the orthogonal complement of the kernel of the
    # complement; cheapest exact route: integer kernel of the kernel
    perp = integer_kernel_basis(vecs, n)
    if not perp:
        return SubLattice(n, tuple(map(tuple, identity(n))))
    sat = integer_kernel_basis(perp, n)
    return SubLattice(n, tuple(map(tuple, hermite_normal_form(sat, n))))


def integer_kernel_basis(m: Sequence[Sequence[int]], ncols: int | None = None) -> list[list[int]]:
    """Z-basis of {v in Z^n : m v = 0}."""
    cols = len(m[0]) if m else (ncols or 0)
    if not m:
        return identity(cols)
    snf = smith_normal_form(m, cols)
    r = snf.rank
    right = snf.right
    return [[right[i][j] for i in range(cols)] for j in range(r, cols)]


def lattice_coordinates(basis: Sequence[Sequence[int]], v: Sequence[Number]) -> list[int] | None:
    """Integer coordinates of v in a lattice basis, or None if v is not in it."""
    if not basis:
        return [] if not any(v) else None
    c = solve_rational(basis, v)
    if c is None or any(x.denominator != 1 for x in c):
        return None
    return [int(x) for x in c]


def extend_to_unimodular(rows: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    """Complete a basis of a saturated sublattice to a basis of Z^n.

    Returns ``n - len(rows)`` extra rows; stacking ``rows`` on top gives a
    unimodular matrix.
    """
    if not rows:
        return identity(n)
    snf = smith_normal_form(transpose(rows), len(rows))
    if any(d != 1 for d in snf.diagonal):
        raise ValueError("rows do not span a saturated sublattice")
    # left @ rows^T @ right = [I; 0]  =>  rows^T = left^{-1} [I;0] right^{-1}
    # so the last n-k columns of left^{-1} complete the columns of rows^T
    inv = integer_inverse(snf.left)
    k = len(rows)
    return [[inv[i][j] for i in range(n)] for j in range(k, n)]


def integer_inverse(m: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    red, piv = rref(aug, 2 * n)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    inv = [row[n:] for row in red]
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


# ---------------------------------------------------------------------------
# exterior algebra


@lru_cache(maxsize=None)
def subsets(n: int, p: int) -> tuple[tuple[int, ...], ...]:
    """Sorted p-subsets of range(n) in lexicographic order (the Λ^p basis)."""
    if p < 0 or p > n:
        return ()
    return tuple(combinations(range(n), p))


@lru_cache(maxsize=None)
def subset_index(n: int, p: int) -> Mapping[tuple[int, ...], int]:
    return {s: i for i, s in enumerate(subsets(n, p))}


def sort_with_sign(idx: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the sorting permutation, 0 if an index repeats."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    # insertion sort counting transpositions
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(idx)


@dataclass(frozen=True)
class Multivector:
    """Element of Λ^p Q^n with coordinates on sorted index sets.

    Index sets are 0-based.  Construction accepts unsorted keys and folds the
    permutation sign in once; repeated indices vanish.
    """

    ambient_rank: int
    degree: int
    coords: tuple[tuple[tuple[int, ...], Fraction], ...] = field(default=())

    def __init__(self, ambient_rank: int, degree: int,
                 coords: Mapping[Sequence[int], Number] | Iterable = ()):
        items = coords.items() if isinstance(coords, Mapping) else coords
        acc: dict[tuple[int, ...], Fraction] = {}
        for key, c in items:
            key = tuple(key)
            if len(key) != degree:
                raise ValueError(f"index set {key} has wrong size for degree {degree}")
            if any(not 0 <= k < ambient_rank for k in key):
                raise ValueError(f"index set {key} outside ambient rank {ambient_rank}")
            s, skey = sort_with_sign(key)
            if s == 0 or c == 0:
                continue
            acc[skey] = acc.get(skey, Fraction(0)) + s * Fraction(c)
        object.__setattr__(self, "ambient_rank", ambient_rank)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coords",
                           tuple(sorted((k, v) for k, v in acc.items() if v != 0)))

    @classmethod
    def basis_vector(cls, n: int, *indices: int) -> "Multivector":
        return cls(n, len(indices), {tuple(indices): 1})

    @classmethod
    def from_vector(cls, v: Sequence[Number]) -> "Multivector":
        return cls(len(v), 1, {(i,): x for i, x in enumerate(v)})

    @classmethod
    def scalar(cls, n: int, c: Number = 1) -> "Multivector":
        return cls(n, 0, {(): c})

    @classmethod
    def from_coordinates(cls, n: int, p: int, vec: Sequence[Number]) -> "Multivector":
        return cls(n, p, dict(zip(subsets(n, p), vec)))

    def as_dict(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self.coords)

    def to_coordinates(self) -> list[Fraction]:
        d = self.as_dict()
        return [d.get(s, Fraction(0)) for s in subsets(self.ambient_rank, self.degree)]

    def is_zero(self) -> bool:
        return not self.coords

    def __add__(self, other: "Multivector") -> "Multivector":
        self._check(other)
        return Multivector(self.ambient_rank, self.degree, list(self.coords) + list(other.coords))

    def __neg__(self) -> "Multivector":
        return Multivector(self.ambient_rank, self.degree, [(k, -v) for k, v in self.coords])

    def __sub__(self, other: "Multivector") -> "Multivector":
        return self + (-other)

    def __rmul__(self, c: Number) -> "Multivector":
        return Multivector(self.ambient_rank, self.degree, [(k, c * v) for k, v in self.coords])

    def __xor__(self, other: "Multivector") -> "Multivector":
        return wedge(self, other)

    def _check(self, other):
        if other.ambient_rank != self.ambient_rank or other.degree != self.degree:
            raise ValueError("multivectors live in different spaces")

    def __repr__(self) -> str:
        if not self.coords:
            return f"Multivector(0; n={self.ambient_rank}, p={self.degree})"
        terms = []
        for k, v in self.coords:
            name = "∧".join(f"e{i + 1}" for i in k) or "1"
            terms.append(f"{v}*{name}")
        return " + ".join(terms)


def wedge(a: Multivector, b: Multivector) -> Multivector:
    if a.ambient_rank != b.ambient_rank:
        raise ValueError("wedge of multivectors over different ambient ranks")
    n = a.ambient_rank
    p = a.degree + b.degree
    if p > n:
        return _zero_overflow(n, p)
    terms = []
    for ka, va in a.coords:
        for kb, vb in b.coords:
            terms.append((ka + kb, va * vb))
    return Multivector(n, p, terms)


def _zero_overflow(n: int, p: int) -> Multivector:
    mv = object.__new__(Multivector)
    object.__setattr__(mv, "ambient_rank", n)
    object.__setattr__(mv, "degree", p)
    object.__setattr__(mv, "coords", ())
    return mv


def wedge_vectors(vectors: Sequence[Sequence[Number]], n: int | None = None) -> Multivector:
    """v_1 ∧ ... ∧ v_k as a multivector (the scalar 1 for k = 0)."""
    if n is None:
        n = len(vectors[0])
    out = Multivector.scalar(n)
    for v in vectors:
        out = wedge(out, Multivector.from_vector(v))
    return out


def exterior_power_of_subspace(gens: Sequence[Sequence[Number]], p: int, ring: str = "Q",
                               n: int | None = None, saturated: bool = True) -> list[Multivector]:
    """Basis of Λ^p span(gens).

    Over Q the basis consists of wedges of an echelon basis of the span.  Over Z
    it is the wedges of a basis of span ∩ Z^n, which generates the saturated
    integral structure; with ``saturated=False`` the generators are wedged as
    given (only meaningful for independent generators).
    """
    if n is None:
        n = len(gens[0]) if gens else 0
    if p < 0:
        return []
    if ring == "Q":
        basis = row_space_basis(gens, n)
    elif saturated:
        basis = [list(v) for v in saturated_span(gens, n).basis]
    else:
        basis = [list(map(Fraction, g)) for g in gens]
        if rational_rank(basis) != len(basis):
            raise ValueError("unsaturated exterior power needs independent generators")
    if p > len(basis):
        return []
    return [wedge_vectors([basis[i] for i in idx], n) for idx in combinations(range(len(basis)), p)]


def exterior_power_matrix(m: Sequence[Sequence[Number]], p: int, ncols: int | None = None) -> list[list]:
    """Matrix of Λ^p of the linear map m (rows x cols) in the subset bases."""
    rows = len(m)
    cols = len(m[0]) if m else (ncols or 0)
    rs = subsets(rows, p)
    cs = subsets(cols, p)
    out = []
    for r in rs:
        out.append([det([[m[i][j] for j in c] for i in r]) for c in cs])
    return out


def pairing(alpha: Mapping[tuple[int, ...], Number], v: Multivector) -> Fraction:
    """⟨dx_I, e_J⟩ = δ_IJ extended bilinearly."""
    return sum((Fraction(alpha.get(k, 0)) * c for k, c in v.coords), Fraction(0))
