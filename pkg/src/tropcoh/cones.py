"""Exact conversion between cone representations (double description).

A cone is either generated, ``cone(rays) + span(lineality)``, or cut out,
``{x : A x >= 0, E x = 0}``.  Both directions go through one routine,
:func:`cone_generators`, applied to the dual when converting generators to
inequalities.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exactlin import as_int_vector, rational_kernel_basis, rational_rank, rref

Vec = tuple[int, ...]


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b) if x and y)


def cone_generators(ineqs: Sequence[Sequence], eqs: Sequence[Sequence], n: int
                    ) -> tuple[list[Vec], list[Vec]]:
    """Generators of {x in Q^n : ineqs·x >= 0, eqs·x = 0}.

    Returns ``(lineality_basis, extreme_rays)`` as primitive integer vectors.
    """
    ineqs = [as_int_vector(a) for a in ineqs]
    ineqs = [a for a in ineqs if any(a)]
    eqs = [as_int_vector(e) for e in eqs]
    eqs = [e for e in eqs if any(e)]

    lin = rational_kernel_basis(ineqs + eqs, n)
    lineality = [as_int_vector(v) for v in lin]

    # pointed part lives in {eqs = 0} ∩ lineality^⊥
    sub = rational_kernel_basis(eqs + lineality, n)
    k = len(sub)
    if k == 0:
        return lineality, []
    u = [as_int_vector(v) for v in sub]           # k basis vectors of the subspace
    rows = [as_int_vector([_dot(a, col) for col in u]) for a in ineqs]
    rows = [r for r in rows if any(r)]
    ys = _dd_pointed(rows, k)
    rays = []
    for y in ys:
        x = [sum(y[j] * u[j][i] for j in range(k)) for i in range(n)]
        rays.append(as_int_vector(x))
    rays = sorted(set(rays))
    return lineality, rays


def _dd_pointed(rows: list[Vec], k: int) -> list[Vec]:
    """Extreme rays of {y : rows·y >= 0} in Q^k, assuming it is pointed."""
    # pick k linearly independent rows to start from a simplicial cone
    chosen: list[int] = []
    for i, r in enumerate(rows):
        if rational_rank([rows[j] for j in chosen] + [r]) > len(chosen):
            chosen.append(i)
            if len(chosen) == k:
                break
    if len(chosen) < k:
        raise ValueError("cone is not pointed")
    a = [[Fraction(x) for x in rows[i]] for i in chosen]
    aug = [row + [Fraction(int(i == j)) for j in range(k)] for i, row in enumerate(a)]
    red, _ = rref(aug, 2 * k)
    inv = [row[k:] for row in red]                  # inv = a^{-1}
    rays = [as_int_vector([inv[i][j] for i in range(k)]) for j in range(k)]

    processed = list(chosen)

    def zero_set(r):
        return frozenset(i for i in processed if _dot(rows[i], r) == 0)

    zs = {r: zero_set(r) for r in rays}
    for idx, row in enumerate(rows):
        if idx in chosen:
            continue
        pos, neg, zero = [], [], []
        for r in rays:
            v = _dot(row, r)
            (pos if v > 0 else neg if v < 0 else zero).append((r, v))
        new = [r for r, _ in pos] + [r for r, _ in zero]
        for p, vp in pos:
            for q, vq in neg:
                common = zs[p] & zs[q]
                if len(common) < k - 2:
                    continue
                if any(common <= zs[r] for r in rays if r != p and r != q):
                    continue
                comb = as_int_vector([vp * b - vq * a for a, b in zip(p, q)])
                if any(comb):
                    new.append(comb)
        processed.append(idx)
        rays = sorted(set(new))
        zs = {r: zero_set(r) for r in rays}
    return rays


def cone_facets(rays: Sequence[Sequence], lineality: Sequence[Sequence], n: int
                ) -> tuple[list[Vec], list[Vec]]:
    """H-representation of cone(rays) + span(lineality).

    Returns ``(equalities, facet_normals)``: the cone is the set of x with
    ``e·x = 0`` for every equality and ``f·x >= 0`` for every facet normal.
    The facet list is irredundant.
    """
    dual_lin, dual_rays = cone_generators(list(rays), list(lineality), n)
    return dual_lin, dual_rays


def cone_dimension(rays: Sequence[Sequence], lineality: Sequence[Sequence] = ()) -> int:
    vecs = [list(r) for r in rays] + [list(l) for l in lineality]
    return rational_rank(vecs) if vecs else 0


def in_cone(x: Sequence, eqs: Sequence[Vec], facets: Sequence[Vec], strict: bool = False) -> bool:
    if any(_dot(e, x) != 0 for e in eqs):
        return False
    if strict:
        return all(_dot(f, x) > 0 for f in facets)
    return all(_dot(f, x) >= 0 for f in facets)


def intersect_cones(h1: tuple[list, list], h2: tuple[list, list], n: int) -> tuple[list[Vec], list[Vec]]:
    """Generators of the intersection of two cones given by H-representations."""
    e1, f1 = h1
    e2, f2 = h2
    return cone_generators(list(f1) + list(f2), list(e1) + list(e2), n)


def relint_meets(gens_k: Sequence[Sequence], facets: Sequence[Vec], eqs: Sequence[Vec],
                 n: int) -> bool:
    """Whether cone(gens_k) meets the relative interior of the cone {eqs, facets}.

    ``gens_k`` must generate a subcone of it; the sum of its generators lies in
    the relative interior of the smallest face containing it, which is the
    whole cone exactly when some point of the subcone is relatively interior.
    """
    s = [sum(g[i] for g in gens_k) for i in range(n)] if gens_k else [0] * n
    return in_cone(s, eqs, facets, strict=True)
