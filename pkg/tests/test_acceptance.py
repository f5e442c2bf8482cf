"""Acceptance criteria, one line each.

Run under pytest or directly with ``python tests/test_acceptance.py``.
"""

import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import networkx as nx
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import random_disk, random_square_cycle, wave_loop_oracle  # noqa: E402

from tropcoh import catalog  # noqa: E402
from tropcoh.cohomology import all_bidegrees, build_cochain_complex, hodge_grid  # noqa: E402
from tropcoh.operators import (cap_fundamental_class, duality_pairing, fundamental_class,  # noqa: E402
                               run_identity_trials, smooth_curve_check, wave_matrix, wave_on_cohomology)
from tropcoh.exactlin import matvec  # noqa: E402
from tropcoh.polyhedral import GammaSpec, check_balancing  # noqa: E402


def _grid(X, ring):
    return hodge_grid(all_bidegrees(X, ring))


def criterion_1():
    want = {
        "P1": (catalog.trop_p1, [[1, 0], [0, 1]]),
        "P2": (catalog.trop_p2, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]),
        "P1xP1": (catalog.trop_p1xp1, [[1, 0, 0], [0, 2, 0], [0, 0, 1]]),
    }
    notes = []
    ok = True
    for name, (make, grid) in want.items():
        t = time.perf_counter()
        got = _grid(make(), "Q")
        dt = time.perf_counter() - t
        ok &= got == grid and dt < 10
        notes.append(f"{name} {got} {dt:.2f}s")
    return ok, "; ".join(notes), 30


def criterion_2():
    got = _grid(catalog.square_cycle(), "Q")
    return got == [[1, 1], [1, 1]], f"grid {got}", 1


def criterion_3():
    X = catalog.honeycomb_quartic()
    cx = X.complex
    g = nx.MultiGraph()
    for e in cx.cells_of_dim(1):
        g.add_edge(*[v for v in cx.faces_of[e] if cx.cells[v].dim == 0])
    betti = g.number_of_edges() - g.number_of_nodes() + nx.number_connected_components(g)
    groups = all_bidegrees(X, "Z")
    h10, h01 = groups[(1, 0)].free_rank, groups[(0, 1)].free_rank
    smooth = smooth_curve_check(X).smooth
    ok = betti == 3 and h10 == 3 and h01 == 3 and smooth
    return ok, f"graph b1 {betti}, H^1,0 {h10}, H^0,1 {h01}, smooth {smooth}", 30


def criterion_4():
    trials = run_identity_trials(100, 7)
    good = sum(1 for _, _, c in trials if c.holds)
    ps = {p for p, _, _ in trials}
    ns = {n for _, n, _ in trials}
    ok = good == 100 and ps == {1, 2, 3} and ns == {2, 3, 4}
    return ok, f"{good}/100 exact, p in {sorted(ps)}, n in {sorted(ns)}", None


def criterion_5():
    notes = []
    ok = True
    for label, X in (("Γ=Z", catalog.square_cycle(1)),
                     ("Γ=3Z+Z", catalog.square_cycle(3, GammaSpec((1, 3))))):
        cochain, _, _ = wave_matrix(X, 1, 0, "Z")
        coh, _, dst = wave_on_cohomology(X, 1, 0, "Z")
        entries = [Fraction(x) for row in cochain for x in row] + [Fraction(x) for row in coh for x in row]
        integral = all(x.denominator == 1 for x in entries)
        ok &= integral and str(dst.ring) == "Z"
        notes.append(f"{label}: {len(entries)} entries integral={integral}")
    return ok, "; ".join(notes), None


def criterion_6():
    notes = []
    ok = True
    for side, length in ((1, 4), (3, 12)):
        X = catalog.square_cycle(side)
        matrix, _, _ = wave_on_cohomology(X, 1, 0, "Z")
        lhs, period = wave_loop_oracle(X)
        ok &= abs(period) == 1 and matrix == [[length]] and lhs / period == length
        notes.append(f"ℓ={length}: W = {matrix[0][0]}, oracle {lhs / period}")
    return ok, "; ".join(notes), None


def criterion_7():
    makers = [catalog.point, catalog.segment, catalog.trop_p1, catalog.trop_p2, catalog.trop_p1xp1,
              catalog.tropical_line, catalog.bare_square, catalog.square_cycle, catalog.honeycomb_quartic]
    ok = True
    for make in makers:
        X = make()
        z = all_bidegrees(X, "Z")
        q = all_bidegrees(X, "Q")
        ok &= all(z[k].free_rank == q[k].free_rank and not q[k].torsion for k in z)
    return ok, f"{len(makers)} examples, every bidegree", None


def criterion_8():
    notes = []
    ok = True
    for name, make in (("square", catalog.square_cycle), ("P1", catalog.trop_p1), ("P2", catalog.trop_p2),
                       ("quartic", catalog.honeycomb_quartic)):
        X = make()
        n = X.dim
        dets = []
        for p in range(n + 1):
            for q in range(n + 1):
                res = duality_pairing(X, p, q, "Z")
                if res.left.free_rank or res.right.free_rank:
                    ok &= res.nondegenerate
                    dets.append(res.determinant)
        notes.append(f"{name} dets {sorted(set(int(d) for d in dets))}")
    return ok, "; ".join(notes), None


def criterion_9():
    ok = True
    fixtures = [catalog.trop_p1(), catalog.trop_p2(), catalog.trop_p1xp1(), catalog.square_cycle(),
                catalog.tropical_line(), catalog.honeycomb_quartic(), catalog.bare_square()]
    for X in fixtures:
        for p in range(X.dim + 1):
            build_cochain_complex(X, p, "Z").check()
    invariant = 0
    for seed in range(25):
        D = random_disk(random.Random(seed), 1 + seed % 4)
        S = random_square_cycle(random.Random(100 + seed))
        for X, grid in ((D, [[1, 0, 0], [2, 0, 0], [1, 0, 0]]), (S, [[1, 1], [1, 1]])):
            groups = all_bidegrees(X, "Z")
            if hodge_grid(groups) == grid and not any(g.torsion for g in groups.values()):
                invariant += 1
    ok &= invariant == 50
    verdicts = [check_balancing(X).balanced for X in (catalog.tropical_line(), catalog.square_cycle(),
                                                      catalog.honeycomb_quartic())]
    ok &= all(verdicts) and not check_balancing(catalog.bare_square()).balanced
    rng = random.Random(9)
    vanish = 0
    cycles = [catalog.square_cycle(), catalog.trop_p2(), catalog.honeycomb_quartic(), catalog.tropical_line()]
    for k in range(100):
        X = cycles[k % len(cycles)]
        ev = fundamental_class(X, "Q")
        d = ev.complex.differential(X.dim - 1)
        eta = [rng.randint(-5, 5) for _ in range(ev.complex.rank(X.dim - 1))]
        vanish += cap_fundamental_class(matvec(d, eta), ev) == 0
    ok &= vanish == 100
    return ok, f"∂²=0 on fixtures, {invariant}/50 subdivisions invariant, balancing {verdicts}, " \
               f"cap {vanish}/100", 300


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8, criterion_9]


def _run(i):
    t = time.perf_counter()
    ok, detail, limit = CRITERIA[i - 1]()
    dt = time.perf_counter() - t
    if limit is not None and dt >= limit:
        ok = False
        detail += f" (over the {limit}s limit)"
    line = f"criterion {i}: {'PASS' if ok else 'FAIL'} [{dt:.2f}s] {detail}"
    return ok, line


@pytest.mark.parametrize("i", range(1, len(CRITERIA) + 1))
def test_criterion(i, capsys):
    ok, line = _run(i)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [_run(i) for i in range(1, len(CRITERIA) + 1)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
