"""Command line front end.

Points of tropical toric varieties use the valuation convention: the stratum
N(σ) lies at infinity in the directions of σ, so (x, y) ↦ (x + t, y) with
t → +∞ approaches the boundary stratum of the ray e1.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from fractions import Fraction

from . import __version__
from .cohomology import (CohomologyGroup, as_ring, all_bidegrees, cohomology, colimit_of_chain,
                         pullback_on_cohomology)
from .errors import ParseError, TropError, ValidationError
from .io import dumps, load_cycle, load_diagram, rational_from_json, rational_to_json
from .operators import duality_pairing, run_identity_trials, smooth_curve_check, wave_on_cohomology
from .polyhedral import GammaSpec, check_balancing

MODELS = ("stellar", "barycentric")


def _bidegrees(sel: str, n: int) -> list[tuple[int, int]]:
    if sel == "all":
        return [(p, q) for p in range(n + 1) for q in range(n + 1)]
    try:
        p, q = (int(x) for x in sel.split(","))
    except ValueError:
        raise ParseError(f"--bidegree: expected 'p,q' or 'all', got {sel!r}") from None
    if not (0 <= p <= n and 0 <= q <= n):
        raise ValidationError("bidegree in range", f"({p},{q}) for dimension {n}")
    return [(p, q)]


def _gamma(text: str) -> GammaSpec:
    gens = [rational_from_json(g.strip(), "--gamma") for g in text.split(",") if g.strip()]
    if not gens:
        raise ParseError("--gamma: empty generator list")
    return GammaSpec(tuple(gens) + (Fraction(1),))


def _load(args):
    X = load_cycle(args.input)
    if args.gamma:
        X = dataclasses.replace(X, gamma=_gamma(args.gamma))
    return X


def _group_json(g: CohomologyGroup) -> dict:
    return {"p": g.p, "q": g.q, "ring": str(g.ring), "rank": g.free_rank, "torsion": list(g.torsion)}


def _matrix_json(m) -> list:
    return [[rational_to_json(x) for x in row] for row in m]


def _grid_table(n: int, groups: dict) -> str:
    cells = [[groups[(p, q)].summary() if (p, q) in groups else "." for q in range(n + 1)]
             for p in range(n + 1)]
    width = max(len(c) for row in cells for c in row)
    head = "p\\q " + " ".join(f"{q:>{width}}" for q in range(n + 1))
    lines = [head] + [f"{p:>3} " + " ".join(f"{c:>{width}}" for c in row) for p, row in enumerate(cells)]
    return "\n".join(lines)


def _fmt_matrix(m) -> str:
    if not m:
        return "  (empty)"
    return "\n".join("  [" + ", ".join(str(x) for x in row) + "]" for row in m)


# ---------------------------------------------------------------------------
# commands


def cmd_cohomology(args):
    X = _load(args)
    n = X.dim
    ring = as_ring(args.ring)
    if args.bidegree == "all":
        groups = all_bidegrees(X, ring, args.model)
    else:
        groups = {pq: cohomology(X, *pq, ring, args.model) for pq in _bidegrees(args.bidegree, n)}
    report = {"command": "cohomology", "ring": str(ring), "dimension": n, "model": args.model,
              "groups": [_group_json(groups[k]) for k in sorted(groups)]}
    if args.bidegree == "all":
        report["grid"] = [[groups[(p, q)].free_rank for q in range(n + 1)] for p in range(n + 1)]
    text = f"H^{{p,q}} over {ring}, dimension {n}\n" + _grid_table(n, groups)
    return report, text


def cmd_wave(args):
    X = _load(args)
    n = X.dim
    sel = _bidegrees(args.bidegree, n) if args.bidegree != "all" else \
        [(p, q) for p in range(1, n + 1) for q in range(n)]
    out, lines = [], []
    for p, q in sel:
        if p == 0 or q == n:
            raise ValidationError("wave bidegree", f"W needs p >= 1 and q < {n}, got ({p},{q})")
        mat, hs, hd = wave_on_cohomology(X, p, q, args.ring, args.model)
        integral = all(Fraction(x).denominator == 1 for row in mat for x in row)
        out.append({"p": p, "q": q, "source": _group_json(hs), "target": _group_json(hd),
                    "matrix": _matrix_json(mat), "integral": integral})
        lines.append(f"W: H^{{{p},{q}}} -> H^{{{p - 1},{q + 1}}}  ({'integral' if integral else 'non-integral'})")
        lines.append(_fmt_matrix(mat))
    report = {"command": "wave", "ring": str(as_ring(args.ring)), "gamma": str(X.gamma),
              "edgeVector": "v ∧ (x1 - x0), x_i vertex positions lifted to N_R", "maps": out}
    return report, "\n".join(lines)


def cmd_pair(args):
    X = _load(args)
    n = X.dim
    out, lines = [], []
    for p, q in _bidegrees(args.bidegree, n):
        res = duality_pairing(X, p, q, args.ring, args.model)
        out.append({"p": p, "q": q, "matrix": _matrix_json(res.matrix),
                    "determinant": rational_to_json(res.determinant), "nondegenerate": res.nondegenerate})
        lines.append(f"H^{{{p},{q}}} x H^{{{n - p},{n - q}}}: det {res.determinant}"
                     f" ({'nondegenerate' if res.nondegenerate else 'degenerate'})")
    return {"command": "pair", "ring": str(as_ring(args.ring)), "pairings": out}, "\n".join(lines)


def cmd_check(args):
    X = _load(args)
    report, lines = {"command": "check"}, []
    do_bal = args.balancing or not args.smooth
    if do_bal:
        b = check_balancing(X)
        report["balancing"] = {"balanced": b.balanced, "certificates": b.certificates}
        lines.append("balanced" if b.balanced else "not balanced")
    if args.smooth:
        s = smooth_curve_check(X)
        report["smooth"] = {"smooth": s.smooth, "certificates": s.certificates}
        lines.append("smooth" if s.smooth else "not smooth")
    return report, "\n".join(lines)


def cmd_pullback(args):
    D = load_diagram(args.input)
    if len(D.arrows) != 1:
        raise ValidationError("diagram shape", "pullback takes a diagram with exactly one arrow")
    X, Y = D.objects[1], D.objects[0]
    out, lines = [], []
    for p, q in _bidegrees(args.bidegree, min(X.dim, Y.dim)):
        r = pullback_on_cohomology(D.arrows[0], X, Y, p, q, args.ring)
        out.append({"p": p, "q": q, "source": _group_json(r.source), "target": _group_json(r.target),
                    "matrix": _matrix_json(r.matrix), "kernel": list(r.report.kernel),
                    "cokernel": list(r.report.cokernel), "isomorphism": r.report.isomorphism})
        lines.append(f"f^*: H^{{{p},{q}}}(Y) = {r.source.summary()} -> H^{{{p},{q}}}(X) = {r.target.summary()}"
                     f"{'  isomorphism' if r.report.isomorphism else ''}")
        lines.append(_fmt_matrix(r.matrix))
    return {"command": "pullback", "ring": str(as_ring(args.ring)), "maps": out}, "\n".join(lines)


def cmd_colimit(args):
    D = load_diagram(args.input)
    n = min(X.dim for X in D.objects)
    out, lines = [], []
    for p, q in _bidegrees(args.bidegree, n):
        r = colimit_of_chain(D, p, q, args.ring)
        out.append({"p": p, "q": q, "colimit": _group_json(r.colimit),
                    "groups": [_group_json(g) for g in r.groups],
                    "arrowIsomorphisms": [a.report.isomorphism for a in r.arrows],
                    "stabilizedAt": r.stabilized_at,
                    "kernelsToColimit": [[k[0], list(k[1])] for k in r.kernels_to_colimit]})
        lines.append(f"({p},{q}): colimit {r.colimit.summary()}, stabilized at {r.stabilized_at}")
    return {"command": "colimit", "ring": str(as_ring(args.ring)), "results": out}, "\n".join(lines)


def cmd_identity(args):
    trials = run_identity_trials(args.trials, args.seed)
    ok = sum(1 for _, _, c in trials if c.holds)
    rows = [{"p": p, "n": n, "lhs": rational_to_json(c.lhs), "rhs": rational_to_json(c.rhs), "holds": c.holds}
            for p, n, c in trials]
    report = {"command": "identity-check", "seed": args.seed, "trials": len(trials), "exact": ok,
              "transcript": rows}
    return report, f"{ok}/{len(trials)} exact"


COMMANDS = {
    "cohomology": cmd_cohomology,
    "wave": cmd_wave,
    "pair": cmd_pair,
    "check": cmd_check,
    "pullback": cmd_pullback,
    "colimit": cmd_colimit,
    "identity-check": cmd_identity,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tropcoh", description="Exact tropical cohomology of tropical cycles.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", default="Z", help="Z, Q or Z[1/m,...] (default Z)")
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--out", help="write the report here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "identity-check":
            sp.add_argument("--trials", type=int, default=100)
            sp.add_argument("--seed", type=int, default=7)
            continue
        sp.add_argument("--input", required=True, help="JSON file or catalog:NAME")
        sp.add_argument("--bidegree", default="all", help="p,q or all")
        if name in ("pullback", "colimit"):
            continue
        sp.add_argument("--gamma", help="extra value group generators g1,g2,...")
        sp.add_argument("--model", choices=MODELS, default="stellar")
        if name == "check":
            sp.add_argument("--balancing", action="store_true")
            sp.add_argument("--smooth", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, text = COMMANDS[args.command](args)
    except TropError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return e.code
    except Exception as e:  # anything else is a bug
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return 4
    out = dumps(report) if args.format == "json" else text + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
