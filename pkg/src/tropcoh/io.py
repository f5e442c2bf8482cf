"""JSON documents for fans, cycles, maps and diagrams.

Rationals travel as ``{"num": "3", "den": "4"}``; on input plain integers and
strings ``"p/q"`` are accepted too, floats never.  A document may embed a
referenced document or name it by a path relative to itself, or by
``catalog:<name>`` for the built-in examples.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import catalog
from .errors import ParseError, ValidationError
from .polyhedral import Fan, GammaSpec, TropicalCycle, make_cycle
from .tropmaps import AffineToricMap
from .cohomology import RefinementDiagram

CATALOG_CYCLES = {
    "point": catalog.point,
    "segment": catalog.segment,
    "trop_p1": catalog.trop_p1,
    "trop_p2": catalog.trop_p2,
    "trop_p1xp1": catalog.trop_p1xp1,
    "tropical_line": catalog.tropical_line,
    "bare_square": catalog.bare_square,
    "square_cycle": catalog.square_cycle,
    "square_cycle_3": lambda: catalog.square_cycle(3, GammaSpec((1, 3))),
    "honeycomb_quartic": catalog.honeycomb_quartic,
}
CATALOG_FANS = {
    "p1": catalog.fan_p1,
    "p2": catalog.fan_p2,
    "p1xp1": catalog.fan_p1xp1,
    "diagonal": catalog.fan_diagonal,
}


# ---------------------------------------------------------------------------
# scalars


def rational_to_json(x) -> dict:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def rational_from_json(v: Any, where: str) -> Fraction:
    if isinstance(v, bool):
        raise ParseError(f"{where}: expected a rational, got a boolean")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, float):
        raise ParseError(f"{where}: floats are not accepted; write {{\"num\": ..., \"den\": ...}}")
    if isinstance(v, str):
        try:
            if "." in v or "e" in v.lower():
                raise ValueError
            return Fraction(v)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"{where}: cannot read rational {v!r}") from None
    if isinstance(v, dict) and set(v) == {"num", "den"}:
        try:
            num, den = int(str(v["num"])), int(str(v["den"]))
        except ValueError:
            raise ParseError(f"{where}: num and den must be decimal integers") from None
        if den == 0:
            raise ParseError(f"{where}: zero denominator")
        return Fraction(num, den)
    raise ParseError(f"{where}: expected a rational, got {v!r}")


def int_from_json(v: Any, where: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"{where}: expected an integer, got {v!r}")
    return v


def _field(doc: dict, key: str, where: str):
    if not isinstance(doc, dict):
        raise ParseError(f"{where}: expected an object")
    if key not in doc:
        raise ParseError(f"{where}: missing field {key!r}")
    return doc[key]


def _list(v: Any, where: str) -> list:
    if not isinstance(v, list):
        raise ParseError(f"{where}: expected a list")
    return v


def loads(text: str, where: str = "document") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{where}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _resolve(ref: Any, base: Path | None, kind: str):
    """Return (document, base directory) for an embedded document or a reference."""
    if isinstance(ref, dict):
        return ref, base
    if not isinstance(ref, str):
        raise ParseError(f"{kind} reference must be an object or a string")
    if ref.startswith("catalog:"):
        return ref, None
    path = (base / ref) if base is not None else Path(ref)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {kind} file {str(path)!r}: {e.strerror}") from None
    return loads(text, str(path)), path.parent


# ---------------------------------------------------------------------------
# fans


def fan_from_json(doc: Any, where: str = "fan") -> Fan:
    if isinstance(doc, str) and doc.startswith("catalog:"):
        name = doc[len("catalog:"):]
        if name not in CATALOG_FANS:
            raise ParseError(f"{where}: unknown catalog fan {name!r}")
        return CATALOG_FANS[name]()
    n = int_from_json(_field(doc, "latticeRank", where), f"{where}.latticeRank")
    if n < 0:
        raise ValidationError("lattice rank", "must be nonnegative")
    rays = [[int_from_json(x, f"{where}.rays[{i}][{j}]") for j, x in enumerate(_list(r, f"{where}.rays[{i}]"))]
            for i, r in enumerate(_list(_field(doc, "rays", where), f"{where}.rays"))]
    cones = [[int_from_json(x, f"{where}.cones[{i}][{j}]") for j, x in enumerate(_list(c, f"{where}.cones[{i}]"))]
             for i, c in enumerate(_list(_field(doc, "cones", where), f"{where}.cones"))]
    return Fan.from_data(n, rays, cones)


def fan_to_json(fan: Fan) -> dict:
    return fan.to_data()


def parse_fan(text: str) -> Fan:
    return fan_from_json(loads(text, "fan"))


# ---------------------------------------------------------------------------
# cycles


def cycle_from_json(doc: Any, base: Path | None = None, where: str = "cycle") -> TropicalCycle:
    if isinstance(doc, str) and doc.startswith("catalog:"):
        name = doc[len("catalog:"):]
        if name not in CATALOG_CYCLES:
            raise ParseError(f"{where}: unknown catalog cycle {name!r}")
        return CATALOG_CYCLES[name]()
    if not isinstance(doc, dict):
        raise ParseError(f"{where}: expected an object")
    if "fan" in doc:
        fan_doc, _ = _resolve(doc["fan"], base, "fan")
    elif "fanRef" in doc:
        fan_doc, _ = _resolve(doc["fanRef"], base, "fan")
    else:
        raise ParseError(f"{where}: missing field 'fanRef' (or an embedded 'fan')")
    fan = fan_from_json(fan_doc, f"{where}.fan")
    n = fan.lattice_rank
    faces = []
    for i, f in enumerate(_list(_field(doc, "faces", where), f"{where}.faces")):
        fw = f"{where}.faces[{i}]"
        st = _field(f, "stratum", fw)
        if isinstance(st, list):
            stratum = fan.cone_index([int_from_json(x, f"{fw}.stratum") for x in st])
        else:
            stratum = int_from_json(st, f"{fw}.stratum")
            if not 0 <= stratum < len(fan.cones):
                raise ValidationError("stratum exists", f"{fw}.stratum = {stratum}")
        verts = _list(_field(f, "vertices", fw), f"{fw}.vertices")
        flags = f.get("atInfinity", [False] * len(verts))
        flags = _list(flags, f"{fw}.atInfinity")
        if len(flags) != len(verts):
            raise ParseError(f"{fw}: atInfinity must have one flag per vertex")
        pts, rays = [], []
        for j, (v, inf) in enumerate(zip(verts, flags)):
            vw = f"{fw}.vertices[{j}]"
            coords = [rational_from_json(x, f"{vw}[{k}]") for k, x in enumerate(_list(v, vw))]
            if len(coords) != n:
                raise ValidationError("coordinate length", f"{vw} has {len(coords)} entries, lattice rank {n}")
            if not isinstance(inf, bool):
                raise ParseError(f"{fw}.atInfinity[{j}]: expected a boolean")
            (rays if inf else pts).append(coords)
        if not pts:
            raise ValidationError("empty polyhedron", f"{fw} has no finite vertex")
        faces.append((stratum, pts, rays))
    weights = {}
    for i, w in enumerate(_list(doc.get("weights", []), f"{where}.weights")):
        ww = f"{where}.weights[{i}]"
        face = int_from_json(_field(w, "face", ww), f"{ww}.face")
        if not 0 <= face < len(faces):
            raise ValidationError("weight refers to a face", f"{ww}.face = {face}")
        weights[face] = int_from_json(_field(w, "w", ww), f"{ww}.w")
    gamma = GammaSpec(tuple(rational_from_json(g, f"{where}.gamma[{i}]")
                            for i, g in enumerate(_list(doc.get("gamma", [1]), f"{where}.gamma"))))
    return make_cycle(fan, faces, weights, gamma)


def cycle_to_json(X: TropicalCycle) -> dict:
    cx = X.complex
    var = cx.variety
    faces, weights = [], []
    for i in cx.maximal_cells():
        c = cx.cells[i]
        verts = [[rational_to_json(x) for x in var.to_ambient(c.stratum, p)] for p in c.points]
        rays = [[rational_to_json(x) for x in var.to_ambient(c.stratum, r)] for r in c.rays]
        faces.append({"stratum": c.stratum, "vertices": verts + rays,
                      "atInfinity": [False] * len(verts) + [True] * len(rays)})
        if i in X.weights:
            weights.append({"face": len(faces) - 1, "w": X.weights[i]})
    return {"fan": fan_to_json(var.fan), "faces": faces, "weights": weights,
            "gamma": [rational_to_json(g) for g in X.gamma.generators]}


def parse_cycle(text: str) -> TropicalCycle:
    return cycle_from_json(loads(text, "cycle"))


# ---------------------------------------------------------------------------
# maps and diagrams


def map_from_json(doc: Any, source: Fan, target: Fan, where: str = "map") -> AffineToricMap:
    from .polyhedral import TropicalToricVariety
    lin = [[int_from_json(x, f"{where}.linear[{i}][{j}]") for j, x in enumerate(_list(r, f"{where}.linear[{i}]"))]
           for i, r in enumerate(_list(_field(doc, "linear", where), f"{where}.linear"))]
    tr = [rational_from_json(x, f"{where}.translation[{i}]")
          for i, x in enumerate(_list(doc.get("translation", []), f"{where}.translation"))]
    ci = {}
    for i, pair in enumerate(_list(doc.get("coneImage", []), f"{where}.coneImage")):
        pw = f"{where}.coneImage[{i}]"
        pair = _list(pair, pw)
        if len(pair) != 2:
            raise ParseError(f"{pw}: expected [sourceCone, targetCone]")
        ci[int_from_json(pair[0], pw)] = int_from_json(pair[1], pw)
    return AffineToricMap(TropicalToricVariety(source), TropicalToricVariety(target), lin, tuple(tr), ci)


def map_to_json(f: AffineToricMap) -> dict:
    return {"linear": [list(r) for r in f.linear],
            "translation": [rational_to_json(x) for x in f.translation],
            "coneImage": [[s, t] for s, t in sorted(f.cone_image.items())]}


def parse_map(text: str, source: Fan, target: Fan) -> AffineToricMap:
    return map_from_json(loads(text, "map"), source, target)


def diagram_from_json(doc: Any, base: Path | None = None, where: str = "diagram") -> RefinementDiagram:
    objs = []
    for i, ref in enumerate(_list(_field(doc, "objects", where), f"{where}.objects")):
        d, b = _resolve(ref, base, "cycle")
        objs.append(cycle_from_json(d, b, f"{where}.objects[{i}]"))
    arrows = []
    for i, ref in enumerate(_list(_field(doc, "arrows", where), f"{where}.arrows")):
        d, _ = _resolve(ref, base, "map")
        if i + 1 >= len(objs):
            raise ValidationError("diagram shape", "more arrows than consecutive object pairs")
        src, dst = objs[i + 1].variety, objs[i].variety
        f = map_from_json(d, src.fan, dst.fan, f"{where}.arrows[{i}]")
        f.source, f.target = src, dst
        arrows.append(f)
    return RefinementDiagram(objs, arrows)


def diagram_to_json(D: RefinementDiagram) -> dict:
    return {"objects": [cycle_to_json(X) for X in D.objects],
            "arrows": [map_to_json(f) for f in D.arrows]}


def parse_diagram(text: str) -> RefinementDiagram:
    return diagram_from_json(loads(text, "diagram"))


def load_cycle(path: str) -> TropicalCycle:
    doc, base = _resolve(path, None, "cycle")
    return cycle_from_json(doc, base)


def load_diagram(path: str) -> RefinementDiagram:
    doc, base = _resolve(path, None, "diagram")
    if isinstance(doc, str):
        raise ParseError("diagrams are not in the catalog")
    return diagram_from_json(doc, base)

