import json
from fractions import Fraction

import pytest

from tropcoh import catalog
from tropcoh.errors import ParseError, ValidationError
from tropcoh.io import (CATALOG_CYCLES, cycle_from_json, cycle_to_json, diagram_from_json, diagram_to_json, dumps,
                        fan_to_json, load_cycle, map_to_json, parse_cycle, parse_fan, parse_map, rational_from_json,
                        rational_to_json)
from tropcoh.tropmaps import AffineToricMap


def test_rationals():
    assert rational_to_json(Fraction(3, 4)) == {"num": "3", "den": "4"}
    assert rational_from_json({"num": "-6", "den": "4"}, "x") == Fraction(-3, 2)
    assert rational_from_json("2/3", "x") == Fraction(2, 3)
    for bad in (0.5, True, "1.5", {"num": "1", "den": "0"}, {"num": 1}):
        with pytest.raises(ParseError):
            rational_from_json(bad, "x")


def test_parse_p1_fan():
    fan = parse_fan('{"latticeRank": 1, "rays": [[1], [-1]], "cones": [[0], [1]]}')
    assert len(fan.cones) == 3


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError, match="line 2"):
        parse_fan('{"latticeRank": 1,\n "rays": [[1],, }')
    with pytest.raises(ParseError, match="latticeRank"):
        parse_fan('{"rays": []}')


def test_square_cycle_document():
    doc = {
        "fanRef": "catalog:diagonal",
        "faces": [{"stratum": 0, "vertices": [[0, 0], [1, 0]], "atInfinity": [False, False]},
                  {"stratum": 0, "vertices": [[1, 0], [1, 1]], "atInfinity": [False, False]},
                  {"stratum": 0, "vertices": [[1, 1], [0, 1]], "atInfinity": [False, False]},
                  {"stratum": 0, "vertices": [[0, 1], [0, 0]], "atInfinity": [False, False]}]
        + [{"stratum": 0, "vertices": [v, d], "atInfinity": [False, True]}
           for v, d in (([0, 0], [-1, -1]), ([1, 0], [1, -1]), ([1, 1], [1, 1]), ([0, 1], [-1, 1]))],
        "weights": [{"face": i, "w": 1} for i in range(8)],
    }
    X = parse_cycle(json.dumps(doc))
    bounded = [c for c in X.cells if c.stratum == 0 and not c.rays]
    assert sum(1 for c in bounded if c.dim == 0) == 4
    assert sum(1 for c in bounded if c.dim == 1) == 4
    assert X.complex == catalog.square_cycle().complex


def test_empty_face_is_rejected():
    doc = {"fanRef": "catalog:p1", "faces": [{"stratum": 0, "vertices": [], "atInfinity": []}]}
    with pytest.raises(ValidationError, match="empty polyhedron"):
        cycle_from_json(doc)


def test_invariants_named_in_errors():
    doc = {"fanRef": "catalog:p1", "faces": [{"stratum": 0, "vertices": [[0], [1]], "atInfinity": [False, True]}],
           "weights": [{"face": 0, "w": 0}]}
    with pytest.raises(ValidationError, match="nonzero weights"):
        cycle_from_json(doc)
    with pytest.raises(ParseError):
        cycle_from_json({"fanRef": "catalog:p1", "faces": [{"stratum": 0, "vertices": [[0.5]],
                                                            "atInfinity": [False]}]})


@pytest.mark.parametrize("name", sorted(CATALOG_CYCLES))
def test_cycle_round_trip(name):
    X = CATALOG_CYCLES[name]()
    text = dumps(cycle_to_json(X))
    Y = parse_cycle(text)
    assert Y.complex == X.complex
    assert Y.weights == X.weights
    assert Y.gamma.denominator == X.gamma.denominator
    assert dumps(cycle_to_json(Y)) == text


def test_fan_round_trip():
    fan = catalog.fan_p1xp1()
    again = parse_fan(dumps(fan_to_json(fan)))
    assert again.cones == fan.cones and again.rays == fan.rays


def test_map_and_diagram_round_trip(tmp_path):
    X = catalog.square_cycle()
    f = AffineToricMap(X.variety, X.variety, [[0, 1], [1, 0]], (1, 0))
    g = parse_map(dumps(map_to_json(f)), X.variety.fan, X.variety.fan)
    assert g.linear == f.linear and g.translation == f.translation and g.cone_image == f.cone_image
    (tmp_path / "x.json").write_text(dumps(cycle_to_json(X)))
    (tmp_path / "id.json").write_text(json.dumps({"linear": [[1, 0], [0, 1]], "translation": [0, 0],
                                                  "coneImage": []}))
    doc = {"objects": ["x.json", "catalog:square_cycle"], "arrows": ["id.json"]}
    D = diagram_from_json(doc, tmp_path)
    assert len(D.objects) == 2 and D.arrows[0].linear == [[1, 0], [0, 1]]
    again = diagram_from_json(json.loads(dumps(diagram_to_json(D))))
    assert again.objects[0].complex == D.objects[0].complex


def test_load_cycle_from_file(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(dumps(cycle_to_json(catalog.tropical_line())))
    assert load_cycle(str(p)).complex == catalog.tropical_line().complex
    with pytest.raises(ParseError):
        load_cycle(str(tmp_path / "missing.json"))
