import json
import subprocess
import sys


from tropcoh import catalog
from tropcoh.cli import main
from tropcoh.io import cycle_to_json, dumps


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cohomology_table(capsys):
    code, out, _ = run(capsys, "cohomology", "--input", "catalog:square_cycle", "--ring", "Q")
    assert code == 0
    rows = [line.split()[1:] for line in out.splitlines()[2:]]
    assert rows == [["1", "1"], ["1", "1"]]


def test_cohomology_json_is_deterministic(capsys):
    args = ("cohomology", "--input", "catalog:trop_p1xp1", "--format", "json")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b
    rep = json.loads(a)
    assert rep["grid"] == [[1, 0, 0], [0, 2, 0], [0, 0, 1]]


def test_single_bidegree(capsys):
    code, out, _ = run(capsys, "cohomology", "--input", "catalog:honeycomb_quartic", "--bidegree", "1,0",
                       "--format", "json")
    assert code == 0
    (g,) = json.loads(out)["groups"]
    assert (g["p"], g["q"], g["rank"]) == (1, 0, 3)


def test_check_balancing(capsys):
    code, out, _ = run(capsys, "check", "--balancing", "--input", "catalog:tropical_line")
    assert code == 0 and out.strip() == "balanced"
    code, out, _ = run(capsys, "check", "--input", "catalog:bare_square")
    assert out.strip() == "not balanced"


def test_check_smooth(capsys):
    code, out, _ = run(capsys, "check", "--smooth", "--input", "catalog:honeycomb_quartic")
    assert code == 0 and out.strip() == "smooth"


def test_identity_check(capsys):
    code, out, _ = run(capsys, "identity-check", "--trials", "100", "--seed", "7")
    assert code == 0 and out.strip() == "100/100 exact"


def test_wave_and_pair(capsys):
    code, out, _ = run(capsys, "wave", "--input", "catalog:square_cycle", "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["maps"][0]["integral"]
    assert rep["maps"][0]["matrix"] == [[{"num": "4", "den": "1"}]]
    code, out, _ = run(capsys, "pair", "--input", "catalog:trop_p2", "--format", "json")
    assert all(p["nondegenerate"] for p in json.loads(out)["pairings"])


def test_pullback_and_colimit(capsys, tmp_path):
    (tmp_path / "id.json").write_text(json.dumps({"linear": [[0, 1], [1, 0]], "translation": [0, 0],
                                                  "coneImage": []}))
    diag = tmp_path / "d.json"
    diag.write_text(json.dumps({"objects": ["catalog:square_cycle", "catalog:square_cycle"],
                                "arrows": ["id.json"]}))
    code, out, _ = run(capsys, "pullback", "--input", str(diag), "--bidegree", "1,0", "--format", "json")
    assert code == 0
    (m,) = json.loads(out)["maps"]
    assert m["isomorphism"] and m["matrix"] == [[{"num": "-1", "den": "1"}]]
    code, out, _ = run(capsys, "colimit", "--input", str(diag), "--bidegree", "0,0")
    assert code == 0 and "stabilized at 0" in out


def test_out_file(capsys, tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "cohomology", "--input", "catalog:trop_p1", "--format", "json", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["grid"] == [[1, 0], [0, 1]]


def test_gamma_flag(capsys):
    code, out, _ = run(capsys, "wave", "--input", "catalog:square_cycle", "--gamma", "1/2", "--format", "json")
    assert code == 0
    assert json.loads(out)["gamma"] == "(1/2)Z"


def test_exit_codes(capsys, tmp_path):
    code, _, err = run(capsys, "cohomology", "--input", "catalog:unknown")
    assert code == 2 and "ParseError" in err
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"fanRef": "catalog:p1", "faces": [{"stratum": 0, "vertices": [],
                                                                  "atInfinity": []}]}))
    code, _, err = run(capsys, "cohomology", "--input", str(bad))
    assert code == 2 and "empty polyhedron" in err
    ray = tmp_path / "ray.json"
    ray.write_text(json.dumps({"fan": {"latticeRank": 1, "rays": [], "cones": []},
                               "faces": [{"stratum": 0, "vertices": [[0], [1]], "atInfinity": [False, True]}]}))
    code, _, err = run(capsys, "cohomology", "--input", str(ray))
    assert code == 3 and "NonCompactComplex" in err
    code, _, err = run(capsys, "check", "--smooth", "--input", "catalog:trop_p2")
    assert code == 3 and "WrongDimension" in err
    code, _, _ = run(capsys, "cohomology", "--input", "catalog:trop_p1", "--ring", "R")
    assert code == 2


def test_file_input(capsys, tmp_path):
    p = tmp_path / "line.json"
    p.write_text(dumps(cycle_to_json(catalog.tropical_line())))
    code, out, _ = run(capsys, "check", "--input", str(p))
    assert code == 0 and out.strip() == "balanced"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "tropcoh", "identity-check", "--trials", "5"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout.strip() == "5/5 exact"
