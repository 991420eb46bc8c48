import json

import pytest

from meroimm.cli import main


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def zpow_json(d):
    if d > 0:
        return {"num": [[0.0, 0.0]] * d + [[1.0, 0.0]], "den": [[1.0, 0.0]]}
    return {"num": [[1.0, 0.0]], "den": [[0.0, 0.0]] * (-d) + [[1.0, 0.0]]}


ANNULUS = {
    "outer": {"center": [0.0, 0.0], "radius": 2.0},
    "holes": [{"center": [0.0, 0.0], "radius": 0.5}],
}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_valid(tmp_path, capsys):
    path = write(tmp_path, "in.json", {
        "map": zpow_json(1),
        "domain": {"center": [0.0, 0.0], "radius": 1.0},
        "target": "C",
    })
    code, out, _ = run(capsys, "verify", path, "--json")
    assert code == 0
    report = json.loads(out)
    assert report["result"]["certificate"]["valid"] is True
    assert report["config"]["tol_root"] == 1e-8


def test_verify_false_verdict_is_ok_exit(tmp_path, capsys):
    path = write(tmp_path, "in.json", {
        "map": zpow_json(2),
        "domain": {"center": [0.0, 0.0], "radius": 1.0},
        "target": "C",
    })
    code, out, _ = run(capsys, "verify", path)
    assert code == 0
    assert "valid=False" in out


def test_classify_z3(tmp_path, capsys):
    path = write(tmp_path, "in.json", {
        "map": zpow_json(3), "domain": ANNULUS, "target": "C",
    })
    code, out, _ = run(capsys, "classify", path, "--json")
    assert code == 0
    report = json.loads(out)
    assert report["result"]["classification"]["z_class"] == [2]
    assert report["result"]["classification"]["mod2_class"] == [0]


def test_same_component(tmp_path, capsys):
    base = {"map1": zpow_json(1), "map2": zpow_json(3), "domain": ANNULUS}
    p1 = write(tmp_path, "cp1.json", {**base, "target": "CP1"})
    code, out, _ = run(capsys, "same-component", p1, "--json")
    assert code == 0 and json.loads(out)["result"]["same_component"] is True
    p2 = write(tmp_path, "c.json", {**base, "target": "C"})
    code, out, _ = run(capsys, "same-component", p2, "--json")
    assert code == 0 and json.loads(out)["result"]["same_component"] is False


def test_wind_and_chart_check(tmp_path, capsys):
    circ = {"kind": "circle", "center": [0.0, 0.0], "radius": 1.0}
    p = write(tmp_path, "w.json", {"map": zpow_json(3), "contour": circ,
                                   "of": "derivative"})
    code, out, _ = run(capsys, "wind", p, "--json")
    assert code == 0 and json.loads(out)["result"]["winding"] == 2
    p = write(tmp_path, "c.json", {"contour": circ})
    code, out, _ = run(capsys, "chart-check", p, "--json")
    assert code == 0 and json.loads(out)["result"]["transition_winding"] == -2


def test_seed(tmp_path, capsys):
    p = write(tmp_path, "s.json", {"seed": {
        "base_point": [0.0, 0.0], "target": [2.0, 1.0],
        "fiber": [3.0, 0.0], "frame": [1.0, 0.0]}})
    code, out, _ = run(capsys, "seed", p, "--json")
    assert code == 0
    r = json.loads(out)["result"]
    assert r["map"]["num"] == [[2.0, 1.0], [3.0, 0.0]]
    assert r["value_at_base"] == [2.0, 1.0]
    p = write(tmp_path, "sinf.json", {"seed": {
        "base_point": [0.0, 0.0], "target": "inf",
        "fiber": [1.0, 0.0], "frame": [1.0, 0.0]}})
    code, out, _ = run(capsys, "seed", p, "--json")
    assert code == 0
    assert json.loads(out)["result"]["value_at_base"] == "inf"


def test_extend_artifacts_and_determinism(tmp_path, capsys):
    p = write(tmp_path, "e.json", {
        "map": {"num": [[0, 0], [1, 0], [0, 0], [0, 0], [0, 0], [0.1, 0]],
                "den": [[1, 0]]},
        "disc0": {"center": [0.0, 0.0], "radius": 1.0},
        "disc1": {"center": [0.0, 0.0], "radius": 2.0},
    })
    out1 = tmp_path / "a1"
    out2 = tmp_path / "a2"
    code, _, _ = run(capsys, "extend", p, "--eps", "1e-3", "--out", str(out1))
    assert code == 0
    code, _, _ = run(capsys, "extend", p, "--eps", "1e-3", "--out", str(out2))
    assert code == 0
    r1 = (out1 / "report.json").read_bytes()
    r2 = (out2 / "report.json").read_bytes()
    assert r1 == r2  # byte-identical reports
    assert (out1 / "extend_samples.csv").exists()
    assert (out1 / "immersion.json").exists()
    report = json.loads(r1)
    assert report["result"]["achieved_eps"] < 1e-3
    # artifact JSON re-parses into an equal value
    from meroimm.serialize import immersion_from_json
    art = json.loads((out1 / "immersion.json").read_text())
    F = immersion_from_json(art)
    assert complex(F.evaluate(0.5)).real == pytest.approx(0.5 + 0.1 * 0.5 ** 5, abs=1e-8)


def test_extend_family_cli(tmp_path, capsys):
    maps = [
        {"num": [[1.0, 0.0]],
         "den": [[-(0.3 + 0.2 * (i / 4)), 0.0], [1.0, 0.0]]}
        for i in range(5)
    ]
    p = write(tmp_path, "fam.json", {
        "maps": maps,
        "grid": {"shape": [5], "q": [0, 4]},
        "disc0": {"center": [0.0, 0.0], "radius": 1.0},
        "disc1": {"center": [0.0, 0.0], "radius": 2.0},
    })
    outdir = tmp_path / "fam_art"
    code, out, _ = run(capsys, "extend-family", p, "--json", "--out", str(outdir))
    assert code == 0
    report = json.loads(out)
    assert len(report["result"]["immersions"]) == 5
    assert all(c["valid"] for c in report["result"]["certificates"])
    assert (outdir / "extend_family_node000.csv").exists()


def test_blend_cli(tmp_path, capsys):
    maps = [{"num": [[1.0, 0.0]], "den": [[-(2.0 + i / 10), 0.0], [1.0, 0.0]]}
            for i in range(11)]
    p = write(tmp_path, "b.json", {
        "maps": maps,
        "grid": {"shape": [11], "q": [0, 10]},
        "disc": {"center": [0.0, 0.0], "radius": 1.0},
    })
    code, out, _ = run(capsys, "blend", p, "--eps", "1e-3", "--json")
    assert code == 0
    r = json.loads(out)["result"]
    assert len(r["polynomials"]) == 11
    assert max(r["errors"]) < 5e-4
    # Q outputs serialize as the exact rational inputs
    assert r["polynomials"][0] == maps[0]


def test_exit_code_input_error(tmp_path, capsys):
    code, _, err = run(capsys, "verify", str(tmp_path / "missing.json"))
    assert code == 1
    p = write(tmp_path, "bad.json", {"domain": ANNULUS})
    code, _, err = run(capsys, "verify", p)
    assert code == 1 and "map" in err


def test_exit_code_precondition(tmp_path, capsys):
    # z^2 on a disc domain: classification needs an immersion
    p = write(tmp_path, "p.json", {
        "map": zpow_json(2),
        "domain": {"center": [0.0, 0.0], "radius": 1.0},
        "target": "C",
    })
    code, _, err = run(capsys, "classify", p)
    assert code == 2


def test_exit_code_numerical(tmp_path, capsys):
    p = write(tmp_path, "n.json", {
        "map": {"num": [[0, 0], [1, 0], [0, 0], [0, 0], [0, 0], [0.1, 0]],
                "den": [[1, 0]]},
        "disc0": {"center": [0.0, 0.0], "radius": 1.0},
        "disc1": {"center": [0.0, 0.0], "radius": 2.0},
    })
    code, _, err = run(capsys, "extend", p, "--eps", "1e-16")
    assert code == 3


def test_env_override(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("MEROIMM_TOL_ROOT", "1e-7")
    p = write(tmp_path, "in.json", {
        "map": zpow_json(1),
        "domain": {"center": [0.0, 0.0], "radius": 1.0},
        "target": "C",
    })
    code, out, _ = run(capsys, "verify", p, "--json")
    assert code == 0
    assert json.loads(out)["config"]["tol_root"] == 1e-7
