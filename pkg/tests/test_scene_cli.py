import json
import math
from importlib import resources
from pathlib import Path

import numpy as np
import pytest

from paravector.cli import main
from paravector.scene import (
    Scene,
    SceneError,
    ScenePoint,
    dumps_scene,
    load_scene,
    project_scene,
    run_script,
    save_scene,
    scene_from_dict,
    script_from_dict,
)

SCENES = resources.files("paravector") / "scenes"
GOLDEN = Path(__file__).parent / "golden"


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return str(path)


def test_minimal_scene():
    scene = scene_from_dict({"points": {"P": {"pos": [0, 0, 0], "weight": 1}}})
    assert list(scene.points) == ["P"]
    assert scene.points["P"].weight == 1


def test_load_errors(tmp_path):
    with pytest.raises(SceneError, match="'Q'"):
        scene_from_dict({"points": {"P": {"pos": [0, 0, 0]}}, "segments": [["P", "Q"]]})
    with pytest.raises(SceneError, match="segment 0"):
        scene_from_dict({"points": {"P": {"pos": [0, 0, 0]}, "Q": {"pos": [0, 0, 0]}}, "segments": [["P", "Q"]]})
    with pytest.raises(SceneError, match="line 1"):
        load_scene(write(tmp_path, "bad.json", '{"points": '))
    with pytest.raises(SceneError, match="non-finite"):
        load_scene(write(tmp_path, "nan.json", '{"points": {"P": {"pos": [NaN, 0, 0]}}}'))
    with pytest.raises(SceneError, match=r"points\.P\.pos"):
        scene_from_dict({"points": {"P": {"pos": [0, 0]}}})


def test_round_trip_bit_exact(tmp_path, rng):
    pts = {f"p{i}": ScenePoint(rng.normal(size=3), float(rng.uniform(0.1, 3))) for i in range(20)}
    pts["p0"] = ScenePoint(np.array([0.1, 1 / 3, -0.0]), 1e-300)
    path = tmp_path / "s.json"
    save_scene(Scene(pts), path)
    back = load_scene(path)
    for pid, p in pts.items():
        assert np.array_equal(back.points[pid].pos, p.pos + 0.0)
        assert back.points[pid].weight == p.weight
    assert dumps_scene(back) == path.read_text()


@pytest.mark.parametrize("name", ["unit_cube.json", "frustum.json"])
def test_bundled_scenes_round_trip(name):
    text = (SCENES / name).read_text()
    assert dumps_scene(scene_from_dict(json.loads(text))) == text


def test_script_examples():
    scene = scene_from_dict({"points": {"O": {"pos": [0, 0, 0]}, "A": {"pos": [1, 2, 3]}}})
    out = run_script(scene, script_from_dict({"steps": [{"op": "translate", "params": {"v": [1, 0, 0]}}]}))
    assert np.array_equal(out.points["O"].pos, [1, 0, 0])
    spin = script_from_dict({"steps": [
        {"op": "rotate", "params": {"u": [1, 0, 0], "v": [0, 1, 0], "theta": math.pi / 2}},
        {"op": "rotate", "params": {"u": [1, 0, 0], "v": [0, 1, 0], "theta": -math.pi / 2}},
    ]})
    out = run_script(scene, spin)
    assert np.allclose(out.points["A"].pos, [1, 2, 3], atol=1e-15)
    scene = scene_from_dict({"points": {"P": {"pos": [0, 0, 2]}}})
    out = run_script(scene, script_from_dict({"steps": [{"op": "cotranslate", "params": {"v": [0, 0, 1]}}]}))
    assert out.points["P"].weight == 3
    assert np.allclose(out.points["P"].pos, [0, 0, 2 / 3])


def test_script_errors():
    with pytest.raises(SceneError, match="steps\\[0\\]"):
        script_from_dict({"steps": [{"op": "spin", "params": {}}]})
    with pytest.raises(SceneError, match="missing parameter 'theta'"):
        script_from_dict({"steps": [{"op": "rotate", "params": {"u": [1, 0, 0], "v": [0, 1, 0]}}]})
    scene = scene_from_dict({"points": {"P": {"pos": [0, 0, 2]}}})
    bad = script_from_dict({"steps": [
        {"op": "translate", "params": {"v": [0, 0, 0]}},
        {"op": "reflect", "params": {"n": [0, 0, 2]}},
    ]})
    with pytest.raises(SceneError, match="step 1"):
        run_script(scene, bad)


def test_project_flags():
    scene = scene_from_dict({"points": {
        "A": {"pos": [2, 2, 4]}, "B": {"pos": [0, 0, -1]}, "C": {"pos": [1, 1, 0]},
    }})
    out, warnings = project_scene(scene, [0, 0, 0], [0, 0, 1], 1.0)
    assert out.points["A"].weight == 0.25 and out.points["A"].flag is None
    assert out.points["B"].flag == "behind" and out.points["B"].weight == -1
    assert np.allclose(out.points["B"].pos, [0, 0, 1])
    assert out.points["C"].flag == "at_infinity"
    assert warnings == ["point 'C' projects to infinity"]


def test_cli_transform_and_errors(tmp_path, capsys):
    scene = write(tmp_path, "s.json", {"points": {"O": {"pos": [0, 0, 0]}}})
    script = write(tmp_path, "t.json", {"steps": [{"op": "translate", "params": {"v": [1, 0, 0]}}]})
    out = tmp_path / "o.json"
    assert main(["transform", "--scene", scene, "--script", script, "--out", str(out)]) == 0
    assert load_scene(out).points["O"].pos.tolist() == [1, 0, 0]
    assert main(["transform", "--scene", scene, "--script", str(tmp_path / "missing.json")]) == 1
    err = capsys.readouterr().err
    assert err.startswith("error:")


def test_cli_classify(tmp_path, capsys):
    scene = write(tmp_path, "axes.json", {"points": {
        "O": {"pos": [0, 0, 0]}, "X": {"pos": [1, 0, 0]}, "Y": {"pos": [0, 1, 0]},
        "Y1": {"pos": [0, 1, 0]}, "X1": {"pos": [1, 1, 0]},
        "Z": {"pos": [0, 0, 1]}, "ZY": {"pos": [0, 1, 1]},
    }})
    expected = {
        "O,Y": "intersecting, perpendicular, volume=0",
        "Y1,X1": "parallel, volume=0",
        "Z,ZY": "skew, volume=-1",
    }
    for b, text in expected.items():
        assert main(["classify", "--scene", scene, "--a", "O,X", "--b", b]) == 0
        assert capsys.readouterr().out.strip() == text
    assert main(["classify", "--scene", scene, "--a", "O,Q", "--b", "O,X"]) == 1
    assert "'Q'" in capsys.readouterr().err


def test_cli_info(capsys):
    assert main(["info", "--scene", str(SCENES / "unit_cube.json")]) == 0
    out = capsys.readouterr().out.splitlines()
    assert "segment c000 c010: l=(0, 1, 0) m=(-1, 0, 0) support=(0, 0, 1)" in out
    assert "triangle c000 c100 c110: n=(0, 0, 1) c=1 support=(0, 0, 1)" in out


def test_cli_project_requires_c(capsys):
    assert main(["project", "--scene", str(SCENES / "unit_cube.json"), "--eye", "0,0,0", "--normal", "0,0,1"]) == 1
    assert "--c" in capsys.readouterr().err


def test_cli_golden_cube(tmp_path):
    out = tmp_path / "cube.json"
    rc = main(["project", "--scene", str(SCENES / "unit_cube.json"), "--eye", "0,0,0",
               "--normal", "0,0,1", "--c", "1", "--out", str(out)])
    assert rc == 0
    assert out.read_bytes() == (GOLDEN / "unit_cube_projected.json").read_bytes()
    for pid, p in load_scene(SCENES / "unit_cube.json").points.items():
        got = json.loads(out.read_text())["points"][pid]
        assert got["weight"] == 1 / p.pos[2]
        assert np.allclose(got["pos"], p.pos / p.pos[2])


def test_cli_golden_frustum(tmp_path, capsys):
    out = tmp_path / "box.json"
    rc = main(["project", "--scene", str(SCENES / "frustum.json"), "--eye", "0,0,-1",
               "--normal", "0,0,1", "--pseudo", "--out", str(out)])
    assert rc == 0
    assert "'E' projects to infinity" in capsys.readouterr().err
    assert out.read_bytes() == (GOLDEN / "frustum_box.json").read_bytes()
