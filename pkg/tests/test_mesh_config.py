import numpy as np
import pytest

from cyclidic.config import ConfigError, load_config, validate
from cyclidic.mesh import QuadMesh, export_mesh, load_mesh_json, polylines_obj


def _grid(T=3, U=4):
    t, u = np.meshgrid(np.arange(T, dtype=float), np.arange(U, dtype=float), indexing="ij")
    return np.stack([t, u, t * u], axis=-1)


def test_from_grid_counts():
    m = QuadMesh.from_grid(_grid(), np.arange(3), np.arange(4))
    assert m.vertices.shape == (12, 3) and m.quads.shape == (6, 4)
    w = QuadMesh.from_grid(_grid(), np.arange(3), np.arange(4), wrap_u=True, wrap_t=True)
    assert w.quads.shape == (12, 4)


def test_from_grid_drops_infinite_vertices():
    pts = _grid()
    flags = np.zeros((3, 4), dtype=bool)
    flags[1, 1] = True
    pts[2, 3] = np.nan
    m = QuadMesh.from_grid(pts, np.arange(3), np.arange(4), flags)
    assert m.metadata["dropped_vertices"] == 2
    assert m.metadata["dropped_quads"] == 5
    assert len(m.vertices) == 10 and len(m.quads) == 1


def test_obj_format():
    m = QuadMesh.from_grid(_grid(2, 2), [0, 1], [0, 1])
    lines = m.to_obj().splitlines()
    assert lines[0] == "# quads 1"
    assert sum(ln.startswith("v ") for ln in lines) == 4
    assert lines[-1] == "f 1 2 4 3"


def test_json_roundtrip(tmp_path):
    m = QuadMesh.from_grid(_grid(), np.linspace(0, 1, 3), np.linspace(0, 2, 4), metadata={"k": 1})
    path = tmp_path / "m.json"
    export_mesh(m, path, "json")
    assert load_mesh_json(path).equals(m)
    with pytest.raises(ValueError):
        export_mesh(m, tmp_path / "m.xyz", "xyz")


def test_polylines():
    text = polylines_obj([np.zeros((3, 3)), np.ones((2, 3)), np.full((1, 3), np.nan)])
    assert text.count("\nl ") + text.startswith("l ") == 2
    assert "l 4 5" in text


def test_config_validation_paths():
    with pytest.raises(ConfigError) as exc:
        validate({"cyclide": {"torus": {"R": "big", "r": 1}}})
    assert exc.value.path == "cyclide.torus.R"
    with pytest.raises(ConfigError) as exc:
        validate({"samples": [1, 4]})
    assert exc.value.path == "samples.0"
    with pytest.raises(ConfigError) as exc:
        validate({"bogus": 1})
    assert exc.value.path == "<root>"


def test_config_references(tmp_path):
    path = tmp_path / "s.yaml"
    path.write_text("primitives:\n  s: {sphere: {center: [0, 0, 0], radius: 1}}\n"
                    "blend: {s1: s, s2: missing, circle: s}\n")
    scene = load_config(path)
    np.testing.assert_allclose(scene.sphere_vector("s", "x"), [0, 0, 0, 1, 0, 1])
    with pytest.raises(ConfigError) as exc:
        scene.sphere_vector("missing", "blend.s2")
    assert exc.value.path == "blend.s2"
    with pytest.raises(ConfigError):
        scene.circle("s", "blend.circle")
    with pytest.raises(ConfigError):
        scene.complex_vector()


def test_config_yaml_error(tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text("a: [1, 2\n")
    with pytest.raises(ConfigError):
        load_config(path)
