"""Scene configuration: a YAML (or JSON) document validated by a JSON schema.

Example::

    primitives:
      inner: {sphere: {center: [0, 0, 0], radius: 1}}
      outer: {sphere: {center: [0, 0, 0], radius: 2}}
      lat:   {circle: [[0.866, 0, 0.5], [0, 0.866, 0.5], [-0.866, 0, 0.5]]}
    blend: {s1: inner, s2: outer, circle: lat}
    samples: [32, 16]
"""
from dataclasses import dataclass

import numpy as np
import jsonschema
import yaml

from .euclid import INFINITY, circle_through_points, lift_plane, lift_point, lift_sphere
from .minkowski import P, mobius_part

_vec3 = {"type": "array", "items": {"type": "number"}, "minItems": 3, "maxItems": 3}
_vec6 = {"type": "array", "items": {"type": "number"}, "minItems": 6, "maxItems": 6}
_interval = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}

PRIMITIVE_SCHEMA = {
    "type": "object",
    "minProperties": 1,
    "maxProperties": 1,
    "properties": {
        "sphere": {
            "type": "object",
            "required": ["center", "radius"],
            "properties": {"center": _vec3, "radius": {"type": "number"}},
            "additionalProperties": False,
        },
        "plane": {
            "type": "object",
            "required": ["normal"],
            "properties": {"normal": _vec3, "offset": {"type": "number"}},
            "additionalProperties": False,
        },
        "point": _vec3,
        "circle": {"type": "array", "items": _vec3, "minItems": 3, "maxItems": 3},
    },
    "additionalProperties": False,
}

SCHEMA = {
    "type": "object",
    "properties": {
        "kind": {"enum": ["cyclide", "lame", "blend", "subdivide", "cube", "net"]},
        "primitives": {"type": "object", "additionalProperties": PRIMITIVE_SCHEMA},
        "cyclide": {
            "type": "object",
            "minProperties": 1,
            "maxProperties": 1,
            "properties": {
                "torus": {
                    "type": "object",
                    "required": ["R", "r"],
                    "properties": {"R": {"type": "number"}, "r": {"type": "number"},
                                   "allow_singular": {"type": "boolean"}},
                    "additionalProperties": False,
                },
                "spheres": {"type": "array", "items": {"type": "string"},
                            "minItems": 3, "maxItems": 3},
            },
            "additionalProperties": False,
        },
        "family": {"enum": [1, 2]},
        "t0": {"type": "number"},
        "samples": {"type": "array", "items": {"type": "integer", "minimum": 2},
                    "minItems": 2, "maxItems": 2},
        "complex": {
            "type": "object",
            "minProperties": 1,
            "maxProperties": 1,
            "properties": {
                "vector": _vec6,
                "sphere": {"type": "string"},
                "euclidean": {"const": True},
            },
            "additionalProperties": False,
        },
        "params": {"type": "array", "items": {"type": "number"}},
        "blend": {
            "type": "object",
            "required": ["s1", "s2", "circle"],
            "properties": {"s1": {"type": "string"}, "s2": {"type": "string"},
                           "circle": {"type": "string"}, "orientation": {"enum": ["+", "-"]}},
            "additionalProperties": False,
        },
        "subdivide": {
            "type": "object",
            "required": ["t1", "t2"],
            "properties": {"t1": {"type": "number"}, "t2": {"type": "number"},
                           "depth": {"type": "integer", "minimum": 0, "maximum": 12},
                           "other_patch": {"type": "boolean"}},
            "additionalProperties": False,
        },
        "cube": {
            "type": "object",
            "required": ["u", "v", "beta"],
            "properties": {"u": _interval, "v": _interval, "beta": _interval,
                           "face_samples": {"type": "integer", "minimum": 2}},
            "additionalProperties": False,
        },
        "thresholds": {
            "type": "object",
            "properties": {"circle_fit": {"type": "number"}, "incidence": {"type": "number"},
                           "angle": {"type": "number"}, "concircular": {"type": "number"}},
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}

DEFAULT_THRESHOLDS = {"circle_fit": 1e-8, "incidence": 1e-8, "angle": 1e-6, "concircular": 1e-8}


class ConfigError(ValueError):
    """Schema or reference error; ``path`` names the offending key."""

    def __init__(self, message, path=""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


def load_config(path):
    with open(path) as fh:
        text = fh.read()
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"unparsable config: {exc}") from exc
    return validate(data if data is not None else {})


def validate(data):
    validator = jsonschema.Draft7Validator(SCHEMA)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        path = ".".join(str(x) for x in err.absolute_path) or "<root>"
        raise ConfigError(err.message, path)
    return Scene(data)


@dataclass
class Scene:
    data: dict

    def get(self, key, default=None):
        return self.data.get(key, default)

    @property
    def thresholds(self):
        t = dict(DEFAULT_THRESHOLDS)
        t.update(self.data.get("thresholds", {}))
        return t

    def primitive(self, name, path):
        prims = self.data.get("primitives", {})
        if name not in prims:
            raise ConfigError(f"undefined primitive {name!r}", path)
        return prims[name]

    def sphere_vector(self, name, path):
        spec = self.primitive(name, path)
        if "sphere" in spec:
            return lift_sphere(spec["sphere"]["center"], spec["sphere"]["radius"])
        if "plane" in spec:
            return lift_plane(spec["plane"]["normal"], spec["plane"].get("offset", 0.0))
        if "point" in spec:
            return lift_point(spec["point"])
        raise ConfigError(f"primitive {name!r} is not a sphere, plane or point", path)

    def circle(self, name, path):
        spec = self.primitive(name, path)
        if "circle" not in spec:
            raise ConfigError(f"primitive {name!r} is not a circle", path)
        return circle_through_points(*np.asarray(spec["circle"], dtype=float))

    def complex_vector(self, path="complex"):
        spec = self.data.get("complex")
        if spec is None:
            raise ConfigError("a complex is required", path)
        if "vector" in spec:
            return np.asarray(spec["vector"], dtype=float)
        if "euclidean" in spec:
            return INFINITY.copy()
        return mobius_part(self.sphere_vector(spec["sphere"], path + ".sphere"), P)

    def samples(self, override=None):
        if override:
            return override
        return tuple(self.data.get("samples", [32, 32]))
