"""Quad meshes from sampled grids, with OBJ and JSON writers."""
import json
from dataclasses import dataclass, field

import numpy as np


def _fmt(x):
    return repr(float(x))


@dataclass
class QuadMesh:
    vertices: np.ndarray           # (N, 3)
    quads: np.ndarray              # (M, 4) zero-based
    params: np.ndarray             # (N, 2)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.vertices = np.asarray(self.vertices, dtype=float).reshape(-1, 3)
        self.quads = np.asarray(self.quads, dtype=np.int64).reshape(-1, 4)
        self.params = np.asarray(self.params, dtype=float).reshape(-1, 2)
        if len(self.quads) and (self.quads.min() < 0 or self.quads.max() >= len(self.vertices)):
            raise ValueError("quad index out of range")

    @classmethod
    def from_grid(cls, points, params_t, params_u, flags=None, wrap_u=False, wrap_t=False,
                  metadata=None):
        """Row-major mesh of a (T, U, 3) grid; rows are t, columns u.

        Vertices flagged at infinity (or NaN) are dropped along with every
        quad that uses them; the counts go into the metadata.
        """
        points = np.asarray(points, dtype=float)
        T, U = points.shape[:2]
        bad = ~np.all(np.isfinite(points), axis=-1)
        if flags is not None:
            bad |= np.asarray(flags, dtype=bool)
        index = -np.ones((T, U), dtype=np.int64)
        keep = np.flatnonzero(~bad.ravel())
        index.ravel()[keep] = np.arange(len(keep))
        tt, uu = np.meshgrid(params_t, params_u, indexing="ij")
        quads, dropped = [], 0
        for i in range(T if wrap_t else T - 1):
            for j in range(U if wrap_u else U - 1):
                i2, j2 = (i + 1) % T, (j + 1) % U
                q = [index[i, j], index[i, j2], index[i2, j2], index[i2, j]]
                if min(q) < 0:
                    dropped += 1
                    continue
                quads.append(q)
        meta = dict(metadata or {})
        meta["dropped_vertices"] = int(bad.sum())
        meta["dropped_quads"] = dropped
        verts = points.reshape(-1, 3)[keep]
        prm = np.column_stack([uu.ravel()[keep], tt.ravel()[keep]])
        return cls(verts, np.array(quads, dtype=np.int64).reshape(-1, 4), prm, meta)

    def to_obj(self):
        lines = [f"# quads {len(self.quads)}"]
        lines += ["v " + " ".join(_fmt(c) for c in v) for v in self.vertices]
        lines += ["f " + " ".join(str(i + 1) for i in q) for q in self.quads]
        return "\n".join(lines) + "\n"

    def to_dict(self):
        return {
            "vertices": [[float(c) for c in v] for v in self.vertices],
            "quads": [[int(i) for i in q] for q in self.quads],
            "params": [[float(c) for c in v] for v in self.params],
            "metadata": self.metadata,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(np.array(d["vertices"], dtype=float), np.array(d["quads"], dtype=np.int64),
                   np.array(d["params"], dtype=float), dict(d.get("metadata", {})))

    def equals(self, other):
        return (np.array_equal(self.vertices, other.vertices)
                and np.array_equal(self.quads, other.quads)
                and np.array_equal(self.params, other.params)
                and self.metadata == other.metadata)


def export_mesh(m: QuadMesh, path, fmt="obj"):
    fmt = fmt.lower()
    with open(path, "w") as fh:
        if fmt == "obj":
            fh.write(m.to_obj())
        elif fmt == "json":
            json.dump(m.to_dict(), fh, indent=1, sort_keys=True)
        else:
            raise ValueError(f"unknown mesh format {fmt!r}")


def load_mesh_json(path):
    with open(path) as fh:
        return QuadMesh.from_dict(json.load(fh))


def polylines_obj(lines):
    """OBJ text with one 'l' element per polyline (list of (n, 3) arrays)."""
    out, base = [], 0
    verts, elems = [], []
    for pl in lines:
        pl = np.asarray(pl, dtype=float)
        pl = pl[np.all(np.isfinite(pl), axis=1)]
        if len(pl) < 2:
            continue
        verts += ["v " + " ".join(_fmt(c) for c in v) for v in pl]
        elems.append("l " + " ".join(str(base + k + 1) for k in range(len(pl))))
        base += len(pl)
    out = verts + elems
    return "\n".join(out) + "\n"
