"""Command line front end.

    cyclidic VERB --config scene.yaml --out outdir [--samples UxT] [--seed N]

Verbs: cyclide, lame, blend, subdivide, cube, net, check. Exit codes:
0 success, 2 configuration error, 3 geometric precondition failure,
4 I/O error.
"""
import argparse
import json
import os
import sys

import numpy as np

from . import checks
from .apps import BlendSpec, blend, cyclidic_cube, discrete_net, midpoint_residual, subdivide
from .config import ConfigError, Scene, load_config
from .cyclide import DupinCyclide, EvolutionMap, cyclide_from_torus, evolve_circle
from .dc_system import congruence_circle, lame_family, parallel_check
from .errors import GeometryError
from .euclid import fit_circle, project_points, sample_circle_euclidean
from .incidence import circle_on_sphere_residual, circle_orthogonality_residual
from .mesh import QuadMesh, export_mesh, polylines_obj
from .minkowski import ETA, P

VERBS = ("cyclide", "lame", "blend", "subdivide", "cube", "net", "check")


class Report:
    def __init__(self, verb):
        self.data = {"verb": verb, "status": "ok", "residuals": {}, "outputs": [], "info": {}}

    def residual(self, name, values):
        v = np.asarray(values, dtype=float).ravel()
        v = v[np.isfinite(v)]
        if len(v) == 0:
            return
        self.data["residuals"][name] = {"max": float(v.max()), "mean": float(v.mean()),
                                        "count": int(len(v))}

    def info(self, key, value):
        self.data["info"][key] = value


def _parse_samples(text):
    if text is None:
        return None
    try:
        u, t = text.lower().split("x")
        return int(u), int(t)
    except ValueError:
        raise ConfigError(f"--samples expects UxT, got {text!r}", "--samples")


def _cyclide(scene: Scene):
    spec = scene.get("cyclide")
    if spec is None:
        raise ConfigError("a cyclide is required", "cyclide")
    if "torus" in spec:
        t = spec["torus"]
        return cyclide_from_torus(t["R"], t["r"], t.get("allow_singular", False))
    vecs = [scene.sphere_vector(n, f"cyclide.spheres.{k}") for k, n in enumerate(spec["spheres"])]
    return DupinCyclide.from_spheres(*vecs)


def _grid_residuals(report, V, prefix, skip_rows=None):
    """Circle-fit residuals of all rows and columns of a (T, U, 6) grid."""
    pts, flags = project_points(V)
    T, U = pts.shape[:2]
    res = []
    for k in range(T):
        if skip_rows is not None and skip_rows[k]:
            continue
        row = pts[k][~flags[k]]
        if len(row) >= 4 and np.all(np.isfinite(row)):
            res.append(fit_circle(row)[3])
    for j in range(U):
        col = pts[:, j]
        ok = np.all(np.isfinite(col), axis=1)
        if ok.sum() >= 4:
            res.append(fit_circle(col[ok])[3])
    report.residual(prefix + "circle_fit", res)
    return pts, flags


def _write(report, outdir, name, text):
    path = os.path.join(outdir, name)
    with open(path, "w") as fh:
        fh.write(text)
    report.data["outputs"].append(name)


def _write_mesh(report, outdir, stem, mesh):
    export_mesh(mesh, os.path.join(outdir, stem + ".obj"), "obj")
    export_mesh(mesh, os.path.join(outdir, stem + ".json"), "json")
    report.data["outputs"] += [stem + ".obj", stem + ".json"]


def run_cyclide(scene, outdir, samples, seed, report):
    d = _cyclide(scene)
    fam = d.family(scene.get("family", 1))
    t0 = scene.get("t0", 0.0)
    e = EvolutionMap(fam, t0)
    U, T = samples
    ts = t0 + 2 * np.pi * np.arange(T) / T
    grid = evolve_circle(e, fam.curvature_circle(t0), U, ts)
    pts, flags = _grid_residuals(report, grid.vectors, "", grid.skipped_rows)
    inc = []
    S = fam.spheres(ts)
    for k in range(T):
        if grid.skipped_rows[k]:
            continue
        X = grid.vectors[k]
        inc += list(np.abs(X @ (ETA * S[k])) / (np.linalg.norm(X, axis=1) * np.linalg.norm(S[k])))
    report.residual("incidence", inc)
    report.residual("splitting", [d.splitting_residual()])
    report.info("singular_parameters", grid.singular_t)
    mesh = QuadMesh.from_grid(pts, grid.t, grid.u, flags, wrap_u=True, wrap_t=True,
                              metadata={"family": fam.index, "singular_t": grid.singular_t})
    _write_mesh(report, outdir, "cyclide", mesh)


def run_lame(scene, outdir, samples, seed, report):
    d = _cyclide(scene)
    a = scene.complex_vector()
    params = scene.get("params")
    if not params:
        raise ConfigError("member parameters are required", "params")
    fam, members, skipped = lame_family(d, a, P, params)
    report.info("family_type", fam.family_type.name)
    report.info("skipped_null_parameters", [float(x) for x in skipped])
    U, T = samples
    us = 2 * np.pi * np.arange(U) / U
    vs = 2 * np.pi * np.arange(T) / T
    for k, (t, m) in enumerate(members):
        V = m.points(us, vs)
        pts, flags = _grid_residuals(report, V, f"member{k}_")
        mesh = QuadMesh.from_grid(pts, us, vs, flags, wrap_u=True, wrap_t=True,
                                  metadata={"member_index": k, "param": float(t),
                                            "family_type": fam.family_type.name})
        _write_mesh(report, outdir, f"member_{k:02d}", mesh)
    rng = np.random.default_rng(seed)
    lines, fit, orth = [], [], []
    for u, v in rng.uniform(0, 2 * np.pi, size=(8, 2)):
        g = congruence_circle(d, a, u, v)
        X = np.array([m.point(u, v) for _, m in members])
        pts, flags = project_points(X)
        if len(members) >= 4 and not flags.any() and fam.family_type.name != "TYPE1":
            fit.append(fit_circle(pts)[3])
        for _, m in members:
            for s in (m.family(1).sphere(u), m.family(2).sphere(v)):
                orth.append(circle_orthogonality_residual(g, s))
        cpts, cflags = sample_circle_euclidean(g, 64)
        lines.append(cpts)
    report.residual("trajectory_circle_fit", fit)
    report.residual("trajectory_orthogonality", orth)
    pr = parallel_check(fam, [t for t, _ in members], seed=seed)
    if pr.supported:
        report.residual("trajectory_collinearity", [pr.collinearity_max])
        report.residual("parallel_offset_std", [pr.offset_std_max])
    else:
        report.info("parallel_check", pr.reason)
    _write(report, outdir, "trajectories.obj", polylines_obj(lines))


def run_blend(scene, outdir, samples, seed, report):
    spec = scene.get("blend")
    if spec is None:
        raise ConfigError("a blend section is required", "blend")
    s1 = scene.sphere_vector(spec["s1"], "blend.s1")
    s2 = scene.sphere_vector(spec["s2"], "blend.s2")
    g1 = scene.circle(spec["circle"], "blend.circle")
    U, T = samples
    res = blend(BlendSpec(s1, s2, g1), P, spec.get("orientation", "+"), U, T)
    pencil, grid = res.pencil, res.grid
    pts, flags = _grid_residuals(report, grid.vectors, "", grid.skipped_rows)
    report.residual("contact", [res.contact_residual])
    report.residual("gamma2_on_s2", [circle_on_sphere_residual(res.gamma2, s2)])
    report.info("pencil", pencil.kind.name)
    mesh = QuadMesh.from_grid(pts, grid.t, grid.u, flags, wrap_u=True,
                              metadata={"pencil": pencil.kind.name})
    _write_mesh(report, outdir, "blend", mesh)


def run_subdivide(scene, outdir, samples, seed, report):
    d = _cyclide(scene)
    spec = scene.get("subdivide")
    if spec is None:
        raise ConfigError("a subdivide section is required", "subdivide")
    fam = d.family(scene.get("family", 1))
    s1, s2 = fam.sphere(spec["t1"]), fam.sphere(spec["t2"])
    depth = spec.get("depth", 3)
    sd = subdivide(d, s1, s2, depth, P, spec.get("other_patch", False))
    params = sd.params
    rel = [midpoint_residual(d, sd.family, params[j], params[j + 1], params[j + 2])
           for j in range(0, len(params) - 2, 2)]
    report.residual("midpoint", rel)
    U = samples[0]
    lines, fits = [], []
    for c in sd.circles:
        pts, flags = sample_circle_euclidean(c, U)
        fits.append(fit_circle(pts[~flags])[3])
        lines.append(np.vstack([pts, pts[:1]]))
    report.residual("circle_fit", fits)
    report.info("params", [float(x) for x in params])
    _write(report, outdir, "circles.obj", polylines_obj(lines))


def run_cube(scene, outdir, samples, seed, report):
    d = _cyclide(scene)
    a = scene.complex_vector()
    spec = scene.get("cube")
    if spec is None:
        raise ConfigError("a cube section is required", "cube")
    fam, _, _ = lame_family(d, a, P, [])
    cube = cyclidic_cube(fam, spec["u"], spec["v"], spec["beta"], P, spec.get("face_samples", 5))
    report.residual("face_concircularity", list(cube.face_concircularity().values()))
    report.residual("edge_angle", list(cube.edge_angles().values()))
    report.residual("diagonal_concircularity", list(cube.diagonal_concircularity()))
    report.info("family_type", fam.family_type.name)
    for (ax, side), grid in sorted(cube.faces.items()):
        pts, flags = project_points(grid)
        n = grid.shape[0]
        mesh = QuadMesh.from_grid(pts, np.arange(n), np.arange(n), flags,
                                  metadata={"face": f"{ax}{side}"})
        _write_mesh(report, outdir, f"face_{ax}{side}", mesh)


def run_net(scene, outdir, samples, seed, report):
    d = _cyclide(scene)
    fam = d.family(scene.get("family", 1))
    t0 = scene.get("t0", 0.0)
    e = EvolutionMap(fam, t0)
    U, T = samples
    params = scene.get("params") or list(t0 + 2 * np.pi * np.arange(1, T) / T)
    A = np.array([e.complex(t) for t in params])
    c0 = fam.curvature_circle(t0).points(2 * np.pi * np.arange(U) / U)
    net = discrete_net(c0, A, P)
    report.residual("quad_concircularity", net.quad_concircularity())
    pts, flags = project_points(net.vertices)
    mesh = QuadMesh.from_grid(pts, np.r_[t0, params], np.arange(U), flags, wrap_u=True)
    _write_mesh(report, outdir, "net", mesh)


def run_check(scene, outdir, samples, seed, report):
    for name, errs in checks.kernel_suite(10000, seed).items():
        report.residual("kernel_" + name, errs)
    for name, errs in checks.bridge_suite(1000, seed).items():
        report.residual("bridge_" + name, errs)


RUNNERS = {"cyclide": run_cyclide, "lame": run_lame, "blend": run_blend,
           "subdivide": run_subdivide, "cube": run_cube, "net": run_net, "check": run_check}


def build_parser():
    ap = argparse.ArgumentParser(prog="cyclidic", description=__doc__.split("\n\n")[0])
    ap.add_argument("verb", choices=VERBS)
    ap.add_argument("--config", help="scene file (YAML or JSON)")
    ap.add_argument("--out", default=".", help="output directory")
    ap.add_argument("--samples", help="grid size UxT, overrides the config")
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    report = Report(args.verb)
    code = 0
    try:
        if args.config is None:
            if args.verb != "check":
                raise ConfigError("--config is required", "--config")
            scene = Scene({})
        else:
            scene = load_config(args.config)
        kind = scene.get("kind")
        if kind is not None and kind != args.verb:
            raise ConfigError(f"config is for {kind!r}, not {args.verb!r}", "kind")
        samples = scene.samples(_parse_samples(args.samples))
        os.makedirs(args.out, exist_ok=True)
        RUNNERS[args.verb](scene, args.out, samples, args.seed, report)
    except ConfigError as exc:
        report.data.update(status="config_error", error=str(exc), path=exc.path)
        code = 2
    except GeometryError as exc:
        report.data.update(status="geometry_error", error=f"{type(exc).__name__}: {exc}")
        code = 3
    except OSError as exc:
        report.data.update(status="io_error", error=str(exc))
        code = 4
    text = json.dumps(report.data, indent=2, sort_keys=True)
    if code != 4:
        try:
            os.makedirs(args.out, exist_ok=True)
            with open(os.path.join(args.out, "report.json"), "w") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            report.data.update(status="io_error", error=str(exc))
            text = json.dumps(report.data, indent=2, sort_keys=True)
            code = 4
    print(text)
    if code:
        print(report.data.get("error", ""), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
