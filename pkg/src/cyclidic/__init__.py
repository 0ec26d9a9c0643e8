"""Dupin cyclides and cyclidic systems in the Lie sphere model R^{4,2}."""
from . import errors
from ._kernels import backend
from .apps import (BlendSpec, blend, concircularity, cyclidic_cube, discrete_net,
                   midpoint_residual, subdivide)
from .cyclide import (DupinCyclide, EvolutionMap, SphereGrid, cyclide_from_torus, evolve_circle,
                      evolve_from_pencil, surface_from_pencil_and_circle, two_ortho_circle,
                      two_ortho_cyclide)
from .dc_system import (FamilyType, LameFamily, RibaucourPair, classify_family, congruence_circle,
                        lame_family, parallel_check, ribaucour_cyclide, ribaucour_transform)
from .errors import GeometryError
from .euclid import INFINITY, EuclidSphere, lift, lift_plane, lift_point, lift_sphere, project
from .incidence import Circle, MSpherePencil, PencilKind, circle_from_span, classify_pencil
from .mesh import QuadMesh, export_mesh
from .minkowski import (ETA, P, angle, complex_from_sphere_pair, inner, inversion_from_four_spheres,
                        inversive_distance, lie_inversion)

__version__ = "0.1.0"

__all__ = [
    "errors", "backend", "GeometryError",
    "BlendSpec", "blend", "concircularity", "cyclidic_cube", "discrete_net", "midpoint_residual",
    "subdivide",
    "DupinCyclide", "EvolutionMap", "SphereGrid", "cyclide_from_torus", "evolve_circle",
    "evolve_from_pencil", "surface_from_pencil_and_circle", "two_ortho_circle", "two_ortho_cyclide",
    "FamilyType", "LameFamily", "RibaucourPair", "classify_family", "congruence_circle",
    "lame_family", "parallel_check", "ribaucour_cyclide", "ribaucour_transform",
    "INFINITY", "EuclidSphere", "lift", "lift_plane", "lift_point", "lift_sphere", "project",
    "Circle", "MSpherePencil", "PencilKind", "circle_from_span", "classify_pencil",
    "QuadMesh", "export_mesh",
    "ETA", "P", "angle", "complex_from_sphere_pair", "inner", "inversion_from_four_spheres",
    "inversive_distance", "lie_inversion",
]
