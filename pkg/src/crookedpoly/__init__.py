"""Affine deformations of two-holed cross-surface Coxeter groups.

Core pipeline: parametrize a hyperideal triangle, build the holonomy
group, deform it by stem-quadrant data, compute Margulis invariants,
and project the resulting cones to polygons in the plane of
H^1-coordinates.
"""

__version__ = "0.1.0"

from . import errors
from .minkowski import (
    EPS_GEO,
    EPS_NULL,
    CausalClass,
    MinkVector,
    NullFrame,
    box_product,
    causal_class,
    consistently_oriented,
    lorentz_dot,
    null_frame,
    ultraparallel,
)
from .isometry import (
    AffineIsometry,
    IsometryClass,
    LinearIsometry,
    affine_involution,
    apply,
    classify,
    compose,
    inverse,
    neutral_vector,
    point_symmetry,
    spine_reflection,
)
from .surface import (
    HolonomyGroup,
    SideVectors,
    TriangleParams,
    coxeter_check,
    group_from_sides,
    holonomy,
    side_vectors,
    theta_interval,
)

__all__ = [
    "errors",
    "EPS_GEO",
    "EPS_NULL",
    "CausalClass",
    "MinkVector",
    "NullFrame",
    "box_product",
    "causal_class",
    "consistently_oriented",
    "lorentz_dot",
    "null_frame",
    "ultraparallel",
    "AffineIsometry",
    "IsometryClass",
    "LinearIsometry",
    "affine_involution",
    "apply",
    "classify",
    "compose",
    "inverse",
    "neutral_vector",
    "point_symmetry",
    "spine_reflection",
    "HolonomyGroup",
    "SideVectors",
    "TriangleParams",
    "coxeter_check",
    "group_from_sides",
    "holonomy",
    "side_vectors",
    "theta_interval",
]
