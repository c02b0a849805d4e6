"""Hyperideal triangles and the holonomy of the two-holed cross surface.

The triangle is cut out by three pairwise ultraparallel geodesics: the
fixed lines of two reflections (duals w1, w2, determined by the
distances d, u1, u2) and a third geodesic through the base point
p0 = (0,0,1) at angle theta (dual w0).  The Coxeter group is generated
by the two spine reflections and the point symmetry at p0; the surface
group sits inside it with index two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyInterval, InvalidConfiguration
from .isometry import (
    IsometryClass,
    LinearIsometry,
    expect_class,
    neutral_vector,
    point_symmetry,
    spine_reflection,
)
from .minkowski import MinkVector, consistently_oriented, lorentz_dot, ultraparallel

P0 = MinkVector(0.0, 0.0, 1.0)

_THETA_GRID = 1440
_BISECT_STEPS = 80


def _check_base_params(d: float, u1: float, u2: float) -> None:
    for name, val in (("d", d), ("u1", u1), ("u2", u2)):
        if not math.isfinite(val):
            raise InvalidConfiguration(f"parameter {name} is not finite")
    if d < 0:
        raise InvalidConfiguration(f"d must be nonnegative, got {d}")
    if u1 <= 0 or u2 <= 0:
        raise InvalidConfiguration(f"u1, u2 must be positive, got {u1}, {u2}")


@dataclass(frozen=True)
class TriangleParams:
    """The four reals pinning the hyperideal triangle.

    d is the distance from the midpoint of the common perpendicular to
    p0, u1 and u2 the distances from that midpoint to the two
    reflection lines, theta the angle of the third geodesic at p0.
    Validates admissibility on construction.
    """

    d: float
    u1: float
    u2: float
    theta: float

    def __post_init__(self):
        _check_base_params(self.d, self.u1, self.u2)
        if not math.isfinite(self.theta):
            raise InvalidConfiguration("theta is not finite")
        # Raises InvalidConfiguration when theta is outside the
        # admissible range for (d, u1, u2).
        _canonical_sides(self.d, self.u1, self.u2, self.theta)


@dataclass(frozen=True)
class SideVectors:
    """Unit spacelike duals of the triangle sides, canonically signed."""

    w1: MinkVector
    w2: MinkVector
    w0: MinkVector


@dataclass(frozen=True, eq=False)
class HolonomyGroup:
    """Generators and distinguished elements of the Coxeter extension.

    RX, RY are the spine reflections in the sides w1, w2; i0 the point
    symmetry at p0.  The index-two surface group is generated by the
    glide reflections X = RX i0 and Y = i0 RY, with boundary classes
    A = XY and B = Y^-1 X.  X0..B0 are the oriented neutral vectors.
    """

    sides: SideVectors
    p0: MinkVector
    RX: LinearIsometry
    RY: LinearIsometry
    i0: LinearIsometry
    X: LinearIsometry
    Y: LinearIsometry
    A: LinearIsometry
    B: LinearIsometry
    X0: MinkVector
    Y0: MinkVector
    A0: MinkVector
    B0: MinkVector


def _raw_sides(d: float, u1: float, u2: float, theta: float):
    """Side duals before sign canonicalization.

    The third component sinh(u_i) cosh(d) is forced by unit norm:
    cosh^2 u + sinh^2 u sinh^2 d - sinh^2 u cosh^2 d = 1.  The second
    side is mirrored across the common perpendicular, hence the sign
    flips.
    """
    w1 = MinkVector(math.cosh(u1), math.sinh(u1) * math.sinh(d), math.sinh(u1) * math.cosh(d))
    w2 = MinkVector(math.cosh(u2), -math.sinh(u2) * math.sinh(d), -math.sinh(u2) * math.cosh(d))
    w0 = MinkVector(math.cos(theta), math.sin(theta), 0.0)
    return w1, w2, w0


def _canonical_sides(d: float, u1: float, u2: float, theta: float) -> SideVectors:
    w1, w2, w0 = _raw_sides(d, u1, u2, theta)
    if not (ultraparallel(w1, w2) and ultraparallel(w1, w0) and ultraparallel(w2, w0)):
        raise InvalidConfiguration(
            f"sides are not pairwise ultraparallel for (d={d}, u1={u1}, u2={u2}, theta={theta})"
        )
    d12 = lorentz_dot(w1, w2)
    d10 = lorentz_dot(w1, w0)
    d20 = lorentz_dot(w2, w0)
    if d12 * d10 * d20 >= 0:
        raise InvalidConfiguration("no sign assignment makes all pairwise products negative")
    # Pairwise negativity forces the signs up to a global flip, and the
    # null-frame conditions reject the flip, so at most one candidate
    # below survives.
    s2 = -1.0 if d12 > 0 else 1.0
    s0 = -1.0 if d10 > 0 else 1.0
    for candidate in (
        (w1, s2 * w2, s0 * w0),
        (-w1, -s2 * w2, -s0 * w0),
    ):
        if consistently_oriented(*candidate):
            return SideVectors(*candidate)
    raise InvalidConfiguration("sides cannot be consistently oriented")


def side_vectors(params: TriangleParams) -> SideVectors:
    """Canonically signed side duals of the triangle of params."""
    return _canonical_sides(params.d, params.u1, params.u2, params.theta)


def _admissible(d: float, u1: float, u2: float, theta: float) -> bool:
    try:
        _canonical_sides(d, u1, u2, theta)
        return True
    except InvalidConfiguration:
        return False


def theta_interval(d: float, u1: float, u2: float) -> tuple[float, float]:
    """Maximal open interval of admissible theta, one period long at most.

    theta and theta + pi describe the same geodesic, so the search runs
    over a circle of circumference pi.  Candidate angles come from the
    closed-form tangency conditions |<w0, w_i>| = 1; the reported
    endpoints are refined by bisection on the full admissibility
    predicate and satisfy the tangency condition to ~1e-10.  The
    returned interval may straddle the period boundary, in which case
    hi > pi.
    """
    _check_base_params(d, u1, u2)
    n = _THETA_GRID
    step = math.pi / n
    grid = np.arange(n) * step
    ch1, sh1 = math.cosh(u1), math.sinh(u1)
    ch2, sh2 = math.cosh(u2), math.sinh(u2)
    sd = math.sinh(d)
    dot1 = np.cos(grid) * ch1 + np.sin(grid) * sh1 * sd
    dot2 = np.cos(grid) * ch2 - np.sin(grid) * sh2 * sd
    cand = (dot1 * dot1 > 1.0) & (dot2 * dot2 > 1.0)
    ok = np.zeros(n, dtype=bool)
    for i in np.nonzero(cand)[0]:
        ok[i] = _admissible(d, u1, u2, float(grid[i]))
    if not ok.any():
        raise EmptyInterval(f"no admissible theta for (d={d}, u1={u1}, u2={u2})")
    if ok.all():
        raise EmptyInterval("admissibility has no boundary on the grid; cannot isolate an interval")

    # Longest circular run of admissible grid points.
    runs = []
    idx = np.nonzero(ok)[0]
    start = prev = int(idx[0])
    for i in idx[1:]:
        if i == prev + 1:
            prev = int(i)
        else:
            runs.append((start, prev))
            start = prev = int(i)
    runs.append((start, prev))
    if ok[0] and ok[-1] and len(runs) > 1:
        first = runs.pop(0)
        last = runs.pop()
        runs.append((last[0], first[1] + n))
    runs.sort(key=lambda r: (-(r[1] - r[0]), r[0]))
    lo_i, hi_i = runs[0]

    def refine(inside: float, outside: float) -> float:
        for _ in range(_BISECT_STEPS):
            mid = 0.5 * (inside + outside)
            if _admissible(d, u1, u2, mid):
                inside = mid
            else:
                outside = mid
            if abs(inside - outside) < 1e-13:
                break
        return inside

    lo = refine(lo_i * step, (lo_i - 1) * step)
    hi = refine(hi_i * step, (hi_i + 1) * step)
    if hi <= lo:
        hi += math.pi
    return lo, hi


def group_from_sides(w1: MinkVector, w2: MinkVector, w0: MinkVector) -> HolonomyGroup:
    """Assemble the Coxeter extension from explicit side duals.

    Callers are responsible for the configuration checks; this only
    verifies that the assembled elements classify as expected.
    """
    rx = spine_reflection(w1)
    ry = spine_reflection(w2)
    i0 = point_symmetry(P0)
    x = rx @ i0
    y = i0 @ ry
    a = rx @ ry
    b = ry @ i0 @ rx @ i0
    expect_class(rx, IsometryClass.LINE_REFLECTION, "RX")
    expect_class(ry, IsometryClass.LINE_REFLECTION, "RY")
    expect_class(i0, IsometryClass.ELLIPTIC_INVOLUTION, "i0")
    expect_class(x, IsometryClass.GLIDE_REFLECTION, "X")
    expect_class(y, IsometryClass.GLIDE_REFLECTION, "Y")
    expect_class(a, IsometryClass.HYPERBOLIC, "A")
    expect_class(b, IsometryClass.HYPERBOLIC, "B")
    return HolonomyGroup(
        sides=SideVectors(w1, w2, w0),
        p0=P0,
        RX=rx,
        RY=ry,
        i0=i0,
        X=x,
        Y=y,
        A=a,
        B=b,
        X0=neutral_vector(x),
        Y0=neutral_vector(y),
        A0=neutral_vector(a),
        B0=neutral_vector(b),
    )


def holonomy(params: TriangleParams) -> HolonomyGroup:
    """Holonomy group of the Coxeter extension for the given triangle."""
    sides = side_vectors(params)
    return group_from_sides(sides.w1, sides.w2, sides.w0)


def coxeter_check(g: HolonomyGroup) -> dict[str, float]:
    """Max-norm residuals of the defining identities of the group."""

    def resid(m: np.ndarray, target: np.ndarray) -> float:
        return float(np.max(np.abs(m - target)))

    eye = np.eye(3)
    x_inv = g.X.inverse().m
    y_inv = g.Y.inverse().m
    return {
        "RX_squared": resid(g.RX.m @ g.RX.m, eye),
        "RY_squared": resid(g.RY.m @ g.RY.m, eye),
        "i0_squared": resid(g.i0.m @ g.i0.m, eye),
        "X_factorization": resid(g.X.m, g.RX.m @ g.i0.m),
        "Y_factorization": resid(g.Y.m, g.i0.m @ g.RY.m),
        "A_product": resid(g.A.m, g.X.m @ g.Y.m),
        "B_product": resid(g.B.m, y_inv @ g.X.m),
        "i0_X_conjugation": resid(g.i0.m @ g.X.m @ g.i0.m, x_inv),
        "i0_Y_conjugation": resid(g.i0.m @ g.Y.m @ g.i0.m, y_inv),
        "B_Xinv_Y": resid(g.B.m @ x_inv @ g.Y.m, eye),
    }
