"""Linear algebra of Minkowski space R^{2,1}.

Coordinates are (x, y, t) with the bilinear form diag(+1, +1, -1); the
third coordinate is timelike and the future is t > 0.  Everything here
is a pure function of immutable values, safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DegenerateFrame, DomainError, NotSpacelike

# Causal classification threshold, relative to the squared max-norm.
EPS_NULL = 1e-10
# Margin used by geometric predicates (ultraparallelism, orientation).
EPS_GEO = 1e-9

# Matrix of the form in the (x, y, t) basis.
FORM = np.diag([1.0, 1.0, -1.0])


@dataclass(frozen=True)
class MinkVector:
    """A vector of R^{2,1} in the (x, y, t) coordinates."""

    x: float
    y: float
    t: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y) and math.isfinite(self.t)):
            raise DomainError(f"non-finite coordinates: ({self.x}, {self.y}, {self.t})")

    @classmethod
    def from_array(cls, a) -> "MinkVector":
        return cls(float(a[0]), float(a[1]), float(a[2]))

    @property
    def vec(self) -> np.ndarray:
        return np.array([self.x, self.y, self.t])

    def maxnorm(self) -> float:
        return max(abs(self.x), abs(self.y), abs(self.t))

    def __add__(self, other: "MinkVector") -> "MinkVector":
        return MinkVector(self.x + other.x, self.y + other.y, self.t + other.t)

    def __sub__(self, other: "MinkVector") -> "MinkVector":
        return MinkVector(self.x - other.x, self.y - other.y, self.t - other.t)

    def __neg__(self) -> "MinkVector":
        return MinkVector(-self.x, -self.y, -self.t)

    def __mul__(self, s: float) -> "MinkVector":
        return MinkVector(self.x * s, self.y * s, self.t * s)

    __rmul__ = __mul__


ZERO = MinkVector(0.0, 0.0, 0.0)


class CausalClass(Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    NULL = "null"
    ZERO = "zero"


@dataclass(frozen=True)
class NullFrame:
    """The two future null directions of a spacelike vector's orthogonal plane.

    Both vectors are scaled to t = 1 exactly and ordered so that
    det(w_minus, w_plus, w_unit) > 0 for the owning (unit-normalized)
    spacelike vector.  The frame depends only on the direction of the
    owner, not its length.
    """

    w_minus: MinkVector
    w_plus: MinkVector


def lorentz_dot(a: MinkVector, b: MinkVector) -> float:
    """Signature (+,+,-) inner product."""
    return a.x * b.x + a.y * b.y - a.t * b.t


def box_product(a: MinkVector, b: MinkVector) -> MinkVector:
    """Lorentzian cross product, defined by lorentz_dot(a box b, c) = det(a, b, c).

    In coordinates this is the Euclidean cross product with the t
    component negated.
    """
    cx = a.y * b.t - a.t * b.y
    cy = a.t * b.x - a.x * b.t
    ct = a.x * b.y - a.y * b.x
    return MinkVector(cx, cy, -ct)


def causal_class(v: MinkVector, eps: float = EPS_NULL) -> CausalClass:
    """Classify v as spacelike, timelike, null or zero.

    Null means |<v,v>| below eps times the squared max-norm of v, so the
    classification is scale invariant.
    """
    m = v.maxnorm()
    if m < eps:
        return CausalClass.ZERO
    q = lorentz_dot(v, v)
    if abs(q) < eps * m * m:
        return CausalClass.NULL
    return CausalClass.SPACELIKE if q > 0 else CausalClass.TIMELIKE


def unit_spacelike(v: MinkVector) -> MinkVector:
    """Scale a spacelike vector to <v,v> = 1."""
    if causal_class(v) is not CausalClass.SPACELIKE:
        raise NotSpacelike(f"expected a spacelike vector, got {v}")
    return v * (1.0 / math.sqrt(lorentz_dot(v, v)))


def det3(a: MinkVector, b: MinkVector, c: MinkVector) -> float:
    """Determinant of the coordinate matrix with rows a, b, c."""
    return float(np.linalg.det(np.array([a.vec, b.vec, c.vec])))


def null_frame(w: MinkVector) -> NullFrame:
    """Null frame {w^-, w^+} of a spacelike w.

    The orthogonal plane of a spacelike vector meets the light cone in
    two lines; each carries a unique future vector with t = 1.  The pair
    is ordered so {w^-, w^+, w} is right-handed (positive determinant
    with the unit normalization of w).  Consequently the frame of -w is
    the frame of w with the two vectors swapped.
    """
    u = unit_spacelike(w)
    r2 = u.x * u.x + u.y * u.y
    # For unit spacelike u, r2 - t^2 = 1; anything near zero means the
    # orthogonal plane is tangent to the cone, which spacelike inputs
    # cannot produce.
    if r2 - u.t * u.t < 0.5:
        raise DegenerateFrame(f"orthogonal plane nearly tangent to the light cone: {w}")
    a1 = (u.t * u.x - u.y) / r2
    b1 = (u.t * u.y + u.x) / r2
    a2 = (u.t * u.x + u.y) / r2
    b2 = (u.t * u.y - u.x) / r2
    n1 = MinkVector(a1, b1, 1.0)
    n2 = MinkVector(a2, b2, 1.0)
    if det3(n1, n2, u) > 0:
        return NullFrame(n1, n2)
    return NullFrame(n2, n1)


def ultraparallel(v: MinkVector, w: MinkVector) -> bool:
    """Whether the geodesics dual to two spacelike vectors are ultraparallel.

    Equivalent to <v,w>^2 > <v,v><w,w> with margin EPS_GEO after unit
    normalization; the dual geodesics are then disjoint with a common
    perpendicular.
    """
    uv = unit_spacelike(v)
    uw = unit_spacelike(w)
    d = lorentz_dot(uv, uw)
    return d * d - 1.0 > EPS_GEO


def consistently_oriented(v1: MinkVector, v2: MinkVector, v3: MinkVector) -> bool:
    """Check the consistent-orientation condition for three spacelike vectors.

    Requires, for every ordered pair i != j, that <v_i, v_j> < 0 and
    that v_i pairs nonpositively with both null frame vectors of v_j.
    Invariant under permutations of the arguments.
    """
    us = [unit_spacelike(v) for v in (v1, v2, v3)]
    frames = [null_frame(u) for u in us]
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            if lorentz_dot(us[i], us[j]) >= -EPS_GEO:
                return False
            fj = frames[j]
            if lorentz_dot(us[i], fj.w_minus) > EPS_GEO:
                return False
            if lorentz_dot(us[i], fj.w_plus) > EPS_GEO:
                return False
    return True
