"""Linear and affine isometries of R^{2,1}.

Linear isometries are 3x3 matrices preserving the form diag(+1,+1,-1).
Any such matrix with det = +1 has characteristic polynomial
(x - 1)(x^2 - s x + 1) with s = tr - 1, so classification and the
neutral 1-eigenvector reduce to closed-form expressions in the trace.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    ClassificationFailure,
    DomainError,
    EigenFailure,
    NotHyperbolicType,
    NotInvolution,
    NotSpacelike,
    NotTimelike,
)
from .minkowski import (
    FORM,
    CausalClass,
    MinkVector,
    causal_class,
    det3,
    lorentz_dot,
)

LORENTZ_TOL = 1e-9
INVOLUTION_TOL = 1e-9
SPECTRAL_GAP = 1e-9  # separates hyperbolic/glide trace from the parabolic value


class IsometryClass(Enum):
    IDENTITY = "Identity"
    ELLIPTIC_INVOLUTION = "EllipticInvolution"
    LINE_REFLECTION = "LineReflection"
    HYPERBOLIC = "Hyperbolic"
    GLIDE_REFLECTION = "GlideReflection"
    PARABOLIC = "Parabolic"
    OTHER = "Other"


@dataclass(frozen=True, eq=False)
class LinearIsometry:
    """Orthogonal transformation of the Lorentz form."""

    m: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.m, dtype=float)
        object.__setattr__(self, "m", m)
        if m.shape != (3, 3):
            raise DomainError(f"expected a 3x3 matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise DomainError("non-finite matrix entries")
        gram = m.T @ FORM @ m
        if np.max(np.abs(gram - FORM)) > LORENTZ_TOL * max(1.0, np.max(np.abs(m)) ** 2):
            raise DomainError("matrix does not preserve the Lorentz form")
        d = float(np.linalg.det(m))
        if min(abs(d - 1.0), abs(d + 1.0)) > LORENTZ_TOL:
            raise DomainError(f"determinant {d} is not +-1")

    def __matmul__(self, other: "LinearIsometry") -> "LinearIsometry":
        return LinearIsometry(self.m @ other.m)

    def apply(self, v: MinkVector) -> MinkVector:
        return MinkVector.from_array(self.m @ v.vec)

    def inverse(self) -> "LinearIsometry":
        # For Lorentz matrices the inverse is J m^T J.
        return LinearIsometry(FORM @ self.m.T @ FORM)

    def det(self) -> float:
        return float(np.linalg.det(self.m))

    def preserves_time_orientation(self) -> bool:
        return self.m[2, 2] > 0

    @classmethod
    def identity(cls) -> "LinearIsometry":
        return cls(np.eye(3))


@dataclass(frozen=True, eq=False)
class AffineIsometry:
    """Affine map x -> linear(x) + translation."""

    linear: LinearIsometry
    translation: MinkVector

    @classmethod
    def identity(cls) -> "AffineIsometry":
        return cls(LinearIsometry.identity(), MinkVector(0.0, 0.0, 0.0))


def compose(g: AffineIsometry, h: AffineIsometry) -> AffineIsometry:
    """Composite g o h under the semidirect product law."""
    return AffineIsometry(
        g.linear @ h.linear,
        g.linear.apply(h.translation) + g.translation,
    )


def apply(g: AffineIsometry, p: MinkVector) -> MinkVector:
    return g.linear.apply(p) + g.translation


def inverse(g: AffineIsometry) -> AffineIsometry:
    li = g.linear.inverse()
    return AffineIsometry(li, -li.apply(g.translation))


def spine_reflection(u: MinkVector) -> LinearIsometry:
    """Involution fixing a spacelike u and acting as -1 on its orthogonal plane.

    Realizes v -> -v + 2 (v.u)/(u.u) u.  Has det +1 and reverses time
    orientation; it is the Lorentz realization of the hyperbolic
    reflection in the geodesic dual to u.
    """
    if causal_class(u) is not CausalClass.SPACELIKE:
        raise NotSpacelike(f"spine axis must be spacelike: {u}")
    uv = u.vec
    m = -np.eye(3) + 2.0 * np.outer(uv, FORM @ uv) / lorentz_dot(u, u)
    return LinearIsometry(m)


def point_symmetry(t: MinkVector) -> LinearIsometry:
    """Involution fixing a timelike t and negating its orthogonal plane.

    Same formula as the spine reflection but with a timelike axis; for
    t = (0,0,1) the matrix is diag(-1,-1,+1).  Preserves time
    orientation (it is the half-turn of the hyperbolic plane about the
    point [t]).
    """
    if causal_class(t) is not CausalClass.TIMELIKE:
        raise NotTimelike(f"point symmetry axis must be timelike: {t}")
    tv = t.vec
    m = -np.eye(3) + 2.0 * np.outer(tv, FORM @ tv) / lorentz_dot(t, t)
    return LinearIsometry(m)


def _plus_one_eigenvector(m: np.ndarray) -> np.ndarray | None:
    """Largest column of the projector onto the +1-eigenspace of an involution."""
    k = m + np.eye(3)
    j = int(np.argmax(np.sum(np.abs(k), axis=0)))
    col = k[:, j]
    if np.max(np.abs(col)) < 1e-8:
        return None
    return col


def classify(g: LinearIsometry) -> IsometryClass:
    """Coarse classification by trace, determinant and time orientation.

    Boundary cases (trace within SPECTRAL_GAP of the parabolic value,
    exotic orientation combinations) are reported as OTHER rather than
    guessed.
    """
    m = g.m
    eye = np.eye(3)
    if np.max(np.abs(m - eye)) <= LORENTZ_TOL:
        return IsometryClass.IDENTITY
    if abs(g.det() - 1.0) > LORENTZ_TOL:
        return IsometryClass.OTHER
    if np.max(np.abs(m @ m - eye)) <= INVOLUTION_TOL:
        col = _plus_one_eigenvector(m)
        if col is None:
            return IsometryClass.OTHER
        cls = causal_class(MinkVector.from_array(col))
        if cls is CausalClass.TIMELIKE:
            return IsometryClass.ELLIPTIC_INVOLUTION
        if cls is CausalClass.SPACELIKE:
            return IsometryClass.LINE_REFLECTION
        return IsometryClass.OTHER
    tr = float(np.trace(m))
    if tr > 3.0 + SPECTRAL_GAP and g.preserves_time_orientation():
        return IsometryClass.HYPERBOLIC
    if tr < -1.0 - SPECTRAL_GAP and not g.preserves_time_orientation():
        nv = _neutral_raw(m)
        if nv is not None and causal_class(MinkVector.from_array(nv)) is CausalClass.SPACELIKE:
            return IsometryClass.GLIDE_REFLECTION
        return IsometryClass.OTHER
    if abs(tr - 3.0) <= SPECTRAL_GAP and g.preserves_time_orientation():
        return IsometryClass.PARABOLIC
    return IsometryClass.OTHER


def _neutral_raw(m: np.ndarray) -> np.ndarray | None:
    """Unnormalized 1-eigenvector via the g + g^-1 projector.

    K = g + g^-1 - (tr - 1) I annihilates the non-neutral eigenvectors
    of any det-one Lorentz matrix and scales the neutral one by
    3 - tr, which is bounded away from zero off the parabolic locus.
    """
    tr = float(np.trace(m))
    if abs(3.0 - tr) < 1e-6:
        return None
    minv = FORM @ m.T @ FORM
    k = (m + minv - (tr - 1.0) * np.eye(3)) / (3.0 - tr)
    j = int(np.argmax(np.sum(np.abs(k), axis=0)))
    col = k[:, j]
    # One more pass through the projector scrubs roundoff components.
    col = k @ col
    if np.max(np.abs(col)) < 1e-10:
        return None
    return col


def _null_eigenvectors(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Repelling and attracting future null eigenvectors of a hyperbolic matrix.

    Returns (h_minus, h_plus), both scaled to t = 1, with h_plus the
    expanding direction.
    """
    tr = float(np.trace(m))
    s = tr - 1.0
    if s <= 2.0:
        raise EigenFailure("matrix is not hyperbolic enough for null eigenvectors")
    lam = (s + math.sqrt(s * s - 4.0)) / 2.0
    minv = FORM @ m.T @ FORM
    out = []
    for mat, ev in ((m, lam), (minv, lam)):
        # Projector onto the ev-eigenspace: (mat - I)(mat - 1/ev I),
        # nonzero multiple thereof.
        p = (mat - np.eye(3)) @ (mat - (1.0 / ev) * np.eye(3))
        j = int(np.argmax(np.sum(np.abs(p), axis=0)))
        col = p[:, j]
        if abs(col[2]) < 1e-12 * np.max(np.abs(col)):
            raise EigenFailure("null eigenvector has vanishing t component")
        col = col / col[2]
        resid = np.max(np.abs(mat @ col - ev * col)) / max(1.0, ev)
        if resid > 1e-8:
            raise EigenFailure(f"null eigenvector residual {resid}")
        out.append(col)
    h_plus, h_minus = out[0], out[1]
    return h_minus, h_plus


def neutral_vector(g: LinearIsometry) -> MinkVector:
    """Unit spacelike 1-eigenvector of a hyperbolic or glide-reflection matrix.

    The sign is pinned by a right-handed convention: with h = g when g
    is hyperbolic and h = g^2 for a glide reflection, and h^-, h^+ the
    repelling/attracting future null eigenvectors of h at t = 1, the
    returned vector v satisfies det(h^-, h^+, v) > 0.  This makes the
    neutral vector of g^-1 the negative of that of g, and gives a glide
    reflection the same neutral vector as its square.
    """
    cls = classify(g)
    if cls not in (IsometryClass.HYPERBOLIC, IsometryClass.GLIDE_REFLECTION):
        raise NotHyperbolicType(f"no neutral vector for class {cls.value}")
    raw = _neutral_raw(g.m)
    if raw is None:
        raise EigenFailure("neutral eigenvector did not resolve")
    q = raw @ FORM @ raw
    if q <= 0:
        raise EigenFailure("neutral eigenvector is not spacelike")
    v = raw / math.sqrt(q)
    resid = np.max(np.abs(g.m @ v - v))
    if resid > 1e-9:
        raise EigenFailure(f"neutral eigenvector residual {resid}")
    h = g.m if cls is IsometryClass.HYPERBOLIC else g.m @ g.m
    h_minus, h_plus = _null_eigenvectors(h)
    vv = MinkVector.from_array(v)
    if det3(MinkVector.from_array(h_minus), MinkVector.from_array(h_plus), vv) < 0:
        vv = -vv
    return vv


def affine_involution(linear: LinearIsometry, q: MinkVector) -> AffineIsometry:
    """Affine involution x -> linear(x - q) + q fixing the point q."""
    if np.max(np.abs(linear.m @ linear.m - np.eye(3))) > INVOLUTION_TOL:
        raise NotInvolution("linear part must square to the identity")
    return AffineIsometry(linear, q - linear.apply(q))


def expect_class(g: LinearIsometry, want: IsometryClass, label: str) -> None:
    got = classify(g)
    if got is not want:
        raise ClassificationFailure(f"{label}: expected {want.value}, classified as {got.value}")
