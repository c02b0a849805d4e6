"""Affine deformations from stem-quadrant data.

A deformation moves each generating involution's fixed locus to a
vertex chosen in the stem quadrant of the corresponding side: the
reflections r1, r2 and the point symmetry r0 become the affine
involutions fixing q1, q2, q0.  Margulis invariants of the induced
surface-group elements are computed both in closed form and as direct
orbit displacements; the two must agree, which is the main internal
cross-check of this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .errors import DomainError, NegativeCoefficient, NotSpacelike
from .isometry import (
    AffineIsometry,
    IsometryClass,
    LinearIsometry,
    affine_involution,
    apply,
    classify,
    compose,
)
from .minkowski import (
    CausalClass,
    MinkVector,
    causal_class,
    lorentz_dot,
    null_frame,
    unit_spacelike,
)
from .surface import HolonomyGroup


@dataclass(frozen=True)
class StemCoeffs:
    """Nonnegative stem-quadrant coefficients (u_i^-, u_i^+) per side."""

    u1m: float
    u1p: float
    u2m: float
    u2p: float
    u0m: float
    u0p: float

    def __post_init__(self):
        for name, val in self.__dict__.items():
            if not math.isfinite(val):
                raise DomainError(f"coefficient {name} is not finite")
            if val < 0:
                raise NegativeCoefficient(f"coefficient {name} = {val} is negative")

    def as_array(self) -> np.ndarray:
        return np.array([self.u1m, self.u1p, self.u2m, self.u2p, self.u0m, self.u0p])

    @classmethod
    def from_array(cls, a) -> "StemCoeffs":
        return cls(*[float(x) for x in a])


def stem_point(w: MinkVector, um: float, up: float) -> MinkVector:
    """Point um * w^- - up * w^+ of the closed stem quadrant of w."""
    if causal_class(w) is not CausalClass.SPACELIKE:
        raise NotSpacelike(f"stem quadrant needs a spacelike vector: {w}")
    if um < 0 or up < 0:
        raise NegativeCoefficient(f"stem coefficients must be nonnegative: ({um}, {up})")
    f = null_frame(w)
    return um * f.w_minus - up * f.w_plus


@dataclass(frozen=True, eq=False)
class Deformation:
    """A holonomy group with stem-quadrant vertices for its three involutions."""

    group: HolonomyGroup
    coeffs: StemCoeffs
    q1: MinkVector
    q2: MinkVector
    q0: MinkVector

    @classmethod
    def build(cls, group: HolonomyGroup, coeffs: StemCoeffs) -> "Deformation":
        s = group.sides
        return cls(
            group=group,
            coeffs=coeffs,
            q1=stem_point(s.w1, coeffs.u1m, coeffs.u1p),
            q2=stem_point(s.w2, coeffs.u2m, coeffs.u2p),
            q0=stem_point(s.w0, coeffs.u0m, coeffs.u0p),
        )


@dataclass(frozen=True, eq=False)
class AffineGenerators:
    """Affine involutions r1, r2, r0 and the induced surface-group elements."""

    r1: AffineIsometry
    r2: AffineIsometry
    r0: AffineIsometry
    X: AffineIsometry
    Y: AffineIsometry
    A: AffineIsometry
    B: AffineIsometry


def affine_generators(d: Deformation) -> AffineGenerators:
    g = d.group
    r1 = affine_involution(g.RX, d.q1)
    r2 = affine_involution(g.RY, d.q2)
    r0 = affine_involution(g.i0, d.q0)
    x = compose(r1, r0)
    y = compose(r0, r2)
    a = compose(r1, r2)
    b = compose(r2, compose(r0, compose(r1, r0)))
    return AffineGenerators(r1=r1, r2=r2, r0=r0, X=x, Y=y, A=a, B=b)


@dataclass(frozen=True)
class MargulisVector:
    """Signed displacements of the four distinguished classes."""

    aX: float
    aY: float
    aA: float
    aB: float

    def as_array(self) -> np.ndarray:
        return np.array([self.aX, self.aY, self.aA, self.aB])


def margulis_direct(g: AffineIsometry, g0: MinkVector, p: MinkVector) -> float:
    """Orbit displacement of p along the neutral direction g0.

    Independent of the base point p whenever g0 is the neutral vector
    of the linear part.
    """
    cls = classify(g.linear)
    if cls not in (IsometryClass.HYPERBOLIC, IsometryClass.GLIDE_REFLECTION):
        raise DomainError(f"Margulis invariant undefined for class {cls.value}")
    return lorentz_dot(apply(g, p) - p, g0)


def margulis_closed(d: Deformation) -> MargulisVector:
    """Closed-form invariants in terms of the stem vertices.

    aB uses the fixed locus of the conjugated involution r0 r1 r0,
    which is the r0-image of q1 (the point symmetry about q0 applied to
    q1), not the image of q1 under the linear point symmetry alone; the
    two differ by the projection of 2 q0 to the spatial plane.
    """
    g = d.group
    r0q1 = g.i0.apply(d.q1 - d.q0) + d.q0
    return MargulisVector(
        aX=2.0 * lorentz_dot(d.q1 - d.q0, g.X0),
        aY=2.0 * lorentz_dot(d.q0 - d.q2, g.Y0),
        aA=2.0 * lorentz_dot(d.q1 - d.q2, g.A0),
        aB=2.0 * lorentz_dot(d.q2 - r0q1, g.B0),
    )


def is_proper(m: MargulisVector, eps: float = 1e-9) -> bool:
    """Properness test: all four invariants nonzero with the same sign."""
    vals = m.as_array()
    scale = float(np.max(np.abs(vals)))
    if scale == 0.0 or np.min(np.abs(vals)) <= eps * scale:
        return False
    return bool(np.all(vals > 0) or np.all(vals < 0))


@dataclass(frozen=True, eq=False)
class CrookedPlane:
    """Crooked plane with a unit spacelike director and a vertex."""

    director: MinkVector
    vertex: MinkVector

    def __post_init__(self):
        object.__setattr__(self, "director", unit_spacelike(self.director))


def base_planes(d: Deformation) -> list[CrookedPlane]:
    s = d.group.sides
    return [
        CrookedPlane(s.w1, d.q1),
        CrookedPlane(s.w2, d.q2),
        CrookedPlane(s.w0, d.q0),
    ]


def _halton(n: int, base: int) -> np.ndarray:
    """First n points of the Halton sequence in the given base."""
    idx = np.arange(1, n + 1)
    result = np.zeros(n)
    f = 1.0
    while idx.max() > 0:
        f /= base
        result += f * (idx % base)
        idx //= base
    return result


def _sample_array(c: CrookedPlane, radius: float, n: int) -> np.ndarray:
    """Deterministic low-discrepancy samples of a crooked plane.

    Returns an (m, 3) array: the vertex, then points of the stem (both
    timelike quadrants of the director's orthogonal plane) and of both
    wings, all within Euclidean distance radius of the vertex.
    """
    f = null_frame(c.director)
    wm, wp, w = f.w_minus.vec, f.w_plus.vec, c.director.vec
    v = c.vertex.vec
    n_wing = n // 3
    n_stem = n - 2 * n_wing
    pieces = [v[None, :]]

    def take(d1: np.ndarray, d2: np.ndarray, count: int, mirror: bool) -> np.ndarray:
        # Oversample the coefficient box, keep in-ball points.
        m = max(4 * count, 16)
        h1 = _halton(m, 2) * (radius / np.linalg.norm(d1))
        h2 = _halton(m, 3) * (radius / np.linalg.norm(d2))
        pts = h1[:, None] * d1[None, :] + h2[:, None] * d2[None, :]
        if mirror:
            pts[1::2] *= -1.0
        keep = np.linalg.norm(pts, axis=1) <= radius
        return v[None, :] + pts[keep][:count]

    if n_stem > 0:
        pieces.append(take(wm, wp, n_stem, mirror=True))
    if n_wing > 0:
        pieces.append(take(wp, w, n_wing, mirror=False))
        pieces.append(take(wm, -w, n_wing, mirror=False))
    return np.vstack(pieces)


def crooked_sample(c: CrookedPlane, radius: float, n: int) -> list[MinkVector]:
    """Sample points of the stem and both wings near the vertex.

    Deterministic and seedless; the vertex itself is always the first
    point.  Every returned point satisfies the stem or wing membership
    conditions exactly (they are generated in frame coordinates).
    """
    if radius <= 0:
        raise DomainError(f"radius must be positive, got {radius}")
    if n < 1:
        raise DomainError(f"sample count must be at least 1, got {n}")
    return [MinkVector.from_array(row) for row in _sample_array(c, radius, n)]


def _canonical_director(vec: np.ndarray) -> np.ndarray:
    """Fix the sign of a direction vector for deduplication."""
    for comp in vec:
        if abs(comp) > 1e-12:
            return vec if comp > 0 else -vec
    return vec


@dataclass(frozen=True)
class DisjointnessReport:
    """Minimum sampled distance between distinct plane images."""

    min_distance: float
    closest_pair: tuple[int, int]
    plane_count: int
    samples_per_plane: int


def map_plane(word: AffineIsometry, plane: CrookedPlane) -> CrookedPlane:
    """Image plane under an isometry: director by the linear part, vertex affinely."""
    return CrookedPlane(
        MinkVector.from_array(word.linear.m @ plane.director.vec),
        apply(word, plane.vertex),
    )


def coxeter_words(gens: list[AffineIsometry], max_len: int) -> list[AffineIsometry]:
    """Reduced words (no immediate repeats) in involutive generators.

    Includes the identity; deterministic breadth-first order.
    """
    words = [AffineIsometry.identity()]
    layer: list[tuple[AffineIsometry, int]] = [(AffineIsometry.identity(), -1)]
    for _ in range(max_len):
        next_layer: list[tuple[AffineIsometry, int]] = []
        for w, last in layer:
            for i, g in enumerate(gens):
                if i != last:
                    wg = compose(w, g)
                    words.append(wg)
                    next_layer.append((wg, i))
        layer = next_layer
    return words


def _word_images(
    planes: list[CrookedPlane], words: list[AffineIsometry]
) -> list[tuple[int, CrookedPlane]]:
    """Images of each base plane under each word, deduplicated per base plane.

    Distinct words frequently produce the same image plane (any word
    may be extended by an involution fixing the plane), so images are
    compared by director direction and vertex rather than by word.
    """
    out: list[tuple[int, CrookedPlane]] = []
    for base_idx, pl in enumerate(planes):
        kept: list[tuple[np.ndarray, np.ndarray]] = []
        for wrd in words:
            img = map_plane(wrd, pl)
            dvec = _canonical_director(img.director.vec)
            vvec = img.vertex.vec
            scale = 1.0 + float(np.max(np.abs(vvec)))
            dup = any(
                np.max(np.abs(dvec - kd)) < 1e-9 and np.max(np.abs(vvec - kv)) < 1e-9 * scale
                for kd, kv in kept
            )
            if dup:
                continue
            kept.append((dvec, vvec))
            out.append((base_idx, img))
    return out


def disjointness_oracle(
    planes: list[CrookedPlane],
    words: list[AffineIsometry],
    radius: float,
    n: int,
) -> DisjointnessReport:
    """Minimum pairwise sampled distance over plane images.

    Applies each word to each base plane (director mapped by the linear
    part with re-canonicalized sign, vertex mapped affinely), samples
    every resulting plane, and reports the smallest distance between
    samples of distinct planes.  A strictly positive report is
    necessary-condition evidence of disjointness, not a proof.
    """
    if not words:
        words = [AffineIsometry.identity()]
    images = _word_images(planes, words)
    if len(images) < 2:
        raise DomainError("need at least two planes after applying the words")
    samples = [_sample_array(img, radius, n) for _, img in images]
    boxes = [(s.min(axis=0), s.max(axis=0)) for s in samples]
    trees: dict[int, cKDTree] = {}

    def tree(i: int) -> cKDTree:
        if i not in trees:
            trees[i] = cKDTree(samples[i])
        return trees[i]

    # Lower-bound pair distances by bounding boxes, then refine in
    # ascending order so most pairs are pruned.
    pairs = []
    for i in range(len(images)):
        for j in range(i + 1, len(images)):
            lo_i, hi_i = boxes[i]
            lo_j, hi_j = boxes[j]
            gap = np.maximum(0.0, np.maximum(lo_i - hi_j, lo_j - hi_i))
            pairs.append((float(np.linalg.norm(gap)), i, j))
    pairs.sort()
    best = math.inf
    best_pair = (0, 1)
    for bound, i, j in pairs:
        if bound >= best:
            break
        dmin = float(np.min(tree(i).query(samples[j], k=1)[0]))
        if dmin < best:
            best = dmin
            best_pair = (i, j)
    return DisjointnessReport(
        min_distance=best,
        closest_pair=best_pair,
        plane_count=len(images),
        samples_per_plane=n,
    )
