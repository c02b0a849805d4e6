"""The coefficient-to-invariant map and its projectivized polygons.

The three stem-quadrant coefficient pairs map linearly to the
H^1-coordinates (aX, aY, aA); the 3x6 matrix of the map splits into
three 3x2 blocks, one per quadrant.  Projectivizing the image of the
positive orthant in the chart h1 + h2 + h3 = 1 gives the pentagon; the
diagonal-flip construction gives a second pentagon, the two share a
quadrilateral, and their union is the hexagon, inscribed in the
quadrilateral cut out by the four invariant sign conditions.  Sweeping
the free angle of the third side fattens the hexagon to an octagon.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegeneratePolygon,
    IllConditioned,
    InscriptionFailure,
    NonmonotoneTrace,
    NotQuadrilateral,
    OutOfChart,
    RankUnexpected,
)
from .minkowski import EPS_GEO, MinkVector, box_product, lorentz_dot, null_frame
from .surface import HolonomyGroup, TriangleParams, group_from_sides, holonomy, theta_interval
from .deform import MargulisVector, StemCoeffs, is_proper

CHART_DEDUPE = 1e-9


# ---------------------------------------------------------------------------
# Chart and polygons


@dataclass(frozen=True)
class ProjPoint:
    """A ray of H^1-coordinates in the affine chart h1 + h2 + h3 = 1.

    The representative is sign-flipped so the coordinate sum is
    positive; rays parallel to the chart plane are flagged out_of_chart
    and keep a max-normalized representative instead.
    """

    h1: float
    h2: float
    h3: float
    out_of_chart: bool = False

    @property
    def xy(self) -> np.ndarray:
        return np.array([self.h1, self.h2])

    def as_array(self) -> np.ndarray:
        return np.array([self.h1, self.h2, self.h3])


def chart(h) -> ProjPoint:
    """Chart image of a nonzero vector of H^1-coordinates."""
    h = np.asarray(h, dtype=float)
    scale = float(np.max(np.abs(h)))
    if scale == 0.0:
        raise OutOfChart("zero vector has no chart image")
    s = float(h.sum())
    if abs(s) <= 1e-12 * scale:
        hh = h / scale
        return ProjPoint(float(hh[0]), float(hh[1]), float(hh[2]), out_of_chart=True)
    hh = h / s
    return ProjPoint(float(hh[0]), float(hh[1]), float(hh[2]))


@dataclass(frozen=True, eq=False)
class ProjPolygon:
    """Convex-ordered chart polygon; counterclockwise vertex order."""

    vertices: tuple[ProjPoint, ...]
    label: str
    is_convex: bool


def _order_ccw(points: list[ProjPoint]) -> tuple[list[ProjPoint], bool]:
    xy = np.array([p.xy for p in points])
    center = xy.mean(axis=0)
    angles = np.arctan2(xy[:, 1] - center[1], xy[:, 0] - center[0])
    order = np.argsort(angles, kind="stable")
    pts = [points[i] for i in order]
    n = len(pts)
    convex = True
    for i in range(n):
        a, b, c = pts[i].xy, pts[(i + 1) % n].xy, pts[(i + 2) % n].xy
        cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        if cross < -EPS_GEO:
            convex = False
    return pts, convex


def make_polygon(points: list[ProjPoint], label: str, expect: int | None = None) -> ProjPolygon:
    """Deduplicate, convex-order, and wrap chart points as a polygon."""
    unique: list[ProjPoint] = []
    for p in points:
        if p.out_of_chart:
            raise OutOfChart(f"vertex of {label} is out of the chart")
        if all(np.max(np.abs(p.as_array() - q.as_array())) > CHART_DEDUPE for q in unique):
            unique.append(p)
    if expect is not None and len(unique) != expect:
        raise DegeneratePolygon(
            f"{label}: expected {expect} distinct vertices, found {len(unique)}"
        )
    if len(unique) < 3:
        raise DegeneratePolygon(f"{label}: fewer than three distinct vertices")
    ordered, convex = _order_ccw(unique)
    return ProjPolygon(tuple(ordered), label, convex)


def contains(poly: ProjPolygon, pt: ProjPoint, margin: float = EPS_GEO) -> bool:
    """Half-plane containment in the chart; the boundary counts as inside."""
    if pt.out_of_chart:
        raise OutOfChart("point is out of the chart")
    p = pt.xy
    verts = [v.xy for v in poly.vertices]
    n = len(verts)
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        edge = b - a
        ln = float(np.linalg.norm(edge))
        if ln < 1e-15:
            continue
        cross = edge[0] * (p[1] - a[1]) - edge[1] * (p[0] - a[0])
        if cross / ln < -margin:
            return False
    return True


def signed_interior_margin(poly: ProjPolygon, pt: ProjPoint) -> float:
    """Smallest signed distance from pt to the edge lines (positive inside)."""
    p = pt.xy
    verts = [v.xy for v in poly.vertices]
    n = len(verts)
    best = math.inf
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        edge = b - a
        ln = float(np.linalg.norm(edge))
        if ln < 1e-15:
            continue
        cross = edge[0] * (p[1] - a[1]) - edge[1] * (p[0] - a[0])
        best = min(best, cross / ln)
    return best


def polygon_area(poly: ProjPolygon) -> float:
    xy = np.array([v.xy for v in poly.vertices])
    x, y = xy[:, 0], xy[:, 1]
    return 0.5 * float(np.abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


def clip_convex(subject: ProjPolygon, clipper: ProjPolygon) -> list[ProjPoint]:
    """Sutherland-Hodgman intersection of two convex chart polygons."""
    out = [v.xy for v in subject.vertices]
    for i in range(len(clipper.vertices)):
        a = clipper.vertices[i].xy
        b = clipper.vertices[(i + 1) % len(clipper.vertices)].xy
        edge = b - a
        inp = out
        out = []

        def side(p: np.ndarray) -> float:
            return edge[0] * (p[1] - a[1]) - edge[1] * (p[0] - a[0])

        for j in range(len(inp)):
            s, e = inp[j], inp[(j + 1) % len(inp)]
            s_in, e_in = side(s) >= -1e-12, side(e) >= -1e-12
            if s_in != e_in:
                t = side(s) / (side(s) - side(e))
                out.append(s + t * (e - s))
            if e_in:
                out.append(e)
        if not out:
            return []
    pts = []
    for p in out:
        cand = ProjPoint(float(p[0]), float(p[1]), float(1.0 - p[0] - p[1]))
        if all(np.max(np.abs(cand.as_array() - q.as_array())) > CHART_DEDUPE for q in pts):
            pts.append(cand)
    return pts


# ---------------------------------------------------------------------------
# The coefficient map and its blocks


@dataclass(frozen=True, eq=False)
class MBlocks:
    """Blocks of the linear map from stem coefficients to (aX, aY, aA).

    b_row is the companion row computing aB from the same coefficients;
    it plays the role that the third row plays for aA.
    """

    M1: np.ndarray
    M2: np.ndarray
    M3: np.ndarray
    M: np.ndarray
    b_row: np.ndarray


def _alpha_rows(g: HolonomyGroup) -> tuple[np.ndarray, np.ndarray]:
    """Rows of the invariant map over the six quadrant coefficients."""
    s = g.sides
    f1, f2, f0 = null_frame(s.w1), null_frame(s.w2), null_frame(s.w0)

    def d(a: MinkVector, b: MinkVector) -> float:
        return lorentz_dot(a, b)

    row_x = [2 * d(f1.w_minus, g.X0), -2 * d(f1.w_plus, g.X0), 0.0, 0.0,
             -2 * d(f0.w_minus, g.X0), 2 * d(f0.w_plus, g.X0)]
    row_y = [0.0, 0.0, -2 * d(f2.w_minus, g.Y0), 2 * d(f2.w_plus, g.Y0),
             2 * d(f0.w_minus, g.Y0), -2 * d(f0.w_plus, g.Y0)]
    row_a = [2 * d(f1.w_minus, g.A0), -2 * d(f1.w_plus, g.A0),
             -2 * d(f2.w_minus, g.A0), 2 * d(f2.w_plus, g.A0), 0.0, 0.0]
    ib = g.i0.apply(g.B0)
    z = g.B0 - ib
    row_b = [-2 * d(f1.w_minus, ib), 2 * d(f1.w_plus, ib),
             2 * d(f2.w_minus, g.B0), -2 * d(f2.w_plus, g.B0),
             -2 * d(f0.w_minus, z), 2 * d(f0.w_plus, z)]
    return np.array([row_x, row_y, row_a]), np.array(row_b)


def blocks(g: HolonomyGroup) -> MBlocks:
    """Coefficient-to-invariant blocks of the group."""
    m, b_row = _alpha_rows(g)
    return MBlocks(M1=m[:, 0:2], M2=m[:, 2:4], M3=m[:, 4:6], M=m, b_row=b_row)


@dataclass(frozen=True)
class RankReport:
    """Numerical ranks of the three blocks and the determinant identities."""

    ranks: tuple[int, int, int]
    singular_values: tuple[tuple[float, float], ...]
    det_m1_quarter: float
    m1_identity_value: float
    det_m1_residual: float
    det_m3_quarter: float
    m3_identity_value: float
    det_m3_residual: float


def rank_report(b: MBlocks, g: HolonomyGroup) -> RankReport:
    """Ranks via singular values plus the closed-form determinant identities.

    The nonzero 2x2 minor of the first block equals
    2/(1 + w1_t^2) * <w1, X0 box A0>; with the t = 1 frame
    normalization the minor of the third block collapses because w0 is
    orthogonal to X0 box Y0 (both planes contain the base point).
    """
    svs = []
    ranks = []
    for blk in (b.M1, b.M2, b.M3):
        sv = np.linalg.svd(blk, compute_uv=False)
        svs.append((float(sv[0]), float(sv[1])))
        ranks.append(int(np.sum(sv >= 1e-9 * sv[0])))
    ranks = tuple(ranks)
    if ranks != (2, 2, 1):
        raise RankUnexpected(f"block ranks {ranks}, expected (2, 2, 1)")
    s = g.sides
    det1 = float(np.linalg.det(np.vstack([b.M1[0], b.M1[2]]))) / 4.0
    c1 = 2.0 / (1.0 + s.w1.t * s.w1.t)
    val1 = c1 * lorentz_dot(s.w1, box_product(g.X0, g.A0))
    det3 = float(np.linalg.det(np.vstack([b.M3[0], b.M3[1]]))) / 4.0
    c0 = 2.0 / (1.0 + s.w0.t * s.w0.t)
    val3 = -c0 * lorentz_dot(s.w0, box_product(g.X0, g.Y0))
    scale1 = max(abs(det1), abs(val1), 1e-30)
    scale3 = max(np.max(np.abs(b.M3)) ** 2, 1e-30)
    return RankReport(
        ranks=ranks,
        singular_values=tuple(svs),
        det_m1_quarter=det1,
        m1_identity_value=val1,
        det_m1_residual=abs(det1 - val1) / scale1,
        det_m3_quarter=det3,
        m3_identity_value=val3,
        det_m3_residual=abs(det3 - val3) / scale3,
    )


def pentagon(b: MBlocks, label: str = "P1") -> ProjPolygon:
    """Projectivized image of the positive coefficient orthant.

    The last two columns span a single ray, so the image cone has five
    extreme rays and the chart polygon five vertices.
    """
    cols = b.M.T
    v5a, v5b = chart(cols[4]), chart(cols[5])
    if np.max(np.abs(v5a.as_array() - v5b.as_array())) > 1e-10:
        raise DegeneratePolygon(f"{label}: last two columns are not projectively equal")
    pts = [chart(cols[i]) for i in range(4)] + [chart(cols[4] + cols[5])]
    return make_polygon(pts, label, expect=5)


# ---------------------------------------------------------------------------
# The diagonal flip


def flip_group(g: HolonomyGroup) -> HolonomyGroup:
    """Holonomy data of the flipped triangulation.

    The first side stays, the second is reflected through the base
    point, and the third rotates a quarter turn.  The assembled
    elements are X' = X, Y' = Y^-1, A' conjugate to B, B' conjugate to
    A; no hyperideality of the flipped triple is required for the
    algebra downstream.
    """
    s = g.sides
    w2f = g.i0.apply(s.w2)
    w0f = MinkVector(-s.w0.y, s.w0.x, 0.0)
    return group_from_sides(s.w1, w2f, w0f)


def flip_blocks(g: HolonomyGroup) -> MBlocks:
    """Blocks of the flipped parametrization in the (aX, aY, aA) chart.

    Rows one and two are the aX and aY rows of the flipped group; the
    third row computes the class of B' = conjugate of A, which is the
    h3 coordinate.  The companion b_row computes the flipped group's
    own third-row class (conjugate of B), i.e. the aB functional on the
    flipped coefficients.
    """
    gf = flip_group(g)
    m, b_row = _alpha_rows(gf)
    phi = np.vstack([m[0], m[1], b_row])
    return MBlocks(M1=phi[:, 0:2], M2=phi[:, 2:4], M3=phi[:, 4:6], M=phi, b_row=m[2])


@dataclass(frozen=True)
class BFunctional:
    """aB as a linear functional of the (aX, aY, aA) coordinates."""

    cX: float
    cY: float
    cA: float
    residual: float

    def coeffs(self) -> np.ndarray:
        return np.array([self.cX, self.cY, self.cA])

    def __call__(self, h) -> float:
        h = np.asarray(h, dtype=float)
        return float(self.cX * h[0] + self.cY * h[1] + self.cA * h[2])


def b_functional(b: MBlocks, bf: MBlocks) -> BFunctional:
    """Express aB through the chart coordinates by least squares.

    Fits beta with beta(M e_i) = b_row e_i over the six coefficient
    basis vectors; the fit is exact up to roundoff because aB is linear
    on H^1.  The flipped blocks provide a consistency check: beta
    annihilates their third-block columns.
    """
    if np.linalg.matrix_rank(b.M, tol=1e-9 * np.max(np.abs(b.M))) < 3:
        raise IllConditioned("coefficient map does not span the invariant space")
    sol, _, _, _ = np.linalg.lstsq(b.M.T, b.b_row, rcond=None)
    pred = sol @ b.M
    scale = max(float(np.max(np.abs(b.b_row))), 1e-30)
    residual = float(np.max(np.abs(pred - b.b_row))) / scale
    func = BFunctional(float(sol[0]), float(sol[1]), float(sol[2]), residual)
    cross = max(abs(func(bf.M[:, 4])), abs(func(bf.M[:, 5])))
    if cross > 1e-6 * scale:
        raise IllConditioned(f"aB functional fails to vanish on the flipped ray: {cross}")
    return func


def double_flip_check(g: HolonomyGroup) -> tuple[np.ndarray, float]:
    """Compose the aB functionals of the group and its flip.

    The flip swaps the roles of the two boundary classes, so the
    flipped group's functional, evaluated on (h1, h2, aB), recovers the
    aA coordinate.  Returns the composed coefficient triple (ideally
    e3) and its max deviation.
    """
    beta = b_functional(blocks(g), flip_blocks(g))
    gf = flip_group(g)
    beta_f = b_functional(blocks(gf), flip_blocks(gf))
    composed = np.array([
        beta_f.cX + beta_f.cA * beta.cX,
        beta_f.cY + beta_f.cA * beta.cY,
        beta_f.cA * beta.cA,
    ])
    return composed, float(np.max(np.abs(composed - np.array([0.0, 0.0, 1.0]))))


# ---------------------------------------------------------------------------
# Quadrilateral, hexagon, octagon


def quadrilateral_Q(bf: BFunctional) -> ProjPolygon:
    """Extreme rays of the properness cone, projectivized.

    The cone is h1, h2, h3 >= 0 together with beta(h) >= 0 (the
    component where all four invariants share the positive sign).
    """
    beta = bf.coeffs()
    normals = [np.eye(3)[0], np.eye(3)[1], np.eye(3)[2], beta / np.linalg.norm(beta)]
    rays: list[np.ndarray] = []
    for i in range(4):
        for j in range(i + 1, 4):
            r = np.cross(normals[i], normals[j])
            nr = np.linalg.norm(r)
            if nr < 1e-12:
                continue
            r = r / nr
            for cand in (r, -r):
                if all(float(n @ cand) >= -1e-10 for n in normals):
                    if all(np.linalg.norm(np.cross(cand, known)) > 1e-9 for known in rays):
                        rays.append(cand)
    if len(rays) != 4:
        raise NotQuadrilateral(f"properness cone has {len(rays)} extreme rays, expected 4")
    return make_polygon([chart(r) for r in rays], "Q", expect=4)


@dataclass(frozen=True, eq=False)
class WitnessReport:
    """A proper chart point inside Q but outside H."""

    point: ProjPoint
    margulis: MargulisVector
    proper: bool


@dataclass(frozen=True, eq=False)
class HexagonResult:
    H: ProjPolygon
    Qsmall: ProjPolygon
    Q: ProjPolygon
    P1: ProjPolygon
    P2: ProjPolygon
    inscription_residual: float
    h_in_q: bool
    clip_match: float
    shared_block_residual: float
    witness: WitnessReport | None


def _kernel_distances(qs_pts, v_a, v_b, beta: BFunctional) -> float:
    """Max distance of each hexagon vertex from its kernel side line."""
    dists = []
    for i, p in enumerate(qs_pts):
        dists.append(abs(p.h2) if i < 2 else abs(p.h1))
    dists.append(abs(v_a.h3))
    dists.append(abs(beta(v_b.as_array())) / float(np.linalg.norm(beta.coeffs())))
    return float(max(dists))


def _find_witness(q: ProjPolygon, hexa: ProjPolygon, beta: BFunctional) -> WitnessReport | None:
    center = np.mean([v.xy for v in q.vertices], axis=0)
    for v in q.vertices:
        for t in (0.02, 0.05, 0.1, 0.2):
            xy = (1.0 - t) * v.xy + t * center
            cand = ProjPoint(float(xy[0]), float(xy[1]), float(1.0 - xy[0] - xy[1]))
            if signed_interior_margin(q, cand) <= 1e-9:
                continue
            if signed_interior_margin(hexa, cand) >= -1e-9:
                continue
            mv = MargulisVector(cand.h1, cand.h2, cand.h3, beta(cand.as_array()))
            return WitnessReport(point=cand, margulis=mv, proper=is_proper(mv))
    return None


def hexagon(b: MBlocks, bf_blocks: MBlocks, witness: bool = True) -> HexagonResult:
    """Union of the two pentagons: the six-vertex polygon inscribed in Q.

    The four shared vertices come from the first four columns of either
    block set; the two odd vertices are the degenerate rays of the two
    third blocks, one on the aA kernel and one on the aB kernel.
    """
    beta = b_functional(b, bf_blocks)
    shared_resid = float(np.max(np.abs(b.M[:, 0:4] - bf_blocks.M[:, 0:4])))
    p1 = pentagon(b, "P1")
    p2 = pentagon(bf_blocks, "P2")
    qs_pts = [chart(b.M[:, i]) for i in range(4)]
    v_a = chart(b.M[:, 4] + b.M[:, 5])
    v_b = chart(bf_blocks.M[:, 4] + bf_blocks.M[:, 5])
    qsmall = make_polygon(qs_pts, "Qsmall", expect=4)
    hexa = make_polygon(qs_pts + [v_a, v_b], "H", expect=6)
    q = quadrilateral_Q(beta)
    resid = _kernel_distances(qs_pts, v_a, v_b, beta)
    if resid > 1e-8:
        raise InscriptionFailure(f"hexagon vertex misses its kernel line by {resid}")
    h_in_q = all(contains(q, v, margin=1e-8) for v in hexa.vertices)
    clip_pts = clip_convex(p1, p2)
    clip_match = 0.0
    if len(clip_pts) != 4:
        clip_match = math.inf
    else:
        for cp in clip_pts:
            clip_match = max(
                clip_match,
                min(float(np.max(np.abs(cp.as_array() - qv.as_array()))) for qv in qsmall.vertices),
            )
    wit = _find_witness(q, hexa, beta) if witness else None
    return HexagonResult(
        H=hexa,
        Qsmall=qsmall,
        Q=q,
        P1=p1,
        P2=p2,
        inscription_residual=resid,
        h_in_q=h_in_q,
        clip_match=clip_match,
        shared_block_residual=shared_resid,
        witness=wit,
    )


@dataclass(frozen=True, eq=False)
class TraceReport:
    """One moving hexagon vertex tracked across the theta sweep."""

    points: tuple[ProjPoint, ...]
    endpoints: tuple[ProjPoint, ProjPoint]
    line_residual: float
    monotone: bool


@dataclass(frozen=True, eq=False)
class OctagonResult:
    octagon: ProjPolygon
    hexagons: tuple[ProjPolygon, ...]
    thetas: tuple[float, ...]
    trace_a: TraceReport
    trace_b: TraceReport
    qsmall: ProjPolygon
    qsmall_drift: float
    q: ProjPolygon
    contains_all: bool


def _trace_report(points: list[ProjPoint], check_monotone: bool = True) -> TraceReport:
    xy = np.array([p.xy for p in points])
    a, bpt = xy[0], xy[-1]
    direction = bpt - a
    ln = float(np.linalg.norm(direction))
    if ln < 1e-13:
        return TraceReport(tuple(points), (points[0], points[-1]), 0.0, True)
    direction = direction / ln
    params = (xy - a) @ direction
    offsets = xy - a[None, :] - params[:, None] * direction[None, :]
    line_resid = float(np.max(np.linalg.norm(offsets, axis=1)))
    diffs = np.diff(params)
    monotone = bool(np.all(diffs >= -1e-12) or np.all(diffs <= 1e-12))
    i_lo, i_hi = int(np.argmin(params)), int(np.argmax(params))
    return TraceReport(tuple(points), (points[i_lo], points[i_hi]), line_resid, monotone)


def octagon_sweep(params: TriangleParams, steps: int) -> OctagonResult:
    """Sweep theta over the admissible interval and take the union polygon.

    The shared quadrilateral is theta-independent; the two odd vertices
    trace segments on the aA and aB kernel lines.  The octagon is the
    quadrilateral plus both trace endpoint pairs and must contain every
    per-theta hexagon.
    """
    if steps < 2:
        raise DegeneratePolygon(f"need at least 2 sweep steps, got {steps}")
    lo, hi = theta_interval(params.d, params.u1, params.u2)
    eps = 1e-4 * (hi - lo)
    thetas = np.linspace(lo + eps, hi - eps, steps)
    qs_ref: list[ProjPoint] | None = None
    drift = 0.0
    hexes: list[ProjPolygon] = []
    pts_a: list[ProjPoint] = []
    pts_b: list[ProjPoint] = []
    q_ref: ProjPolygon | None = None
    for th in thetas:
        g = holonomy(TriangleParams(params.d, params.u1, params.u2, float(th)))
        res = hexagon(blocks(g), flip_blocks(g), witness=False)
        qs_now = list(res.Qsmall.vertices)
        if qs_ref is None:
            qs_ref, q_ref = qs_now, res.Q
        else:
            for p in qs_now:
                drift = max(
                    drift,
                    min(float(np.max(np.abs(p.as_array() - r.as_array()))) for r in qs_ref),
                )
        hexes.append(res.H)
        pts_a.append([v for v in res.H.vertices if abs(v.h3) <= 1e-9][0])
    # Recover the aB-kernel vertex per step as the hexagon vertex that is
    # neither a Qsmall vertex nor the aA-kernel vertex.
    for hexa, va in zip(hexes, pts_a):
        rest = [
            v for v in hexa.vertices
            if np.max(np.abs(v.as_array() - va.as_array())) > 1e-9
            and all(np.max(np.abs(v.as_array() - r.as_array())) > 1e-7 for r in qs_ref)
        ]
        if len(rest) != 1:
            raise DegeneratePolygon("could not isolate the moving aB vertex in the sweep")
        pts_b.append(rest[0])
    trace_a = _trace_report(pts_a)
    trace_b = _trace_report(pts_b)
    if not (trace_a.monotone and trace_b.monotone):
        raise NonmonotoneTrace("a moving vertex does not sweep a monotone segment")
    octa = make_polygon(
        list(qs_ref) + list(trace_a.endpoints) + list(trace_b.endpoints), "Octagon", expect=8
    )
    contains_all = all(
        contains(octa, v, margin=1e-8) for hexa in hexes for v in hexa.vertices
    )
    return OctagonResult(
        octagon=octa,
        hexagons=tuple(hexes),
        thetas=tuple(float(t) for t in thetas),
        trace_a=trace_a,
        trace_b=trace_b,
        qsmall=make_polygon(list(qs_ref), "Qsmall", expect=4),
        qsmall_drift=drift,
        q=q_ref,
        contains_all=contains_all,
    )


def coefficient_invariants(g: HolonomyGroup, coeffs: StemCoeffs) -> MargulisVector:
    """Invariants of a coefficient vector through the block machinery."""
    b = blocks(g)
    v = coeffs.as_array()
    h = b.M @ v
    return MargulisVector(float(h[0]), float(h[1]), float(h[2]), float(b.b_row @ v))
