"""Closed cross-section curves built from symmetry orbits of fundamental
pieces, plus the analysis that certifies them: turning number,
self-intersection count, Hausdorff distance.

Everything here is flat plane geometry on the chart coordinates of a cross
section. The five plane maps are the restrictions of the ambient
isometries that preserve the section; gluing a reflected copy reverses the
traversal direction, gluing the half-turn copy does not.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import JunctionDefectError, PreconditionError, SamplingError
from .profiles import PlanarCurve, ProfileCurve

TWO_PI = 2.0 * math.pi

PLANE_MAPS = {
    "reflect-x-axis": np.array([[1.0, 0.0], [0.0, -1.0]]),
    "reflect-y-axis": np.array([[-1.0, 0.0], [0.0, 1.0]]),
    "reflect-diagonal": np.array([[0.0, 1.0], [1.0, 0.0]]),
    "reflect-antidiagonal": np.array([[0.0, -1.0], [-1.0, 0.0]]),
    "half-turn": np.array([[-1.0, 0.0], [0.0, -1.0]]),
}

_CLOSE_TOL = 1e-9


def _resolve_map(sigma) -> np.ndarray:
    if isinstance(sigma, str):
        try:
            return PLANE_MAPS[sigma]
        except KeyError:
            raise ValueError(f"unknown plane map {sigma!r}; choose from "
                             f"{sorted(PLANE_MAPS)}") from None
    mat = np.asarray(sigma, dtype=float)
    if mat.shape != (2, 2) or not np.allclose(mat.T @ mat, np.eye(2), atol=1e-12):
        raise ValueError("a plane map must be a 2x2 orthogonal matrix")
    return mat


class ClosedPlaneCurve:
    """A cross-section polyline; when closed, the first and last vertex
    coincide and `junctions` indexes the vertices where symmetry copies of
    the generating piece meet (index 0 and the final index name the same
    junction)."""

    def __init__(self, vertices, junctions: Iterable[int] = (),
                 closed: bool = True, tangents=None,
                 max_junction_gap: float = 0.0,
                 max_junction_defect: float = 0.0):
        verts = np.asarray(vertices, dtype=float)
        if verts.ndim != 2 or verts.shape[1] != 2 or len(verts) < 3:
            raise ValueError("vertices must form an (n, 2) array with n >= 3")
        if not np.all(np.isfinite(verts)):
            raise ValueError("vertices must be finite")
        edges = np.diff(verts, axis=0)
        if np.min(np.hypot(edges[:, 0], edges[:, 1])) == 0.0:
            raise ValueError("consecutive vertices must be distinct")
        if closed and math.hypot(*(verts[0] - verts[-1])) > _CLOSE_TOL:
            raise ValueError("a closed curve must end where it starts "
                             f"(gap {math.hypot(*(verts[0] - verts[-1])):.3e})")
        self.vertices = verts
        self.tangents = None if tangents is None else np.asarray(tangents, dtype=float)
        self.junctions = tuple(int(j) for j in junctions)
        for j in self.junctions:
            if not 0 <= j < len(verts):
                raise ValueError(f"junction index {j} is out of range")
        self.closed = closed
        self.max_junction_gap = float(max_junction_gap)
        self.max_junction_defect = float(max_junction_defect)

    def __len__(self):
        return len(self.vertices)


# ------------------------------------------------------------------
# polyline extraction
# ------------------------------------------------------------------

def _slope_direction(hp: float) -> Tuple[float, float]:
    # vertical tangents arrive as +-inf (or huge) slopes
    if not math.isfinite(hp):
        return (0.0, math.copysign(1.0, hp))
    nrm = math.hypot(1.0, hp)
    return (1.0 / nrm, hp / nrm)


def profile_polyline(curve: ProfileCurve,
                     samples: Optional[int] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Profile graph (t, h(t)) as a polyline with unit tangents, resampled
    evenly in arc length and traversed left to right. Even spacing keeps
    the chords short near the vertical tangents at both ends."""
    rows = curve.dense_samples() if samples is None \
        else curve.dense_samples(int(samples))
    pts = rows[:, :2].copy()
    tans = np.array([_slope_direction(hp) for hp in rows[:, 2]])
    return pts, tans


def planar_polyline(curve: PlanarCurve, samples: int,
                    s_end: Optional[float] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Cross-section trajectory resampled uniformly in arc length, up to
    s_end when the relevant stretch stops before the integration did."""
    if samples < 2:
        raise ValueError("need at least two samples")
    stop = curve.length if s_end is None else float(s_end)
    if not 0.0 < stop <= curve.length * (1.0 + 1e-12):
        raise ValueError("s_end must lie inside the integrated range")
    ss = np.linspace(0.0, min(stop, curve.length), int(samples))
    states = np.array([curve.state_at(s) for s in ss])
    tans = np.column_stack([np.cos(states[:, 2]), np.sin(states[:, 2])])
    return states[:, :2], tans


def _polyline_of(half, samples: Optional[int]):
    if isinstance(half, tuple) and len(half) == 2:
        pts = np.asarray(half[0], dtype=float)
        tans = np.asarray(half[1], dtype=float)
        if pts.ndim != 2 or pts.shape != tans.shape or pts.shape[1] != 2:
            raise TypeError("expected matching (points, tangents) arrays")
        return pts, tans
    if isinstance(half, ProfileCurve):
        return profile_polyline(half, samples)
    if isinstance(half, PlanarCurve):
        n = samples or max(512, min(4096, int(32.0 * half.length) + 2))
        return planar_polyline(half, n)
    raise TypeError("expected a ProfileCurve, a PlanarCurve or (points, tangents)")


# ------------------------------------------------------------------
# symmetry extension
# ------------------------------------------------------------------

def _angle_between(u, v) -> float:
    return abs(math.atan2(u[0] * v[1] - u[1] * v[0], u[0] * v[0] + u[1] * v[1]))


def extend_by_symmetry(half, group: Sequence, *, samples: Optional[int] = None,
                       max_defect: Optional[float] = 1e-4,
                       glue_tol: float = 1e-5) -> ClosedPlaneCurve:
    """Closes a fundamental piece by gluing its images under the listed
    plane maps, one after the other, onto the growing path.

    Each copy must share an endpoint with the path within glue_tol (for a
    reflection that means the endpoint lies on the mirror axis); after the
    last map the path has to close up. Tangent-angle defects at the glue
    points above max_defect raise JunctionDefectError; pass None to skip
    that smoothness gate, which is what a shooting iteration far from
    convergence needs.
    """
    pts, tans = _polyline_of(half, samples)
    junctions = {0, len(pts) - 1}
    gaps = []
    defects = []
    for sigma in group:
        mat = _resolve_map(sigma)
        det = mat[0, 0] * mat[1, 1] - mat[0, 1] * mat[1, 0]
        img = pts @ mat.T
        itans = tans @ mat.T
        if det < 0.0:
            img, itans = img[::-1], -itans[::-1]
        n = len(pts)
        gap_append = math.hypot(*(img[0] - pts[-1]))
        gap_prepend = math.hypot(*(img[-1] - pts[0]))
        if gap_append <= glue_tol and gap_append <= gap_prepend:
            gaps.append(gap_append)
            defects.append(_angle_between(tans[-1], itans[0]))
            if det < 0.0:
                mapped = {2 * (n - 1) - j for j in junctions if j < n - 1}
            else:
                mapped = {(n - 1) + j for j in junctions if j > 0}
            junctions |= mapped
            pts = np.vstack([pts, img[1:]])
            tans = np.vstack([tans, itans[1:]])
        elif gap_prepend <= glue_tol:
            gaps.append(gap_prepend)
            defects.append(_angle_between(itans[-1], tans[0]))
            if det < 0.0:
                mapped = {(n - 1) - j for j in junctions if j > 0}
            else:
                mapped = set(junctions) - {n - 1}
            junctions = {j + (n - 1) for j in junctions} | mapped
            pts = np.vstack([img[:-1], pts])
            tans = np.vstack([itans[:-1], tans])
        else:
            raise JunctionDefectError(
                f"copy under {sigma!r} shares no endpoint with the path "
                f"(gaps {gap_append:.3e} / {gap_prepend:.3e}, tol {glue_tol:.0e})")
    gap_close = math.hypot(*(pts[0] - pts[-1]))
    if gap_close > glue_tol:
        raise JunctionDefectError(
            f"the symmetry orbit does not close (gap {gap_close:.3e})")
    gaps.append(gap_close)
    defects.append(_angle_between(tans[-1], tans[0]))
    pts[-1] = pts[0]
    worst = max(defects)
    if max_defect is not None and worst > max_defect:
        raise JunctionDefectError(
            f"junction tangent defect {worst:.3e} exceeds {max_defect:.0e}; "
            "the piece does not meet the symmetry loci orthogonally")
    return ClosedPlaneCurve(pts, junctions=sorted(junctions), closed=True,
                            tangents=tans, max_junction_gap=max(gaps),
                            max_junction_defect=worst)


# ------------------------------------------------------------------
# turning number
# ------------------------------------------------------------------

@dataclass(frozen=True)
class TurnReport:
    turn: int
    total_angle: float
    smooth_angle: float
    junction_angle: float


def turning_number(curve: ClosedPlaneCurve) -> TurnReport:
    """Total tangent rotation of a closed polyline from exterior angles.

    The angle sum of a closed cycle is an integer multiple of 2 pi up to
    roundoff, so the integer is recovered exactly; the gate below only
    trips on degenerate vertex data. The junction part is the angle sum at
    the junction vertices, which estimates the corner contribution with an
    O(edge length) blur from the smooth curvature flowing through them.
    """
    if not curve.closed:
        raise PreconditionError("turning number requires a closed curve")
    v = curve.vertices[:-1]
    e = np.vstack([v[1:] - v[:-1], v[:1] - v[-1:]])
    prev = np.roll(e, 1, axis=0)
    ang = np.arctan2(prev[:, 0] * e[:, 1] - prev[:, 1] * e[:, 0],
                     (prev * e).sum(axis=1))
    total = float(ang.sum())
    winding = total / TWO_PI
    turn = round(winding)
    if abs(winding - turn) > 0.05:
        raise SamplingError(
            f"turning angle is {winding:.4f} revolutions, not close to an "
            "integer; the polyline is too sparse or degenerate")
    marks = sorted({j % len(v) for j in curve.junctions})
    junction = float(ang[marks].sum()) if marks else 0.0
    return TurnReport(int(turn), total, total - junction, junction)


# ------------------------------------------------------------------
# self-intersections
# ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class IntersectionReport:
    count: int
    points: np.ndarray
    pairs: Tuple[Tuple[int, int], ...]


def self_intersections(curve: ClosedPlaneCurve,
                       chunk: int = 128) -> IntersectionReport:
    """Proper interior crossings of the polyline, counted per segment pair;
    adjacent segments (including the closing wrap) are excluded."""
    verts = curve.vertices
    starts = verts[:-1]
    vecs = np.diff(verts, axis=0)
    m = len(vecs)
    eps = 1e-10
    found_pts = []
    found_pairs = []
    j_idx = np.arange(m)[None, :]
    for lo in range(0, m, chunk):
        hi = min(lo + chunk, m)
        p = starts[lo:hi, None, :]
        r = vecs[lo:hi, None, :]
        w = starts[None, :, :] - p
        s = vecs[None, :, :]
        denom = r[..., 0] * s[..., 1] - r[..., 1] * s[..., 0]
        ok = np.abs(denom) > 1e-14
        with np.errstate(divide="ignore", invalid="ignore"):
            t = (w[..., 0] * s[..., 1] - w[..., 1] * s[..., 0]) / denom
            u = (w[..., 0] * r[..., 1] - w[..., 1] * r[..., 0]) / denom
        i_idx = np.arange(lo, hi)[:, None]
        mask = ok & (t > eps) & (t < 1.0 - eps) & (u > eps) & (u < 1.0 - eps)
        mask &= j_idx > i_idx + 1
        if curve.closed:
            mask &= ~((i_idx == 0) & (j_idx == m - 1))
        for bi, bj in zip(*np.nonzero(mask)):
            i = lo + bi
            found_pts.append(starts[i] + t[bi, bj] * vecs[i])
            found_pairs.append((int(i), int(bj)))
    points = np.array(found_pts) if found_pts else np.zeros((0, 2))
    return IntersectionReport(len(found_pairs), points, tuple(found_pairs))


# ------------------------------------------------------------------
# Hausdorff distance
# ------------------------------------------------------------------

def _as_vertices(obj) -> np.ndarray:
    if isinstance(obj, ClosedPlaneCurve):
        return obj.vertices
    arr = np.asarray(obj, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("expected a curve or an (n, 2) vertex array")
    return arr


def _directed_hausdorff(points: np.ndarray, target: np.ndarray) -> float:
    a = target[:-1]
    d = np.diff(target, axis=0)
    len2 = (d * d).sum(axis=1)
    len2[len2 == 0.0] = 1.0
    worst = 0.0
    for lo in range(0, len(points), 256):
        p = points[lo:lo + 256]
        w = p[:, None, :] - a[None, :, :]
        tt = np.clip((w * d).sum(axis=2) / len2, 0.0, 1.0)
        delta = w - tt[:, :, None] * d[None, :, :]
        dist = np.sqrt((delta * delta).sum(axis=2)).min(axis=1)
        worst = max(worst, float(dist.max()))
    return worst


def polyline_hausdorff(a, b) -> float:
    """Symmetric Hausdorff distance between two polylines, measured vertex
    to segment so differing samplings of the same curve score near zero."""
    va, vb = _as_vertices(a), _as_vertices(b)
    return max(_directed_hausdorff(va, vb), _directed_hausdorff(vb, va))
