"""Homogeneous fibered model with base curvature kappa <= 0 and bundle
twist tau, in coordinates where the fibration is (x, y, z) -> (x, z).

The orthonormal frame is

    E1 = e^{z m} d/dx + (2 tau / m)(e^{z m} - 1) d/dy,   m = sqrt(-kappa),
    E2 = d/dy,
    E3 = d/dz,

with the kappa = 0 limit E1 = d/dx + 2 tau z d/dy.  E2 spans the
translation-invariant horizontal direction, E3 the height direction.
Relative to this frame the Levi-Civita connection has constant
coefficients, which is what the curvature computations downstream rely on.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .frames import FrameVector

_HALF_PI = math.pi / 2.0


def critical_mean_curvature(kappa: float) -> float:
    """Threshold mean curvature sqrt(-kappa)/2 below which no compact
    invariant cylinder exists."""
    if kappa > 0.0:
        raise ValueError("positive base curvature is not supported")
    return math.sqrt(-kappa) / 2.0


@dataclass(frozen=True)
class EktParams:
    """Model parameters: base curvature kappa <= 0, twist tau, and the
    inclination alpha of the translation axis against the horizontal.

    alpha = pi/2 is the generic (vertical-ish) axis; alpha < pi/2 tilts the
    axis and is only compatible with an untwisted bundle (tau = 0).
    """

    kappa: float
    tau: float
    alpha: float = _HALF_PI

    def __post_init__(self):
        if self.kappa > 0.0:
            raise ValueError("positive base curvature is not supported")
        if not (0.0 < self.alpha <= _HALF_PI):
            raise ValueError(f"axis inclination must lie in (0, pi/2], got {self.alpha}")
        if self.tau != 0.0 and self.alpha < _HALF_PI:
            raise ValueError("a tilted axis requires an untwisted bundle (tau = 0)")

    @property
    def root(self) -> float:
        return math.sqrt(-self.kappa)

    @property
    def critical_mean_curvature(self) -> float:
        return self.root / 2.0

    @property
    def is_flat_base(self) -> bool:
        return self.kappa == 0.0


@dataclass(frozen=True)
class EktPoint:
    x: float
    y: float
    z: float

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    def __iter__(self):
        yield self.x
        yield self.y
        yield self.z


# ------------------------------------------------------------------
# frame, metric, exponential
# ------------------------------------------------------------------

def _shear(params: EktParams, z: float) -> float:
    # coefficient of d/dy in E1; the expm1 keeps the kappa -> 0 limit clean
    if params.is_flat_base:
        return 2.0 * params.tau * z
    m = params.root
    return (2.0 * params.tau / m) * math.expm1(z * m)


def ekt_exp_zA(params: EktParams, z: float) -> np.ndarray:
    """2x2 horizontal holonomy block at height z (unipotent when kappa = 0)."""
    a = 1.0 if params.is_flat_base else math.exp(z * params.root)
    return np.array([[a, 0.0], [_shear(params, z), 1.0]])


def ekt_frame_at(params: EktParams, p: EktPoint) -> np.ndarray:
    """Rows are the coordinate components of E1, E2, E3 at p."""
    a = 1.0 if params.is_flat_base else math.exp(p.z * params.root)
    return np.array([
        [a, _shear(params, p.z), 0.0],
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
    ])


def ekt_metric_at(params: EktParams, p: EktPoint) -> np.ndarray:
    """Metric tensor in coordinates, the closed form of (frame^-1)(frame^-T)."""
    if params.is_flat_base:
        b = 2.0 * params.tau * p.z
        g11 = 1.0 + b * b
        g12 = -b
    else:
        m = params.root
        e = math.expm1(-p.z * m)
        c = 2.0 * params.tau / m
        g11 = math.exp(-2.0 * p.z * m) + (c * e) ** 2
        g12 = c * e
    return np.array([
        [g11, g12, 0.0],
        [g12, 1.0, 0.0],
        [0.0, 0.0, 1.0],
    ])


def ekt_base_metric_at(params: EktParams, z: float) -> np.ndarray:
    """Metric of the quotient plane (x, z): e^{-2 z m} dx^2 + dz^2."""
    gxx = 1.0 if params.is_flat_base else math.exp(-2.0 * z * params.root)
    return np.array([[gxx, 0.0], [0.0, 1.0]])


def ekt_frame_to_coords(params: EktParams, p: EktPoint, v: FrameVector) -> np.ndarray:
    frame = ekt_frame_at(params, p)
    return v.a1 * frame[0] + v.a2 * frame[1] + v.a3 * frame[2]


def ekt_coords_to_frame(params: EktParams, p: EktPoint, v) -> FrameVector:
    vx, vy, vz = v
    a = 1.0 if params.is_flat_base else math.exp(p.z * params.root)
    a1 = vx / a
    return FrameVector(a1, vy - _shear(params, p.z) * a1, vz)


# ------------------------------------------------------------------
# connection
# ------------------------------------------------------------------

def ekt_connection(params: EktParams, i: int, j: int) -> FrameVector:
    """Covariant derivative of E_j along E_i, as frame components.

    The coefficients are constant on the whole space; only (kappa, tau)
    enter.  Indices are 1-based.
    """
    if i not in (1, 2, 3) or j not in (1, 2, 3):
        raise ValueError(f"frame indices must be 1, 2 or 3, got ({i}, {j})")
    m = params.root
    t = params.tau
    table = {
        (1, 1): FrameVector(0.0, 0.0, m),
        (1, 2): FrameVector(0.0, 0.0, t),
        (1, 3): FrameVector(-m, -t, 0.0),
        (2, 1): FrameVector(0.0, 0.0, t),
        (2, 2): FrameVector(0.0, 0.0, 0.0),
        (2, 3): FrameVector(-t, 0.0, 0.0),
        (3, 1): FrameVector(0.0, t, 0.0),
        (3, 2): FrameVector(-t, 0.0, 0.0),
        (3, 3): FrameVector(0.0, 0.0, 0.0),
    }
    return table[(i, j)]


# ------------------------------------------------------------------
# base geodesic through the origin and its horizontal lift
# ------------------------------------------------------------------

def ekt_base_geodesic(params: EktParams, t: float) -> tuple[float, float]:
    """Unit-speed geodesic of the quotient plane through (0, 0) along d/dx."""
    if params.is_flat_base:
        return (t, 0.0)
    m = params.root
    w = t * m
    return (math.tanh(w) / m, -math.log(math.cosh(w)) / m)


def ekt_lift_direction(params: EktParams, t: float) -> FrameVector:
    """Unit tangent of the horizontal lift, in frame components."""
    if params.is_flat_base:
        return FrameVector(1.0, 0.0, 0.0)
    w = t * params.root
    return FrameVector(1.0 / math.cosh(w), 0.0, -math.tanh(w))


def _tanh_minus_gd(w: float) -> float:
    # tanh(w) - atan(sinh(w)); both terms are w + O(w^3), so go to the
    # series when the cancellation would dominate
    if abs(w) < 1e-4:
        return -w ** 3 / 6.0
    return math.tanh(w) - math.atan(math.sinh(w))


def ekt_lift_point(params: EktParams, t: float) -> EktPoint:
    """Point of the horizontal lift at arc length t.

    The (x, z) part traces the base geodesic; the y part accumulates the
    frame shear and vanishes when tau = 0.
    """
    if params.is_flat_base:
        return EktPoint(t, 0.0, 0.0)
    m = params.root
    x, z = ekt_base_geodesic(params, t)
    y = (2.0 * params.tau / (m * m)) * _tanh_minus_gd(t * m)
    return EktPoint(x, y, z)


# ------------------------------------------------------------------
# axial Killing field and the translations it generates
# ------------------------------------------------------------------

def ekt_killing_field(params: EktParams, p: EktPoint) -> FrameVector:
    """Generator of the axis translations, in frame components at p."""
    if params.is_flat_base:
        return FrameVector(0.0, 2.0 * params.tau * p.x, 1.0)
    m = params.root
    damp = math.exp(-p.z * m)
    return FrameVector(p.x * m * damp, 2.0 * params.tau * p.x * damp, 1.0)


def ekt_translate(params: EktParams, s: float, p: EktPoint) -> EktPoint:
    """Translation by arc length s along the model's axis.

    For alpha = pi/2 this is the one-parameter group generated by the
    Killing field above; a tilted axis (tau = 0 only) mixes in a horizontal
    shift of s cos(alpha) along d/dy.
    """
    t = s * math.sin(params.alpha)
    y0 = p.y + s * math.cos(params.alpha)
    a = 1.0 if params.is_flat_base else math.exp(t * params.root)
    return EktPoint(a * p.x, _shear(params, t) * p.x + y0, p.z + t)
