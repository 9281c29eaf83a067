"""The Sol geometry: R^3 with metric e^{2z} dx^2 + e^{-2z} dy^2 + dz^2.

Sol is a metric Lie group; the group law twists x and y by e^{-z} and e^{z},
and left translations are isometries. The left-invariant orthonormal frame is

    E1 = e^{-z} d/dx,   E2 = e^{z} d/dy,   E3 = d/dz.

Everything here is a pure function of its inputs. Isometries are kept as an
enumerated catalog of closed forms (translations along the vertical geodesic,
translations along the two horizontal diagonal geodesics, the two coordinate
plane reflections, and the three order-two rotations); nothing in the package
needs a generic matrix action, and exactness matters when curves are extended
by symmetry.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .frames import FrameVector

__all__ = [
    "SolPoint",
    "FrameVector",
    "SolIsometry",
    "translate_base",
    "translate_diag",
    "reflect_xz",
    "reflect_yz",
    "rotate_pi_c",
    "rotate_pi_diag",
    "sol_metric_at",
    "sol_group_mul",
    "sol_apply_isometry",
    "sol_isometry_linear_part",
    "sol_connection",
    "sol_killing_fields",
    "sol_frame_at",
    "frame_to_coords",
    "coords_to_frame",
]

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class SolPoint:
    x: float
    y: float
    z: float

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def __iter__(self):
        yield self.x
        yield self.y
        yield self.z


_ISOMETRY_KINDS = (
    "translate-base",
    "translate-diag",
    "reflect-xz",
    "reflect-yz",
    "rotate-pi-c",
    "rotate-pi-diag",
)


@dataclass(frozen=True)
class SolIsometry:
    """One element of the closed-form isometry catalog.

    kind selects the formula; s is the translation parameter (ignored by the
    reflections and rotations); sign picks one of the two diagonals.
    """

    kind: str
    s: float = 0.0
    sign: int = 1

    def __post_init__(self):
        if self.kind not in _ISOMETRY_KINDS:
            raise ValueError(f"unknown isometry kind {self.kind!r}; expected one of {_ISOMETRY_KINDS}")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")


def translate_base(s: float) -> SolIsometry:
    """Translation by s along the vertical axis: (x,y,z) -> (e^{-s}x, e^{s}y, z+s)."""
    return SolIsometry("translate-base", s=s)


def translate_diag(sign: int, s: float) -> SolIsometry:
    """Translation by s along the diagonal axis y = sign*x in the plane z=0."""
    return SolIsometry("translate-diag", s=s, sign=sign)


def reflect_xz() -> SolIsometry:
    return SolIsometry("reflect-xz")


def reflect_yz() -> SolIsometry:
    return SolIsometry("reflect-yz")


def rotate_pi_c() -> SolIsometry:
    """Rotation by pi about the vertical axis: (x,y,z) -> (-x,-y,z)."""
    return SolIsometry("rotate-pi-c")


def rotate_pi_diag(sign: int) -> SolIsometry:
    """Rotation by pi about a diagonal axis: (x,y,z) -> (sign*y, sign*x, -z)."""
    return SolIsometry("rotate-pi-diag", sign=sign)


def sol_metric_at(p: SolPoint) -> np.ndarray:
    """Coordinate metric matrix diag(e^{2z}, e^{-2z}, 1) at p."""
    e2z = math.exp(2.0 * p.z)
    return np.diag([e2z, 1.0 / e2z, 1.0])


def sol_group_mul(a: SolPoint, b: SolPoint) -> SolPoint:
    """Group product a*b; left multiplication by a fixed a is an isometry."""
    emz = math.exp(-a.z)
    return SolPoint(a.x + emz * b.x, a.y + b.y / emz, a.z + b.z)


def sol_apply_isometry(iso: SolIsometry, p: SolPoint) -> SolPoint:
    kind = iso.kind
    if kind == "translate-base":
        es = math.exp(iso.s)
        return SolPoint(p.x / es, p.y * es, p.z + iso.s)
    if kind == "translate-diag":
        d = iso.s / _SQRT2
        return SolPoint(p.x + d, p.y + iso.sign * d, p.z)
    if kind == "reflect-xz":
        return SolPoint(p.x, -p.y, p.z)
    if kind == "reflect-yz":
        return SolPoint(-p.x, p.y, p.z)
    if kind == "rotate-pi-c":
        return SolPoint(-p.x, -p.y, p.z)
    # rotate-pi-diag
    return SolPoint(iso.sign * p.y, iso.sign * p.x, -p.z)


def sol_isometry_linear_part(iso: SolIsometry) -> np.ndarray:
    """Coordinate differential of the isometry (constant: all maps are affine)."""
    kind = iso.kind
    if kind == "translate-base":
        es = math.exp(iso.s)
        return np.diag([1.0 / es, es, 1.0])
    if kind == "translate-diag":
        return np.eye(3)
    if kind == "reflect-xz":
        return np.diag([1.0, -1.0, 1.0])
    if kind == "reflect-yz":
        return np.diag([-1.0, 1.0, 1.0])
    if kind == "rotate-pi-c":
        return np.diag([-1.0, -1.0, 1.0])
    m = np.zeros((3, 3))
    m[0, 1] = iso.sign
    m[1, 0] = iso.sign
    m[2, 2] = -1.0
    return m


# Levi-Civita connection on the frame: nabla_{E_i} E_j, constant coefficients.
_CONNECTION = {
    (1, 1): FrameVector(0.0, 0.0, -1.0),
    (1, 3): FrameVector(1.0, 0.0, 0.0),
    (2, 2): FrameVector(0.0, 0.0, 1.0),
    (2, 3): FrameVector(0.0, -1.0, 0.0),
}

_ZERO = FrameVector(0.0, 0.0, 0.0)


def sol_connection(i: int, j: int) -> FrameVector:
    """nabla_{E_i} E_j as constant frame coefficients."""
    if i not in (1, 2, 3) or j not in (1, 2, 3):
        raise ValueError(f"frame indices must be in 1..3, got ({i}, {j})")
    return _CONNECTION.get((i, j), _ZERO)


def sol_killing_fields(p: SolPoint) -> tuple[FrameVector, FrameVector, FrameVector]:
    """The three Killing fields d/dx, d/dy and the vertical translation generator.

    In frame coefficients at p: K1 = e^z E1, K2 = e^{-z} E2,
    K3 = -x K1 + y K2 + E3.
    """
    ez = math.exp(p.z)
    k1 = FrameVector(ez, 0.0, 0.0)
    k2 = FrameVector(0.0, 1.0 / ez, 0.0)
    k3 = FrameVector(-p.x * ez, p.y / ez, 1.0)
    return k1, k2, k3


def sol_frame_at(p: SolPoint) -> np.ndarray:
    """Rows are E1, E2, E3 expressed in coordinates at p."""
    ez = math.exp(p.z)
    return np.diag([1.0 / ez, ez, 1.0])


def frame_to_coords(p: SolPoint, v: FrameVector) -> np.ndarray:
    ez = math.exp(p.z)
    return np.array([v.a1 / ez, v.a2 * ez, v.a3])


def coords_to_frame(p: SolPoint, vec) -> FrameVector:
    ez = math.exp(p.z)
    return FrameVector(vec[0] * ez, vec[1] / ez, vec[2])
