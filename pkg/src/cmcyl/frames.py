"""Tangent vectors in an orthonormal left-invariant frame.

All ambient geometries in this package carry a global orthonormal frame
(E1, E2, E3). Tangent vectors are stored as their three frame coefficients,
so norms and angles are Euclidean on the coefficients by construction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["FrameVector"]


@dataclass(frozen=True)
class FrameVector:
    """Coefficients with respect to the orthonormal frame at some base point."""

    a1: float
    a2: float
    a3: float

    def as_array(self) -> np.ndarray:
        return np.array([self.a1, self.a2, self.a3])

    def norm(self) -> float:
        return math.sqrt(self.a1 * self.a1 + self.a2 * self.a2 + self.a3 * self.a3)

    def dot(self, other: "FrameVector") -> float:
        return self.a1 * other.a1 + self.a2 * other.a2 + self.a3 * other.a3

    def cross(self, other: "FrameVector") -> "FrameVector":
        return FrameVector(
            self.a2 * other.a3 - self.a3 * other.a2,
            self.a3 * other.a1 - self.a1 * other.a3,
            self.a1 * other.a2 - self.a2 * other.a1,
        )

    def normalized(self) -> "FrameVector":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return FrameVector(self.a1 / n, self.a2 / n, self.a3 / n)

    def __add__(self, other: "FrameVector") -> "FrameVector":
        return FrameVector(self.a1 + other.a1, self.a2 + other.a2, self.a3 + other.a3)

    def __sub__(self, other: "FrameVector") -> "FrameVector":
        return FrameVector(self.a1 - other.a1, self.a2 - other.a2, self.a3 - other.a3)

    def __mul__(self, c: float) -> "FrameVector":
        return FrameVector(self.a1 * c, self.a2 * c, self.a3 * c)

    __rmul__ = __mul__

    def __neg__(self) -> "FrameVector":
        return FrameVector(-self.a1, -self.a2, -self.a3)
