"""Mean curvature of translation-invariant surfaces.

Every surface here is swept by a one-parameter isometry group out of a
profile curve living in a cross-section. In a chart (u, h) on that section
the surface is determined by h(u), and its mean curvature is an affine
function of h''. The engine assembles first and second fundamental forms
from frame components of the orbit direction v1 and the profile tangent v2,
using the constant connection tables of the ambient model, then solves the
affine relation for h''.

Axis families:

  sol-base        Sol, orbit through the z-axis translations; section z = 0,
                  chart (x, y), graph y = h(x).
  sol-diag-plus   Sol, orbits along the diagonal x = y; section x + y = 0,
                  chart (u, z) with u = (x - y)/sqrt(2), graph z = h(u).
  sol-diag-minus  mirror image of the above (orbits along x = -y).
  ekt             fibered model, orbit along the translations of ekt_translate;
                  chart (arc length along the lifted geodesic, fiber offset).

An explicit closed-form route exists for the Sol base axis and for the ekt
axis; both are kept alongside the generic assembly so the two can check
each other.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import partial
from typing import Callable, Optional

from .ekt import EktParams, ekt_connection
from .errors import GraphBlowupError, PreconditionError
from .frames import FrameVector
from .sol import sol_connection

_ZERO = FrameVector(0.0, 0.0, 0.0)
_AXIS_KINDS = ("sol-base", "sol-diag-plus", "sol-diag-minus", "ekt")


@dataclass(frozen=True)
class AxisSpec:
    """Which translation family the surface is invariant under."""

    kind: str
    params: Optional[EktParams] = None

    def __post_init__(self):
        if self.kind not in _AXIS_KINDS:
            raise ValueError(f"unknown axis kind {self.kind!r}")
        if self.kind == "ekt" and self.params is None:
            raise ValueError("ekt axis needs EktParams")
        if self.kind != "ekt" and self.params is not None:
            raise ValueError(f"{self.kind} axis takes no model parameters")

    @property
    def is_sol(self) -> bool:
        return self.kind != "ekt"


def sol_base_axis() -> AxisSpec:
    return AxisSpec("sol-base")


def sol_diag_axis(sign: int) -> AxisSpec:
    if sign == 1:
        return AxisSpec("sol-diag-plus")
    if sign == -1:
        return AxisSpec("sol-diag-minus")
    raise ValueError(f"diagonal sign must be +1 or -1, got {sign}")


def ekt_axis(params: EktParams) -> AxisSpec:
    return AxisSpec("ekt", params=params)


@dataclass(frozen=True)
class GraphState:
    t: float
    h: float
    hp: float
    H: float

    def __post_init__(self):
        for name in ("t", "h", "hp", "H"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"graph state field {name} is not finite")


@dataclass(frozen=True)
class FundamentalForms:
    g11: float
    g12: float
    g22: float
    b11: Optional[float]
    b12: Optional[float]
    b22: Optional[float]
    detg: float
    normal: FrameVector
    orientation: str  # "upper" (graph solves) or "inner" (flux profile)


# ------------------------------------------------------------------
# chart data: orbit field v1 and section basis (bu, bh) in frame components
# ------------------------------------------------------------------

def _chart_fields(axis: AxisSpec, u: float, h: float):
    """Returns (v1, v1_u, v1_h, bu, bu_u, bu_h, bh, nsign, conn).

    v1 is the orbit (Killing) direction at the chart point, bu and bh the
    section's coordinate directions; the *_u / *_h entries are their partial
    derivatives. nsign orients the normal so its component along the graph
    direction bh is positive.
    """
    kind = axis.kind
    if kind == "sol-base":
        return (FrameVector(-u, h, 1.0), FrameVector(-1.0, 0.0, 0.0),
                FrameVector(0.0, 1.0, 0.0), FrameVector(1.0, 0.0, 0.0),
                _ZERO, _ZERO, FrameVector(0.0, 1.0, 0.0), 1.0, sol_connection)
    if kind in ("sol-diag-plus", "sol-diag-minus"):
        r = math.sqrt(0.5)
        ep = math.exp(h) * r
        em = math.exp(-h) * r
        if kind == "sol-diag-plus":
            v1 = FrameVector(ep, em, 0.0)
            v1_h = FrameVector(ep, -em, 0.0)
            nsign = -1.0
        else:
            v1 = FrameVector(ep, -em, 0.0)
            v1_h = FrameVector(ep, em, 0.0)
            nsign = 1.0
        # the section direction is the *other* diagonal at height h
        bu, bu_h = v1_h, v1
        return (v1, _ZERO, v1_h, bu, _ZERO, bu_h,
                FrameVector(0.0, 0.0, 1.0), nsign, sol_connection)

    params = axis.params
    sa = math.sin(params.alpha)
    ca = math.cos(params.alpha)
    conn = partial(ekt_connection, params)
    if params.is_flat_base:
        v1 = FrameVector(0.0, sa * 2.0 * params.tau * u + ca, sa)
        v1_u = FrameVector(0.0, sa * 2.0 * params.tau, 0.0)
        bu, bu_u = FrameVector(1.0, 0.0, 0.0), _ZERO
    else:
        m = params.root
        w = u * m
        s, c = math.sinh(w), math.cosh(w)
        q, tn = 1.0 / c, math.tanh(w)
        v1 = FrameVector(sa * s, sa * (2.0 * params.tau / m) * s + ca, sa)
        v1_u = FrameVector(sa * m * c, sa * 2.0 * params.tau * c, 0.0)
        bu = FrameVector(q, 0.0, -tn)
        bu_u = FrameVector(-m * q * tn, 0.0, -m * q * q)
    return (v1, v1_u, _ZERO, bu, bu_u, _ZERO,
            FrameVector(0.0, 1.0, 0.0), 1.0, conn)


def _gamma(conn, u: FrameVector, w: FrameVector) -> FrameVector:
    """Connection term sum_{i,k} u_i w_k nabla_{E_i} E_k."""
    uc = (u.a1, u.a2, u.a3)
    wc = (w.a1, w.a2, w.a3)
    a1 = a2 = a3 = 0.0
    for i in (1, 2, 3):
        ui = uc[i - 1]
        if ui == 0.0:
            continue
        for k in (1, 2, 3):
            wk = wc[k - 1]
            if wk == 0.0:
                continue
            v = conn(i, k)
            coeff = ui * wk
            a1 += coeff * v.a1
            a2 += coeff * v.a2
            a3 += coeff * v.a3
    return FrameVector(a1, a2, a3)


def mean_curvature_from_frame_data(v1: FrameVector, dv1: FrameVector,
                                   v2: FrameVector, dv2: FrameVector,
                                   conn: Callable[[int, int], FrameVector],
                                   nsign: float,
                                   orientation: str = "upper"):
    """Assemble the forms and H for given tangent data; returns (H, forms)."""
    g11 = v1.dot(v1)
    g12 = v1.dot(v2)
    g22 = v2.dot(v2)
    detg = g11 * g22 - g12 * g12
    raw = v1.cross(v2)
    nrm = raw.norm()
    if not math.isfinite(nrm) or nrm == 0.0 or not math.isfinite(detg) or detg <= 0.0:
        raise GraphBlowupError("degenerate tangent data in curvature assembly")
    normal = raw * (nsign / nrm)
    b11 = _gamma(conn, v1, v1).dot(normal)
    b12 = (dv1 + _gamma(conn, v2, v1)).dot(normal)
    b22 = (dv2 + _gamma(conn, v2, v2)).dot(normal)
    h = (g22 * b11 - 2.0 * g12 * b12 + g11 * b22) / (2.0 * detg)
    if not math.isfinite(h):
        raise GraphBlowupError("non-finite mean curvature from frame data")
    forms = FundamentalForms(g11, g12, g22, b11, b12, b22, detg, normal, orientation)
    return h, forms


def _graph_data(axis: AxisSpec, t: float, h: float, hp: float):
    (v1, v1_u, v1_h, bu, bu_u, bu_h, bh, nsign, conn) = _chart_fields(axis, t, h)
    v2 = bu + bh * hp
    dv1 = v1_u + v1_h * hp
    dv2_rest = bu_u + bu_h * hp
    return v1, dv1, v2, dv2_rest, bh, nsign, conn


def graph_mean_curvature(axis: AxisSpec, t: float, h: float, hp: float,
                         hpp: float) -> float:
    v1, dv1, v2, dv2_rest, bh, nsign, conn = _graph_data(axis, t, h, hp)
    value, _ = mean_curvature_from_frame_data(v1, dv1, v2, dv2_rest + bh * hpp,
                                              conn, nsign)
    return value


def fundamental_forms(axis: AxisSpec, t: float, h: float, hp: float,
                      hpp: float) -> FundamentalForms:
    v1, dv1, v2, dv2_rest, bh, nsign, conn = _graph_data(axis, t, h, hp)
    _, forms = mean_curvature_from_frame_data(v1, dv1, v2, dv2_rest + bh * hpp,
                                              conn, nsign)
    return forms


def graph_curvature_affine(axis: AxisSpec, t: float, h: float, hp: float):
    """H(h'') = H0 + slope * h'' in this chart; returns (H0, slope)."""
    v1, dv1, v2, dv2_rest, bh, nsign, conn = _graph_data(axis, t, h, hp)
    h0, forms = mean_curvature_from_frame_data(v1, dv1, v2, dv2_rest, conn, nsign)
    slope = forms.g11 * bh.dot(forms.normal) / (2.0 * forms.detg)
    return h0, slope


def implicit_hpp(axis: AxisSpec, state: GraphState) -> float:
    """The h'' making the graph's mean curvature equal state.H."""
    if axis.is_sol:
        if state.H <= 0.0:
            raise PreconditionError("Sol graph solves need H > 0")
    elif state.H <= axis.params.critical_mean_curvature:
        raise PreconditionError(
            f"H must exceed the critical value {axis.params.critical_mean_curvature}")
    h0, slope = graph_curvature_affine(axis, state.t, state.h, state.hp)
    if not math.isfinite(slope) or slope <= 0.0:
        raise GraphBlowupError(f"graph chart degenerated (solve coefficient {slope})")
    hpp = (state.H - h0) / slope
    if not math.isfinite(hpp):
        raise GraphBlowupError("non-finite h'' from the affine solve")
    return hpp


def arclength_turn_rate(axis: AxisSpec, u: float, h: float, theta: float,
                        H: float) -> float:
    """Rotation speed of the profile tangent, arc-length parametrization.

    State is (u, h, theta) with (u', h') = (cos theta, sin theta); the
    return value is theta'. Regular across vertical tangents, which is the
    whole point: graph charts die whenever h' blows up.
    """
    (v1, v1_u, v1_h, bu, bu_u, bu_h, bh, nsign, conn) = _chart_fields(axis, u, h)
    cu, ch = math.cos(theta), math.sin(theta)
    v2 = bu * cu + bh * ch
    dv1 = v1_u * cu + v1_h * ch
    dv2_rest = (bu_u * cu + bu_h * ch) * cu
    h0, forms = mean_curvature_from_frame_data(v1, dv1, v2, dv2_rest, conn, nsign)
    theta_dir = bh * cu - bu * ch
    slope = forms.g11 * theta_dir.dot(forms.normal) / (2.0 * forms.detg)
    if not math.isfinite(slope) or slope == 0.0:
        raise GraphBlowupError("arc-length chart degenerated")
    return (H - h0) / slope


# ------------------------------------------------------------------
# explicit closed forms (independent of the assembly above)
# ------------------------------------------------------------------

def sol_curve_mean_curvature(x: float, y: float, xp: float, yp: float,
                             xpp: float, ypp: float) -> float:
    """Mean curvature of the Sol surface swept from the cross-section curve
    (x(t), y(t), 0), directly from the polynomial closed form."""
    if xp == 0.0 and yp == 0.0:
        raise PreconditionError("degenerate tangent: (x', y') = (0, 0)")
    mix = x * yp + xp * y
    c2 = xp * xp + yp * yp + mix * mix
    g11 = x * x + y * y + 1.0
    g12 = -x * xp + y * yp
    g22 = xp * xp + yp * yp
    cb11 = x * yp - xp * y + (x * x - y * y) * mix
    cb12 = -(x * xp + y * yp) * mix
    cb22 = -xpp * yp + xp * ypp + (xp * xp - yp * yp) * mix
    return (g22 * cb11 - 2.0 * g12 * cb12 + g11 * cb22) / (2.0 * c2 ** 1.5)


def sol_base_hpp(H: float, t: float, h: float, hp: float) -> float:
    """Closed-form inversion of the base-axis graph equation (fast path)."""
    mix = t * hp + h
    c2 = 1.0 + hp * hp + mix * mix
    g11 = t * t + h * h + 1.0
    g12 = -t + h * hp
    g22 = 1.0 + hp * hp
    cb11 = t * hp - h + (t * t - h * h) * mix
    cb12 = -(t + h * hp) * mix
    rest = (1.0 - hp * hp) * mix
    return (2.0 * H * c2 ** 1.5 - g22 * cb11 + 2.0 * g12 * cb12 - g11 * rest) / g11


def sol_planar_turn_rate(H: float, p: float, q: float, theta: float) -> float:
    """theta' for a unit-speed cross-section curve through (p, q) in Sol's
    base section, from the same closed form (fast path for shooting)."""
    ct, st = math.cos(theta), math.sin(theta)
    mix = p * st + ct * q
    c2 = 1.0 + mix * mix
    g11 = p * p + q * q + 1.0
    g12 = -p * ct + q * st
    cb11 = p * st - ct * q + (p * p - q * q) * mix
    cb12 = -(p * ct + q * st) * mix
    rest = (ct * ct - st * st) * mix
    return (2.0 * H * c2 ** 1.5 - cb11 + 2.0 * g12 * cb12 - g11 * rest) / g11


def ekt_planar_turn_rate(params: EktParams, H: float, t: float,
                         theta: float) -> float:
    """theta' for the unit-speed section curve in the fibered model.

    Angle-native twin of ``ekt_hpp``: the tangent never appears as a slope,
    so vertical tangents stay regular (fast path for the flux integrator,
    whose endpoint is exactly such a point).
    """
    if H <= params.critical_mean_curvature:
        raise PreconditionError(
            f"H must exceed the critical value {params.critical_mean_curvature}")
    if params.alpha != math.pi / 2.0:
        raise PreconditionError("closed form covers the untilted axis only")
    ct, st = math.cos(theta), math.sin(theta)
    tau = params.tau
    if params.is_flat_base:
        g11 = 1.0 + 4.0 * tau * tau * t * t
        core = 1.0 + 4.0 * tau * tau * t * t * ct * ct
        num = 2.0 * H * core ** 1.5 - 16.0 * tau ** 4 * t ** 3 * st * ct * ct
        return num / g11 + 4.0 * tau * tau * t * st * ct * ct
    m = params.root
    w = t * m
    s, c = math.sinh(w), math.cosh(w)
    tn = math.tanh(w)
    c2 = 2.0 * tau / m
    g11 = c * c + (c2 * s) ** 2
    big_a = m + 2.0 * tau * c2
    big_b = m + tau * c2
    core = c * c + (c2 * s * ct) ** 2
    num = (2.0 * H * core ** 1.5 - s * big_a * st * c * c
           + 2.0 * c2 * s * st * c * c * (tau - c2 * tn * tn * big_b * ct * ct))
    return num / (g11 * c) + 2.0 * tau * c2 * tn * st * ct * ct


def ekt_hpp(params: EktParams, H: float, t: float, hp: float) -> float:
    """Closed-form h'' for the fibered-model graph equation (fast path).

    The equation never reads the graph value itself, so there is no h
    argument to pass.
    """
    if H <= params.critical_mean_curvature:
        raise PreconditionError(
            f"H must exceed the critical value {params.critical_mean_curvature}")
    if params.alpha != math.pi / 2.0:
        raise PreconditionError("closed form covers the untilted axis only")
    p = hp
    tau = params.tau
    if params.is_flat_base:
        g11 = 1.0 + 4.0 * tau * tau * t * t
        g12 = 2.0 * tau * t * p
        g22 = 1.0 + p * p
        detg = g22 + 4.0 * tau * tau * t * t
        b11r = 4.0 * tau * tau * t * p
        b12r = tau * g22 - 4.0 * tau ** 3 * t * t
        corr = 4.0 * tau * tau * t * p
        num = 2.0 * H * detg ** 1.5 - g22 * b11r + 2.0 * g12 * b12r
        return num / g11 + corr
    m = params.root
    w = t * m
    s, c = math.sinh(w), math.cosh(w)
    tn = math.tanh(w)
    c2 = 2.0 * tau / m
    g11 = c * c + (c2 * s) ** 2
    g12 = c2 * s * p
    g22 = 1.0 + p * p
    detg = c * c * g22 + (c2 * s) ** 2
    big_a = m + 2.0 * tau * c2
    big_b = m + tau * c2
    b11r = s * big_a * p * c * c                      # b11 * sqrt(det g)
    b12r = c * c * (tau * g22 - c2 * tn * tn * big_b)
    corr = 2.0 * tau * c2 * tn * p
    num = 2.0 * H * detg ** 1.5 - g22 * b11r + 2.0 * g12 * b12r
    return num / (g11 * c) + corr


# ------------------------------------------------------------------
# arc-length fundamental forms for the flux computation
# ------------------------------------------------------------------

def ekt_arclength_frames(params: EktParams, x: float, xp: float, yp: float,
                         *, xpp: Optional[float] = None,
                         ypp: Optional[float] = None) -> FundamentalForms:
    """Forms of the swept surface along a unit-speed section curve.

    The section chart is (arc length along the lifted geodesic, fiber
    offset); v1 is the unnormalized orbit field. Pass xpp/ypp to also get
    the b22 entry; b11 and b12 only need first-order data.
    """
    if abs(xp * xp + yp * yp - 1.0) > 1e-9:
        raise PreconditionError("profile tangent must be unit: x'^2 + y'^2 = 1")
    if (xpp is None) != (ypp is None):
        raise ValueError("supply both xpp and ypp or neither")
    conn = partial(ekt_connection, params)
    if params.is_flat_base:
        v1 = FrameVector(0.0, 2.0 * params.tau * x, 1.0)
        dv1 = FrameVector(0.0, 2.0 * params.tau * xp, 0.0)
        tangent = FrameVector(1.0, 0.0, 0.0)
        dtangent = _ZERO
    else:
        m = params.root
        w = x * m
        s, c = math.sinh(w), math.cosh(w)
        q, tn = 1.0 / c, math.tanh(w)
        v1 = FrameVector(s, (2.0 * params.tau / m) * s, 1.0)
        dv1 = FrameVector(m * c * xp, 2.0 * params.tau * c * xp, 0.0)
        tangent = FrameVector(q, 0.0, -tn)
        dtangent = FrameVector(-m * q * tn, 0.0, -m * q * q)
    fiber = FrameVector(0.0, 1.0, 0.0)
    v2 = tangent * xp + fiber * yp
    g11 = v1.dot(v1)
    g12 = v1.dot(v2)
    g22 = v2.dot(v2)
    detg = g11 * g22 - g12 * g12
    raw = v1.cross(v2)
    normal = raw * (1.0 / raw.norm())
    b11 = _gamma(conn, v1, v1).dot(normal)
    b12 = (dv1 + _gamma(conn, v2, v1)).dot(normal)
    b22 = None
    if xpp is not None:
        dv2 = tangent * xpp + fiber * ypp + dtangent * (xp * xp)
        b22 = (dv2 + _gamma(conn, v2, v2)).dot(normal)
    return FundamentalForms(g11, g12, g22, b11, b12, b22, detg, normal, "inner")
