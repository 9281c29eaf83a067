"""Integration of the invariant-surface profile ODEs.

The graph equation h'' = F(t, h, h') blows up wherever the profile turns
vertical, so the integrator runs a chart loop. It starts in the graph
chart and, once |h'| crosses a swap threshold, hands the state to a chart
that stays regular through the vertical tangent: the mirrored graph for
the Sol base axis (x-graphs and y-graphs obey the same equation, with the
target curvature signed by the orientation of the carried normal), and the
inclination-angle arc chart for every other axis. The blow-up abscissae
R_+/R_- are then event locations on the dense output rather than
extrapolations from a diverging chart.

A separate entry point integrates full cross-section curves of the Sol
axes in arc-length form, with named events (axis crossings, flat points)
located by root-finding on the dense interpolant. That solver feeds the
shooting searches.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .ekt import ekt_lift_point
from .errors import GraphBlowupError, PreconditionError, SolverError
from .surfaces import (
    AxisSpec,
    GraphState,
    arclength_turn_rate,
    ekt_hpp,
    implicit_hpp,
    sol_base_hpp,
    sol_planar_turn_rate,
)

_HALF_PI = math.pi / 2.0
_ROOT_HALF = math.sqrt(0.5)

EVENT_KINDS = ("CrossYAxis", "CrossDiagonalPlus", "CrossDiagonalMinus",
               "DerivativeZero", "Blowup")


@dataclass(frozen=True)
class EventSpec:
    kind: str
    terminal: bool = True   # False records every hit and keeps integrating

    def __post_init__(self):
        if self.kind not in EVENT_KINDS:
            raise ValueError(f"unknown event kind {self.kind!r}")


@dataclass(frozen=True)
class EventHit:
    kind: str
    s: float
    x: float
    y: float
    theta: float


@dataclass(frozen=True)
class IntegrateOptions:
    rtol: float = 1e-10
    atol: float = 1e-12
    swap_threshold: float = 10.0
    swap_hysteresis: float = 0.5
    max_param: float = 1000.0
    min_step: float = 1e-14


def section_to_ambient(axis: AxisSpec, t: float, h: float):
    """Embed a section-chart point into model coordinates (x, y, z)."""
    kind = axis.kind
    if kind == "sol-base":
        return (t, h, 0.0)
    if kind == "sol-diag-plus":
        return (t * _ROOT_HALF, -t * _ROOT_HALF, h)
    if kind == "sol-diag-minus":
        return (t * _ROOT_HALF, t * _ROOT_HALF, h)
    lift = ekt_lift_point(axis.params, t)
    return (lift.x, lift.y + h, lift.z)


# ------------------------------------------------------------------
# right-hand sides (target is the signed curvature for the active chart)
# ------------------------------------------------------------------

def _graph_rhs(axis: AxisSpec, target: float) -> Callable:
    kind = axis.kind
    if kind == "sol-base":
        def rhs(t, y):
            hpp = sol_base_hpp(target, t, y[0], y[1])
            if not math.isfinite(hpp):
                raise GraphBlowupError(f"graph equation overflowed at t = {t}")
            return (y[1], hpp)
        return rhs
    if (kind == "ekt" and axis.params.alpha == _HALF_PI
            and target > axis.params.critical_mean_curvature):
        params = axis.params

        def rhs(t, y):
            hpp = ekt_hpp(params, target, t, y[1])
            if not math.isfinite(hpp):
                raise GraphBlowupError(f"graph equation overflowed at t = {t}")
            return (y[1], hpp)
        return rhs

    def rhs(t, y):
        return (y[1], implicit_hpp(axis, GraphState(t, y[0], y[1], target)))
    return rhs


def _mirror_rhs(target: float) -> Callable:
    # Sol base axis only; independent variable is the height coordinate
    def rhs(yv, z):
        gpp = sol_base_hpp(target, yv, z[0], z[1])
        if not math.isfinite(gpp):
            raise GraphBlowupError(f"mirrored graph equation overflowed at y = {yv}")
        return (z[1], gpp)
    return rhs


def _arc_rhs(axis: AxisSpec, target: float) -> Callable:
    if axis.kind == "sol-base":
        def rate_fn(u, h, theta):
            return sol_planar_turn_rate(target, u, h, theta)
    else:
        def rate_fn(u, h, theta):
            return arclength_turn_rate(axis, u, h, theta, target)

    def rhs(s, y):
        rate = rate_fn(y[0], y[1], y[2])
        if not math.isfinite(rate) or abs(rate) > 1e12:
            raise GraphBlowupError(f"turn rate blew up at arc length {s}")
        return (math.cos(y[2]), math.sin(y[2]), rate)
    return rhs


def _event(func, terminal=True, direction=0.0):
    func.terminal = terminal
    func.direction = direction
    return func


def _guard_steps(res, opts: IntegrateOptions, what: str):
    if res.status == -1:
        raise SolverError(f"integrator failed in the {what} chart: {res.message}")
    if res.t.size > 2:
        # the final interval may be tiny because an event truncated it
        steps = np.abs(np.diff(res.t[:-1]))
        if steps.size and steps.min() < opts.min_step:
            raise SolverError(
                f"step size underflow ({steps.min():.3e}) in the {what} chart")


@dataclass
class _Piece:
    chart: str
    sol: object          # dense interpolant over the piece's own parameter
    p_lo: float
    p_hi: float
    ts: np.ndarray
    hs: np.ndarray
    hps: np.ndarray

    @property
    def t_lo(self):
        return min(self.ts[0], self.ts[-1])

    @property
    def t_hi(self):
        return max(self.ts[0], self.ts[-1])


def _piece_from_result(chart: str, res) -> _Piece:
    lo, hi = (res.t[0], res.t[-1]) if res.t[0] <= res.t[-1] else (res.t[-1], res.t[0])
    if chart == "base":
        ts, hs, hps = res.t.copy(), res.y[0].copy(), res.y[1].copy()
    elif chart == "mirror":
        with np.errstate(divide="ignore"):
            hps = 1.0 / res.y[1]
        ts, hs = res.y[0].copy(), res.t.copy()
    else:
        ts, hs = res.y[0].copy(), res.y[1].copy()
        hps = np.tan(res.y[2])
    # a terminal vertical-tangent event can land an ulp past the tangent,
    # flipping the sign of the (legitimately huge) final slope; repair it
    # from the approach side
    if hps.size >= 2 and abs(hps[-1]) > 1e10 and hps[-1] * hps[-2] < 0.0:
        hps[-1] = -hps[-1]
    return _Piece(chart, res.sol, lo, hi, ts, hs, hps)


def _run_branch(axis: AxisSpec, H: float, a: float, b: float,
                direction: float, opts: IntegrateOptions):
    """Integrate one side of the profile; returns (pieces, (t, h, vertical))."""
    thr = opts.swap_threshold
    kb = 1.0 / (thr - opts.swap_hysteresis)
    pieces: List[_Piece] = []
    kw = dict(method="RK45", rtol=opts.rtol, atol=opts.atol, dense_output=True)

    chart = "base"
    t, h, hp, sigma = 0.0, a, b, 1.0
    m_state = a_state = None
    if abs(b) >= thr:
        if axis.kind == "sol-base":
            chart = "mirror"
            m_state = (a, 0.0, 1.0 / b, math.copysign(1.0, b) * direction,
                       -math.copysign(1.0, b))
        else:
            chart = "arc"
            a_state = (0.0, a, math.atan2(direction * b, direction), direction)

    for _ in range(64):
        if chart == "base":
            rhs = _graph_rhs(axis, sigma * H)
            hi_ev = _event(lambda t_, y: y[1] - thr, direction=+1.0)
            lo_ev = _event(lambda t_, y: y[1] + thr, direction=-1.0)
            res = solve_ivp(rhs, (t, direction * opts.max_param), (h, hp),
                            events=(hi_ev, lo_ev), **kw)
            _guard_steps(res, opts, "graph")
            pieces.append(_piece_from_result("base", res))
            if res.status == 0:
                return pieces, (float(res.t[-1]), float(res.y[0][-1]), False)
            t, (h, hp) = float(res.t[-1]), (float(res.y[0][-1]), float(res.y[1][-1]))
            if axis.kind == "sol-base":
                chart = "mirror"
                m_state = (h, t, 1.0 / hp, math.copysign(1.0, hp) * direction,
                           -math.copysign(1.0, hp) * sigma)
            else:
                chart = "arc"
                a_state = (t, h, math.atan2(direction * hp, direction),
                           sigma * direction)
        elif chart == "mirror":
            yv, g, gp, m_dir, m_sigma = m_state
            rhs = _mirror_rhs(m_sigma * H)
            vert = _event(lambda y_, z: z[1])
            back_hi = _event(lambda y_, z: z[1] - kb, direction=+1.0)
            back_lo = _event(lambda y_, z: z[1] + kb, direction=-1.0)
            res = solve_ivp(rhs, (yv, yv + m_dir * opts.max_param), (g, gp),
                            events=(vert, back_hi, back_lo), **kw)
            _guard_steps(res, opts, "mirrored graph")
            pieces.append(_piece_from_result("mirror", res))
            if res.status == 0:
                return pieces, (float(res.y[0][-1]), float(res.t[-1]), False)
            ye, (ge, gpe) = float(res.t[-1]), (float(res.y[0][-1]), float(res.y[1][-1]))
            if abs(gpe) < 0.5 * kb:   # the tangent turned vertical: endpoint
                return pieces, (ge, ye, True)
            chart = "base"
            t, h, hp = ge, ye, 1.0 / gpe
            direction = math.copysign(1.0, gpe) * m_dir
            sigma = -math.copysign(1.0, gpe) * m_sigma
        else:
            u, h_a, theta, a_sigma = a_state
            rhs = _arc_rhs(axis, a_sigma * H)
            vert = _event(lambda s_, y: math.cos(y[2]))
            c = thr - opts.swap_hysteresis
            back = _event(lambda s_, y: (1.0 + c * c) * math.cos(y[2]) ** 2 - 1.0,
                          direction=+1.0)
            res = solve_ivp(rhs, (0.0, 2.0 * opts.max_param), (u, h_a, theta),
                            events=(vert, back), **kw)
            _guard_steps(res, opts, "arc-length")
            pieces.append(_piece_from_result("arc", res))
            if res.status == 0:
                return pieces, (float(res.y[0][-1]), float(res.y[1][-1]), False)
            ue, he, th_e = (float(res.y[k][-1]) for k in range(3))
            if abs(math.cos(th_e)) < 0.01:
                return pieces, (ue, he, True)
            chart = "base"
            t, h, hp = ue, he, math.tan(th_e)
            direction = math.copysign(1.0, math.cos(th_e))
            sigma = a_sigma * direction
    raise SolverError("chart swap limit exceeded; the charts are thrashing")


def _branch_samples(pieces: Sequence[_Piece]):
    ts: List[float] = []
    hs: List[float] = []
    hps: List[float] = []
    tags: List[str] = []
    for j, piece in enumerate(pieces):
        start = 1 if j else 0
        for k in range(start, len(piece.ts)):
            if ts and piece.ts[k] == ts[-1]:
                continue
            ts.append(float(piece.ts[k]))
            hs.append(float(piece.hs[k]))
            hps.append(float(piece.hps[k]))
            tags.append(piece.chart)
    return ts, hs, hps, tags


class ProfileCurve:
    """An integrated profile h(t) together with its chart bookkeeping.

    samples are (t, h, h') triples with t strictly increasing; chart_tags
    names the chart each sample came from. Rminus/Rplus are the abscissae
    where the tangent turned vertical (the ends of the maximal graph
    interval); `complete` is False if a side ran into the parameter cap
    instead, in which case the corresponding R is only a last-seen value.
    """

    def __init__(self, axis: AxisSpec, H: float, samples, chart_tags,
                 pieces, Rminus: float, Rplus: float, complete: bool):
        self.axis = axis
        self.H = H
        self.samples = samples
        self.chart_tags = chart_tags
        self.Rminus = Rminus
        self.Rplus = Rplus
        self.complete = complete
        self._pieces = pieces

    def _locate(self, t: float) -> _Piece:
        for piece in self._pieces:
            if piece.t_lo - 1e-9 <= t <= piece.t_hi + 1e-9:
                return piece
        raise ValueError(f"t = {t} is outside the integrated interval "
                         f"[{self.Rminus}, {self.Rplus}]")

    def _piece_state(self, piece: _Piece, p: float) -> Tuple[float, float, float]:
        """(t, h, h') of a chart piece at its internal parameter p."""
        state = piece.sol(p)
        if piece.chart == "base":
            return float(p), float(state[0]), float(state[1])
        if piece.chart == "mirror":
            gp = float(state[1])
            return (float(state[0]), float(p),
                    math.inf if gp == 0.0 else 1.0 / gp)
        return float(state[0]), float(state[1]), math.tan(float(state[2]))

    def _eval(self, t: float) -> Tuple[float, float]:
        piece = self._locate(t)
        if piece.chart == "base":
            tq = min(max(t, piece.p_lo), piece.p_hi)
            h, hp = piece.sol(tq)
            return float(h), float(hp)
        # mirrored and arc charts: invert the monotone abscissa map first
        tq = min(max(t, piece.t_lo), piece.t_hi)
        fa = float(piece.sol(piece.p_lo)[0]) - tq
        fb = float(piece.sol(piece.p_hi)[0]) - tq
        if fa == 0.0:
            p = piece.p_lo
        elif fb == 0.0:
            p = piece.p_hi
        else:
            p = brentq(lambda q: float(piece.sol(q)[0]) - tq,
                       piece.p_lo, piece.p_hi, xtol=1e-13)
        row = self._piece_state(piece, p)
        return row[1], row[2]

    def dense_samples(self, samples: int = 2400) -> np.ndarray:
        """(t, h, h') rows resampled evenly in arc length, so the spacing
        stays fair across vertical tangents where t itself is a terrible
        parameter. The row count tracks ``samples`` only approximately:
        every chart piece keeps at least sixteen rows and shared piece
        boundaries merge. Rows come back sorted in t."""
        if samples < 16 * len(self._pieces):
            raise ValueError("too few samples for the chart pieces")
        probes = []
        for piece in self._pieces:
            probe = np.linspace(piece.p_lo, piece.p_hi, 128)
            coarse = np.array([self._piece_state(piece, p)[:2] for p in probe])
            seg = np.hypot(*np.diff(coarse, axis=0).T)
            s = np.concatenate([[0.0], np.cumsum(seg)])
            probes.append((piece, probe, s))
        total = sum(s[-1] for _, _, s in probes)
        rows = []
        for piece, probe, s in probes:
            count = max(16, int(round(samples * s[-1] / total)))
            targets = np.linspace(0.0, s[-1], count)
            for p in np.interp(targets, s, probe):
                rows.append(self._piece_state(piece, float(p)))
        rows.sort(key=lambda r: r[0])
        out = [rows[0]]
        for row in rows[1:]:
            if row[0] - out[-1][0] > 1e-12:
                out.append(row)
        arr = np.array(out, dtype=float)
        # endpoint slopes can come out of the event root with the sign lost;
        # take the direction of traversal from the neighbouring height instead
        if not math.isfinite(arr[0, 2]) or abs(arr[0, 2]) > 1e10:
            arr[0, 2] = math.copysign(math.inf, arr[1, 1] - arr[0, 1])
        if not math.isfinite(arr[-1, 2]) or abs(arr[-1, 2]) > 1e10:
            arr[-1, 2] = math.copysign(math.inf, arr[-1, 1] - arr[-2, 1])
        return arr

    def state_at(self, t: float) -> Tuple[float, float]:
        """(h, h') at abscissa t, one chart lookup for both."""
        return self._eval(t)

    def height_at(self, t: float) -> float:
        return self._eval(t)[0]

    def hp_at(self, t: float) -> float:
        return self._eval(t)[1]

    def ambient_samples(self) -> np.ndarray:
        pts = [section_to_ambient(self.axis, t, h) for t, h, _ in self.samples]
        return np.asarray(pts, dtype=float)

    def to_csv(self, target) -> None:
        own = not hasattr(target, "write")
        fh = open(target, "w", encoding="ascii", newline="") if own else target
        try:
            fh.write("t,x,y,z,hp,chart\n")
            for (t, h, hp), tag in zip(self.samples, self.chart_tags):
                x, y, z = section_to_ambient(self.axis, t, h)
                fh.write("%.17g,%.17g,%.17g,%.17g,%.17g,%s\n"
                         % (t, x, y, z, hp, tag))
        finally:
            if own:
                fh.close()


def integrate_profile(axis: AxisSpec, H: float, a: float, b: float,
                      opts: Optional[IntegrateOptions] = None) -> ProfileCurve:
    """Maximal profile through h(0) = a, h'(0) = b, up to vertical tangents."""
    opts = opts or IntegrateOptions()
    for name, v in (("H", H), ("a", a), ("b", b)):
        if not math.isfinite(v):
            raise ValueError(f"initial data {name} = {v} is not finite")
    if axis.is_sol:
        if H <= 0.0:
            raise PreconditionError("Sol profiles need H > 0")
    elif H <= axis.params.critical_mean_curvature:
        raise PreconditionError(
            f"H must exceed the critical value {axis.params.critical_mean_curvature}")

    fwd_pieces, fwd_end = _run_branch(axis, H, a, b, +1.0, opts)
    bwd_pieces, bwd_end = _run_branch(axis, H, a, b, -1.0, opts)

    tsf, hsf, hpsf, tagf = _branch_samples(fwd_pieces)
    tsb, hsb, hpsb, tagb = _branch_samples(bwd_pieces)
    ts = list(reversed(tsb)) + tsf[1:]
    hs = list(reversed(hsb)) + hsf[1:]
    hps = list(reversed(hpsb)) + hpsf[1:]
    tags = list(reversed(tagb)) + tagf[1:]
    samples = list(zip(ts, hs, hps))
    return ProfileCurve(axis, H, samples, tags,
                        list(bwd_pieces) + list(fwd_pieces),
                        Rminus=bwd_end[0], Rplus=fwd_end[0],
                        complete=fwd_end[2] and bwd_end[2])


# ------------------------------------------------------------------
# monotonicity gate
# ------------------------------------------------------------------

@dataclass(frozen=True)
class MonotonicityReport:
    t0: float
    sign_changes: int
    valid: bool
    note: str = ""


def monotonicity_report(curve: ProfileCurve) -> MonotonicityReport:
    """Checks the decreasing-then-increasing shape of an even-data profile.

    Intended for curves integrated from h'(0) = 0; `valid` means h' changes
    sign exactly once, from negative to positive, and t0 is that zero.
    """
    hp = np.array([s[2] for s in curve.samples], dtype=float)
    ts = np.array([s[0] for s in curve.samples], dtype=float)
    keep = np.isfinite(hp)
    hp, ts = hp[keep], ts[keep]
    signs = np.sign(hp)
    signs[np.abs(hp) < 1e-12] = 0.0
    nz = signs != 0.0
    comp, tcomp = signs[nz], ts[nz]
    if comp.size < 2:
        return MonotonicityReport(math.nan, 0, False, "not enough samples")
    flips = int(np.sum(comp[1:] != comp[:-1]))
    t0 = math.nan
    if flips == 1:
        i = int(np.argmax(comp[1:] != comp[:-1]))
        t0 = brentq(curve.hp_at, float(tcomp[i]), float(tcomp[i + 1]), xtol=1e-12)
    valid = flips == 1 and comp[0] < 0.0 < comp[-1]
    note = "" if valid else f"{flips} sign changes, pattern {comp[0]:+.0f}..{comp[-1]:+.0f}"
    return MonotonicityReport(t0, flips, valid, note)


# ------------------------------------------------------------------
# planar cross-section curves with events
# ------------------------------------------------------------------

_EVENT_FUNCS = {
    "CrossYAxis": lambda s, y: y[0],
    "CrossDiagonalPlus": lambda s, y: y[0] - y[1],
    "CrossDiagonalMinus": lambda s, y: y[0] + y[1],
    "DerivativeZero": lambda s, y: math.sin(y[2]),
}


class PlanarCurve:
    """A cross-section curve in chart arc-length parametrization."""

    def __init__(self, axis, H, s, states, events, length, sols):
        self.axis = axis
        self.H = H
        self.s = s                # parameter samples
        self.states = states      # rows (x, y, theta)
        self.events = events
        self.length = length
        self._sols = sols

    def state_at(self, s: float) -> np.ndarray:
        s = min(max(s, 0.0), self.length)
        for sol in self._sols:
            if s <= sol.t_max + 1e-12:
                return np.asarray(sol(min(max(s, sol.t_min), sol.t_max)), dtype=float)
        return self.states[-1].copy()

    def point_at(self, s: float) -> Tuple[float, float]:
        st = self.state_at(s)
        return float(st[0]), float(st[1])

    def theta_at(self, s: float) -> float:
        return float(self.state_at(s)[2])


def integrate_planar_curve(axis: AxisSpec, H: float, p0, dir0,
                           events: Sequence[Union[EventSpec, str]] = (),
                           opts: Optional[IntegrateOptions] = None,
                           max_arc_length: float = 200.0) -> PlanarCurve:
    """Integrate a full cross-section curve, stopping at the first terminal
    event; non-terminal events are recorded and integration continues.

    With an empty event list the curve simply runs to max_arc_length. When
    events are requested and none occurs, a SolverError carrying the
    partial curve (attribute `curve`) is raised.
    """
    opts = opts or IntegrateOptions()
    if not axis.is_sol:
        raise PreconditionError("cross-section curves are defined for the Sol axes")
    x0, y0 = float(p0[0]), float(p0[1])
    dx, dy = float(dir0[0]), float(dir0[1])
    if not all(map(math.isfinite, (H, x0, y0, dx, dy))):
        raise ValueError("planar initial data must be finite")
    if abs(math.hypot(dx, dy) - 1.0) > 1e-9:
        raise PreconditionError("initial tangent must have unit length")
    specs = [e if isinstance(e, EventSpec) else EventSpec(str(e)) for e in events]
    locus_specs = [sp for sp in specs if sp.kind != "Blowup"]
    kinds = [sp.kind for sp in locus_specs]
    want_blowup_hit = any(sp.kind == "Blowup" for sp in specs)

    base_rhs = _arc_rhs(axis, H)
    tracker = {"s": 0.0, "y": np.array([x0, y0, math.atan2(dy, dx)])}

    def rhs(s, y):
        out = base_rhs(s, y)
        tracker["s"], tracker["y"] = s, np.asarray(y, dtype=float)
        return out

    kw = dict(method="RK45", rtol=opts.rtol, atol=opts.atol, dense_output=True)
    sols, s_parts, y_parts = [], [], []
    y_cur = (x0, y0, math.atan2(dy, dx))
    s_start = 0.0

    # an event that is already zero at launch would fire immediately; step
    # past it before arming the detectors
    if any(abs(_EVENT_FUNCS[k](0.0, y_cur)) < 1e-12 for k in kinds):
        skip = min(1e-6, 0.5 * max_arc_length)
        res0 = solve_ivp(rhs, (0.0, skip), y_cur, **kw)
        _guard_steps(res0, opts, "planar")
        sols.append(res0.sol)
        s_parts.append(res0.t)
        y_parts.append(res0.y)
        y_cur = res0.y[:, -1]
        s_start = float(res0.t[-1])

    ev_objs = [_event((lambda k: (lambda s, y: _EVENT_FUNCS[k](s, y)))(sp.kind),
                      terminal=sp.terminal)
               for sp in locus_specs]
    try:
        res = solve_ivp(rhs, (s_start, max_arc_length), y_cur, events=ev_objs, **kw)
    except GraphBlowupError:
        if not want_blowup_hit:
            raise
        hit = EventHit("Blowup", float(tracker["s"]), float(tracker["y"][0]),
                       float(tracker["y"][1]), float(tracker["y"][2]))
        s_all = np.concatenate(s_parts) if s_parts else np.array([0.0])
        y_all = (np.concatenate(y_parts, axis=1) if y_parts
                 else np.array([[x0], [y0], [math.atan2(dy, dx)]]))
        return PlanarCurve(axis, H, s_all, y_all.T, [hit], float(s_all[-1]), sols)
    _guard_steps(res, opts, "planar")
    sols.append(res.sol)
    s_parts.append(res.t)
    y_parts.append(res.y)

    hits: List[EventHit] = []
    for kind, ev_ts, ev_ys in zip(kinds, res.t_events, res.y_events):
        for te, ye in zip(ev_ts, ev_ys):
            hits.append(EventHit(kind, float(te), float(ye[0]), float(ye[1]),
                                 float(ye[2])))
    hits.sort(key=lambda hit: hit.s)

    s_all = np.concatenate(s_parts)
    y_all = np.concatenate(y_parts, axis=1)
    curve = PlanarCurve(axis, H, s_all, y_all.T, hits, float(s_all[-1]), sols)
    if kinds and not hits:
        err = SolverError(
            f"no requested event within the arc-length cap {max_arc_length}")
        err.curve = curve
        raise err
    return curve
