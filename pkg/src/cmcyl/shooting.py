"""Bracketed searches over launch parameters.

Two objectives drive everything here. For embedded solutions the launch
height a is tuned until the profile turns vertical exactly on the axis.
For immersed solutions the launch offset d is tuned until the shot meets
its junction locus at a right angle, so that reflections close it up with
the requested turning number. Both objectives are scalar, smooth and
expensive, so the searches use plain bisection with a secant polish once
the bracket is tight.
"""
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .curves import (
    ClosedPlaneCurve,
    extend_by_symmetry,
    planar_polyline,
    polyline_hausdorff,
    self_intersections,
    turning_number,
)
from .errors import BracketError, PreconditionError, SolverError
from .profiles import (
    EventSpec,
    ProfileCurve,
    integrate_planar_curve,
    integrate_profile,
)
from .surfaces import AxisSpec, sol_base_axis

_SQ2 = math.sqrt(0.5)
_LAUNCH_DIR = (-_SQ2, _SQ2)


@dataclass(frozen=True)
class ShootingResult:
    parameter: float
    residual: float
    T: float
    turn: Optional[int]
    history: Tuple[Tuple[float, float], ...]
    classification: str
    profile: Optional[ProfileCurve] = None
    closed_curve: Optional[ClosedPlaneCurve] = None
    diagonal_gap: Optional[float] = None
    crossings: Optional[int] = None


def _sign(v: float) -> float:
    return math.copysign(1.0, v) if v else 0.0


def _bracketed_root(f: Callable[[float], float], lo: float, hi: float,
                    flo: float, fhi: float, *, ftol: float,
                    secant_width: float = 1e-3, max_iter: int = 90,
                    record: Optional[List[Tuple[float, float]]] = None
                    ) -> Tuple[float, float]:
    """Bisection with a secant polish once the bracket is tight; returns
    (root, value). The caller guarantees flo and fhi straddle zero."""
    if abs(flo) <= ftol:
        return lo, flo
    if abs(fhi) <= ftol:
        return hi, fhi
    best = (lo, flo) if abs(flo) < abs(fhi) else (hi, fhi)
    for _ in range(max_iter):
        width = hi - lo
        if width <= 1e-13 * max(1.0, abs(lo) + abs(hi)):
            return best   # parameter resolved to float precision
        if width <= secant_width and fhi != flo:
            cand = hi - fhi * width / (fhi - flo)
            if not lo < cand < hi:
                cand = 0.5 * (lo + hi)
        else:
            cand = 0.5 * (lo + hi)
        fc = f(cand)
        if record is not None:
            record.append((cand, _sign(fc)))
        if abs(fc) < abs(best[1]):
            best = (cand, fc)
        if abs(fc) <= ftol:
            return cand, fc
        if (fc > 0.0) == (fhi > 0.0):
            hi, fhi = cand, fc
        else:
            lo, flo = cand, fc
    raise SolverError("bracketed search exhausted its iteration budget")


# ------------------------------------------------------------------
# zero-height (embedded) search
# ------------------------------------------------------------------

def zero_height_residual(axis: AxisSpec, H: float, a: float) -> float:
    """Height of the profile at its vertical endpoint, launched level at a."""
    prof = integrate_profile(axis, H, float(a), 0.0)
    return prof.height_at(prof.Rplus)


def find_zero_height(axis: AxisSpec, H: float,
                     bracket: Optional[Tuple[float, float]] = None, *,
                     residual_tol: float = 1e-10) -> ShootingResult:
    """Tune the launch height until the profile turns vertical on the axis,
    then close it up by reflection and classify the outcome.

    Without an explicit bracket the search starts from (-2, 0) and doubles
    the deep end until the objective changes sign.
    """
    cache = {}

    def phi(a: float) -> float:
        prof = integrate_profile(axis, H, a, 0.0)
        cache[a] = prof
        return prof.height_at(prof.Rplus)

    if bracket is None:
        lo, hi = -2.0, 0.0
        fhi = phi(hi)
        flo = phi(lo)
        while (flo > 0.0) == (fhi > 0.0):
            lo *= 2.0
            # near-critical fiber graphs run hundreds of units deep, so the
            # expansion has to reach far past any plausible launch height
            if lo < -4096.0:
                err = BracketError(
                    "objective keeps the same sign down to launch height "
                    "-4096; no bracketed root")
                err.samples = [(-2.0, flo), (hi, fhi)]
                raise err
            flo = phi(lo)
    else:
        lo, hi = sorted(float(b) for b in bracket)
        if not (math.isfinite(lo) and math.isfinite(hi)) or lo == hi:
            raise ValueError("bracket endpoints must be distinct finite values")
        flo, fhi = phi(lo), phi(hi)
        if (flo > 0.0) == (fhi > 0.0):
            samples = [(a, phi(a)) for a in np.linspace(lo, hi, 9)]
            err = BracketError(
                f"objective keeps the same sign on [{lo:g}, {hi:g}]; "
                "sampled values are attached as .samples")
            err.samples = samples
            raise err

    history: List[Tuple[float, float]] = [(lo, _sign(flo)), (hi, _sign(fhi))]
    a0, fa0 = _bracketed_root(phi, lo, hi, flo, fhi,
                              ftol=residual_tol, record=history)
    prof = cache[a0]
    closed = extend_by_symmetry(prof, ["reflect-x-axis"])
    turn = turning_number(closed).turn
    crossings = self_intersections(closed).count
    classification = "embedded" if (turn == 1 and crossings == 0) else "immersed"
    gap = abs(prof.Rplus + a0) if getattr(axis, "kind", "") == "sol-base" else None
    return ShootingResult(parameter=a0, residual=abs(fa0), T=prof.Rplus,
                          turn=turn, history=tuple(history),
                          classification=classification, profile=prof,
                          closed_curve=closed, diagonal_gap=gap,
                          crossings=crossings)


# ------------------------------------------------------------------
# immersed searches
# ------------------------------------------------------------------

@dataclass(frozen=True)
class _Aim:
    event: str
    portions: int
    group: Tuple[str, ...]


_AIMS = {
    "YAxis": _Aim("CrossYAxis", 8,
                  ("reflect-y-axis", "reflect-antidiagonal", "half-turn")),
    "DiagMinus": _Aim("CrossDiagonalMinus", 4,
                      ("reflect-antidiagonal", "half-turn")),
}


def _aim_of(aim: str) -> _Aim:
    try:
        return _AIMS[aim]
    except KeyError:
        raise ValueError(f"unknown aim {aim!r}; choose from {sorted(_AIMS)}")


def _immersed_shot(H: float, d: float, target_turn: int, aim: str,
                   max_arc_length: float):
    """Integrate one shot and pick the junction crossing whose accumulated
    tangent angle matches the requested turning number. Selecting by angle
    rather than by crossing index keeps the objective meaningful when the
    launch point sits next to the junction locus."""
    spec = _aim_of(aim)
    theta_star = 0.75 * math.pi + target_turn * 2.0 * math.pi / spec.portions
    curve = integrate_planar_curve(
        sol_base_axis(), H, (d, d), _LAUNCH_DIR,
        events=(EventSpec(spec.event, terminal=False),),
        max_arc_length=max_arc_length)
    hits = [h for h in curve.events
            if abs(h.theta - theta_star) <= 0.5 * math.pi]
    if not hits:
        err = SolverError(
            f"no junction crossing with tangent angle near "
            f"{theta_star / math.pi:.3g} pi within arc length {max_arc_length:g}")
        err.curve = curve
        raise err
    hit = hits[0]
    if aim == "YAxis":
        defect = math.sin(hit.theta)
    else:
        defect = (math.sin(hit.theta) - math.cos(hit.theta)) * _SQ2
    return defect, hit, curve


def _closed_of(curve, hit, group: Sequence[str],
               samples: Optional[int], max_defect: Optional[float]
               ) -> ClosedPlaneCurve:
    n = samples or max(512, min(4096, int(32.0 * hit.s) + 2))
    pts, tans = planar_polyline(curve, n, s_end=hit.s)
    return extend_by_symmetry((pts, tans), list(group), max_defect=max_defect)


def immersed_defect(H: float, d: float, target_turn: int, aim: str = "YAxis",
                    max_arc_length: float = 80.0) -> float:
    """Angle defect at the aimed junction crossing; zero means the closed
    extension is smooth there."""
    return _immersed_shot(H, d, target_turn, aim, max_arc_length)[0]


def immersed_closed_curve(H: float, d: float, target_turn: int,
                          aim: str = "YAxis", samples: Optional[int] = None,
                          max_defect: Optional[float] = None,
                          max_arc_length: float = 80.0) -> ClosedPlaneCurve:
    """Closed symmetry extension of the shot at launch offset d, whether or
    not d is converged; by default the smoothness gate stays off."""
    spec = _aim_of(aim)
    _, hit, curve = _immersed_shot(H, d, target_turn, aim, max_arc_length)
    return _closed_of(curve, hit, spec.group, samples, max_defect)


def find_immersed(H: float, target_turn: int, aim: str = "YAxis",
                  bracket: Optional[Tuple[float, float]] = None, *,
                  defect_tol: float = 1e-6,
                  max_arc_length: float = 80.0) -> ShootingResult:
    """Tune the launch offset until the shot meets its junction locus at a
    right angle, keeping the turning number at target_turn throughout."""
    if target_turn < 1 or target_turn % 4 != 1:
        raise PreconditionError("target turning number must be 1 modulo 4")
    if bracket is None:
        raise PreconditionError("immersed searches need an explicit bracket")
    spec = _aim_of(aim)
    lo, hi = sorted(float(b) for b in bracket)
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo == hi:
        raise ValueError("bracket endpoints must be distinct finite values")

    def defect(d: float) -> float:
        return _immersed_shot(H, d, target_turn, aim, max_arc_length)[0]

    ends = []
    for d in (lo, hi):
        value, hit, curve = _immersed_shot(H, d, target_turn, aim, max_arc_length)
        closed = _closed_of(curve, hit, spec.group, None, None)
        ends.append((value, turning_number(closed).turn))
    (flo, turn_lo), (fhi, turn_hi) = ends
    if turn_lo != turn_hi:
        raise BracketError(
            f"turning number changes inside the bracket: {turn_lo} at "
            f"{lo:.6g} vs {turn_hi} at {hi:.6g}; split the bracket")
    if turn_lo != target_turn:
        raise BracketError(
            f"bracket tracks turning number {turn_lo}, not the requested "
            f"{target_turn}")
    if (flo > 0.0) == (fhi > 0.0):
        err = BracketError(
            f"angle defect keeps the same sign on [{lo:g}, {hi:g}]; "
            "no bracketed root")
        err.samples = [(lo, flo), (hi, fhi)]
        raise err

    history: List[Tuple[float, float]] = [(lo, _sign(flo)), (hi, _sign(fhi))]
    d0, f0 = _bracketed_root(defect, lo, hi, flo, fhi,
                             ftol=defect_tol, record=history)
    _, hit, curve = _immersed_shot(H, d0, target_turn, aim, max_arc_length)
    closed = _closed_of(curve, hit, spec.group, None, 1e-4)
    turn = turning_number(closed).turn
    if turn != target_turn:
        raise BracketError(
            f"search converged onto turning number {turn} instead of "
            f"{target_turn}; refine the bracket")
    crossings = self_intersections(closed).count
    classification = "embedded" if (turn == 1 and crossings == 0) else "immersed"
    return ShootingResult(parameter=d0, residual=abs(f0), T=hit.s, turn=turn,
                          history=tuple(history), classification=classification,
                          closed_curve=closed, crossings=crossings)


# ------------------------------------------------------------------
# family sweeps
# ------------------------------------------------------------------

@dataclass(frozen=True)
class SweepRow:
    H: float
    parameter: float
    radius: float      # vertical-endpoint abscissa R
    width: float       # 2R, the horizontal extent of the closed profile
    depth: float       # |a0|, the vertical extent
    residual: float


@dataclass(frozen=True)
class SweepReport:
    rows: Tuple[SweepRow, ...]
    curves: Tuple[ProfileCurve, ...]
    failures: Tuple[Tuple[float, str], ...]

    def is_nested(self) -> bool:
        """Profiles shrink strictly in both extents as H grows."""
        ordered = sorted(self.rows, key=lambda row: row.H)
        return all(b.width < a.width and b.depth < a.depth
                   for a, b in zip(ordered, ordered[1:]))


def sweep_family(axis: AxisSpec, H_list: Sequence[float]) -> SweepReport:
    """One embedded solution per requested mean curvature; failures are
    collected per entry instead of aborting the sweep."""
    rows, curves, failures = [], [], []
    for H in H_list:
        try:
            res = find_zero_height(axis, float(H))
        except (SolverError, BracketError, PreconditionError) as exc:
            failures.append((float(H), str(exc)))
            continue
        rows.append(SweepRow(H=float(H), parameter=res.parameter,
                             radius=res.profile.Rplus,
                             width=2.0 * res.profile.Rplus,
                             depth=abs(res.parameter),
                             residual=res.residual))
        curves.append(res.profile)
    return SweepReport(tuple(rows), tuple(curves), tuple(failures))


# ------------------------------------------------------------------
# branch continuation
# ------------------------------------------------------------------

@dataclass(frozen=True)
class BranchPoint:
    H: float
    parameter: float
    residual: float
    turn: int


@dataclass(frozen=True)
class BranchReport:
    points: Tuple[BranchPoint, ...]
    last_H: float
    last_parameter: float
    stop_reason: str
    cover_gap: float


def _rescan_branch(H: float, center: float, target_turn: int, aim: str,
                   max_arc_length: float, span: float = 0.45,
                   grid: int = 31) -> Optional[ShootingResult]:
    """Grid-sample the defect around a failed prediction and retry every
    sign-change cell, nearest first. The branch parameter moves fast where
    solutions fold over, so the secant bracket alone is not enough."""
    ds = np.linspace(center - span, center + span, grid)
    vals = []
    for d in ds:
        try:
            vals.append(immersed_defect(H, float(d), target_turn, aim,
                                        max_arc_length))
        except SolverError:
            vals.append(None)
    cells = [(float(ds[k]), float(ds[k + 1]))
             for k in range(grid - 1)
             if vals[k] is not None and vals[k + 1] is not None
             and (vals[k] > 0.0) != (vals[k + 1] > 0.0)]
    cells.sort(key=lambda ab: abs(0.5 * (ab[0] + ab[1]) - center))
    for cell in cells:
        try:
            res = find_immersed(H, target_turn, aim, cell,
                                max_arc_length=max_arc_length)
        except (BracketError, SolverError):
            continue
        if res.turn == target_turn:
            return res
    return None


def continue_turn_branch(H_start: float, bracket: Tuple[float, float], *,
                         target_turn: int = 5, aim: str = "YAxis",
                         H_stop: float = 0.76, dH: float = 0.05,
                         min_dH: float = 1e-3,
                         checkpoints: Sequence[float] = (),
                         max_arc_length: float = 80.0) -> BranchReport:
    """Follow a constant-turning-number branch upward in H with secant
    prediction of the launch offset, landing exactly on any requested
    checkpoint heights. Ends at H_stop or when the step size underflows,
    and reports the Hausdorff gap between the final curve and the embedded
    solution it may be collapsing onto."""
    first = find_immersed(H_start, target_turn, aim, bracket,
                          max_arc_length=max_arc_length)
    points = [BranchPoint(float(H_start), first.parameter, first.residual,
                          first.turn)]
    last = first
    H_cur, d_cur = float(H_start), first.parameter
    pending = sorted({float(c) for c in checkpoints if H_start < c <= H_stop})
    slope, step = 0.0, float(dH)
    reason = "reached-stop"
    while H_cur < H_stop - 1e-12:
        H_next = min(H_cur + step, H_stop)
        if pending and pending[0] < H_next - 1e-12:
            H_next = pending[0]
        dh = H_next - H_cur
        pred = d_cur + slope * dh
        width = max(0.08, 2.0 * abs(slope) * dh)
        res = None
        try:
            res = find_immersed(H_next, target_turn, aim,
                                (pred - width, pred + width),
                                max_arc_length=max_arc_length)
        except (BracketError, SolverError):
            res = _rescan_branch(H_next, pred, target_turn, aim,
                                 max_arc_length)
        if res is None:
            step *= 0.5
            if step < min_dH:
                reason = "step-underflow"
                break
            continue
        slope = (res.parameter - d_cur) / dh
        H_cur, d_cur, last = H_next, res.parameter, res
        points.append(BranchPoint(H_next, res.parameter, res.residual,
                                  res.turn))
        if pending and abs(pending[0] - H_next) <= 1e-12:
            pending.pop(0)
        step = min(step * 1.4, float(dH))

    embedded = find_zero_height(sol_base_axis(), H_cur)
    gap = polyline_hausdorff(last.closed_curve.vertices,
                             embedded.closed_curve.vertices)
    return BranchReport(points=tuple(points), last_H=H_cur,
                        last_parameter=d_cur, stop_reason=reason,
                        cover_gap=float(gap))
