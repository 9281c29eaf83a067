"""Profile integration up to the vertical tangent, chart swapping, and the
planar cross-section curve solver with event detection."""
from __future__ import annotations

import io
import math

import numpy as np
import pytest

from cmcyl.ekt import EktParams
from cmcyl.errors import GraphBlowupError, PreconditionError, SolverError
from cmcyl.profiles import (
    EventSpec,
    IntegrateOptions,
    ProfileCurve,
    integrate_planar_curve,
    integrate_profile,
    monotonicity_report,
)
from cmcyl.surfaces import ekt_axis, sol_base_axis, sol_diag_axis

SOL_BASE = sol_base_axis()
DIAG_PLUS = sol_diag_axis(+1)
FLAT = ekt_axis(EktParams(0.0, 0.0))
HYP = ekt_axis(EktParams(-1.0, 0.0))

EMBEDDED_A = -0.642176  # zero-height initial value for Sol at H = 1


def test_options_defaults():
    opts = IntegrateOptions()
    assert opts.rtol == 1e-10
    assert opts.atol == 1e-12
    assert opts.swap_threshold == 10.0
    assert opts.swap_hysteresis == 0.5


# ---------------------------------------------------------------- profiles

def test_flat_semicircle():
    # Euclidean sanity: the profile from (0, 0) with H = 1 is the circle of
    # radius 1/2 through the origin
    curve = integrate_profile(FLAT, 1.0, 0.0, 0.0)
    assert abs(curve.Rplus - 0.5) < 1e-8
    assert abs(curve.Rminus + 0.5) < 1e-8
    assert abs(curve.height_at(curve.Rplus) - 0.5) < 1e-6
    assert "arc" in curve.chart_tags and "base" in curve.chart_tags


def test_flat_semicircle_height_profile():
    curve = integrate_profile(FLAT, 1.0, 0.0, 0.0)
    for t in np.linspace(-0.45, 0.45, 31):
        want = 0.5 - math.sqrt(0.25 - t * t)
        assert abs(curve.height_at(float(t)) - want) < 1e-8


def test_sol_embedded_profile():
    curve = integrate_profile(SOL_BASE, 1.0, EMBEDDED_A, 0.0)
    assert abs(curve.Rplus - 0.642176) < 1e-4
    assert abs(curve.height_at(curve.Rplus)) < 1e-6
    assert "mirror" in curve.chart_tags
    # inclination reaches +-pi/2 at both endpoints
    hp_first, hp_last = curve.samples[0][2], curve.samples[-1][2]
    assert abs(abs(math.atan(hp_last)) - math.pi / 2) < 1e-6
    assert abs(abs(math.atan(hp_first)) - math.pi / 2) < 1e-6


def test_sol_slightly_off_zero_height():
    curve = integrate_profile(SOL_BASE, 1.0, -0.6425, 0.0)
    assert 1e-4 < abs(curve.height_at(curve.Rplus)) < 4e-4


@pytest.mark.parametrize("axis,a", [(SOL_BASE, -0.8), (HYP, -0.3)])
def test_even_initial_data_symmetry(axis, a):
    # b = 0 forces an even profile; both directions are integrated
    # independently, so this is a real consistency check
    curve = integrate_profile(axis, 1.0, a, 0.0)
    assert abs(curve.Rplus + curve.Rminus) < 1e-8
    for t in np.linspace(0.05, 0.9 * curve.Rplus, 17):
        assert abs(curve.height_at(float(t)) - curve.height_at(float(-t))) < 1e-8


def test_samples_strictly_increasing():
    curve = integrate_profile(SOL_BASE, 1.0, EMBEDDED_A, 0.0)
    ts = np.array([s[0] for s in curve.samples])
    assert np.all(np.diff(ts) > 0)
    assert len(curve.chart_tags) == len(curve.samples)
    assert curve.complete


def test_tolerance_halving_endpoint_stability():
    base = integrate_profile(SOL_BASE, 1.0, EMBEDDED_A, 0.0)
    opts = IntegrateOptions(rtol=5e-11, atol=5e-13)
    fine = integrate_profile(SOL_BASE, 1.0, EMBEDDED_A, 0.0, opts=opts)
    assert abs(base.Rplus - fine.Rplus) < 10.0 * 1e-10


def test_admissibility_preconditions():
    with pytest.raises(PreconditionError):
        integrate_profile(SOL_BASE, 0.0, -0.5, 0.0)
    with pytest.raises(PreconditionError):
        integrate_profile(SOL_BASE, -1.0, -0.5, 0.0)
    with pytest.raises(PreconditionError):
        integrate_profile(HYP, 0.5, -0.5, 0.0)  # critical value for kappa=-1
    with pytest.raises(ValueError):
        integrate_profile(SOL_BASE, 1.0, math.nan, 0.0)


def test_nonfinite_state_is_an_error():
    with np.errstate(over="ignore", invalid="ignore"):
        with pytest.raises(GraphBlowupError):
            integrate_profile(SOL_BASE, 1.0, 1e154, 0.0)


def test_ekt_radius_is_twist_independent():
    # same base curvature, different bundle twist: identical horizontal extent
    want = math.atanh(0.5)
    r0 = integrate_profile(ekt_axis(EktParams(-1.0, 0.0)), 1.0, -0.3, 0.0)
    r1 = integrate_profile(ekt_axis(EktParams(-1.0, 1.0)), 1.0, -0.3, 0.0)
    assert abs(r0.Rplus - r1.Rplus) < 1e-6
    assert abs((r0.Rplus - r0.Rminus) - 2.0 * want) < 1e-6


# ---------------------------------------------------------------- monotonicity

def test_monotonicity_embedded_profile():
    curve = integrate_profile(SOL_BASE, 1.0, EMBEDDED_A, 0.0)
    report = monotonicity_report(curve)
    assert report.valid
    assert report.sign_changes == 1
    assert abs(report.t0) < 1e-6


def test_monotonicity_semicircle():
    report = monotonicity_report(integrate_profile(FLAT, 1.0, 0.0, 0.0))
    assert report.valid and abs(report.t0) < 1e-9


def test_monotonicity_randomized(rng):
    for _ in range(5):
        a = float(rng.uniform(-1.2, -0.4))
        big_h = float(rng.uniform(0.8, 1.4))
        report = monotonicity_report(integrate_profile(SOL_BASE, big_h, a, 0.0))
        assert report.sign_changes == 1 and report.valid


# ---------------------------------------------------------------- CSV

def test_profile_csv_roundtrip(tmp_path):
    curve = integrate_profile(DIAG_PLUS, 1.0, -0.5, 0.0)
    out = tmp_path / "profile.csv"
    curve.to_csv(out)
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "t,x,y,z,hp,chart"
    assert len(lines) == len(curve.samples) + 1
    row = lines[1].split(",")
    t, x, y, z = (float(v) for v in row[:4])
    assert math.isclose(t, curve.samples[0][0], rel_tol=1e-15)
    assert abs(x + y) < 1e-15          # the section is the plane x + y = 0
    assert math.isclose(z, curve.samples[0][1], rel_tol=1e-15, abs_tol=1e-15)
    assert row[5] in ("base", "mirror", "arc")


def test_profile_csv_stringio():
    curve = integrate_profile(FLAT, 1.0, 0.0, 0.0)
    buf = io.StringIO()
    curve.to_csv(buf)
    assert buf.getvalue().startswith("t,x,y,z,hp,chart\n")


# ---------------------------------------------------------------- planar curves

def test_event_spec_validation():
    assert EventSpec("CrossYAxis").kind == "CrossYAxis"
    with pytest.raises(ValueError):
        EventSpec("CrossZAxis")


def test_planar_preconditions():
    with pytest.raises(PreconditionError):
        integrate_planar_curve(HYP, 1.0, (0.3, 0.3), (0.0, 1.0))
    with pytest.raises(PreconditionError):
        integrate_planar_curve(SOL_BASE, 1.0, (0.3, 0.3), (0.0, 2.0))  # not unit


def test_planar_embedded_orthogonal_crossing():
    # the shooting parameter that generates the embedded cylinder: the first
    # y-axis crossing is orthogonal to within 1e-3
    d = 0.429474
    root2 = math.sqrt(2.0)
    result = integrate_planar_curve(SOL_BASE, 1.0, (d, d), (-1.0 / root2, 1.0 / root2),
                                    events=[EventSpec("CrossYAxis")])
    assert len(result.events) == 1
    hit = result.events[0]
    assert hit.kind == "CrossYAxis"
    assert abs(hit.x) < 1e-10
    assert abs(math.sin(hit.theta)) < 1e-3


def test_planar_matches_profile_graph():
    # same curve, two integrators: the planar arc-length solver against the
    # graph/mirror profile machinery
    profile = integrate_profile(SOL_BASE, 1.0, EMBEDDED_A, 0.0)
    planar = integrate_planar_curve(SOL_BASE, 1.0, (0.0, EMBEDDED_A), (1.0, 0.0),
                                    max_arc_length=1.2)
    for s in np.linspace(0.05, 1.0, 20):
        x, y = planar.point_at(float(s))
        if abs(x) > 0.99 * profile.Rplus or y > -1e-3:
            continue  # past the vertical tangent the curve leaves the graph
        assert abs(profile.height_at(float(x)) - y) < 1e-8


def test_planar_diagonal_reflection_symmetry():
    # initial data fixed by the swap (x, y) -> (y, x): the two half
    # trajectories must mirror each other. Reversing the traversal flips
    # the sign of the prescribed curvature, hence -H on the second half.
    root2 = math.sqrt(2.0)
    fwd = integrate_planar_curve(SOL_BASE, 1.0, (0.7, 0.7), (-1.0 / root2, 1.0 / root2),
                                 max_arc_length=2.0)
    bwd = integrate_planar_curve(SOL_BASE, -1.0, (0.7, 0.7), (1.0 / root2, -1.0 / root2),
                                 max_arc_length=2.0)
    for s in np.linspace(0.0, 2.0, 41):
        xf, yf = fwd.point_at(float(s))
        xb, yb = bwd.point_at(float(s))
        assert abs(xf - yb) < 1e-8 and abs(yf - xb) < 1e-8


def test_planar_small_arc_is_nearly_circular():
    # near the origin the equation linearizes to the Euclidean one, so the
    # first stretch hugs the circle of radius 1/(2H)
    result = integrate_planar_curve(SOL_BASE, 1.0, (0.0, 0.0), (1.0, 0.0),
                                    max_arc_length=0.1)
    for s in np.linspace(0.0, 0.1, 11):
        x, y = result.point_at(float(s))
        assert abs(math.hypot(x, y - 0.5) - 0.5) < 1e-3


def test_planar_derivative_zero_event():
    # starting at the bottom of the embedded oval (where y' = 0 already, so
    # the initial event must be skipped) the next flat point is the top
    result = integrate_planar_curve(SOL_BASE, 1.0, (0.0, EMBEDDED_A), (1.0, 0.0),
                                    events=[EventSpec("DerivativeZero")])
    hit = result.events[0]
    assert hit.s > 1.0
    assert abs(hit.x) < 1e-3
    assert abs(hit.y + EMBEDDED_A) < 1e-3


def test_planar_diagonal_minus_event():
    d = 1.0
    root2 = math.sqrt(2.0)
    result = integrate_planar_curve(SOL_BASE, 1.0, (d, d), (-1.0 / root2, 1.0 / root2),
                                    events=[EventSpec("CrossDiagonalMinus")])
    hit = result.events[0]
    assert abs(hit.x + hit.y) < 1e-10


def test_planar_timeout():
    with pytest.raises(SolverError) as err:
        integrate_planar_curve(SOL_BASE, 1.0, (0.3, -0.5), (1.0, 0.0),
                               events=[EventSpec("CrossYAxis")],
                               max_arc_length=0.05)
    assert err.value.curve is not None
    assert err.value.curve.length <= 0.05 + 1e-9


def test_planar_diag_section_matches_profile():
    profile = integrate_profile(DIAG_PLUS, 1.0, -0.6, 0.0)
    planar = integrate_planar_curve(DIAG_PLUS, 1.0, (0.0, -0.6), (1.0, 0.0),
                                    max_arc_length=0.45)
    for s in np.linspace(0.05, 0.45, 9):
        u, h = planar.point_at(float(s))
        assert abs(profile.height_at(float(u)) - h) < 1e-8
