"""Balance of the swept-surface flux against its boundary terms, and the
closed-form horizontal diameter it pins down."""
import math
import time

import pytest

from cmcyl.ekt import EktParams
from cmcyl.errors import PreconditionError
from cmcyl.flux import (
    FluxReport,
    diameter_closed_form,
    ekt_flux_profile,
    weight_flux_residual,
)

LN3 = 1.0986122886681098        # 2 * atanh(1/2)
ATANH_HALF = 0.5493061443340549
TWO_OVER_SQRT3 = 1.1547005383792515


# ------------------------------------------------------------------
# closed-form diameter
# ------------------------------------------------------------------

def test_flat_diameter_is_the_reciprocal_curvature():
    assert diameter_closed_form(0.0, 1.0) == pytest.approx(1.0, abs=1e-15)
    assert diameter_closed_form(0.0, 0.25) == pytest.approx(4.0, abs=1e-15)


def test_hyperbolic_diameter_matches_the_log_identity():
    assert abs(diameter_closed_form(-1.0, 1.0) - LN3) < 1e-12


def test_diameter_is_continuous_at_the_flat_limit():
    assert abs(diameter_closed_form(-1e-12, 1.0) - 1.0) < 1e-9


def test_critical_and_subcritical_curvature_are_rejected():
    with pytest.raises(PreconditionError):
        diameter_closed_form(-1.0, 0.5)
    with pytest.raises(PreconditionError):
        diameter_closed_form(-1.0, 0.3)


def test_positive_base_curvature_is_rejected():
    with pytest.raises(ValueError):
        diameter_closed_form(1.0, 2.0)


def test_diameter_decreases_to_zero_for_large_curvature():
    values = [diameter_closed_form(-1.0, H) for H in (10.0, 100.0, 1000.0)]
    assert values == sorted(values, reverse=True)
    assert values[-1] < 0.002


# ------------------------------------------------------------------
# arc-length profile
# ------------------------------------------------------------------

def test_flux_profile_reaches_the_closed_form_diameter():
    profile = ekt_flux_profile(EktParams(-1.0, 0.0), 1.0)
    assert abs(profile.R - ATANH_HALF) < 1e-6
    t0, h0, theta0 = profile.state_at(0.0)
    assert abs(t0) < 1e-12 and abs(theta0) < 1e-12
    tL, hL, thetaL = profile.state_at(profile.L)
    assert abs(hL) < 1e-9
    assert abs(math.cos(thetaL)) < 1e-9
    assert h0 == pytest.approx(profile.a)
    assert profile.a < 0.0


def test_flux_profile_diameters_track_the_closed_form_at_large_H():
    previous = None
    for H in (10.0, 100.0, 1000.0):
        profile = ekt_flux_profile(EktParams(-1.0, 0.0), H)
        assert abs(2.0 * profile.R - diameter_closed_form(-1.0, H)) < 1e-6
        if previous is not None:
            assert profile.R < previous
        previous = profile.R


def test_flat_flux_profile_is_a_quarter_circle():
    profile = ekt_flux_profile(EktParams(0.0, 0.0), 2.0)
    assert abs(profile.R - 0.25) < 1e-9
    assert abs(profile.L - math.pi / 8.0) < 1e-9
    assert abs(profile.a + 0.25) < 1e-9


def test_subcritical_mean_curvature_is_rejected():
    with pytest.raises(PreconditionError):
        ekt_flux_profile(EktParams(-1.0, 0.0), 0.4)


def test_flux_profile_stays_cheap_close_to_the_critical_curvature():
    # 1.2x critical lands the endpoint on a very flat vertical approach;
    # the slope-form integrand used to grind to a halt right there
    for kappa in (-0.25, -1.0, -4.0):
        root = math.sqrt(-kappa)
        for tau in (0.0, 1.0):
            params = EktParams(kappa, tau)
            start = time.perf_counter()
            profile = ekt_flux_profile(params, 0.6 * root)
            assert time.perf_counter() - start < 2.0
            gap = abs(2.0 * profile.R - diameter_closed_form(kappa, 0.6 * root))
            assert gap < 1e-9


# ------------------------------------------------------------------
# weight formula
# ------------------------------------------------------------------

def test_weight_formula_balances_on_the_hyperbolic_cylinder():
    params = EktParams(-1.0, 0.0)
    report = weight_flux_residual(params, ekt_flux_profile(params, 1.0))
    assert isinstance(report, FluxReport)
    assert report.residual == abs(report.lhs - report.rhs)
    assert report.residual < 1e-6
    # both sides evaluate to 2/sqrt(3) at this curvature
    assert abs(report.lhs - TWO_OVER_SQRT3) < 1e-6
    assert abs(report.rhs - TWO_OVER_SQRT3) < 1e-6
    assert abs(report.lhs - report.lhs_closed) < 1e-9
    assert abs(report.rhs - report.rhs_closed) < 1e-9
    assert abs(report.R_numeric - report.R_closed) < 1e-6
    assert report.side_cancellation < 1e-9
    assert report.bottom_term < 1e-9


def test_weight_formula_balances_in_the_flat_limit():
    params = EktParams(0.0, 0.0)
    report = weight_flux_residual(params, ekt_flux_profile(params, 1.0))
    assert abs(report.lhs - 1.0) < 1e-8
    assert abs(report.rhs - 1.0) < 1e-8
    assert report.residual < 1e-8


def test_diameter_ignores_the_bundle_twist():
    radii = []
    for tau in (0.0, 0.5, 1.0, 2.0):
        params = EktParams(-1.0, tau)
        report = weight_flux_residual(params, ekt_flux_profile(params, 1.0))
        assert report.residual < 1e-6
        radii.append(report.R_numeric)
    spread = max(radii) - min(radii)
    assert spread < 1e-6


@pytest.mark.parametrize("kappa", [-0.25, -1.0, -4.0])
@pytest.mark.parametrize("tau", [0.0, 1.0])
def test_weight_formula_balances_across_the_parameter_grid(kappa, tau):
    params = EktParams(kappa, tau)
    H = math.sqrt(-kappa)           # twice the critical value
    report = weight_flux_residual(params, ekt_flux_profile(params, H))
    assert report.residual < 1e-6
    assert abs(2.0 * report.R_numeric - diameter_closed_form(kappa, H)) < 1e-6


def test_doubling_quadrature_nodes_changes_nothing_visible():
    params = EktParams(-1.0, 1.0)
    profile = ekt_flux_profile(params, 1.0)
    coarse = weight_flux_residual(params, profile, nodes=64)
    fine = weight_flux_residual(params, profile, nodes=128)
    assert abs(coarse.lhs - fine.lhs) < 1e-9
    assert abs(coarse.rhs - fine.rhs) < 1e-9


def test_misnormalized_profile_is_rejected():
    params = EktParams(-1.0, 0.0)
    shifted = ekt_flux_profile(params, 1.0, a=-0.3)
    with pytest.raises(PreconditionError):
        weight_flux_residual(params, shifted)


def test_parameter_mismatch_is_rejected():
    profile = ekt_flux_profile(EktParams(-1.0, 0.0), 1.0)
    with pytest.raises(ValueError):
        weight_flux_residual(EktParams(-4.0, 0.0), profile)
