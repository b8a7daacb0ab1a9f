import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from marble.hydro import (
    FluidProps,
    RegimeError,
    StylusGeom,
    buoyant_pressure,
    characteristic_length,
    drag_coefficient,
    drag_suction,
    forms_bubble,
    karman_spacing,
    min_travel_before_shedding,
    physics_report,
    reynolds,
    sheds_vortexes,
    strouhal,
    surface_tension_pressure,
)

DOWEL = StylusGeom("cylinder", 0.025, 0.0125)
HALF_SPHERE = StylusGeom("sphere", 0.025, 0.0125)


def schiller_naumann(re):
    return 24 / re * (1 + 0.15 * re**0.687)


# -- geometry --------------------------------------------------------------

def test_dowel_characteristic_length():
    d = characteristic_length(DOWEL)
    assert d == pytest.approx(0.0125 / 3, rel=1e-12)
    assert d == pytest.approx(0.0042, rel=0.01)


def test_cylinder_and_half_sphere_agree():
    for r in (1e-3, 0.0125, 0.3):
        cyl = characteristic_length(StylusGeom("cylinder", 2 * r, r))
        sph = characteristic_length(StylusGeom("sphere", 2 * r, r))
        assert cyl == pytest.approx(sph, rel=1e-12)
        assert cyl == pytest.approx(r / 3, rel=1e-12)


def test_full_sphere_volume_over_area():
    r = 0.01
    full = characteristic_length(StylusGeom("sphere", 2 * r, 2 * r))
    assert full == pytest.approx((4 / 3 * math.pi * r**3) / (4 * math.pi * r**2), rel=1e-12)


@pytest.mark.parametrize("kw", [
    {"depth": 0.0}, {"depth": -1.0}, {"diameter": 0.0}, {"shape": "cone"},
    {"shape": "sphere", "depth": 0.03},
])
def test_degenerate_geometry_rejected(kw):
    args = {"shape": "cylinder", "diameter": 0.025, "depth": 0.0125, **kw}
    with pytest.raises(ValueError):
        StylusGeom(**args)


# -- Reynolds --------------------------------------------------------------

def test_reynolds_examples():
    assert reynolds(0.2, 0.0042, 1e-3) == pytest.approx(0.84, rel=1e-12)
    assert reynolds(0.2, 0.0042, 1e-3) == pytest.approx(0.85, rel=0.02)
    assert reynolds(0.2, 0.0042, 1e-4) == pytest.approx(8.5, rel=0.02)
    assert reynolds(0.05, 0.001, 1e-6) == pytest.approx(50.0, rel=1e-12)
    assert reynolds(0.02, 0.005, 1e-6) == pytest.approx(100.0, rel=1e-12)


@given(st.floats(1e-3, 1e3), st.floats(1e-4, 10.0), st.floats(1e-4, 1.0), st.floats(1e-7, 1e-2))
def test_reynolds_is_multiplicative(a, v, d, nu):
    assert reynolds(a * v, d, nu) == pytest.approx(a * reynolds(v, d, nu), rel=1e-14)


def test_reynolds_rejects_nonpositive():
    with pytest.raises(ValueError):
        reynolds(0.0, 0.01, 1e-6)


# -- drag ------------------------------------------------------------------

def test_drag_coefficient_values():
    # direct evaluation of the correlation
    assert drag_coefficient(8.4) == pytest.approx(4.7064, abs=1e-4)
    assert drag_coefficient(0.84) == pytest.approx(32.3733, abs=1e-4)
    # the rounded figures quoted for these Reynolds numbers
    assert drag_coefficient(8.4) == pytest.approx(4.67, rel=0.01)
    assert drag_coefficient(0.84) == pytest.approx(31.9, rel=0.02)
    for re in (0.5, 3.0, 120.0, 700.0):
        assert drag_coefficient(re) == pytest.approx(schiller_naumann(re), rel=1e-15)


def test_drag_stokes_limit():
    assert drag_coefficient(0.01) / (24 / 0.01) == pytest.approx(1.0, rel=0.01)


@pytest.mark.parametrize("re", [0.0, -1.0, 800.0, math.nan])
def test_drag_outside_correlation(re):
    with pytest.raises(RegimeError):
        drag_coefficient(re)


def test_suction_example_and_scalings():
    s = drag_suction(0.2, 0.025, 997.0, 8.4)
    assert s == pytest.approx(93.85, abs=0.01)
    assert s == pytest.approx(88.0, rel=0.15)
    assert drag_suction(0.2, 0.025, 2 * 997.0, 8.4) == pytest.approx(2 * s, rel=1e-15)


def test_suction_vanishes_linearly_in_stokes_regime():
    # Re proportional to V, C_D ~ 24/Re: suction ~ V
    d, nu, rho = 0.025, 1e-3, 997.0
    vals = [drag_suction(v, d, rho, reynolds(v, d / 6, nu)) for v in (1e-6, 2e-6)]
    assert vals[1] / vals[0] == pytest.approx(2.0, rel=1e-3)
    assert vals[0] < 1e-2


# -- restoring pressures and bubbles ---------------------------------------

def test_buoyant_pressure():
    assert buoyant_pressure(0.025, 997.0) == pytest.approx(81.5, rel=1e-3)
    assert buoyant_pressure(0.025, 997.0) == pytest.approx(81.0, rel=0.02)
    assert buoyant_pressure(0.05, 997.0) == pytest.approx(2 * buoyant_pressure(0.025, 997.0))
    assert buoyant_pressure(0.025, 997.0, g=0.0) == 0.0


def test_surface_tension_pressure():
    assert surface_tension_pressure(0.025, 0.0728) == pytest.approx(3.708, abs=1e-3)
    assert surface_tension_pressure(0.025, 0.0728) == pytest.approx(3.7, rel=0.02)
    assert surface_tension_pressure(0.05, 0.0728) == pytest.approx(
        surface_tension_pressure(0.025, 0.0728) / 2)
    assert surface_tension_pressure(0.025, 0.0) == 0.0


def test_forms_bubble():
    assert forms_bubble(88.0, 81.0, 3.7) is True
    assert forms_bubble(80.0, 81.0, 3.7) is False
    assert forms_bubble(0.0, 0.0, 0.0) is False
    assert forms_bubble(81.0, 81.0, 3.7) is False


# -- shedding --------------------------------------------------------------

def test_shedding_predicate():
    assert not sheds_vortexes(0.85)
    assert not sheds_vortexes(50.0)
    assert not sheds_vortexes(90.0)
    assert sheds_vortexes(100.0)


def test_strouhal_at_100():
    assert strouhal(100.0) == pytest.approx(0.167, abs=5e-4)


def test_karman_spacing_small_stylus():
    re = reynolds(0.02, 0.005, 1e-6)
    assert karman_spacing(0.005, re) == pytest.approx(0.030, rel=0.01)
    assert karman_spacing(0.005, re) == pytest.approx(0.03, rel=0.10)


def test_travel_before_first_shed():
    re = reynolds(0.2, 0.025, 50e-6)
    travel = min_travel_before_shedding(0.025, re)
    assert travel == pytest.approx(0.150, rel=0.01)
    assert travel == pytest.approx(0.16, rel=0.10)
    assert min_travel_before_shedding(0.05, re) == pytest.approx(2 * travel, rel=1e-15)


@pytest.mark.parametrize("re", [50.0, 90.0])
def test_no_spacing_without_shedding(re):
    with pytest.raises(RegimeError):
        karman_spacing(0.005, re)
    with pytest.raises(RegimeError):
        min_travel_before_shedding(0.005, re)


# -- report ----------------------------------------------------------------

def test_report_for_glycerine_like_bath():
    rep = physics_report(DOWEL, 0.2, FluidProps(nu=1e-3))
    assert rep.re_length == pytest.approx(0.85, rel=0.02)
    assert rep.re_diameter == pytest.approx(5.0)
    assert rep.sheds is False and rep.spacing is None
    assert rep.suction == pytest.approx(drag_suction(0.2, 0.025, 997.0, rep.re_length))
    rows = dict(rep.rows())
    assert rows["Re"] == "0.8333"
    assert rows["karman_spacing_m"] == "n/a"


def test_report_half_sphere_matches_dowel():
    a = physics_report(DOWEL, 0.2, FluidProps(nu=1e-4))
    b = physics_report(HALF_SPHERE, 0.2, FluidProps(nu=1e-4))
    assert a.length == pytest.approx(b.length, rel=1e-12)
    assert a.suction == pytest.approx(b.suction, rel=1e-12)


def test_report_in_shedding_regime():
    rep = physics_report(StylusGeom("cylinder", 0.025, 0.0125), 0.2, FluidProps(nu=50e-6))
    assert rep.sheds is True
    assert rep.spacing == pytest.approx(0.150, rel=0.01)


def test_report_outside_drag_correlation():
    rep = physics_report(DOWEL, 10.0, FluidProps(nu=1e-6))
    assert rep.drag_coefficient is None and rep.suction is None and rep.bubble is None
    assert dict(rep.rows())["suction_N_m2"] == "n/a"
