"""Low-Reynolds-number estimates for a stylus dragged through a marbling bath.

Covers whether a stylus sheds Karman vortexes, how far apart they are, and
whether the suction behind it can open a bubble at the surface.  SI units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

#: Reynolds number above which a bluff body sheds alternating vortexes.
SHEDDING_RE = 90.0

WATER_RHO = 997.0
WATER_SIGMA = 0.0728
WATER_NU = 1e-6
G = 9.81


class RegimeError(ValueError):
    """Input outside the validity range of a correlation."""


def _positive(**kw):
    for name, v in kw.items():
        if not (math.isfinite(v) and v > 0):
            raise ValueError(f"{name} must be positive, got {v!r}")


@dataclass(frozen=True)
class FluidProps:
    nu: float = WATER_NU
    rho: float = WATER_RHO
    sigma: float = WATER_SIGMA
    g: float = G

    def __post_init__(self):
        _positive(nu=self.nu, rho=self.rho, sigma=self.sigma, g=self.g)


SHAPES = ("cylinder", "sphere")


@dataclass(frozen=True)
class StylusGeom:
    """A vertical cylinder or a sphere, dipped ``depth`` into the bath."""

    shape: str
    diameter: float
    depth: float

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise ValueError(f"shape must be one of {SHAPES}, got {self.shape!r}")
        _positive(diameter=self.diameter, depth=self.depth)
        if self.shape == "sphere" and self.depth > self.diameter:
            raise ValueError("a sphere cannot be submerged deeper than its diameter")

    @property
    def radius(self) -> float:
        return 0.5 * self.diameter


def characteristic_length(geom: StylusGeom) -> float:
    """Submerged volume over wetted area.

    Cylinder: side plus flat bottom.  Sphere: the wetted spherical cap.
    """
    r, h = geom.radius, geom.depth
    if geom.shape == "cylinder":
        volume = math.pi * r * r * h
        area = 2.0 * math.pi * r * h + math.pi * r * r
    else:
        volume = math.pi * h * h * (3.0 * r - h) / 3.0
        area = 2.0 * math.pi * r * h
    return volume / area


def reynolds(speed: float, length: float, nu: float) -> float:
    _positive(speed=speed, length=length, nu=nu)
    return speed * length / nu


def drag_coefficient(re: float) -> float:
    """Schiller-Naumann sphere drag, valid for Re < 800."""
    if not (math.isfinite(re) and 0 < re < 800):
        raise RegimeError(f"Schiller-Naumann needs 0 < Re < 800, got {re!r}")
    return 24.0 / re * (1.0 + 0.15 * re**0.687)


def drag_suction(speed: float, diameter: float, rho: float, re: float) -> float:
    """Drag force over frontal area: C_D * rho V^2 / 2 (N/m^2)."""
    _positive(speed=speed, diameter=diameter, rho=rho)
    return drag_coefficient(re) * rho * speed * speed / 2.0


def buoyant_pressure(diameter: float, rho: float, g: float = G) -> float:
    """Half-sphere buoyancy over its cross-section: rho g (2/3) r."""
    _positive(diameter=diameter, rho=rho)
    if not (math.isfinite(g) and g >= 0):
        raise ValueError("g must be non-negative")
    return rho * g * (2.0 / 3.0) * (diameter / 2.0)


def surface_tension_pressure(diameter: float, sigma: float) -> float:
    """Restoring force sigma * d spread over the disk pi d^2 / 4."""
    _positive(diameter=diameter)
    if not (math.isfinite(sigma) and sigma >= 0):
        raise ValueError("sigma must be non-negative")
    return 4.0 * sigma / (math.pi * diameter)


def forms_bubble(suction: float, buoyant: float, surface: float) -> bool:
    # each restoring pressure individually, strict
    return suction > buoyant and suction > surface


def sheds_vortexes(re: float) -> bool:
    return re > SHEDDING_RE


def strouhal(re: float) -> float:
    """Roshko's low-Re Strouhal law."""
    if not sheds_vortexes(re):
        raise RegimeError(f"no vortex shedding at Re={re:g} (needs Re > {SHEDDING_RE:g})")
    return 0.212 * (1.0 - 21.2 / re)


def karman_spacing(diameter: float, re: float) -> float:
    """Distance the stylus travels per shed vortex, D / St."""
    _positive(diameter=diameter)
    return diameter / strouhal(re)


def min_travel_before_shedding(diameter: float, re: float) -> float:
    """Travel before the first vortex leaves: one Karman wavelength."""
    return karman_spacing(diameter, re)


@dataclass(frozen=True)
class PhysicsReport:
    geom: StylusGeom
    fluid: FluidProps
    speed: float
    length: float
    re_length: float
    re_diameter: float
    drag_coefficient: float | None
    suction: float | None
    buoyant: float
    surface: float
    bubble: bool | None
    sheds: bool
    spacing: float | None

    def rows(self):
        def fmt(v, spec=".4g"):
            return "n/a" if v is None else format(v, spec)

        return [
            ("shape", self.geom.shape),
            ("diameter_m", fmt(self.geom.diameter)),
            ("depth_m", fmt(self.geom.depth)),
            ("speed_m_s", fmt(self.speed)),
            ("nu_m2_s", fmt(self.fluid.nu)),
            ("rho_kg_m3", fmt(self.fluid.rho)),
            ("sigma_N_m", fmt(self.fluid.sigma)),
            ("characteristic_length_m", fmt(self.length)),
            ("Re", fmt(self.re_length)),
            ("Re_diameter", fmt(self.re_diameter)),
            ("drag_coefficient", fmt(self.drag_coefficient)),
            ("suction_N_m2", fmt(self.suction)),
            ("buoyant_pressure_N_m2", fmt(self.buoyant)),
            ("surface_tension_pressure_N_m2", fmt(self.surface)),
            ("forms_bubble", "n/a" if self.bubble is None else str(self.bubble).lower()),
            ("sheds_vortexes", str(self.sheds).lower()),
            ("karman_spacing_m", fmt(self.spacing)),
        ]


def physics_report(geom: StylusGeom, speed: float, fluid: FluidProps = FluidProps()
                   ) -> PhysicsReport:
    """Everything the calculator knows about one stylus pass.

    Two Reynolds numbers are reported: one on the characteristic length
    (drives drag) and one on the diameter (drives shedding).
    """
    length = characteristic_length(geom)
    re_len = reynolds(speed, length, fluid.nu)
    re_d = reynolds(speed, geom.diameter, fluid.nu)
    try:
        cd = drag_coefficient(re_len)
        suction = drag_suction(speed, geom.diameter, fluid.rho, re_len)
    except RegimeError:
        cd = suction = None
    buoy = buoyant_pressure(geom.diameter, fluid.rho, fluid.g)
    surf = surface_tension_pressure(geom.diameter, fluid.sigma)
    sheds = sheds_vortexes(re_d)
    return PhysicsReport(
        geom=geom, fluid=fluid, speed=speed, length=length,
        re_length=re_len, re_diameter=re_d,
        drag_coefficient=cd, suction=suction, buoyant=buoy, surface=surf,
        bubble=None if suction is None else forms_bubble(suction, buoy, surf),
        sheds=sheds,
        spacing=karman_spacing(geom.diameter, re_d) if sheds else None,
    )
