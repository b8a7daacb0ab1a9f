"""Closed-form Lamb-Oseen vortex quantities.

All functions accept scalars or numpy arrays for the radius and return the
same shape.  Units are SI throughout: circulation and viscosity in m^2/s,
time in s, lengths in m, angles in radians.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: Exponent of the two-argument norm that blends the short- and long-time
#: regimes of the displacement.  Fixed; not a tuning knob.
NORM_EXPONENT = -0.75


class DomainError(ValueError):
    """Argument outside the domain of a closed-form expression."""


@dataclass(frozen=True)
class VortexParams:
    """One impulse of circulation.

    Parameters
    ----------
    gamma : float
        Circulation (m^2/s), signed.  Positive turns counterclockwise.
    nu : float
        Kinematic viscosity (m^2/s).
    t : float
        Time elapsed since the impulse (s).
    center : tuple of float
        Vortex center (m).
    """

    gamma: float
    nu: float
    t: float
    center: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        if not math.isfinite(self.gamma):
            raise DomainError(f"gamma must be finite, got {self.gamma!r}")
        if not (math.isfinite(self.nu) and self.nu > 0):
            raise DomainError(f"nu must be positive, got {self.nu!r}")
        if not (math.isfinite(self.t) and self.t >= 0):
            raise DomainError(f"t must be >= 0, got {self.t!r}")
        cx, cy = self.center
        if not (math.isfinite(cx) and math.isfinite(cy)):
            raise DomainError(f"center must be finite, got {self.center!r}")
        object.__setattr__(self, "center", (float(cx), float(cy)))

    def with_time(self, t: float) -> "VortexParams":
        return VortexParams(self.gamma, self.nu, t, self.center)

    def negated(self) -> "VortexParams":
        """The counter-impulse that undoes this one."""
        return VortexParams(-self.gamma, self.nu, self.t, self.center)

    @property
    def saturation_angle(self) -> float:
        """Long-time (rigid rotation) angle gamma / (4 nu)."""
        return self.gamma / (4.0 * self.nu)


def _as_radius(r, *, allow_zero=False):
    r = np.asarray(r, dtype=float)
    bad = (r < 0) if allow_zero else (r <= 0)
    if np.any(bad | ~np.isfinite(r)):
        raise DomainError(
            "radius must be %s and finite" % ("non-negative" if allow_zero else "positive")
        )
    return r


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def lp_norm(x, y, p):
    """Two-argument L^p norm ``(x**p + y**p) ** (1/p)``.

    Negative ``p`` is allowed (and is the case of interest); the result is then
    smaller than ``min(x, y)`` and tends to the smaller argument when the other
    grows without bound.
    """
    if p == 0:
        raise DomainError("p must be nonzero")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(x < 0) or np.any(y < 0):
        raise DomainError("lp_norm arguments must be non-negative")
    if p < 0 and (np.any(x == 0) or np.any(y == 0)):
        raise DomainError("negative-exponent norm is undefined at zero")
    return _out((x**p + y**p) ** (1.0 / p))


def circumferential_velocity(p: VortexParams, r):
    """Lamb-Oseen circumferential velocity at radius ``r`` (m/s).

    At ``t == 0`` this is the point-vortex value ``gamma / (2 pi r)``.
    """
    r = _as_radius(r)
    scale = p.gamma / (2.0 * math.pi * r)
    if p.t == 0:
        return _out(scale)
    return _out(scale * -np.expm1(-(r * r) / (4.0 * p.nu * p.t)))


def displacement(p: VortexParams, r):
    """Closed-form circumferential travel (m) after time ``p.t``."""
    r = _as_radius(r)
    if p.t == 0:
        return _out(np.zeros_like(r) * p.gamma)
    ratio = (2.0 * math.pi * r * r) / (4.0 * p.nu * p.t)
    return _out(p.gamma * p.t / (2.0 * math.pi * r) * lp_norm(1.0, ratio, NORM_EXPONENT))


def displacement_rate(p: VortexParams, r):
    """Time derivative of :func:`displacement` (m/s)."""
    r = _as_radius(r)
    scale = p.gamma / (2.0 * math.pi * r)
    if p.t == 0:
        return _out(scale)
    q = (4.0 * p.nu * p.t) / (2.0 * math.pi * r * r)
    return _out(scale * (1.0 + q**0.75) ** (-7.0 / 3.0))


def angle(p: VortexParams, r):
    """Rotation angle (rad) of the fluid ring at radius ``r``.

    Equal to ``displacement / r`` for r > 0.  At ``r == 0`` the continuity
    limit ``gamma / (4 nu)`` is returned, so a renderer has no singular pixel.
    """
    if type(r) is float or type(r) is int:
        return _angle_scalar(p, float(r))
    r = _as_radius(r, allow_zero=True)
    if p.t == 0:
        return _out(np.zeros_like(r) * p.gamma)
    # ||t/(2 pi r^2), 1/(4 nu)||_{-3/4} written with s = 2 pi r^2 / t so r = 0
    # is not a division by zero.
    s = (2.0 * math.pi * r * r) / p.t
    a = p.gamma * (s**0.75 + (4.0 * p.nu) ** 0.75) ** (-4.0 / 3.0)
    a = np.where(r == 0, p.gamma / (4.0 * p.nu), a)
    return _out(a)


def _angle_scalar(p: VortexParams, r: float) -> float:
    # same expression as the array path, without numpy's per-call overhead
    if not (math.isfinite(r) and r >= 0):
        raise DomainError("radius must be non-negative and finite")
    if p.t == 0:
        return 0.0 * p.gamma
    if r == 0:
        return p.gamma / (4.0 * p.nu)
    s = (2.0 * math.pi * r * r) / p.t
    return p.gamma * (s**0.75 + (4.0 * p.nu) ** 0.75) ** (-4.0 / 3.0)
