"""Invertible plane deformations and scenes built from them.

Every deformation has a ``forward`` map (what the paint does) and an exact
closed-form ``inverse`` (what the renderer uses).  Both work on coordinate
arrays ``x, y`` of any matching shape; the scalar helpers at the bottom
wrap them for single points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from .vortexmath import VortexParams, angle

RGB = tuple[int, int, int]


class Point2(NamedTuple):
    x: float
    y: float


def _check_rgb(color) -> RGB:
    color = tuple(int(c) for c in color)
    if len(color) != 3 or any(not 0 <= c <= 255 for c in color):
        raise ValueError(f"color must be three bytes, got {color!r}")
    return color


def _check_point(p) -> tuple[float, float]:
    x, y = float(p[0]), float(p[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError(f"point must be finite, got {p!r}")
    return x, y


def unit_vector(dx: float, dy: float) -> tuple[float, float]:
    """Normalize ``(dx, dy)``.  Idempotent: vectors already of unit length
    to within a few ulps are returned untouched."""
    h = math.hypot(dx, dy)
    if not (math.isfinite(h) and h > 0):
        raise ValueError("direction must be a nonzero finite vector")
    if abs(h - 1.0) <= 4 * np.finfo(float).eps:
        return float(dx), float(dy)
    return dx / h, dy / h


def _rotate(x, y, cx, cy, a):
    # row vector [P - C] times [[cos a, sin a], [-sin a, cos a]]
    dx = x - cx
    dy = y - cy
    c = np.cos(a)
    s = np.sin(a)
    # zero angle is the exact identity (no round trip through the center)
    still = a == 0
    return (np.where(still, x, cx + dx * c - dy * s),
            np.where(still, y, cy + dx * s + dy * c))


@dataclass(frozen=True)
class Vortex:
    """Lamb-Oseen vortex impulse evaluated after ``params.t`` seconds."""

    params: VortexParams

    def angle_at(self, x, y):
        cx, cy = self.params.center
        return angle(self.params, np.hypot(np.asarray(x) - cx, np.asarray(y) - cy))

    def forward(self, x, y):
        cx, cy = self.params.center
        return _rotate(x, y, cx, cy, self.angle_at(x, y))

    def inverse(self, x, y):
        cx, cy = self.params.center
        return _rotate(x, y, cx, cy, -self.angle_at(x, y))


@dataclass(frozen=True)
class LineStroke:
    """Stylus drawn along a straight line.

    Paint at perpendicular distance ``d`` from the line moves along it by
    ``z * lam / (lam + d)``.  ``d`` is unchanged by the move, so the inverse
    subtracts the same amount.
    """

    origin: tuple[float, float]
    direction: tuple[float, float]
    z: float
    lam: float

    def __post_init__(self):
        object.__setattr__(self, "origin", _check_point(self.origin))
        object.__setattr__(self, "direction", unit_vector(*self.direction))
        if not math.isfinite(self.z):
            raise ValueError("z must be finite")
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise ValueError("lam must be positive")

    def shift(self, x, y):
        ox, oy = self.origin
        ux, uy = self.direction
        d = np.abs((np.asarray(x) - ox) * uy - (np.asarray(y) - oy) * ux)
        return self.z * self.lam / (self.lam + d)

    def forward(self, x, y):
        u = self.shift(x, y)
        return x + u * self.direction[0], y + u * self.direction[1]

    def inverse(self, x, y):
        u = self.shift(x, y)
        return x - u * self.direction[0], y - u * self.direction[1]


@dataclass(frozen=True)
class CircleStroke:
    """Stylus drawn around a circle of radius ``radius``.

    Paint at distance ``d`` from that circle turns about ``center`` by
    ``z * lam / (lam + d)`` radians; positive ``z`` is counterclockwise.
    """

    center: tuple[float, float]
    radius: float
    z: float
    lam: float

    def __post_init__(self):
        object.__setattr__(self, "center", _check_point(self.center))
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise ValueError("radius must be positive")
        if not math.isfinite(self.z):
            raise ValueError("z must be finite")
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise ValueError("lam must be positive")

    def angle_at(self, x, y):
        cx, cy = self.center
        rho = np.hypot(np.asarray(x) - cx, np.asarray(y) - cy)
        return self.z * self.lam / (self.lam + np.abs(rho - self.radius))

    def forward(self, x, y):
        return _rotate(x, y, *self.center, self.angle_at(x, y))

    def inverse(self, x, y):
        return _rotate(x, y, *self.center, -self.angle_at(x, y))


@dataclass(frozen=True)
class Drop:
    """Ink drop of radius ``rho``: pushes existing paint outward and fills the
    disk with ``color``."""

    center: tuple[float, float]
    rho: float
    color: RGB

    def __post_init__(self):
        object.__setattr__(self, "center", _check_point(self.center))
        if not (math.isfinite(self.rho) and self.rho > 0):
            raise ValueError("rho must be positive")
        object.__setattr__(self, "color", _check_rgb(self.color))

    def forward(self, x, y):
        cx, cy = self.center
        dx = np.asarray(x, dtype=float) - cx
        dy = np.asarray(y, dtype=float) - cy
        d2 = dx * dx + dy * dy
        if np.any(d2 == 0):
            raise ValueError("drop forward map is undefined at the drop center")
        k = np.sqrt(1.0 + self.rho * self.rho / d2)
        return cx + dx * k, cy + dy * k

    def inverse(self, x, y):
        """Returns ``(x, y, inside)``; ``inside`` marks points covered by the
        drop itself, whose coordinates are returned unchanged."""
        cx, cy = self.center
        dx = np.asarray(x, dtype=float) - cx
        dy = np.asarray(y, dtype=float) - cy
        d2 = dx * dx + dy * dy
        r2 = self.rho * self.rho
        inside = d2 <= r2
        with np.errstate(divide="ignore", invalid="ignore"):
            k = np.sqrt(np.where(inside, 1.0, 1.0 - r2 / np.where(inside, 1.0, d2)))
        return cx + dx * k, cy + dy * k, inside


Deformation = Union[Vortex, LineStroke, CircleStroke, Drop]


@dataclass(frozen=True)
class Scene:
    """Background color plus deformations in application order."""

    background: RGB
    steps: tuple[Deformation, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "background", _check_rgb(self.background))
        object.__setattr__(self, "steps", tuple(self.steps))


@dataclass
class Trace:
    """Result of tracing points back through a scene.

    ``x, y`` are source coordinates in the undeformed base (valid where
    ``resolved`` is False); ``color`` holds drop colors where ``resolved``.
    """

    x: np.ndarray
    y: np.ndarray
    color: np.ndarray
    resolved: np.ndarray


def trace_back(x, y, scene: Scene) -> Trace:
    """Walk the scene backwards from rendered points to their sources."""
    x = np.array(x, dtype=float)
    y = np.array(y, dtype=float)
    color = np.zeros(x.shape + (3,), dtype=np.uint8)
    resolved = np.zeros(x.shape, dtype=bool)
    for step in reversed(scene.steps):
        if isinstance(step, Drop):
            nx, ny, inside = step.inverse(x, y)
            hit = inside & ~resolved
            color[hit] = step.color
            resolved |= hit
        else:
            nx, ny = step.inverse(x, y)
        # resolved points stay where the drop caught them
        x = np.where(resolved, x, nx)
        y = np.where(resolved, y, ny)
    return Trace(x, y, color, resolved)


def apply_forward(x, y, steps):
    """Push points through ``steps`` in order (drops only displace)."""
    for step in steps:
        x, y = step.forward(x, y)
    return x, y


def apply_inverse(x, y, steps):
    """Undo ``steps``: inverses in reverse order (drop interiors stay put)."""
    for step in reversed(steps):
        out = step.inverse(x, y)
        x, y = out[0], out[1]
    return x, y


def _scalar(pair) -> Point2:
    return Point2(float(pair[0]), float(pair[1]))


def vortex_forward(p: Point2, v: VortexParams) -> Point2:
    return _scalar(Vortex(v).forward(float(p[0]), float(p[1])))


def vortex_inverse(p: Point2, v: VortexParams) -> Point2:
    return _scalar(Vortex(v).inverse(float(p[0]), float(p[1])))


def line_forward(p: Point2, s: LineStroke) -> Point2:
    return _scalar(s.forward(float(p[0]), float(p[1])))


def line_inverse(p: Point2, s: LineStroke) -> Point2:
    return _scalar(s.inverse(float(p[0]), float(p[1])))


def circle_forward(p: Point2, s: CircleStroke) -> Point2:
    return _scalar(s.forward(float(p[0]), float(p[1])))


def circle_inverse(p: Point2, s: CircleStroke) -> Point2:
    return _scalar(s.inverse(float(p[0]), float(p[1])))


def drop_forward(p: Point2, d: Drop) -> Point2:
    return _scalar(d.forward(float(p[0]), float(p[1])))


class Inside(NamedTuple):
    """Marker returned by :func:`drop_inverse` for points covered by a drop."""

    color: RGB


def drop_inverse(p: Point2, d: Drop) -> Point2 | Inside:
    x, y, inside = d.inverse(float(p[0]), float(p[1]))
    if bool(inside):
        return Inside(d.color)
    return Point2(float(x), float(y))


def scene_trace_back(p: Point2, scene: Scene) -> RGB:
    """Color of a single point: the covering drop's color, else the scene
    background."""
    tr = trace_back(float(p[0]), float(p[1]), scene)
    if bool(tr.resolved):
        return tuple(int(c) for c in tr.color)
    return scene.background
