"""Backward-mapping renderer.

Each output sample is traced back through the scene to the undeformed base
pattern.  Work is split into fixed blocks of rows, so the output does not
depend on how many threads render it.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

from .xform import RGB, Scene, _check_point, _check_rgb, trace_back

SUPERSAMPLE_CHOICES = (1, 2, 4)
BLOCK_ROWS = 16
THREADS_ENV = "MARBLE_THREADS"


@dataclass(frozen=True)
class Viewport:
    """Physical rectangle mapped onto a pixel grid.  The top image row is at
    the largest y (y points up)."""

    min_x: float
    min_y: float
    width: float
    height: float
    pixels_x: int
    pixels_y: int

    def __post_init__(self):
        _check_point((self.min_x, self.min_y))
        if not (math.isfinite(self.width) and self.width > 0
                and math.isfinite(self.height) and self.height > 0):
            raise ValueError("viewport width and height must be positive")
        if int(self.pixels_x) < 1 or int(self.pixels_y) < 1:
            raise ValueError("viewport needs at least one pixel per axis")
        sx = self.width / self.pixels_x
        sy = self.height / self.pixels_y
        if abs(sx - sy) > 1e-9 * max(sx, sy):
            raise ValueError(f"pixels are not square: {sx!r} x {sy!r} m")

    @property
    def pixel_size(self) -> float:
        return self.width / self.pixels_x

    def sample_grid(self, row0: int, row1: int, n: int = 1):
        """Coordinates of the n x n stratified sub-samples of rows
        ``row0:row1``; arrays of shape (rows, pixels_x, n*n)."""
        offs = (np.arange(n) + 0.5) / n
        cols = np.arange(self.pixels_x)
        rows = np.arange(row0, row1)
        sx = self.width / self.pixels_x
        sy = self.height / self.pixels_y
        # sub-sample order: row-major within the pixel
        oy, ox = np.meshgrid(offs, offs, indexing="ij")
        ox = ox.ravel()
        oy = oy.ravel()
        x = self.min_x + (cols[None, :, None] + ox[None, None, :]) * sx
        y = self.min_y + self.height - (rows[:, None, None] + oy[None, None, :]) * sy
        x = np.broadcast_to(x, (len(rows), self.pixels_x, n * n))
        y = np.broadcast_to(y, (len(rows), self.pixels_x, n * n))
        return x, y

    def pixel_center(self, col: int, row: int) -> tuple[float, float]:
        s = self.pixel_size
        return (self.min_x + (col + 0.5) * s,
                self.min_y + self.height - (row + 0.5) * self.height / self.pixels_y)


# ---------------------------------------------------------------------------
# base patterns

@dataclass(frozen=True)
class Solid:
    color: RGB

    def __post_init__(self):
        object.__setattr__(self, "color", _check_rgb(self.color))

    def select(self, x, y):
        return np.zeros(np.shape(x), dtype=bool)

    @property
    def colors(self):
        return self.color, self.color


@dataclass(frozen=True)
class HalfPlane:
    """``first`` where the chosen coordinate is negative, else ``second``."""

    axis: str
    first: RGB
    second: RGB

    def __post_init__(self):
        if self.axis not in ("x", "y"):
            raise ValueError("axis must be 'x' or 'y'")
        object.__setattr__(self, "first", _check_rgb(self.first))
        object.__setattr__(self, "second", _check_rgb(self.second))

    def select(self, x, y):
        v = x if self.axis == "x" else y
        return ~(np.asarray(v) < 0)

    @property
    def colors(self):
        return self.first, self.second


def _check_period(period):
    if not (math.isfinite(period) and period > 0):
        raise ValueError("period must be positive")


@dataclass(frozen=True)
class Stripes:
    """Vertical bands of width ``period`` starting at x = ``phase``."""

    period: float
    phase: float
    first: RGB
    second: RGB

    def __post_init__(self):
        _check_period(self.period)
        if not math.isfinite(self.phase):
            raise ValueError("phase must be finite")
        object.__setattr__(self, "first", _check_rgb(self.first))
        object.__setattr__(self, "second", _check_rgb(self.second))

    def select(self, x, y):
        return np.floor((np.asarray(x) - self.phase) / self.period) % 2 == 1

    @property
    def colors(self):
        return self.first, self.second


@dataclass(frozen=True)
class Rings:
    center: tuple[float, float]
    period: float
    first: RGB
    second: RGB

    def __post_init__(self):
        object.__setattr__(self, "center", _check_point(self.center))
        _check_period(self.period)
        object.__setattr__(self, "first", _check_rgb(self.first))
        object.__setattr__(self, "second", _check_rgb(self.second))

    def select(self, x, y):
        d = np.hypot(np.asarray(x) - self.center[0], np.asarray(y) - self.center[1])
        return np.floor(d / self.period) % 2 == 1

    @property
    def colors(self):
        return self.first, self.second


@dataclass(frozen=True)
class Checker:
    period: float
    first: RGB
    second: RGB

    def __post_init__(self):
        _check_period(self.period)
        object.__setattr__(self, "first", _check_rgb(self.first))
        object.__setattr__(self, "second", _check_rgb(self.second))

    def select(self, x, y):
        i = np.floor(np.asarray(x) / self.period) + np.floor(np.asarray(y) / self.period)
        return i % 2 == 1

    @property
    def colors(self):
        return self.first, self.second


BasePattern = Union[Solid, HalfPlane, Stripes, Rings, Checker]


def base_color(base: BasePattern, x, y) -> np.ndarray:
    """uint8 RGB array of shape ``x.shape + (3,)``."""
    first, second = base.colors
    sel = base.select(x, y)
    return np.where(sel[..., None], np.array(second, np.uint8), np.array(first, np.uint8))


# ---------------------------------------------------------------------------
# rendering

@dataclass(frozen=True)
class RasterImage:
    pixels: np.ndarray  # (height, width, 3) uint8, top row first
    viewport: Viewport | None = None

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def to_ppm_bytes(self) -> bytes:
        if self.pixels.size == 0:
            raise ValueError("image is empty")
        header = b"P6\n%d %d\n255\n" % (self.width, self.height)
        return header + np.ascontiguousarray(self.pixels, dtype=np.uint8).tobytes()


def thread_count(threads: int | None = None) -> int:
    """Explicit argument, else ``MARBLE_THREADS``, else the CPU count."""
    if threads is None:
        env = os.environ.get(THREADS_ENV, "").strip()
        if env:
            try:
                threads = int(env)
            except ValueError:
                raise ValueError(f"{THREADS_ENV} must be an integer, got {env!r}") from None
        else:
            threads = os.cpu_count() or 1
    return max(1, int(threads))


def _render_block(scene, base, vp, n, row0, row1):
    x, y = vp.sample_grid(row0, row1, n)
    tr = trace_back(x, y, scene)
    col = np.where(tr.resolved[..., None], tr.color, base_color(base, tr.x, tr.y))
    total = col.astype(np.uint32).sum(axis=2)
    k = n * n
    # round half up in integer space
    return ((total + k // 2) // k).astype(np.uint8)


def render(scene: Scene, base: BasePattern, vp: Viewport, supersample: int = 1,
           threads: int | None = None) -> RasterImage:
    """Render ``scene`` over ``base`` into ``vp``.

    Each pixel averages ``supersample**2`` stratified sub-samples.  The
    result is bit-identical for any ``threads``.
    """
    if supersample not in SUPERSAMPLE_CHOICES:
        raise ValueError(f"supersample must be one of {SUPERSAMPLE_CHOICES}")
    blocks = [(r, min(r + BLOCK_ROWS, vp.pixels_y)) for r in range(0, vp.pixels_y, BLOCK_ROWS)]
    out = np.empty((vp.pixels_y, vp.pixels_x, 3), dtype=np.uint8)
    nthreads = min(thread_count(threads), len(blocks))

    def job(block):
        r0, r1 = block
        out[r0:r1] = _render_block(scene, base, vp, supersample, r0, r1)

    if nthreads == 1:
        for b in blocks:
            job(b)
    else:
        with ThreadPoolExecutor(max_workers=nthreads) as pool:
            list(pool.map(job, blocks))
    return RasterImage(out, vp)


def write_ppm(img: RasterImage, path) -> None:
    """Write binary PPM (P6, maxval 255)."""
    data = img.to_ppm_bytes()
    try:
        Path(path).write_bytes(data)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def read_ppm(path) -> np.ndarray:
    """Read back a P6 file written by :func:`write_ppm`."""
    data = Path(path).read_bytes()
    parts = data.split(b"\n", 3)
    if len(parts) != 4 or parts[0] != b"P6" or parts[2] != b"255":
        raise ValueError(f"{path}: not a P6 file in canonical layout")
    w, h = (int(v) for v in parts[1].split())
    pix = np.frombuffer(parts[3], dtype=np.uint8)
    if pix.size != w * h * 3:
        raise ValueError(f"{path}: expected {w * h * 3} pixel bytes, got {pix.size}")
    return pix.reshape(h, w, 3)


def trace_csv(scene: Scene, vp: Viewport) -> str:
    """Debug dump of the source point of every pixel center.

    Pixels covered by a drop report the point where the drop caught them.
    """
    x, y = vp.sample_grid(0, vp.pixels_y, 1)
    x = x[..., 0]
    y = y[..., 0]
    tr = trace_back(x, y, scene)
    lines = ["x,y,src_x,src_y"]
    for px, py, sx, sy in zip(x.ravel(), y.ravel(), tr.x.ravel(), tr.y.ravel()):
        lines.append(",".join(repr(float(v)) for v in (px, py, sx, sy)))
    return "\n".join(lines) + "\n"
