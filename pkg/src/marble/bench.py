"""Timing of the closed-form angle against per-point quadrature."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .oracle import integrate_displacement
from .vortexmath import VortexParams, angle


@dataclass(frozen=True)
class SpeedComparison:
    closed_form_per_s: float
    quadrature_per_s: float

    @property
    def speedup(self) -> float:
        return self.closed_form_per_s / self.quadrature_per_s


def _radii(n, seed=0):
    rng = np.random.default_rng(seed)
    return 10.0 ** rng.uniform(-3, 0, n)


def closed_form_rate(p: VortexParams, n: int = 200_000, repeat: int = 3) -> float:
    """Angle evaluations per second, vectorized over ``n`` radii (best of
    ``repeat``)."""
    r = _radii(n)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        angle(p, r)
        best = min(best, time.perf_counter() - t0)
    return n / best


def quadrature_rate(p: VortexParams, n: int = 50, tol: float = 1e-8) -> float:
    """Quadrature evaluations of the same quantity per second."""
    r = _radii(n, seed=1)
    t0 = time.perf_counter()
    for ri in r:
        integrate_displacement(p, float(ri), tol) / ri
    return n / (time.perf_counter() - t0)


def compare(p: VortexParams | None = None, tol: float = 1e-8) -> SpeedComparison:
    p = p or VortexParams(1e-3, 1e-6, 100.0)
    return SpeedComparison(closed_form_rate(p), quadrature_rate(p, tol=tol))
