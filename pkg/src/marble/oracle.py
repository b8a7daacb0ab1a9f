"""Numerical reference for the closed-form displacement.

The oracle integrates the exact Lamb-Oseen velocity over time with a globally
adaptive 7/15-point Gauss-Kronrod rule, and reports how far the closed form
strays from it.
"""

from __future__ import annotations

import csv
import heapq
import io
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .vortexmath import (
    VortexParams,
    circumferential_velocity,
    displacement,
    displacement_rate,
)

# Kronrod 15-point nodes/weights on [-1, 1]; the 7-point Gauss rule uses the
# odd-indexed nodes.
_XK = np.array([
    -0.991455371120812639206854697526329,
    -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926,
    -0.741531185599394439863864773280788,
    -0.586087235467691130294144845693013,
    -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144845693013,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082,
])

DEFAULT_MAX_EVALS = 1_000_000

DEFAULT_GAMMAS = (1e-3,)
DEFAULT_NUS = (1e-6, 1e-5, 1e-4, 1e-3)
DEFAULT_RADII = (1e-3, 1e-2, 1e-1, 1.0)
DEFAULT_TIMES = (1.0, 10.0, 100.0, 1000.0)

CSV_HEADER = ("gamma", "nu", "r", "t", "fit", "oracle", "rel_error")


class QuadratureError(RuntimeError):
    """Adaptive quadrature exhausted its evaluation budget."""

    def __init__(self, message, *, value, error, worst_interval, evaluations):
        self.value = value
        self.error = error
        self.worst_interval = worst_interval
        self.evaluations = evaluations
        a, b = worst_interval
        super().__init__(
            f"{message}: estimate {value!r} +/- {error:.3g} after {evaluations} "
            f"evaluations; worst interval [{a!r}, {b!r}]"
        )


@dataclass(frozen=True)
class QuadResult:
    value: float
    error: float
    evaluations: int
    intervals: int


def _gk15(f, a, b):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    fx = f(mid + half * _XK)
    kronrod = half * float(np.dot(_WK, fx))
    gauss = half * float(np.dot(_WG, fx[1::2]))
    return kronrod, abs(kronrod - gauss)


def adaptive_gk(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    rtol: float,
    atol: float = 0.0,
    max_evals: int = DEFAULT_MAX_EVALS,
) -> QuadResult:
    """Integrate ``f`` over [a, b], bisecting the worst interval until the
    summed error estimate is below ``max(atol, rtol * |integral|)``.

    ``f`` receives a 15-element array of abscissae and must return values at
    all of them.
    """
    if not (b > a):
        return QuadResult(0.0, 0.0, 0, 0)
    value, err = _gk15(f, a, b)
    evals = 15
    # max-heap on error
    heap = [(-err, a, b, value)]
    total, total_err = value, err
    while total_err > max(atol, rtol * abs(total)):
        if evals + 30 > max_evals:
            worst = heap[0]
            raise QuadratureError(
                "quadrature did not converge",
                value=total,
                error=total_err,
                worst_interval=(worst[1], worst[2]),
                evaluations=evals,
            )
        neg_e, lo, hi, v = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not (lo < mid < hi):
            # interval cannot be split further in floating point
            raise QuadratureError(
                "quadrature interval collapsed",
                value=total,
                error=total_err,
                worst_interval=(lo, hi),
                evaluations=evals,
            )
        v1, e1 = _gk15(f, lo, mid)
        v2, e2 = _gk15(f, mid, hi)
        evals += 30
        heapq.heappush(heap, (-e1, lo, mid, v1))
        heapq.heappush(heap, (-e2, mid, hi, v2))
        # re-sum rather than update incrementally to avoid drift
        total = math.fsum(item[3] for item in heap)
        total_err = math.fsum(-item[0] for item in heap)
    return QuadResult(total, total_err, evals, len(heap))


def _velocity_integrand(p: VortexParams, r: float):
    scale = p.gamma / (2.0 * math.pi * r)
    a = r * r / (4.0 * p.nu)

    def f(tau):
        tau = np.asarray(tau, dtype=float)
        with np.errstate(divide="ignore"):
            decay = -np.expm1(-a / tau)
        return scale * np.where(tau > 0, decay, 1.0)

    return f


def integrate_velocity(
    p: VortexParams, r: float, t0: float, t1: float, tol: float = 1e-10
) -> QuadResult:
    """Integral of the exact circumferential velocity over [t0, t1]."""
    if not r > 0:
        raise ValueError("r must be positive")
    if not 0 < tol < 1e-2:
        raise ValueError("tol must lie in (0, 1e-2)")
    if not 0 <= t0 <= t1:
        raise ValueError("need 0 <= t0 <= t1")
    return adaptive_gk(_velocity_integrand(p, r), t0, t1, rtol=tol)


def integrate_displacement(p: VortexParams, r: float, tol: float = 1e-10) -> float:
    """Travel along the circle of radius ``r`` after ``p.t`` seconds, by
    quadrature of the exact velocity law."""
    if not p.t > 0:
        raise ValueError("t must be positive")
    return integrate_velocity(p, r, 0.0, p.t, tol).value


@dataclass(frozen=True)
class FitSample:
    gamma: float
    nu: float
    r: float
    t: float
    fit_value: float
    oracle_value: float
    rel_error: float
    failure: str | None = None


@dataclass(frozen=True)
class FitReport:
    samples: list[FitSample]

    @property
    def ok_samples(self):
        return [s for s in self.samples if s.failure is None]

    @property
    def max_rel_error(self) -> float:
        return max((s.rel_error for s in self.ok_samples), default=math.nan)

    @property
    def mean_rel_error(self) -> float:
        ok = self.ok_samples
        return math.fsum(s.rel_error for s in ok) / len(ok) if ok else math.nan

    @property
    def worst(self) -> FitSample | None:
        ok = self.ok_samples
        return max(ok, key=lambda s: s.rel_error) if ok else None

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for s in self.samples:
            w.writerow([repr(float(v)) for v in
                        (s.gamma, s.nu, s.r, s.t, s.fit_value, s.oracle_value, s.rel_error)])
        return buf.getvalue()

    def summary(self) -> str:
        lines = [
            f"rows: {len(self.samples)} ({len(self.samples) - len(self.ok_samples)} failed)",
            f"max rel_error: {self.max_rel_error:.6g}",
            f"mean rel_error: {self.mean_rel_error:.6g}",
        ]
        w = self.worst
        if w is not None:
            lines.append(f"worst at gamma={w.gamma:g} nu={w.nu:g} r={w.r:g} t={w.t:g}")
        return "\n".join(lines)


def relative_error(fit: float, ref: float) -> float:
    return abs(fit - ref) / max(abs(ref), 1e-300)


def fit_sample(gamma, nu, r, t, tol=1e-10) -> FitSample:
    p = VortexParams(gamma, nu, t)
    fit = displacement(p, r)
    try:
        ref = integrate_displacement(p, r, tol)
    except QuadratureError as exc:
        return FitSample(gamma, nu, r, t, fit, math.nan, math.nan, str(exc))
    return FitSample(gamma, nu, r, t, fit, ref, relative_error(fit, ref))


def _check_grid(name, values):
    values = [float(v) for v in values]
    if not values:
        raise ValueError(f"{name} grid is empty")
    if any(not (math.isfinite(v) and v > 0) for v in values):
        raise ValueError(f"{name} grid must hold positive finite values")
    return values


def fit_error_report(
    gammas: Iterable[float] = DEFAULT_GAMMAS,
    nus: Iterable[float] = DEFAULT_NUS,
    radii: Iterable[float] = DEFAULT_RADII,
    times: Iterable[float] = DEFAULT_TIMES,
    tol: float = 1e-10,
) -> FitReport:
    """Closed form vs quadrature over the Cartesian product of the grids,
    gamma-major, then nu, r, t."""
    gammas = [float(g) for g in gammas]
    if not gammas or any(not math.isfinite(g) or g == 0 for g in gammas):
        raise ValueError("gamma grid must hold finite nonzero values")
    nus = _check_grid("nu", nus)
    radii = _check_grid("r", radii)
    times = _check_grid("t", times)
    samples = [
        fit_sample(g, nu, r, t, tol)
        for g in gammas for nu in nus for r in radii for t in times
    ]
    return FitReport(samples)


PROFILE_MODES = ("fix-radius", "fix-time")


@dataclass(frozen=True)
class ProfileRow:
    abscissa: float
    u_theta: float
    fit_rate: float


def velocity_profile_compare(
    mode: str, lo: float = 1e-4, hi: float = 1e4, points: int = 161
) -> list[ProfileRow]:
    """Exact velocity vs the closed form's time derivative, in normalized units.

    ``fix-radius``: 4 nu / r^2 = 1 and 2 pi r / gamma = 1, abscissa is t.
    ``fix-time``: 4 nu t = 1 and 2 pi / gamma = 1, abscissa is r.
    """
    if mode not in PROFILE_MODES:
        raise ValueError(f"mode must be one of {PROFILE_MODES}, got {mode!r}")
    if not (0 < lo < hi) or points < 2:
        raise ValueError("need 0 < lo < hi and at least two points")
    xs = np.logspace(math.log10(lo), math.log10(hi), points)
    rows = []
    for x in xs:
        x = float(x)
        if mode == "fix-radius":
            # r = 1 gives nu = 1/4, gamma = 2 pi
            p = VortexParams(2.0 * math.pi, 0.25, x)
            r = 1.0
        else:
            p = VortexParams(2.0 * math.pi, 0.25, 1.0)
            r = x
        rows.append(ProfileRow(x, circumferential_velocity(p, r), displacement_rate(p, r)))
    return rows


def profile_csv(rows: Sequence[ProfileRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("abscissa", "u_theta", "fit_rate"))
    for row in rows:
        w.writerow([repr(row.abscissa), repr(row.u_theta), repr(row.fit_rate)])
    return buf.getvalue()
