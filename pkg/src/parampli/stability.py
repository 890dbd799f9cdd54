"""Instability thresholds, regime classification and boundary tracing.

Two regimes of exponential growth exist. For ``delta > 0`` one conjugate
pair of eigenfrequencies becomes purely imaginary once
``chi**2 > delta (1 + kappa) / 4`` (region I). For ``delta < 0`` all four
eigenfrequencies become complex, ``{+-Omega +- i Gamma}``, once
``chi**2 > (1 - kappa**2 - delta**2)**2 / (16 |delta| (1 - kappa))``
(region II). Otherwise the spectrum is real and the dynamics is stable.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .model import ConsistencyError, ModelParams
from .spectral import Spectrum, frequencies

__all__ = [
    "CLASSIFY_TOL",
    "NEAR_MARGIN",
    "RegimeTag",
    "Regime",
    "BoundaryCurve",
    "threshold_chi_squared",
    "classify_analytic",
    "classify_spectral",
    "trace_boundary",
    "growth_rate",
    "bisect_threshold",
]

CLASSIFY_TOL = 1e-9
NEAR_MARGIN = 1e-6


class RegimeTag(str, enum.Enum):
    STABLE = "Stable"
    REGION_I = "RegionI"
    REGION_II = "RegionII"
    NEAR_THRESHOLD = "NearThreshold"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Regime:
    """Regime tag with the rotation frequency and growth rate of the
    fastest-growing solution (``gamma`` is 0 when stable)."""

    tag: RegimeTag
    omega_rot: float
    gamma: float


@dataclass(frozen=True, eq=False)
class BoundaryCurve:
    """Critical ``chi**2`` along a detuning grid, from the threshold formula
    and from bisection on the spectrum."""

    kappa: float
    delta: np.ndarray
    chi2_analytic: np.ndarray
    chi2_bisect: np.ndarray

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.delta.tolist(), self.chi2_analytic.tolist()))


def _omegas(spectrum) -> np.ndarray:
    if isinstance(spectrum, Spectrum):
        return spectrum.omegas
    return np.asarray(spectrum, dtype=complex)


def threshold_chi_squared(delta: float, kappa: float) -> float | None:
    """Critical ``chi**2`` above which the dynamics grows exponentially.

    Returns ``None`` at ``delta == 0``, where neither threshold applies.
    """
    if not 0.0 <= kappa < 1.0:
        raise ValueError(f"kappa must lie in [0, 1), got {kappa}")
    if delta > 0:
        return delta * (1.0 + kappa) / 4.0
    if delta < 0:
        num = 1.0 - kappa * kappa - delta * delta
        return num * num / (16.0 * abs(delta) * (1.0 - kappa))
    return None


def growth_rate(spectrum) -> float:
    """Largest imaginary part of the eigenfrequencies (0 for a real spectrum)."""
    return max(0.0, float(np.max(_omegas(spectrum).imag)))


def _rates(omegas: np.ndarray) -> tuple[float, float]:
    return float(np.max(np.abs(omegas.real))), max(0.0, float(np.max(omegas.imag)))


def classify_analytic(params: ModelParams, margin: float = NEAR_MARGIN) -> Regime:
    """Classify by comparing ``chi**2`` with the threshold formulas.

    Points within ``margin`` of the threshold, and points with
    ``|delta| <= margin`` (the exceptional line ``delta = 0``, where growth
    rates vanish like ``sqrt(delta)``), are tagged ``NearThreshold``.
    """
    omega_rot, gamma = _rates(frequencies(params))
    thr = threshold_chi_squared(params.delta, params.kappa)
    if thr is None or abs(params.delta) <= margin or abs(params.chi2 - thr) <= margin:
        return Regime(RegimeTag.NEAR_THRESHOLD, omega_rot, gamma)
    if params.chi2 < thr:
        return Regime(RegimeTag.STABLE, omega_rot, 0.0)
    tag = RegimeTag.REGION_I if params.delta > 0 else RegimeTag.REGION_II
    return Regime(tag, omega_rot, gamma)


def classify_spectral(spectrum, tol: float = CLASSIFY_TOL) -> Regime:
    """Classify from the shape of the eigenfrequency set alone.

    Accepts a :class:`Spectrum` or a sequence of four eigenfrequencies.
    Raises ``ValueError`` if the set matches none of the three shapes.
    """
    w = _omegas(spectrum)
    re = np.abs(w.real)
    im = np.abs(w.imag)
    omega_rot, gamma = _rates(w)
    if im.max() <= tol:
        return Regime(RegimeTag.STABLE, omega_rot, 0.0)
    pure_imag = (re <= tol) & (im > tol)
    pure_real = im <= tol
    if pure_imag.sum() == 2 and pure_real.sum() == 2:
        return Regime(RegimeTag.REGION_I, float(re[pure_real].max()), gamma)
    if np.all((re > tol) & (im > tol)):
        return Regime(RegimeTag.REGION_II, omega_rot, gamma)
    raise ValueError(f"eigenfrequencies {w} match no regime at tol={tol:g}")


def _unstable(delta: float, kappa: float, chi2: float, tol: float) -> bool:
    params = ModelParams(delta, kappa, math.sqrt(chi2))
    return growth_rate(frequencies(params)) > tol


def bisect_threshold(delta: float, kappa: float, tol: float = CLASSIFY_TOL,
                     rel_width: float = 1e-14) -> float:
    """Locate the critical ``chi**2`` by bisection on the onset of growth."""
    lo, hi = 0.0, 1.0
    if _unstable(delta, kappa, lo, tol):
        return 0.0
    for _ in range(200):
        if _unstable(delta, kappa, hi, tol):
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise ConsistencyError(f"no instability found for delta={delta}, kappa={kappa}")
    while hi - lo > rel_width * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if _unstable(delta, kappa, mid, tol):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def trace_boundary(kappa: float, delta_min: float, delta_max: float, n_points: int,
                   tol: float = CLASSIFY_TOL, agree_tol: float = 1e-6) -> BoundaryCurve:
    """Threshold curve over a uniform detuning grid (``delta == 0`` skipped).

    Each point is computed twice, from the closed formula and by bisection on
    the spectrum; a disagreement larger than ``agree_tol`` raises
    :class:`ConsistencyError`.
    """
    if n_points < 2:
        raise ValueError("n_points must be at least 2")
    if not 0.0 <= kappa < 1.0:
        raise ValueError(f"kappa must lie in [0, 1), got {kappa}")
    grid = np.linspace(delta_min, delta_max, n_points)
    span = max(abs(delta_min), abs(delta_max), 1.0)
    deltas, analytic, bisected = [], [], []
    for d in grid:
        if abs(d) <= 1e-12 * span:
            continue
        d = float(d)
        a = threshold_chi_squared(d, kappa)
        b = bisect_threshold(d, kappa, tol=tol)
        if abs(a - b) > agree_tol:
            raise ConsistencyError(
                f"threshold mismatch at kappa={kappa}, delta={d}: formula {a!r}, bisection {b!r}")
        deltas.append(d)
        analytic.append(a)
        bisected.append(b)
    return BoundaryCurve(kappa=float(kappa), delta=np.array(deltas),
                         chi2_analytic=np.array(analytic), chi2_bisect=np.array(bisected))
