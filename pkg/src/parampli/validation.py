"""Randomized property suite behind ``parampli validate``.

Every property draws its own sample from a seeded generator, records the
worst residual it saw and compares it with a tolerance. Residuals of
quantities that grow with the propagator are divided by ``max(1, |G|)`` (or
``|G|**2`` for quadratic ones) because float64 cannot hold them to a fixed
absolute accuracy once ``|G|`` is large.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .dynamics import (evolve_moments, intensity, intensity_from_moments, propagator,
                       propagator_series_oracle)
from .entanglement import y_closed_form, y_from_covariances
from .model import COMMUTATOR, SWAP, InitialState, ModelParams, build_dynamics_matrix
from .spectral import (char_poly, eigenfrequencies, multiset_distance,
                       numeric_spectrum_oracle)
from .stability import (RegimeTag, bisect_threshold, classify_analytic, classify_spectral,
                        threshold_chi_squared)

__all__ = ["PropertyResult", "random_params", "run_suite", "PROPERTIES"]

KAPPAS = (0.0, 0.4, 0.8)
ALPHAS = (0j, 2 + 0j, 10 + 0j, 2 * complex(math.cos(math.pi / 3), math.sin(math.pi / 3)))


@dataclass(frozen=True)
class PropertyResult:
    name: str
    worst: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.worst <= self.tol


def random_params(rng: np.random.Generator, kappa_choices=KAPPAS) -> ModelParams:
    """delta in [-3, 1], chi**2 in [0, 1.5], kappa from a fixed list."""
    delta = rng.uniform(-3.0, 1.0)
    chi2 = rng.uniform(0.0, 1.5)
    kappa = kappa_choices[rng.integers(len(kappa_choices))]
    return ModelParams(delta, kappa, math.sqrt(chi2))


def _nondegenerate(rng, t_max):
    while True:
        p = random_params(rng)
        s = eigenfrequencies(p)
        if not s.degenerate:
            return p, s, rng.uniform(-t_max, t_max)


def _char_poly(rng, n):
    worst = 0.0
    for _ in range(n):
        p = random_params(rng)
        m = build_dynamics_matrix(p)
        poly = char_poly(p)
        for w in rng.uniform(-3, 3, 3) + 1j * rng.uniform(-3, 3, 3):
            det = np.linalg.det(m - w * np.eye(4))
            worst = max(worst, abs(poly(w) - det) / max(1.0, abs(det)))
    return worst


def _spectrum_oracle(rng, n):
    worst = 0.0
    for _ in range(n):
        p = random_params(rng)
        s = eigenfrequencies(p)
        if s.degenerate:
            continue
        worst = max(worst, multiset_distance(s.omegas, numeric_spectrum_oracle(build_dynamics_matrix(p))))
    return worst


def _eigenvector_residual(rng, n):
    worst = 0.0
    for _ in range(n):
        p, s, _ = _nondegenerate(rng, 1.0)
        m = build_dynamics_matrix(p)
        worst = max(worst, float(np.abs(m @ s.vectors - s.vectors * s.omegas).max()))
    return worst


def _propagator_oracle(rng, n):
    worst = 0.0
    for _ in range(n):
        p, s, t = _nondegenerate(rng, 10.0)
        g = propagator(p, t, s).g
        h = propagator_series_oracle(build_dynamics_matrix(p), t).g
        worst = max(worst, float(np.abs(g - h).max()))
    return worst


def _symplectic_scaled(rng, n):
    worst = 0.0
    for _ in range(n):
        p, s, t = _nondegenerate(rng, 10.0)
        m = build_dynamics_matrix(p)
        for g in (propagator(p, t, s).g, propagator_series_oracle(m, t).g):
            r = np.abs(g @ COMMUTATOR @ g.T - COMMUTATOR).max()
            worst = max(worst, float(r / max(1.0, np.abs(g).max() ** 2)))
    return worst


def _conjugation_symmetry(rng, n):
    worst = 0.0
    for _ in range(n):
        p, s, t = _nondegenerate(rng, 10.0)
        m = build_dynamics_matrix(p)
        for g in (propagator(p, t, s).g, propagator_series_oracle(m, t).g):
            r = np.abs(g - SWAP @ g.conj() @ SWAP).max()
            worst = max(worst, float(r / max(1.0, np.abs(g).max())))
    return worst


def _semigroup(rng, n):
    worst = 0.0
    for _ in range(n):
        p, spec, _ = _nondegenerate(rng, 1.0)
        t, s = rng.uniform(0, 5, 2)
        g = propagator(p, t + s, spec).g
        gg = propagator(p, t, spec).g @ propagator(p, s, spec).g
        worst = max(worst, float(np.abs(g - gg).max() / max(1.0, np.abs(g).max())))
    return worst


def _threshold_agreement(rng, n):
    worst = 0.0
    for _ in range(n):
        kappa = KAPPAS[rng.integers(len(KAPPAS))]
        delta = rng.uniform(-3.0, 1.0)
        if delta == 0.0:
            continue
        worst = max(worst, abs(threshold_chi_squared(delta, kappa) - bisect_threshold(delta, kappa)))
    return worst


def _classification_agreement(rng, n):
    bad = 0
    for _ in range(n):
        p = random_params(rng)
        a = classify_analytic(p)
        if a.tag is RegimeTag.NEAR_THRESHOLD:
            continue
        if classify_spectral(eigenfrequencies(p)).tag is not a.tag:
            bad += 1
    return float(bad)


def _entanglement_dual_path(rng, n):
    worst = 0.0
    for _ in range(n):
        p, s, t = _nondegenerate(rng, 10.0)
        g = propagator(p, t, s)
        alpha = complex(*rng.normal(0, 2, 2))
        worst = max(worst, abs(y_closed_form(g) - y_from_covariances(evolve_moments(g, InitialState(alpha)))))
    return worst


def _alpha_independence(rng, n):
    worst = 0.0
    for _ in range(n):
        p, s, t = _nondegenerate(rng, 10.0)
        g = propagator(p, t, s)
        ys = [y_from_covariances(evolve_moments(g, InitialState(a))) for a in ALPHAS]
        worst = max(worst, max(ys) - min(ys))
    return worst


def _y_range(rng, n):
    # 0 when every Y lies in [0, 1); otherwise the size of the violation
    worst = 0.0
    for _ in range(n):
        p, s, t = _nondegenerate(rng, 10.0)
        y = y_closed_form(propagator(p, t, s))
        if y < 0:
            worst = max(worst, -y)
        elif y >= 1:
            worst = max(worst, y - 1.0 + np.finfo(float).eps)
    return worst


def _intensity_moments(rng, n):
    worst = 0.0
    for _ in range(n):
        p, s, t = _nondegenerate(rng, 10.0)
        g = propagator(p, t, s)
        alpha = complex(*rng.normal(0, 2, 2))
        a = intensity(g, alpha)
        b = intensity_from_moments(evolve_moments(g, InitialState(alpha)), t)
        for x, y in ((a.i_atom, b.i_atom), (a.i_light, b.i_light)):
            worst = max(worst, abs(x - y) / max(1.0, abs(x)))
    return worst


# name -> (check, default tolerance)
PROPERTIES: dict[str, tuple[Callable, float]] = {
    "char_poly_vs_determinant": (_char_poly, 1e-12),
    "spectrum_vs_oracle": (_spectrum_oracle, 1e-8),
    "eigenvector_residual": (_eigenvector_residual, 1e-10),
    "propagator_vs_series": (_propagator_oracle, 1e-9),
    "symplectic_scaled": (_symplectic_scaled, 1e-10),
    "conjugation_symmetry_scaled": (_conjugation_symmetry, 1e-12),
    "semigroup_scaled": (_semigroup, 1e-10),
    "threshold_formula_vs_bisection": (_threshold_agreement, 1e-6),
    "classification_disagreements": (_classification_agreement, 0.0),
    "entanglement_dual_path": (_entanglement_dual_path, 1e-12),
    "entanglement_alpha_independence": (_alpha_independence, 1e-12),
    "entanglement_range_violation": (_y_range, 0.0),
    "intensity_formula_vs_moments": (_intensity_moments, 1e-10),
}


def run_suite(seed: int = 0, samples: int = 200, tol: float | None = None) -> list[PropertyResult]:
    """Run every property with ``samples`` draws each.

    Each property gets its own generator derived from ``seed``, so results do
    not depend on execution order. ``tol`` overrides every tolerance.
    """
    seeds = np.random.SeedSequence(seed).spawn(len(PROPERTIES))
    results = []
    for (name, (check, default_tol)), ss in zip(PROPERTIES.items(), seeds):
        worst = check(np.random.default_rng(ss), samples)
        results.append(PropertyResult(name, float(worst), default_tol if tol is None else tol))
    return results
