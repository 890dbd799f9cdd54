"""Propagator, Gaussian moment evolution and field intensities.

The Heisenberg solution is ``x(t) = G(t) x(0)`` with ``G(t) = exp(i M t)``.
For the vacuum (atom) x coherent (light) initial state every observable
follows from ``G``: first moments propagate as ``G m`` and the unsymmetrized
centered second moments as ``G K G^T``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .model import SWAP, InitialState, ModelParams, build_dynamics_matrix
from .spectral import Spectrum, eigenfrequencies

__all__ = [
    "Propagator",
    "CovarianceState",
    "IntensityRecord",
    "initial_moments",
    "expm_series",
    "propagator",
    "propagator_series_oracle",
    "evolve_moments",
    "intensity",
    "intensity_from_moments",
    "intensity_series",
]


@dataclass(frozen=True, eq=False)
class Propagator:
    """``g[i, j]`` is the coefficient of ``x_j(0)`` in ``x_i(t)``.

    ``method`` is ``"eigendecomposition"`` or ``"series"``.
    """

    g: np.ndarray
    t: float
    method: str


@dataclass(frozen=True, eq=False)
class CovarianceState:
    """First moments ``<x_i>`` and centered moments ``<x_i x_j> - <x_i><x_j>``
    in operator order ``(c, c†, a, a†)``."""

    mean: np.ndarray
    cov: np.ndarray


class IntensityRecord(NamedTuple):
    t: float
    i_atom: float
    i_light: float


def initial_moments(init: InitialState) -> CovarianceState:
    a = init.alpha
    mean = np.array([0.0, 0.0, a, a.conjugate()], dtype=complex)
    cov = np.zeros((4, 4), dtype=complex)
    cov[0, 1] = 1.0  # <c c†> for vacuum
    cov[2, 3] = 1.0  # <a a†> - |alpha|^2 for a coherent state
    return CovarianceState(mean=mean, cov=cov)


def expm_series(a: np.ndarray, scaled_norm: float = 0.5, rtol: float = 1e-16) -> np.ndarray:
    """Matrix exponential by scaling and squaring a truncated Taylor series.

    ``a`` is divided by ``2**s`` so its 1-norm is at most ``scaled_norm``;
    the series stops once a term's norm drops below ``rtol`` times the norm of
    the partial sum, then the result is squared ``s`` times.
    """
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    norm = np.abs(a).sum(axis=0).max()
    s = 0
    if norm > scaled_norm:
        s = int(math.ceil(math.log2(norm / scaled_norm)))
    a = a / 2.0 ** s

    result = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    for k in range(1, 100):
        term = term @ a / k
        result = result + term
        if np.abs(term).sum(axis=0).max() < rtol * np.abs(result).sum(axis=0).max():
            break
    for _ in range(s):
        result = result @ result
    return result


def propagator_series_oracle(matrix: np.ndarray, t: float) -> Propagator:
    """``exp(i M t)`` computed without any eigendecomposition."""
    t = float(t)
    return Propagator(g=expm_series(1j * t * np.asarray(matrix, dtype=float)), t=t, method="series")


def propagator(params: ModelParams, t: float, spectrum: Spectrum | None = None) -> Propagator:
    """``G(t) = U diag(exp(i w_k t)) U^-1``, or the series result when the
    spectrum is flagged degenerate.

    Pass a precomputed ``spectrum`` to reuse it across many times.
    """
    t = float(t)
    if not math.isfinite(t):
        raise ValueError(f"time must be finite, got {t!r}")
    if spectrum is None:
        spectrum = eigenfrequencies(params)
    if spectrum.degenerate:
        return propagator_series_oracle(build_dynamics_matrix(params), t)
    if t == 0.0:
        return Propagator(g=np.eye(4, dtype=complex), t=t, method="eigendecomposition")
    u = spectrum.vectors
    ud = u * np.exp(1j * spectrum.omegas * t)
    # ud @ inv(u), via a solve with the transpose
    g = np.linalg.solve(u.T, ud.T).T
    # the exact G satisfies G = S conj(G) S; projecting onto that subspace
    # removes part of the eps/gap error of nearly coincident eigenvalues
    g = 0.5 * (g + SWAP @ g.conj() @ SWAP)
    return Propagator(g=g, t=t, method="eigendecomposition")


def evolve_moments(g: Propagator, init: InitialState) -> CovarianceState:
    start = initial_moments(init)
    G = g.g
    return CovarianceState(mean=G @ start.mean, cov=G @ start.cov @ G.T)


def intensity(g: Propagator, alpha: complex) -> IntensityRecord:
    """Normally ordered occupations ``<c†c>`` and ``<a†a>`` at time ``g.t``."""
    G = g.g
    alpha = complex(alpha)
    ac = alpha.conjugate()

    def occupation(i):
        return (abs(G[i, 1]) ** 2 + abs(G[i, 3]) ** 2
                + abs(G[i, 2] * alpha + G[i, 3] * ac) ** 2)

    return IntensityRecord(g.t, float(occupation(0)), float(occupation(2)))


def intensity_from_moments(state: CovarianceState, t: float = 0.0) -> IntensityRecord:
    """Occupations rebuilt from moments: ``<x†x> = cov(x†, x) + |<x>|**2``."""
    m, k = state.mean, state.cov
    i_atom = (k[1, 0] + m[1] * m[0]).real
    i_light = (k[3, 2] + m[3] * m[2]).real
    return IntensityRecord(float(t), float(i_atom), float(i_light))


def intensity_series(params: ModelParams, alpha: complex, t_grid, executor=None) -> list[IntensityRecord]:
    """Intensities on a time grid, each point from its own propagator.

    ``executor`` may be a :class:`concurrent.futures.Executor`; output order
    always follows ``t_grid``.
    """
    spectrum = eigenfrequencies(params)

    def one(t):
        return intensity(propagator(params, t, spectrum), alpha)

    mapper = executor.map if executor is not None else map
    return list(mapper(one, [float(t) for t in t_grid]))
