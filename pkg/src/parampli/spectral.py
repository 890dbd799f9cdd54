"""Eigenfrequencies and eigenvectors of the dynamics matrix.

The characteristic polynomial of ``M`` is even,

    det(M - w I) = w**4 + b w**2 + c,
    b = -(delta**2 + 1 - kappa**2),
    c = delta**2 (1 - kappa**2) - 4 delta chi**2 (1 - kappa),

so the spectrum follows from one quadratic in ``z = w**2``. Eigenvectors are
obtained from the null space of ``M - w I`` by Gaussian elimination with
complete pivoting. :func:`numeric_spectrum_oracle` is an independent dense
eigensolver used only for cross-checking.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .model import ModelParams, build_dynamics_matrix

__all__ = [
    "DEGENERACY_TOL",
    "CharPoly",
    "Spectrum",
    "char_poly",
    "quadratic_roots",
    "frequencies",
    "eigenfrequencies",
    "null_space",
    "numeric_spectrum_oracle",
    "multiset_distance",
]

# Below this eigenvalue gap the eigenvector matrix is treated as unusable.
DEGENERACY_TOL = 1e-6


@dataclass(frozen=True)
class CharPoly:
    """Coefficients of ``p(w) = w**4 + b w**2 + c``."""

    b: float
    c: float

    def __call__(self, omega):
        w2 = omega * omega
        return w2 * w2 + self.b * w2 + self.c

    @property
    def discriminant(self) -> float:
        return self.b * self.b - 4.0 * self.c


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Four eigenfrequencies in canonical order with matching eigenvectors.

    ``vectors[:, k]`` is the unit-norm eigenvector for ``omegas[k]``.
    ``degenerate`` is set when ``gap < DEGENERACY_TOL``; the vectors are then
    not a reliable basis.
    """

    omegas: np.ndarray
    vectors: np.ndarray
    gap: float
    degenerate: bool


def char_poly(params: ModelParams) -> CharPoly:
    d2 = params.delta * params.delta
    k = params.kappa
    b = -(d2 + 1.0 - k * k)
    c = d2 * (1.0 - k * k) - 4.0 * params.delta * params.chi2 * (1.0 - k)
    return CharPoly(b=b, c=c)


def quadratic_roots(b: float, c: float) -> tuple[complex, complex]:
    """Roots of ``z**2 + b z + c`` without cancellation in the small root."""
    disc = b * b - 4.0 * c
    if disc >= 0.0:
        s = math.sqrt(disc)
        q = -0.5 * (b + math.copysign(s, b))
        if q == 0.0:
            return 0j, 0j
        return complex(q), complex(c / q)
    s = math.sqrt(-disc)
    return complex(-0.5 * b, 0.5 * s), complex(-0.5 * b, -0.5 * s)


def _canonical_key(w: complex):
    scale = 1e-12 * max(1.0, abs(w))
    if w.imag > scale:
        group = 0
    elif w.imag < -scale:
        group = 2
    else:
        group = 1
    return (group, w.real, w.imag)


def null_space(a: np.ndarray, rank_tol: float = 1e-9, max_rank: int | None = None) -> np.ndarray:
    """Null-space basis of a square matrix via complete-pivoting elimination.

    Pivots smaller than ``rank_tol`` times the largest entry terminate the
    elimination. The rank is capped at ``max_rank`` (default ``n - 1``) so at
    least one basis vector is always returned. Columns of the result span the
    null space.
    """
    u = np.array(a, dtype=complex)
    n = u.shape[0]
    if max_rank is None:
        max_rank = n - 1
    cols = list(range(n))
    scale = np.abs(u).max()
    if scale == 0.0:
        return np.eye(n, dtype=complex)
    rank = 0
    for k in range(min(n, max_rank)):
        sub = np.abs(u[k:, k:])
        i, j = np.unravel_index(np.argmax(sub), sub.shape)
        if sub[i, j] <= rank_tol * scale:
            break
        i += k
        j += k
        u[[k, i]] = u[[i, k]]
        u[:, [k, j]] = u[:, [j, k]]
        cols[k], cols[j] = cols[j], cols[k]
        factors = u[k + 1:, k] / u[k, k]
        u[k + 1:, k:] -= np.outer(factors, u[k, k:])
        rank += 1

    basis = np.zeros((n, n - rank), dtype=complex)
    for f in range(n - rank):
        y = np.zeros(n, dtype=complex)
        y[rank + f] = 1.0
        for r in range(rank - 1, -1, -1):
            y[r] = -(u[r, r + 1:] @ y[r + 1:]) / u[r, r]
        x = np.empty(n, dtype=complex)
        x[cols] = y
        basis[:, f] = x
    return basis


def _normalize(v: np.ndarray) -> np.ndarray:
    v = v / np.linalg.norm(v)
    mags = np.abs(v)
    first = int(np.argmax(mags > 1e-12 * mags.max()))
    return v * (abs(v[first]) / v[first])


def frequencies(params: ModelParams) -> np.ndarray:
    """Closed-form eigenfrequencies in canonical order, without eigenvectors.

    Each root ``z`` of the quadratic in ``w**2`` contributes the pair
    ``w = +sqrt(z), -sqrt(z)`` (principal branch first).
    """
    poly = char_poly(params)
    omegas = []
    for z in quadratic_roots(poly.b, poly.c):
        r = cmath.sqrt(z)
        omegas.extend((r, -r))
    omegas.sort(key=_canonical_key)
    return np.array(omegas, dtype=complex)


def eigenfrequencies(params: ModelParams) -> Spectrum:
    """Closed-form spectrum of the dynamics matrix with eigenvectors."""
    omegas = frequencies(params)

    gap = min(abs(omegas[i] - omegas[j]) for i, j in itertools.combinations(range(4), 2))
    degenerate = gap < DEGENERACY_TOL

    m = build_dynamics_matrix(params)
    vectors = np.empty((4, 4), dtype=complex)
    if not degenerate:
        for k, w in enumerate(omegas):
            v = null_space(m - w * np.eye(4), max_rank=3)[:, 0]
            vectors[:, k] = _normalize(v)
    else:
        # Clusters of coincident eigenvalues share a null space; hand out its
        # basis vectors in turn (repeating the last one if the matrix is defective).
        done = np.zeros(4, dtype=bool)
        for k in range(4):
            if done[k]:
                continue
            cluster = [j for j in range(k, 4) if not done[j] and abs(omegas[j] - omegas[k]) < DEGENERACY_TOL]
            basis = null_space(m - omegas[k] * np.eye(4), rank_tol=1e-7)
            for n, j in enumerate(cluster):
                vectors[:, j] = _normalize(basis[:, min(n, basis.shape[1] - 1)])
                done[j] = True
    return Spectrum(omegas=omegas, vectors=vectors, gap=float(gap), degenerate=bool(degenerate))


def numeric_spectrum_oracle(matrix: np.ndarray) -> np.ndarray:
    """Eigenvalues of a dense matrix by LAPACK's shifted QR iteration.

    Shares no code with :func:`eigenfrequencies`; returned unordered.
    """
    matrix = np.asarray(matrix, dtype=float)
    try:
        return np.linalg.eigvals(matrix).astype(complex)
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(f"eigenvalue iteration did not converge: {exc}") from exc


def multiset_distance(a, b) -> float:
    """Smallest over matchings of the largest pairwise distance between two
    equally sized multisets of complex numbers."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError("multisets must have the same size")
    return min(float(np.max(np.abs(a - b[list(p)]))) for p in itertools.permutations(range(len(b))))
