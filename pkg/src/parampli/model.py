"""Dimensionless parameters and the linear Heisenberg dynamics of the model.

The operator vector is ordered ``x = (c, c†, a, a†)`` where ``c`` is the
excited trap mode and ``a`` the quantized optical mode. Its equation of
motion is ``dx/dt = i M x`` with ``M`` built by :func:`build_dynamics_matrix`.
Time is measured in units of ``1/omega_m``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ParameterError",
    "ConsistencyError",
    "ModelParams",
    "PhysicalInputs",
    "InitialState",
    "SWAP",
    "COMMUTATOR",
    "build_dynamics_matrix",
    "reduce_physical",
]


class ParameterError(ValueError):
    """Raised for parameter values outside the validity domain of the model."""


class ConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree."""


# Permutation c <-> c†, a <-> a†.
SWAP = np.array(
    [[0, 1, 0, 0],
     [1, 0, 0, 0],
     [0, 0, 0, 1],
     [0, 0, 1, 0]], dtype=float)

# C[i, j] = [x_i, x_j]
COMMUTATOR = np.array(
    [[0, 1, 0, 0],
     [-1, 0, 0, 0],
     [0, 0, 0, 1],
     [0, 0, -1, 0]], dtype=float)


def _check_finite(**values):
    for name, v in values.items():
        if not math.isfinite(v):
            raise ParameterError(f"{name} must be finite, got {v!r}")


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless detuning, collision parameter and coupling.

    All three are frequencies divided by the collision-modified trap level
    frequency ``omega_m``.
    """

    delta: float
    kappa: float
    chi: float

    def __post_init__(self):
        for name in ("delta", "kappa", "chi"):
            object.__setattr__(self, name, float(getattr(self, name)))
        _check_finite(delta=self.delta, kappa=self.kappa, chi=self.chi)
        if self.chi < 0:
            raise ParameterError(f"chi must be non-negative, got {self.chi}")
        if self.kappa < 0:
            raise ParameterError(
                f"kappa must be non-negative (repulsive collisions only), got {self.kappa}")
        if self.kappa >= 1:
            raise ParameterError(
                f"kappa={self.kappa} is outside the model validity range [0, 1)")

    @property
    def chi2(self) -> float:
        return self.chi * self.chi


@dataclass(frozen=True)
class PhysicalInputs:
    """Dimensionful inputs, all frequencies in the same inverse-time unit.

    ``collision_overlap`` is the precomputed collision parameter of the
    selected trap level (overlap integral times ``2NU/hbar``), not the bare
    integral.
    """

    n_atoms: float
    coupling_product: float
    optical_matrix_element: float
    collision_overlap: float
    omega_m: float

    def __post_init__(self):
        _check_finite(
            n_atoms=self.n_atoms,
            coupling_product=self.coupling_product,
            optical_matrix_element=self.optical_matrix_element,
            collision_overlap=self.collision_overlap,
            omega_m=self.omega_m,
        )
        if self.omega_m <= 0:
            raise ParameterError(f"omega_m must be positive, got {self.omega_m}")
        if self.n_atoms < 0:
            raise ParameterError(f"n_atoms must be non-negative, got {self.n_atoms}")
        if self.coupling_product < 0:
            raise ParameterError(
                f"coupling_product must be non-negative, got {self.coupling_product}")


@dataclass(frozen=True)
class InitialState:
    """Atomic mode in vacuum, optical mode in the coherent state ``|alpha>``."""

    alpha: complex = 0j

    def __post_init__(self):
        a = complex(self.alpha)
        _check_finite(alpha_re=a.real, alpha_im=a.imag)
        object.__setattr__(self, "alpha", a)


def build_dynamics_matrix(params: ModelParams) -> np.ndarray:
    """Return the real 4x4 matrix ``M`` with ``dx/dt = i M x``."""
    d, k, g = params.delta, params.kappa, params.chi
    return np.array(
        [[-1.0, -k, -g, -g],
         [k, 1.0, g, g],
         [-g, -g, -d, 0.0],
         [g, g, 0.0, d]])


def reduce_physical(inputs: PhysicalInputs, detuning: float = 0.0) -> ModelParams:
    """Convert physical inputs to dimensionless :class:`ModelParams`.

    ``detuning`` is the optical detuning ``omega_1 - omega_2`` in the same
    unit as ``omega_m``. The effective coupling is
    ``sqrt(N) |A_0m| |g1 g2 a2 / Delta| / omega_m``.
    """
    _check_finite(detuning=detuning)
    w = inputs.omega_m
    chi = math.sqrt(inputs.n_atoms) * abs(inputs.optical_matrix_element) * inputs.coupling_product / w
    kappa = inputs.collision_overlap / w
    return ModelParams(delta=detuning / w, kappa=kappa, chi=chi)
