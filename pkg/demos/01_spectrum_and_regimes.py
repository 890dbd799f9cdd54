"""Eigenfrequencies of the linearised atom-light system and the three regimes.

Below threshold all four eigenfrequencies are real and the fields just beat.
For positive detuning a pair turns purely imaginary (one growing mode); for
negative detuning all four become complex (two growing modes rotating in
opposite directions).
"""
import numpy as np

from parampli import (ModelParams, build_dynamics_matrix, classify_analytic, classify_spectral,
                     eigenfrequencies, multiset_distance, numeric_spectrum_oracle,
                     threshold_chi_squared)

np.set_printoptions(precision=6, suppress=True)

cases = {
    "stable": ModelParams(delta=0.5, kappa=0.0, chi=0.3),
    "region I": ModelParams(delta=0.5, kappa=0.0, chi=1.0),
    "region II": ModelParams(delta=-1.0, kappa=0.0, chi=1.0),
    "region II, collisions": ModelParams(delta=-1.0, kappa=0.8, chi=1.0),
}

for name, p in cases.items():
    spec = eigenfrequencies(p)
    regime = classify_spectral(spec)
    print(f"--- {name}: delta={p.delta}, kappa={p.kappa}, chi={p.chi}")
    print("  omegas      :", spec.omegas)
    print(f"  regime      : {regime.tag.value} (analytic: {classify_analytic(p).tag.value})")
    print(f"  Omega, Gamma: {regime.omega_rot:.6f}, {regime.gamma:.6f}")
    print(f"  threshold   : chi^2_c = {threshold_chi_squared(p.delta, p.kappa):.6f}")

    # closed form against LAPACK
    ref = numeric_spectrum_oracle(build_dynamics_matrix(p))
    print(f"  |closed form - eigvals| = {multiset_distance(spec.omegas, ref):.2e}")

# eigenvalues collide at the threshold: the matrix is defective there
p = ModelParams(delta=1.0, kappa=0.0, chi=0.5)
print("\nexactly at threshold (delta=1, chi^2=0.25):", classify_analytic(p).tag.value)
print("  degenerate spectrum flagged:", eigenfrequencies(p).degenerate)
