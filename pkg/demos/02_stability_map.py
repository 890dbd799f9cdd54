"""Instability boundary chi^2_c(delta) for several collision strengths.

Each curve is traced twice, from the closed-form threshold and by bisection
on the numerically computed growth rate, and the two must agree.
"""
import numpy as np

from _plot import plt, save
from parampli import trace_boundary

curves = {k: trace_boundary(k, -3.0, 1.0, 400) for k in (0.0, 0.4, 0.8)}

for k, c in curves.items():
    gap = np.nanmax(np.abs(np.asarray(c.chi2_analytic) - np.asarray(c.chi2_bisect)))
    i = int(np.argmin(c.chi2_analytic))
    print(f"kappa={k}: min threshold {c.chi2_analytic[i]:.2e} at delta={c.delta[i]:+.3f}, "
          f"analytic vs bisection max diff {gap:.1e}")

# collisions push the region II lobe towards delta = -sqrt(1 - kappa^2)
for k in (0.0, 0.4, 0.8):
    print(f"  lobe centre for kappa={k}: {-np.sqrt(1 - k * k):+.4f}")

if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 4))
    for k, c in curves.items():
        ax.plot(c.delta, c.chi2_analytic, label=f"kappa = {k}")
    ax.set_xlabel("delta")
    ax.set_ylabel("chi^2 threshold")
    ax.set_ylim(0, 1.5)
    ax.legend()
    save(fig, "stability_map.png")
