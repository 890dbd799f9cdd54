"""Atom-photon entanglement coefficient Y(t).

In region I Y climbs to 1 and collisions barely matter at long times. In
region II it settles into an oscillation well below 1, and the collision
strength controls how large that oscillation is. Y does not depend on the
amplitude or phase of the initial coherent light.
"""
import numpy as np

from _plot import plt, save
from parampli import (InitialState, ModelParams, entanglement_series, evolve_moments, propagator,
                      window_stats, y_from_covariances)

t = np.linspace(0.0, 15.0, 1501)
series = {}
for delta in (0.5, -1.0):
    for k in (0.0, 0.4, 0.8):
        series[delta, k] = entanglement_series(ModelParams(delta, k, 1.0), t)

print("region I, delta=0.5:")
for k in (0.0, 0.8):
    print(f"  kappa={k}: 1 - Y(15) = {1 - series[0.5, k][-1].y:.2e}")

print("region II, delta=-1 (window t in [10, 15]):")
for k in (0.0, 0.4, 0.8):
    mean, amp = window_stats(series[-1.0, k], 10.0, 15.0)
    print(f"  kappa={k}: mean {mean:.4f}, amplitude {amp:.4f}")

g = propagator(ModelParams(-1.0, 0.4, 1.0), 7.0)
ys = [y_from_covariances(evolve_moments(g, InitialState(a))) for a in (0, 2, 10, 2j)]
print("Y at t=7 for alpha in (0, 2, 10, 2i):", np.round(ys, 14))

if plt is not None:
    fig, axes = plt.subplots(1, 2, figsize=(10, 4), sharey=True)
    for ax, delta in zip(axes, (0.5, -1.0)):
        for k in (0.0, 0.4, 0.8):
            ax.plot(t, [r.y for r in series[delta, k]], label=f"kappa = {k}")
        ax.set_title(f"delta = {delta}")
        ax.set_xlabel("t")
    axes[0].set_ylabel("Y")
    axes[0].legend()
    save(fig, "entanglement.png")
