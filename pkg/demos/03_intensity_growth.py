"""Light intensity above threshold: exponential growth at rate 2*Gamma.

Collisions lower the growth rate, which shows up as a smaller late-time
slope of log I.
"""
import numpy as np

from _plot import plt, save
from parampli import ModelParams, eigenfrequencies, growth_rate, intensity_series

t = np.linspace(0.0, 15.0, 1500)
late = t >= 10.0
curves = {}

for k in (0.0, 0.4, 0.8):
    p = ModelParams(delta=0.5, kappa=k, chi=1.0)
    i_light = np.array([r.i_light for r in intensity_series(p, 2.0, t)])
    slope = np.polyfit(t[late], np.log(i_light[late]), 1)[0]
    gamma = growth_rate(eigenfrequencies(p))
    print(f"kappa={k}: fitted slope {slope:.5f}, 2*Gamma {2 * gamma:.5f}")
    curves[k] = i_light

if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 4))
    for k, i_light in curves.items():
        ax.semilogy(t, i_light, label=f"kappa = {k}")
    ax.set_xlabel("t")
    ax.set_ylabel("I light")
    ax.legend()
    save(fig, "intensity.png")
