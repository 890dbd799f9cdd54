"""Optional matplotlib helper shared by the demos."""
import os

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:  # demos still print their numbers
    plt = None

OUT_DIR = os.environ.get("PARAMPLI_DEMO_OUT", "demo_output")


def save(fig, name):
    os.makedirs(OUT_DIR, exist_ok=True)
    path = os.path.join(OUT_DIR, name)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    print(f"wrote {path}")
