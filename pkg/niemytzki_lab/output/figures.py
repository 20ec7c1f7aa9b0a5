"""
Lens figure

Draws the two translated profiles with their height cap, shades the lens
between them and marks the saddle point.
"""
from pathlib import Path
import logging

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from ..core.geometry import LensRegion, saddle_point

logger = logging.getLogger(__name__)

FIGURE_FILE = "figure.svg"

# fixed hash salt and no date keep the SVG bytes reproducible
matplotlib.rcParams["svg.hashsalt"] = "niemytzki-lab"


def lens_figure(lens: LensRegion, path: Path, samples: int = 801) -> Path:
    """
    Render the lens picture to SVG

    Args:
        lens: Lens to draw
        path: Output file
        samples: Points per profile arc

    Returns:
        The written path
    """
    profile = lens.profile
    a_n, cap = profile.half_width, profile.cap
    fig, ax = plt.subplots(figsize=(7, 4))

    for anchor, colour in ((lens.a, "tab:blue"), (lens.b, "tab:orange")):
        xs = np.linspace(-a_n, a_n, samples)
        ax.plot(anchor + xs, profile.evaluate(xs), color=colour, linewidth=1.2,
                label=f"U({anchor:g}, f_{lens.n})")
        ax.hlines(cap, anchor - a_n, anchor + a_n, colors=colour, linestyles="--", linewidth=0.8)
        ax.plot([anchor], [0.0], marker="o", color=colour, markersize=4)

    if not lens.empty:
        us = np.linspace(lens.a, lens.b, samples)[1:-1]
        roof = np.minimum(lens.roof(us), 1.2 * cap)
        ax.fill_between(us, 0.0, roof, color="tab:green", alpha=0.25, label="lens")
        saddle = saddle_point(lens.a, lens.b, lens.family, lens.n)
        ax.plot([saddle[0]], [saddle[1]], marker="x", color="black", markersize=7,
                label="saddle point")

    ax.axhline(0.0, color="black", linewidth=0.8)
    ax.set_xlim(lens.a - 2 * a_n, lens.b + 2 * a_n)
    ax.set_ylim(-0.05 * cap, 1.2 * cap)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_title(f"{lens.family.label}, n={lens.n}, a={lens.a:g}, b={lens.b:g}")
    ax.legend(fontsize=7, loc="upper right")

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    logger.info("wrote %s", path)
    return path
