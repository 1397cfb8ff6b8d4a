"""Figure rendering for sampled grids.

Import-time backend selection keeps this usable on headless machines;
nothing here ever opens a window.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from phaseqm.wigner import WignerGrid


def render_wigner_figure(grid: WignerGrid, path: str, title: str | None = None) -> None:
    """Write a PNG heat map of the grid.

    A diverging colormap centered on zero keeps the negative regions
    visible; they are the point of the picture.
    """
    spec = grid.spec
    limit = float(np.max(np.abs(grid.values))) or 1.0
    fig, ax = plt.subplots(figsize=(6.4, 5.6))
    mesh = ax.imshow(
        grid.values.T,
        origin="lower",
        extent=(spec.q_min, spec.q_max, spec.p_min, spec.p_max),
        cmap="RdBu_r",
        vmin=-limit,
        vmax=limit,
        aspect="auto",
        interpolation="nearest",
    )
    fig.colorbar(mesh, ax=ax, label="W(q, p)")
    ax.set_xlabel("q")
    ax.set_ylabel("p")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
