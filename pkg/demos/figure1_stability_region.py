#!/usr/bin/env python3
"""Map the (l, m) stability region of the reduced bat dynamics.

The velocity weight l and constant frequency m are stable exactly inside
the triangle with corners (-1, 0), (1, 0), (1, 4). This script rasterizes
the default window, writes region.csv, and (if matplotlib is installed)
renders the triangle with the spectral radius as background shading.
"""

from pathlib import Path

import numpy as np

from batopt import rasterize_region

out = Path(__file__).parent / "output"
out.mkdir(exist_ok=True)

raster = rasterize_region(l_range=(-2.0, 2.0), m_range=(-1.0, 5.0), step=0.01)
raster.to_csv(out / "region.csv")

stable = raster.verdict_codes == 0
print(f"grid: {raster.verdict_codes.shape[0]} x {raster.verdict_codes.shape[1]} cells")
print(f"stable cells: {int(stable.sum())} "
      f"(area ~ {stable.mean() * 4 * 6:.2f}, triangle area is 4)")
print(f"wrote {out / 'region.csv'}")

try:
    import matplotlib.pyplot as plt
except ImportError:
    print("matplotlib not installed; skipping the plot")
else:
    fig, ax = plt.subplots(figsize=(7, 4.5))
    extent = (raster.m_values[0], raster.m_values[-1], raster.l_values[0], raster.l_values[-1])
    shading = np.clip(raster.spectral_radius, 0.0, 2.0)
    ax.imshow(shading, origin="lower", extent=extent, aspect="auto", cmap="RdYlGn_r")
    ax.contour(raster.m_values, raster.l_values, stable.astype(float), levels=[0.5], colors="k")
    ax.plot([0, 0, 4, 0], [-1, 1, 1, -1], "b--", lw=1, label="triangle corners")
    ax.set_xlabel("m (constant frequency)")
    ax.set_ylabel("l (velocity weight)")
    ax.set_title("Stable parameter region (spectral radius shading, clipped at 2)")
    ax.legend(loc="upper left")
    fig.tight_layout()
    fig.savefig(out / "region.png", dpi=150)
    print(f"wrote {out / 'region.png'}")
