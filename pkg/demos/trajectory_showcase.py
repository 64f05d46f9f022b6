#!/usr/bin/env python3
"""Trajectories of the reduced (x, v) system for three parameter regimes.

Inside the stability triangle the iterates spiral into the fixed point
(x, v) = (p, 0); on the boundary they orbit without decaying; outside they
blow up. The same scalar recursion underlies every coordinate of the full
optimizer, which is why the triangle predicts good parameter choices.
"""

from pathlib import Path

from batopt import DynamicParams, first_convergence_iteration, iterate_trajectory, region_verdict

out = Path(__file__).parent / "output"
out.mkdir(exist_ok=True)

cases = [
    ("stable", DynamicParams(l=0.5, m=2.0, p=1.0)),
    ("marginal", DynamicParams(l=-1.0, m=0.0, p=1.0)),
    ("unstable", DynamicParams(l=4.0, m=-3.0, p=1.0)),
]

trajectories = {}
for label, params in cases:
    report = region_verdict(params.l, params.m)
    traj = iterate_trajectory(params, x0=0.0, v0=0.0, k_max=120)
    trajectories[label] = traj
    traj.to_csv(out / f"trajectory_{label}.csv")
    k_conv = first_convergence_iteration(traj)
    lam1, lam2 = report.eigenvalues
    outcome = (f"converged at k={k_conv}" if k_conv is not None
               else f"no convergence, final |x| = {abs(traj.x[-1]):.3g}")
    print(f"{label:9s} l={params.l:5.2f} m={params.m:5.2f}  "
          f"verdict={report.verdict:9s} rho={report.spectral_radius:7.4f}  "
          f"eigenvalues {lam1:.4f}, {lam2:.4f}  {outcome}")

try:
    import matplotlib.pyplot as plt
except ImportError:
    print("matplotlib not installed; skipping the plot")
else:
    fig, axes = plt.subplots(1, 3, figsize=(12, 3.6))
    for ax, (label, params) in zip(axes, cases):
        traj = trajectories[label]
        ax.plot(traj.k, traj.x, lw=1.2)
        ax.axhline(params.p, color="k", ls=":", lw=0.8)
        ax.set_title(f"{label}: l={params.l}, m={params.m}")
        ax.set_xlabel("k")
        ax.set_ylabel("x")
        if label == "unstable":
            ax.set_yscale("symlog")
    fig.tight_layout()
    fig.savefig(out / "trajectories.png", dpi=150)
    print(f"wrote {out / 'trajectories.png'}")
