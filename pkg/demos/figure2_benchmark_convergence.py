#!/usr/bin/env python3
"""Convergence of the bat algorithm on all nine benchmarks.

Runs each function at D=30 with population 12 for 500 iterations using the
stable settings (frequency scale m=2, inertia l=0.5), writes one trace CSV
per function, and overlays the best-fitness curves on a log scale if
matplotlib is available. Raw traces are emitted as-is; the log scale is a
plotting choice.
"""

from pathlib import Path

from batopt import list_suite, map_ml_params, run

out = Path(__file__).parent / "output"
out.mkdir(exist_ok=True)

params = map_ml_params(2.0, 0.5)  # n=12, t_max=500 defaults
traces = {}
for spec in list_suite(dimension=30):
    trace = run(spec, params)
    traces[spec.name] = trace
    trace.to_csv(out / f"trace_{spec.name.lower()}.csv")
    first, last = trace.best_fitness[0], trace.best_fitness[-1]
    print(f"{spec.name:12s} best {first:12.5g} -> {last:12.5g} "
          f"(improvement x{first / last if last else float('inf'):.3g})")

try:
    import matplotlib.pyplot as plt
except ImportError:
    print("matplotlib not installed; skipping the plot")
else:
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for name, trace in traces.items():
        ax.semilogy(trace.iterations, trace.best_fitness, label=name, lw=1.2)
    ax.set_xlabel("iteration")
    ax.set_ylabel("best fitness (log scale)")
    ax.set_title("Benchmark convergence, stable settings (m=2, l=0.5)")
    ax.legend(ncol=3, fontsize=8)
    fig.tight_layout()
    fig.savefig(out / "benchmark_convergence.png", dpi=150)
    print(f"wrote {out / 'benchmark_convergence.png'}")
