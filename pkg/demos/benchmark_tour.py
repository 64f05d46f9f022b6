#!/usr/bin/env python3
"""A quick tour of the nine benchmark objectives.

Prints each function's search box and value at a few landmark points:
the known minimizer, the box corner, and a random interior point. The
Quartic function is stochastic, so its evaluation takes an explicit
random generator and two draws at the same point differ by the noise term.
"""

import numpy as np

from batopt import evaluate, evaluate_deterministic, list_suite

rng = np.random.default_rng(0)

print(f"{'function':12s} {'box':>18s} {'f(min)':>10s} {'f(corner)':>12s} {'f(random)':>12s}")
for spec in list_suite(dimension=30):
    corner = np.full(spec.dimension, spec.upper_bound)
    random_point = rng.uniform(spec.lower_bound, spec.upper_bound, spec.dimension)
    at_min = evaluate_deterministic(spec, spec.known_minimizer)
    at_corner = evaluate(spec, corner, rng)
    at_random = evaluate(spec, random_point, rng)
    box = f"[{spec.lower_bound:.5g}, {spec.upper_bound:.5g}]"
    print(f"{spec.name:12s} {box:>18s} {at_min:10.4g} {at_corner:12.4g} {at_random:12.4g}")

quartic = next(s for s in list_suite(2) if s.stochastic)
print(f"\n{quartic.name} is stochastic: two evaluations at the origin give "
      f"{evaluate(quartic, np.zeros(2), rng):.4f} and {evaluate(quartic, np.zeros(2), rng):.4f} "
      "(deterministic part is 0, the rest is uniform noise).")
