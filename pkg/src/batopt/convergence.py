"""Empirical global-convergence checks for the bat engine.

Two runtime checks mirror the classical sufficient conditions for global
convergence of a stochastic search: the best-fitness sequence must be
non-increasing, and the probability of having visited the near-optimal
region {x : f(x) < theta + epsilon} must accumulate toward one. The first
is checked directly on run traces; the second is estimated over independent
seeded replicas as a per-iteration hit fraction. A finite-horizon curve can
only evidence the limit trend, never prove it, and is reported as such.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .benchmarks import ObjectiveSpec
from .engine import BaParams, RunTrace, SwarmState, run

__all__ = [
    "ConvergenceTarget",
    "MonotoneCheck",
    "HitProbabilityCurve",
    "CURVE_HEADER",
    "check_monotone",
    "optimal_state_hit",
    "estimate_hit_probability",
]

CURVE_HEADER = "t,hit_fraction"


@dataclass(frozen=True)
class ConvergenceTarget:
    """Near-optimal region definition: hit iff f(x) < theta + epsilon.

    theta is the known essential infimum of the objective (0 for the whole
    benchmark suite). The alternative cutoff M applies only when theta is
    -inf (hit iff f(x) < M); it is carried for completeness but unused by
    the suite.
    """

    theta: float = 0.0
    epsilon: float = 1e-2
    M: float | None = None

    def __post_init__(self):
        if not self.epsilon > 0.0:
            raise ValueError(f"epsilon must be > 0, got {self.epsilon}")
        if math.isinf(self.theta) and self.theta < 0:
            if self.M is None or not self.M < 0.0:
                raise ValueError("theta = -inf requires a negative cutoff M")
        elif not math.isfinite(self.theta):
            raise ValueError(f"theta must be finite or -inf, got {self.theta}")

    def hit(self, fitness: float) -> bool:
        if math.isinf(self.theta):
            return fitness < self.M
        return fitness < self.theta + self.epsilon


@dataclass(frozen=True)
class MonotoneCheck:
    passed: bool
    first_violation: int | None = None


def check_monotone(trace) -> MonotoneCheck:
    """Check that the best-fitness sequence never increases.

    Accepts a RunTrace or any sequence of fitness values. On failure,
    ``first_violation`` is the index of the first record that exceeds its
    predecessor.
    """
    best = np.asarray(getattr(trace, "best_fitness", trace), dtype=float)
    if best.size == 0:
        raise ValueError("empty trace")
    worse = np.flatnonzero(np.diff(best) > 0)
    if worse.size:
        return MonotoneCheck(passed=False, first_violation=int(worse[0]) + 1)
    return MonotoneCheck(passed=True)


def optimal_state_hit(swarm: SwarmState, target: ConvergenceTarget) -> bool:
    """Whether the swarm has reached the near-optimal region.

    The swarm is in the optimal group-state set iff at least one individual
    history contains a near-optimal point, and the tracked best position is
    exactly that witness.
    """
    return target.hit(swarm.best_fitness)


@dataclass
class HitProbabilityCurve:
    """Per-iteration fraction of replicas whose best fitness is a hit.

    ``first_hit`` holds each replica's first hit iteration (None = never).
    The curve is non-decreasing because best fitness is non-increasing
    within every replica.
    """

    iterations: np.ndarray
    hit_fraction: np.ndarray
    replicas: int
    first_hit: list[int | None]
    target: ConvergenceTarget

    @property
    def final_fraction(self) -> float:
        return float(self.hit_fraction[-1])

    def median_first_hit(self) -> float | None:
        """Median first-hit iteration over replicas; None if the median replica never hits."""
        values = [math.inf if fh is None else fh for fh in self.first_hit]
        med = float(np.median(values))
        return None if math.isinf(med) else med

    def summary(self) -> dict:
        return {
            "replicas": self.replicas,
            "epsilon": self.target.epsilon,
            "theta": self.target.theta,
            "final_hit_fraction": self.final_fraction,
            "median_first_hit": self.median_first_hit(),
        }

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            fh.write(CURVE_HEADER + "\n")
            for t, frac in zip(self.iterations, self.hit_fraction):
                fh.write(f"{int(t)},{float(frac)!r}\n")

    @classmethod
    def from_csv(cls, path, target: ConvergenceTarget | None = None) -> "HitProbabilityCurve":
        with open(path, newline="") as fh:
            header = fh.readline().strip()
            if header != CURVE_HEADER:
                raise ValueError(f"unexpected curve header {header!r}")
            ts, fracs = [], []
            for line in fh:
                t, frac = line.strip().split(",")
                ts.append(int(t))
                fracs.append(float(frac))
        return cls(
            iterations=np.array(ts),
            hit_fraction=np.array(fracs),
            replicas=0,
            first_hit=[],
            target=target if target is not None else ConvergenceTarget(),
        )


def _replica_trace(args) -> RunTrace:
    spec, params, replica_seed = args
    return run(spec, replace(params, seed=replica_seed))


def estimate_hit_probability(
    spec: ObjectiveSpec,
    params: BaParams,
    target: ConvergenceTarget,
    replicas: int,
    jobs: int = 1,
) -> HitProbabilityCurve:
    """Monte-Carlo estimate of the hit probability per iteration.

    Replica i runs the engine with seed params.seed + i; replicas are
    independent, and the reduction is in replica order so concurrency never
    changes the result.
    """
    if replicas < 1:
        raise ValueError(f"replicas must be >= 1, got {replicas}")
    work = [(spec, params, params.seed + i) for i in range(replicas)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            traces = list(pool.map(_replica_trace, work))
    else:
        traces = [_replica_trace(w) for w in work]

    best = np.vstack([trace.best_fitness for trace in traces])  # (R, t_max+1)
    hits = best < (target.M if math.isinf(target.theta) else target.theta + target.epsilon)
    hit_fraction = hits.mean(axis=0)

    first_hit: list[int | None] = []
    for row in hits:
        idx = np.flatnonzero(row)
        first_hit.append(int(idx[0]) if idx.size else None)

    return HitProbabilityCurve(
        iterations=traces[0].iterations.copy(),
        hit_fraction=hit_fraction,
        replicas=replicas,
        first_hit=first_hit,
        target=target,
    )
