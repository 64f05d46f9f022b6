"""Standard bat algorithm with per-seed deterministic run traces.

Each bat carries a position, a velocity, a loudness A and a pulse emission
rate r. One iteration moves every bat by frequency-tuned velocity/position
updates toward the global best p, optionally replaces the move by a local
random walk around p scaled by the swarm's mean loudness, and accepts the
candidate into the bat with probability controlled by its loudness. Accepted
moves decay the bat's loudness geometrically (A <- alpha*A) and raise its
pulse rate along the saturating schedule r(t) = r0*(1 - exp(-gamma*t)).
The global best is replaced only by strictly better candidates, so the best
fitness sequence is non-increasing by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .benchmarks import ObjectiveSpec, evaluate

__all__ = [
    "BaParams",
    "BatState",
    "SwarmState",
    "RunTrace",
    "TRACE_HEADER",
    "map_ml_params",
    "init_swarm",
    "draw_frequency",
    "update_velocity",
    "update_position",
    "local_search",
    "update_loudness_and_rate",
    "maybe_update_best",
    "step",
    "run",
]

TRACE_HEADER = "iteration,best_fitness,mean_fitness,mean_loudness,mean_pulse_rate"


@dataclass(frozen=True)
class BaParams:
    """All tunables of one bat-algorithm run.

    ``v_clamp`` of None means "use the objective's box width"; velocities are
    clipped to [-v_clamp, +v_clamp] componentwise. ``omega`` is normally in
    (0, 1] but deliberately unconstrained so the unstable parameter regime
    can be reproduced.
    """

    f_min: float = 0.0
    f_max: float = 2.0
    omega: float = 0.9
    alpha: float = 0.9
    gamma: float = 0.9
    A0: float = 1.0
    r0: float = 0.5
    n: int = 12
    t_max: int = 500
    v_clamp: float | None = None
    seed: int = 0

    def __post_init__(self):
        self.validate()

    def validate(self):
        if not self.f_min <= self.f_max:
            raise ValueError(f"f_min must be <= f_max, got [{self.f_min}, {self.f_max}]")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must be in (0, 1), got {self.alpha}")
        if not self.gamma > 0.0:
            raise ValueError(f"gamma must be > 0, got {self.gamma}")
        if self.n < 1:
            raise ValueError(f"population size n must be >= 1, got {self.n}")
        if self.t_max < 1:
            raise ValueError(f"t_max must be >= 1, got {self.t_max}")
        if not (math.isfinite(self.omega) and self.omega > 0.0):
            raise ValueError(f"omega must be a positive finite real, got {self.omega}")
        if self.A0 < 0.0:
            raise ValueError(f"A0 must be >= 0, got {self.A0}")
        if not 0.0 <= self.r0 <= 1.0:
            raise ValueError(f"r0 must be in [0, 1], got {self.r0}")
        if self.v_clamp is not None and not self.v_clamp >= 0.0:
            raise ValueError(f"v_clamp must be >= 0, got {self.v_clamp}")
        if self.seed < 0:
            raise ValueError(f"seed must be a nonnegative integer, got {self.seed}")

    def resolve_v_clamp(self, spec: ObjectiveSpec) -> float:
        return self.v_clamp if self.v_clamp is not None else spec.upper_bound - spec.lower_bound


def map_ml_params(m: float, l: float, base: BaParams | None = None) -> BaParams:
    """Translate the reduced-model pair (m, l) into engine parameters.

    m is a frequency-scale setting: the frequency range becomes
    [min(0, m), max(0, m)], so draws average m/2. l becomes the inertia
    weight omega. Remaining fields are taken from ``base``.
    """
    base = base if base is not None else BaParams()
    return replace(base, f_min=min(0.0, m), f_max=max(0.0, m), omega=l)


@dataclass
class BatState:
    """One bat: position/velocity vectors, loudness, pulse rate, fitness."""

    position: np.ndarray
    velocity: np.ndarray
    loudness: float
    pulse_rate: float
    fitness: float


@dataclass
class SwarmState:
    bats: list[BatState]
    best_position: np.ndarray
    best_fitness: float
    iteration: int = 0

    def mean_loudness(self) -> float:
        return float(np.mean([b.loudness for b in self.bats]))

    def mean_pulse_rate(self) -> float:
        return float(np.mean([b.pulse_rate for b in self.bats]))

    def mean_fitness(self) -> float:
        return float(np.mean([b.fitness for b in self.bats]))


@dataclass
class RunTrace:
    """Column-oriented per-iteration record of one run (row 0 = initialization)."""

    iterations: np.ndarray
    best_fitness: np.ndarray
    mean_fitness: np.ndarray
    mean_loudness: np.ndarray
    mean_pulse_rate: np.ndarray
    final_swarm: SwarmState | None = None

    def __len__(self) -> int:
        return len(self.iterations)

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            fh.write(TRACE_HEADER + "\n")
            for t, best, mean, loud, rate in zip(
                self.iterations,
                self.best_fitness,
                self.mean_fitness,
                self.mean_loudness,
                self.mean_pulse_rate,
            ):
                fh.write(f"{int(t)},{float(best)!r},{float(mean)!r},{float(loud)!r},{float(rate)!r}\n")

    @classmethod
    def from_csv(cls, path) -> "RunTrace":
        with open(path, newline="") as fh:
            header = fh.readline().strip()
            if header != TRACE_HEADER:
                raise ValueError(f"unexpected trace header {header!r}")
            cols = [[], [], [], [], []]
            for line in fh:
                parts = line.strip().split(",")
                if len(parts) != 5:
                    raise ValueError(f"malformed trace row {line!r}")
                for col, part in zip(cols, parts):
                    col.append(part)
        return cls(
            iterations=np.array([int(v) for v in cols[0]]),
            best_fitness=np.array([float(v) for v in cols[1]]),
            mean_fitness=np.array([float(v) for v in cols[2]]),
            mean_loudness=np.array([float(v) for v in cols[3]]),
            mean_pulse_rate=np.array([float(v) for v in cols[4]]),
        )


def _safe_fitness(spec: ObjectiveSpec, x: np.ndarray, rng: np.random.Generator) -> float:
    # non-finite objective values are treated as +inf: never accepted, never best
    value = evaluate(spec, x, rng)
    return value if math.isfinite(value) else math.inf


def init_swarm(spec: ObjectiveSpec, params: BaParams, rng: np.random.Generator) -> SwarmState:
    """Uniform random positions in the box, zero velocities, A = A0, r = 0.

    The initial pulse rate is 0 because the schedule r(t) = r0*(1 - exp(-gamma*t))
    starts at t = 0. The global best is the argmin over initial positions.
    """
    positions = rng.uniform(spec.lower_bound, spec.upper_bound, size=(params.n, spec.dimension))
    bats = []
    for i in range(params.n):
        x = positions[i].copy()
        bats.append(
            BatState(
                position=x,
                velocity=np.zeros(spec.dimension),
                loudness=params.A0,
                pulse_rate=0.0,
                fitness=_safe_fitness(spec, x, rng),
            )
        )
    best_idx = int(np.argmin([b.fitness for b in bats]))
    return SwarmState(
        bats=bats,
        best_position=bats[best_idx].position.copy(),
        best_fitness=bats[best_idx].fitness,
        iteration=0,
    )


def draw_frequency(params: BaParams, rng: np.random.Generator) -> float:
    """f = f_min + (f_max - f_min) * beta with beta uniform on [0, 1]."""
    return params.f_min + (params.f_max - params.f_min) * float(rng.random())


def update_velocity(v, x, p, omega: float, freq: float, v_clamp: float | None = None):
    """v' = omega*v + (p - x)*freq, clipped to [-v_clamp, +v_clamp] if given."""
    v = np.asarray(v, dtype=float)
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    if not (v.shape == x.shape == p.shape):
        raise ValueError(f"shape mismatch: v{v.shape}, x{x.shape}, p{p.shape}")
    v_next = omega * v + (p - x) * freq
    if v_clamp is not None:
        v_next = np.clip(v_next, -v_clamp, v_clamp)
    return v_next


def update_position(x, v_next, lower: float | None = None, upper: float | None = None):
    """x' = x + v', clipped to the box when bounds are given."""
    x_next = np.asarray(x, dtype=float) + np.asarray(v_next, dtype=float)
    if lower is not None or upper is not None:
        x_next = np.clip(x_next, lower, upper)
    return x_next


def local_search(
    x_old,
    mean_loudness: float,
    rng: np.random.Generator,
    lower: float | None = None,
    upper: float | None = None,
):
    """Random walk around ``x_old``: one uniform eps in [-1, 1] per component,
    step eps * mean_loudness, clipped to the box when bounds are given."""
    if mean_loudness < 0.0:
        raise ValueError(f"mean loudness must be >= 0, got {mean_loudness}")
    x_old = np.asarray(x_old, dtype=float)
    x_new = x_old + rng.uniform(-1.0, 1.0, size=x_old.shape) * mean_loudness
    if lower is not None or upper is not None:
        x_new = np.clip(x_new, lower, upper)
    return x_new


def update_loudness_and_rate(bat: BatState, params: BaParams, t: int) -> BatState:
    """A <- alpha*A and r <- r0*(1 - exp(-gamma*t)).

    The pulse rate is the closed form in the iteration counter t (not an
    incremental update), so a bat's r depends only on the iteration of its
    most recent accepted move.
    """
    if t < 0:
        raise ValueError(f"iteration counter must be >= 0, got {t}")
    return replace(
        bat,
        loudness=params.alpha * bat.loudness,
        pulse_rate=params.r0 * (1.0 - math.exp(-params.gamma * t)),
    )


def maybe_update_best(p_old, f_old: float, candidate, f_cand: float):
    """Greedy best tracking: adopt the candidate iff strictly better.

    Equal-fitness candidates never replace the incumbent. NaN fitness is a
    poisoned comparison and raises.
    """
    if math.isnan(f_old) or math.isnan(f_cand):
        raise ValueError("NaN fitness in best-position update")
    if f_cand < f_old:
        return candidate, f_cand
    return p_old, f_old


def step(
    swarm: SwarmState, spec: ObjectiveSpec, params: BaParams, rng: np.random.Generator
) -> SwarmState:
    """Advance the swarm by one iteration.

    Bats are processed sequentially, so a best-position improvement found by
    one bat immediately attracts the bats after it within the same iteration.
    """
    lower, upper = spec.lower_bound, spec.upper_bound
    v_clamp = params.resolve_v_clamp(spec)
    t_next = swarm.iteration + 1
    mean_a = swarm.mean_loudness()

    best_p = swarm.best_position
    best_f = swarm.best_fitness
    new_bats = []
    for bat in swarm.bats:
        freq = draw_frequency(params, rng)
        v_next = update_velocity(bat.velocity, bat.position, best_p, params.omega, freq, v_clamp)
        candidate = update_position(bat.position, v_next, lower, upper)
        if rng.random() > bat.pulse_rate:
            candidate = local_search(best_p, mean_a, rng, lower, upper)
        f_cand = _safe_fitness(spec, candidate, rng)

        # the velocity update always sticks; position only on acceptance
        new_bat = replace(bat, velocity=v_next)
        if rng.random() < bat.loudness and f_cand <= bat.fitness:
            new_bat.position = candidate
            new_bat.fitness = f_cand
            new_bat = update_loudness_and_rate(new_bat, params, t_next)
        new_bats.append(new_bat)

        best_p, best_f = maybe_update_best(best_p, best_f, candidate, f_cand)

    return SwarmState(bats=new_bats, best_position=best_p, best_fitness=best_f, iteration=t_next)


def run(spec: ObjectiveSpec, params: BaParams) -> RunTrace:
    """Full run: init_swarm then t_max steps, tracing every iteration.

    A pure function of (spec, params): the same seed yields an identical
    trace, bit for bit.
    """
    rng = np.random.default_rng(params.seed)
    swarm = init_swarm(spec, params, rng)

    cols = {name: [] for name in ("t", "best", "mean", "loud", "rate")}

    def record(s: SwarmState):
        cols["t"].append(s.iteration)
        cols["best"].append(s.best_fitness)
        cols["mean"].append(s.mean_fitness())
        cols["loud"].append(s.mean_loudness())
        cols["rate"].append(s.mean_pulse_rate())

    record(swarm)
    for _ in range(params.t_max):
        swarm = step(swarm, spec, params, rng)
        record(swarm)

    return RunTrace(
        iterations=np.array(cols["t"]),
        best_fitness=np.array(cols["best"]),
        mean_fitness=np.array(cols["mean"]),
        mean_loudness=np.array(cols["loud"]),
        mean_pulse_rate=np.array(cols["rate"]),
        final_swarm=swarm,
    )
