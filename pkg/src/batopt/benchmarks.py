"""Benchmark objective functions for the bat-algorithm experiments.

Nine classic box-constrained minimization problems (Sphere, Griewank,
Schwefel, Quartic, Rosenbrock, Yang, Zakharov, Step, Rastrigin), each with
its standard symmetric search box and a known minimum value of 0. All
evaluators are stateless; the one stochastic function (Quartic, which adds
a uniform noise term to every evaluation) takes its random generator as an
argument so the caller owns all randomness.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

__all__ = ["ObjectiveSpec", "evaluate", "evaluate_deterministic", "list_suite", "get_spec"]


def sphere(x):
    return float(np.sum(x * x))


def griewank(x):
    i = np.arange(1, x.size + 1)
    return float(np.sum(x * x) / 4000.0 - np.prod(np.cos(x / np.sqrt(i))) + 1.0)


def schwefel(x):
    # abs-sum plus abs-product form (often catalogued as Schwefel 2.22)
    a = np.abs(x)
    return float(np.sum(a) + np.prod(a))


def quartic(x):
    # deterministic part only; evaluate() adds the uniform noise term
    i = np.arange(1, x.size + 1)
    return float(np.sum(i * x**4))


def rosenbrock(x):
    return float(np.sum((x[:-1] - 1.0) ** 2 + 100.0 * (x[1:] - x[:-1] ** 2) ** 2))


def yang(x):
    return float(np.sum(np.abs(x)) * np.exp(-np.sum(np.sin(x * x))))


def zakharov(x):
    i = np.arange(1, x.size + 1)
    s = np.sum(i * x / 2.0)
    return float(np.sum(x * x) + s**2 + s**4)


def step(x):
    return float(np.sum(np.floor(x + 0.5) ** 2))


def rastrigin(x):
    return float(np.sum(x * x - 10.0 * np.cos(2.0 * np.pi * x) + 10.0))


@dataclass(frozen=True)
class ObjectiveSpec:
    """One benchmark problem: evaluator, box bounds, and known optimum.

    ``known_minimizer`` is the canonical minimizer of the deterministic part
    (the Step function minimizes on the whole region [-0.5, 0.5)^D; the
    origin is used as its canonical point). ``stochastic`` marks functions
    whose evaluation includes a random term.
    """

    name: str
    dimension: int
    lower_bound: float
    upper_bound: float
    fn: Callable[[np.ndarray], float]
    known_min_value: float = 0.0
    known_minimizer: np.ndarray | None = None
    stochastic: bool = False
    minimizer_fn: Callable[[int], np.ndarray] | None = None

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dimension}")
        if not self.lower_bound < self.upper_bound:
            raise ValueError(
                f"lower_bound must be < upper_bound, got [{self.lower_bound}, {self.upper_bound}]"
            )
        if self.known_minimizer is None:
            make = self.minimizer_fn if self.minimizer_fn is not None else np.zeros
            object.__setattr__(self, "known_minimizer", make(self.dimension))

    @property
    def bounds(self) -> tuple[float, float]:
        return (self.lower_bound, self.upper_bound)

    def with_dimension(self, dimension: int) -> "ObjectiveSpec":
        """Same problem at a different dimensionality."""
        return replace(self, dimension=dimension, known_minimizer=None)


def evaluate(spec: ObjectiveSpec, x, rng: np.random.Generator | None = None) -> float:
    """Evaluate ``spec`` at point ``x``.

    Deterministic functions are pure in ``x``; the stochastic Quartic adds
    one uniform [0, 1) draw from ``rng`` after its deterministic sum.
    Raises ValueError on dimension mismatch or non-finite components.
    Evaluation is defined outside the box too; bounds are enforced by the
    optimizer, not here.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (spec.dimension,):
        raise ValueError(
            f"{spec.name}: expected {spec.dimension} components, got shape {x.shape}"
        )
    if not np.all(np.isfinite(x)):
        raise ValueError(f"{spec.name}: non-finite input component in {x!r}")
    value = spec.fn(x)
    if spec.stochastic:
        if rng is None:
            raise ValueError(f"{spec.name} is stochastic; a random generator is required")
        value += float(rng.uniform())
    return value


def evaluate_deterministic(spec: ObjectiveSpec, x) -> float:
    """Evaluate only the deterministic part (drops Quartic's noise term)."""
    x = np.asarray(x, dtype=float)
    if x.shape != (spec.dimension,):
        raise ValueError(
            f"{spec.name}: expected {spec.dimension} components, got shape {x.shape}"
        )
    if not np.all(np.isfinite(x)):
        raise ValueError(f"{spec.name}: non-finite input component in {x!r}")
    return spec.fn(x)


_SUITE_ROWS = [
    # (name, lower, upper, fn, stochastic, minimizer_fn); None = origin
    ("Sphere", -5.12, 5.12, sphere, False, None),
    ("Griewank", -600.0, 600.0, griewank, False, None),
    ("Schwefel", -10.0, 10.0, schwefel, False, None),
    ("Quartic", -100.0, 100.0, quartic, True, None),
    ("Rosenbrock", -5.0, 5.0, rosenbrock, False, np.ones),
    ("Yang", -2.0 * np.pi, 2.0 * np.pi, yang, False, None),
    ("Zakharov", -5.0, 5.0, zakharov, False, None),
    ("Step", -100.0, 100.0, step, False, None),
    ("Rastrigin", -5.12, 5.12, rastrigin, False, None),
]

DEFAULT_DIMENSION = 30


def list_suite(dimension: int = DEFAULT_DIMENSION) -> list[ObjectiveSpec]:
    """The nine benchmark problems, in suite order, at the given dimension."""
    return [
        ObjectiveSpec(
            name=name,
            dimension=dimension,
            lower_bound=lo,
            upper_bound=hi,
            fn=fn,
            stochastic=stochastic,
            minimizer_fn=minimizer_fn,
        )
        for (name, lo, hi, fn, stochastic, minimizer_fn) in _SUITE_ROWS
    ]


def get_spec(name: str, dimension: int = DEFAULT_DIMENSION) -> ObjectiveSpec:
    """Look up a benchmark by name (case-insensitive)."""
    wanted = name.strip().lower()
    for spec in list_suite(dimension):
        if spec.name.lower() == wanted:
            return spec
    known = ", ".join(row[0] for row in _SUITE_ROWS)
    raise ValueError(f"unknown objective {name!r}; choose one of: {known}")
