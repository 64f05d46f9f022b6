"""Reduced (x, v) dynamical system of the bat update rules and its stability.

With the attraction point p held constant and the frequency replaced by a
constant m, a single coordinate of the bat update becomes the linear system

    v_{k+1} = l*v_k + m*(p - x_k),
    x_{k+1} = c*x_k + u*v_{k+1},

whose reduced form (c = u = 1) is Y_{k+1} = C Y_k + M p with
C = [[1-m, l], [-m, l]] and M = (m, m)^T. The eigenvalues of C solve
lambda^2 + lambda*(m - l - 1) + l = 0, and both lie inside the closed unit
disk exactly when

    -1 <= l <= 1,    m >= 0,    2l - m + 2 >= 0,

a triangle with vertices (l, m) = (-1, 0), (1, 0), (1, 4). Inside the open
triangle the spectral radius is strictly below one and trajectories converge
to the fixed point (x, v) = (p, 0); on the boundary the radius equals one
(reported as "marginal"); outside it exceeds one and trajectories diverge.

All operations here are pure and scalar; multi-dimensional dynamics are D
independent copies of this system. Absolute tolerance 1e-9 is used for
float comparisons (all quantities are O(1)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ATOL",
    "DynamicParams",
    "StabilityReport",
    "TrajectoryState",
    "Trajectory",
    "RegionRaster",
    "RASTER_HEADER",
    "TRAJECTORY_HEADER",
    "dynamic_matrix",
    "eigenvalues",
    "region_verdict",
    "iterate_trajectory",
    "first_convergence_iteration",
    "recursion_residual",
    "rasterize_region",
    "rasterize_rows",
]

ATOL = 1e-9

STABLE = "stable"
MARGINAL = "marginal"
UNSTABLE = "unstable"

RASTER_HEADER = "l,m,verdict,spectral_radius"
TRAJECTORY_HEADER = "k,x,v"


@dataclass(frozen=True)
class DynamicParams:
    """Coefficients of the reduced system.

    c and u generalize the position update (x_{k+1} = c*x_k + u*v_{k+1});
    the closed-form matrix/eigenvalue analysis requires the reduced values
    c = u = 1, while trajectory iteration and the recursion-identity check
    accept the general system.
    """

    l: float
    m: float
    p: float = 0.0
    c: float = 1.0
    u: float = 1.0

    def __post_init__(self):
        for name in ("l", "m", "p", "c", "u"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite, got {getattr(self, name)}")

    def require_reduced(self):
        if self.c != 1.0 or self.u != 1.0:
            raise ValueError(
                f"operation is defined for the reduced system c = u = 1, got c={self.c}, u={self.u}"
            )


@dataclass(frozen=True)
class StabilityReport:
    """Eigenvalues, spectral radius and region verdict at one (l, m) point."""

    l: float
    m: float
    eigenvalues: tuple[complex, complex]
    spectral_radius: float
    verdict: str
    condition_flags: tuple[bool, bool, bool]  # -1<=l<=1, m>=0, 2l-m+2>=0

    @property
    def is_stable(self) -> bool:
        return self.verdict == STABLE


@dataclass(frozen=True)
class TrajectoryState:
    k: int
    x: float
    v: float


@dataclass
class Trajectory:
    """Iterates of the system: sequence of TrajectoryState plus divergence flag.

    ``params`` is None for trajectories re-read from CSV (the file carries
    the states only).
    """

    k: np.ndarray
    x: np.ndarray
    v: np.ndarray
    diverged: bool
    params: DynamicParams | None

    def __len__(self) -> int:
        return len(self.k)

    def __getitem__(self, i) -> TrajectoryState:
        return TrajectoryState(int(self.k[i]), float(self.x[i]), float(self.v[i]))

    def __iter__(self):
        for i in range(len(self.k)):
            yield self[i]

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            fh.write(TRAJECTORY_HEADER + "\n")
            for k, x, v in zip(self.k, self.x, self.v):
                fh.write(f"{int(k)},{float(x)!r},{float(v)!r}\n")

    @classmethod
    def from_csv(cls, path, params: DynamicParams | None = None) -> "Trajectory":
        with open(path, newline="") as fh:
            header = fh.readline().strip()
            if header != TRAJECTORY_HEADER:
                raise ValueError(f"unexpected trajectory header {header!r}")
            ks, xs, vs = [], [], []
            for line in fh:
                k, x, v = line.strip().split(",")
                ks.append(int(k))
                xs.append(float(x))
                vs.append(float(v))
        return cls(k=np.array(ks), x=np.array(xs), v=np.array(vs), diverged=False, params=params)


def dynamic_matrix(params: DynamicParams) -> np.ndarray:
    """The 2x2 matrix [[1-m, l], [-m, l]] of the reduced system."""
    params.require_reduced()
    return np.array([[1.0 - params.m, params.l], [-params.m, params.l]])


def _eigenvalues_lm(l: float, m: float) -> tuple[complex, complex]:
    # roots of lambda^2 + lambda*(m - l - 1) + l = 0 by the quadratic formula
    s = l - m + 1.0
    disc = (m - l - 1.0) ** 2 - 4.0 * l
    if disc >= 0.0:
        root = math.sqrt(disc)
    else:
        root = 1j * math.sqrt(-disc)
    return (s + root) / 2.0, (s - root) / 2.0


def eigenvalues(params: DynamicParams) -> tuple[complex, complex]:
    """Eigenvalue pair of the dynamic matrix (complex branch when needed).

    Vieta's identities hold to 1e-9: the product equals l and the sum
    equals l - m + 1.
    """
    params.require_reduced()
    lam1, lam2 = _eigenvalues_lm(params.l, params.m)
    return complex(lam1), complex(lam2)


def _verdict_core(l: float, m: float):
    lam1, lam2 = _eigenvalues_lm(l, m)
    rho = max(abs(lam1), abs(lam2))
    flags = (-1.0 <= l <= 1.0, m >= 0.0, 2.0 * l - m + 2.0 >= 0.0)
    if not all(flags):
        verdict = UNSTABLE
    else:
        on_edge = (
            abs(l - 1.0) <= ATOL
            or abs(l + 1.0) <= ATOL
            or abs(m) <= ATOL
            or abs(2.0 * l - m + 2.0) <= ATOL
        )
        if on_edge or abs(rho - 1.0) <= ATOL:
            verdict = MARGINAL
        else:
            verdict = STABLE
    return lam1, lam2, rho, verdict, flags


def region_verdict(l: float, m: float) -> StabilityReport:
    """Classify (l, m) as stable, marginal (region boundary) or unstable.

    Stable means all three region inequalities hold strictly away from
    equality, which coincides with spectral radius < 1; marginal collects
    the boundary where the radius is exactly one.
    """
    l, m = float(l), float(m)
    lam1, lam2, rho, verdict, flags = _verdict_core(l, m)
    return StabilityReport(
        l=l,
        m=m,
        eigenvalues=(complex(lam1), complex(lam2)),
        spectral_radius=rho,
        verdict=verdict,
        condition_flags=tuple(bool(f) for f in flags),
    )


def iterate_trajectory(
    params: DynamicParams, x0: float, v0: float, k_max: int
) -> Trajectory:
    """Iterate the system from (x0, v0) for k_max steps (k_max+1 states).

    Uses the general form v_{k+1} = l*v_k + m*(p - x_k),
    x_{k+1} = c*x_k + u*v_{k+1}, which at c = u = 1 is the reduced
    recursion x_{k+1} = x_k + v_{k+1}. If an iterate overflows to a
    non-finite value the trajectory stops early with ``diverged`` set
    (expected outside the stability region).
    """
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    if not (math.isfinite(x0) and math.isfinite(v0)):
        raise ValueError(f"initial state must be finite, got x0={x0}, v0={v0}")
    l, m, p, c, u = params.l, params.m, params.p, params.c, params.u
    xs = [float(x0)]
    vs = [float(v0)]
    diverged = False
    x, v = float(x0), float(v0)
    for _ in range(k_max):
        v = l * v + m * (p - x)
        x = c * x + u * v
        if not (math.isfinite(x) and math.isfinite(v)):
            diverged = True
            break
        xs.append(x)
        vs.append(v)
    return Trajectory(
        k=np.arange(len(xs)),
        x=np.array(xs),
        v=np.array(vs),
        diverged=diverged,
        params=params,
    )


def first_convergence_iteration(
    traj: Trajectory, x_tol: float = 1e-6, v_tol: float = 1e-6
) -> int | None:
    """First k with |x_k - p| < x_tol and |v_k| < v_tol, or None."""
    if traj.params is None:
        raise ValueError("trajectory has no attached params (attraction point unknown)")
    p = traj.params.p
    hit = (np.abs(traj.x - p) < x_tol) & (np.abs(traj.v) < v_tol)
    idx = np.flatnonzero(hit)
    return int(traj.k[idx[0]]) if idx.size else None


def recursion_residual(params: DynamicParams, triple) -> float:
    """Residual of the three-term recursion satisfied by consecutive positions.

    For any trajectory of the general (c, u) system,
    m*u*p = x_{k+1} + (m*u - c - l)*x_k + l*c*x_{k-1} holds identically;
    the returned value is the absolute defect of a candidate triple
    (x_{k-1}, x_k, x_{k+1}) and stays <= 1e-9 for genuine trajectories.
    """
    x_prev, x_mid, x_next = (float(t) for t in triple)
    l, m, p, c, u = params.l, params.m, params.p, params.c, params.u
    return abs(x_next + (m * u - c - l) * x_mid + l * c * x_prev - m * u * p)


@dataclass
class RegionRaster:
    """Row-major stability classification over an (l, m) grid.

    Rows iterate l (outer) then m (inner). Verdicts are stored as int8
    codes indexing ``VERDICTS``; full StabilityReport objects are built on
    demand by ``report_at`` / ``reports``.
    """

    VERDICTS = (STABLE, MARGINAL, UNSTABLE)

    l_values: np.ndarray
    m_values: np.ndarray
    verdict_codes: np.ndarray  # (len(l), len(m)) int8
    spectral_radius: np.ndarray  # (len(l), len(m)) float

    def report_at(self, i: int, j: int) -> StabilityReport:
        return region_verdict(float(self.l_values[i]), float(self.m_values[j]))

    def reports(self):
        for i in range(len(self.l_values)):
            for j in range(len(self.m_values)):
                yield self.report_at(i, j)

    def verdict_grid(self) -> np.ndarray:
        return np.array(self.VERDICTS, dtype=object)[self.verdict_codes]

    def to_csv(self, path):
        names = self.VERDICTS
        with open(path, "w", newline="") as fh:
            fh.write(RASTER_HEADER + "\n")
            for i, l in enumerate(self.l_values):
                for j, m in enumerate(self.m_values):
                    fh.write(
                        f"{float(l)!r},{float(m)!r},"
                        f"{names[self.verdict_codes[i, j]]},{float(self.spectral_radius[i, j])!r}\n"
                    )

    @classmethod
    def from_csv(cls, path) -> "RegionRaster":
        code_of = {name: k for k, name in enumerate(cls.VERDICTS)}
        with open(path, newline="") as fh:
            header = fh.readline().strip()
            if header != RASTER_HEADER:
                raise ValueError(f"unexpected raster header {header!r}")
            ls, ms, codes, radii = [], [], [], []
            for line in fh:
                l, m, verdict, rho = line.strip().split(",")
                ls.append(float(l))
                ms.append(float(m))
                codes.append(code_of[verdict])
                radii.append(float(rho))
        l_values = np.unique(ls)
        m_values = np.unique(ms)
        shape = (len(l_values), len(m_values))
        if shape[0] * shape[1] != len(codes):
            raise ValueError("raster rows do not form a complete grid")
        return cls(
            l_values=l_values,
            m_values=m_values,
            verdict_codes=np.array(codes, dtype=np.int8).reshape(shape),
            spectral_radius=np.array(radii).reshape(shape),
        )


def _grid_axis(lo: float, hi: float, step: float) -> np.ndarray:
    # never overshoot hi; the 1e-9 slack absorbs float noise in (hi-lo)/step
    count = int(math.floor((hi - lo) / step + 1e-9))
    if count < 1 or lo >= hi:
        raise ValueError(f"degenerate range [{lo}, {hi}] at step {step}")
    return lo + step * np.arange(count + 1)


def rasterize_rows(l_values, m_values) -> tuple[np.ndarray, np.ndarray]:
    """Verdict codes and spectral radii for explicit grid axes (row-major).

    Split point for parallel rasterization: workers classify disjoint
    l-slices against the shared m axis and the blocks stack back in order.
    """
    codes = np.empty((len(l_values), len(m_values)), dtype=np.int8)
    radii = np.empty((len(l_values), len(m_values)))
    code_of = {STABLE: 0, MARGINAL: 1, UNSTABLE: 2}
    for i, l in enumerate(l_values):
        for j, m in enumerate(m_values):
            _, _, rho, verdict, _ = _verdict_core(float(l), float(m))
            codes[i, j] = code_of[verdict]
            radii[i, j] = rho
    return codes, radii


def rasterize_region(
    l_range: tuple[float, float], m_range: tuple[float, float], step: float
) -> RegionRaster:
    """Evaluate region_verdict over a regular grid (endpoints included)."""
    if step <= 0.0:
        raise ValueError(f"step must be > 0, got {step}")
    l_values = _grid_axis(l_range[0], l_range[1], step)
    m_values = _grid_axis(m_range[0], m_range[1], step)
    codes, radii = rasterize_rows(l_values, m_values)
    return RegionRaster(
        l_values=l_values, m_values=m_values, verdict_codes=codes, spectral_radius=radii
    )
