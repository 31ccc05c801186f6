"""Profile curves over graph families and asymptotic growth-class fitting.

The separation function of an infinite family is not computable as a true
supremum; what is measured here is the witness profile: exact cut values on
the canonical witness graphs, which lower-bound the separation function and,
together with constructive separators, bracket it.  Every point is labeled
with its method and certification status accordingly.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .constructive import hyperplane_separator, ttree_median_separator
from .errors import CapacityError, InputError
from .generators import FamilySpec
from .separator import Balance, min_balanced_separator

GROWTH_CLASSES = (
    "bounded",
    "logarithmic",
    "power",
    "power_times_log",
    "n_over_log",
    "linear",
)

#: Tie-break precedence when residuals coincide (prefer the more specific
#: model: constants before anything, linear before power at slope one).
_PRECEDENCE = ("bounded", "logarithmic", "linear", "n_over_log", "power", "power_times_log")


@dataclass(frozen=True)
class ProfilePoint:
    param: int
    n: int
    cut: int
    method: str
    certified: bool


@dataclass(frozen=True)
class ProfileCurve:
    family: str
    c: Balance
    points: tuple
    truncated: bool = False

    def __post_init__(self):
        params = [p.param for p in self.points]
        sizes = [p.n for p in self.points]
        if params != sorted(set(params)):
            raise InputError("profile parameters must be strictly increasing")
        if sizes != sorted(set(sizes)):
            raise InputError("witness sizes must be strictly increasing")


@dataclass(frozen=True)
class ClassFit:
    name: str
    alpha: Optional[float]
    residual: float


@dataclass(frozen=True)
class GrowthFit:
    name: str
    alpha: Optional[float]
    residual: float
    runner_up: ClassFit


def _solve_point(spec: FamilySpec, param: int, c: Balance, method: str, seed: int):
    g = spec.build(param)
    if method == "exact":
        sep = min_balanced_separator(g, c)
        return ProfilePoint(param, g.num_vertices, sep.size, "exact", sep.certified_optimal)
    if method == "constructive:ttree":
        rep = ttree_median_separator(g)
        return ProfilePoint(param, g.num_vertices, rep.separator.size, method, False)
    if method == "constructive:hyperplane":
        sep = hyperplane_separator(g, trials=64, seed=seed)
        return ProfilePoint(param, g.num_vertices, sep.size, method, False)
    raise InputError(f"unknown profile method {method!r}")


def run_profile(
    spec: FamilySpec,
    params: Sequence,
    c: Balance = Fraction(1, 2),
    method: str = "exact",
    seed: int = 0,
    threads: int = 1,
) -> ProfileCurve:
    """One profile point per parameter, computed independently.

    Exact points carry certified=True; constructive points are upper bounds.
    A capacity overflow at some parameter truncates the curve there and flags
    it, keeping the completed prefix.
    """
    params = sorted(set(int(p) for p in params))
    if not params:
        raise InputError("empty parameter range")
    points = []
    truncated = False
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [
                pool.submit(_solve_point, spec, p, c, method, seed) for p in params
            ]
            for fut in futures:
                try:
                    points.append(fut.result())
                except CapacityError:
                    truncated = True
                    break
    else:
        for p in params:
            try:
                points.append(_solve_point(spec, p, c, method, seed))
            except CapacityError:
                truncated = True
                break
    return ProfileCurve(spec.describe(), c, tuple(points), truncated)


# ---------------------------------------------------------------------------
# growth fitting


def _linear_fit(x: np.ndarray, y: np.ndarray) -> float:
    """Mean squared residual of the least-squares affine fit y ~ a*x + b."""
    a = np.vstack([x, np.ones_like(x)]).T
    resid = y - a @ np.linalg.lstsq(a, y, rcond=None)[0]
    return float(np.mean(resid**2))


def _fit_class(name: str, n: np.ndarray, cut: np.ndarray) -> ClassFit:
    logn = np.log(n)
    if name == "bounded":
        return ClassFit(name, None, float(np.mean((cut - cut.mean()) ** 2)))
    if name == "logarithmic":
        return ClassFit(name, None, _linear_fit(logn, cut))
    if name == "linear":
        return ClassFit(name, None, _linear_fit(n.astype(float), cut))
    if name == "n_over_log":
        # cut * log n against n, slope through the origin
        y = cut * logn
        slope = float(np.dot(y, n) / np.dot(n, n))
        return ClassFit(name, None, float(np.mean((y - slope * n) ** 2)))
    logc = np.log(cut)
    if name == "power":
        a = np.vstack([logn, np.ones_like(logn)]).T
        coef, *_ = np.linalg.lstsq(a, logc, rcond=None)
        resid = logc - a @ coef
        return ClassFit(name, float(coef[0]), float(np.mean(resid**2)))
    if name == "power_times_log":
        y = logc - np.log(logn)
        a = np.vstack([logn, np.ones_like(logn)]).T
        coef, *_ = np.linalg.lstsq(a, y, rcond=None)
        resid = y - a @ coef
        return ClassFit(name, float(coef[0]), float(np.mean(resid**2)))
    raise InputError(f"unknown growth class {name!r}")


def fit_growth(curve: ProfileCurve) -> GrowthFit:
    """Least-squares fit in class-specific transformed coordinates; the class
    with smallest residual wins, ties broken toward the more specific model."""
    if len(curve.points) < 4:
        raise InputError("fit_growth needs at least 4 profile points")
    n = np.array([p.n for p in curve.points], dtype=float)
    cut = np.array([p.cut for p in curve.points], dtype=float)
    if np.any(cut <= 0):
        raise InputError("cut values must be positive to fit growth classes")
    if np.any(n < 2):
        raise InputError("witness sizes must be at least 2")
    fits = []
    for name in _PRECEDENCE:
        fit = _fit_class(name, n, cut)
        if fit.residual < 1e-12:  # exact fit up to numerical noise
            fit = ClassFit(fit.name, fit.alpha, 0.0)
        fits.append(fit)
    order = sorted(range(len(fits)), key=lambda i: (fits[i].residual, i))
    best, second = fits[order[0]], fits[order[1]]
    return GrowthFit(best.name, best.alpha, best.residual, second)
