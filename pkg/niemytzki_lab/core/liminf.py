"""
Liminf module for Niemytzki Lab

This module estimates lower limits at 0+ on geometric grids, checks the
quotient bound liminf h(phi(x))/h(psi(x)) <= 1, builds the descent sequence
psi(x_{k+1}) = phi(x_k), and evaluates the symmetric derivative quotient
I(u, r, w) = (g(u + r(w)) - g(u - r(w))) / (2 r(w)) together with the
double-quotient check built on it.
"""
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple
import logging
import math

import numpy as np
from dataclasses_json import dataclass_json
from scipy import optimize

from .errors import (
    AllDegenerateError, ArgumentError, DomainError, EvaluationError,
    NoRootError, PreconditionError,
)
from .profile import BISECTION_MAX_ITER, BasicFamily
from .registry import monotone_functions, positive_functions

logger = logging.getLogger(__name__)

TOL_LIM = 0.05
DESCENT_FLOOR = 1e-14
# psi -> 0 on the tail: last-window max at most this share of the first-window max
VANISHING_RATIO = 1e-3
LOW_CONFIDENCE_SHARE = 0.5


@dataclass
class PositiveFunction:
    """Vectorised positive function on (0, domain_upper)"""
    name: str
    fn: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    domain_upper: float = math.inf

    def __call__(self, xs):
        return np.asarray(self.fn(np.asarray(xs, dtype=float)), dtype=float)

    def at(self, x: float) -> float:
        return float(self(np.array([x]))[0])

    @classmethod
    def piecewise_linear(cls, name: str, knots, values) -> "PositiveFunction":
        """
        Linear interpolation through (knot, value) pairs, constant beyond the ends

        Args:
            name: Label used in reports
            knots: Strictly increasing positive abscissae
            values: Positive ordinates
        """
        knots = np.asarray(knots, dtype=float)
        values = np.asarray(values, dtype=float)
        if knots.shape != values.shape or knots.size < 2:
            raise ArgumentError("knots and values must be matching arrays of length >= 2")
        if np.any(np.diff(knots) <= 0) or knots[0] <= 0:
            raise ArgumentError("knots must be positive and strictly increasing")
        if np.any(values <= 0):
            raise ArgumentError("piecewise-linear values must be positive")
        return cls(name, lambda xs: np.interp(xs, knots, values), float(knots[-1]))


@dataclass
class MonotoneFunction:
    """
    Nondecreasing g near a base point

    `increment(u, r)` returns g(u + r) - g(u - r) in closed form when given.
    """
    name: str
    fn: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    increment: Optional[Callable[[float, float], float]] = field(default=None, repr=False)
    domain: Tuple[float, float] = (-math.inf, math.inf)

    def __call__(self, xs):
        return np.asarray(self.fn(np.asarray(xs, dtype=float)), dtype=float)

    def symmetric_increment(self, u: float, r: float) -> float:
        if self.increment is not None:
            return float(self.increment(u, r))
        values = self(np.array([u + r, u - r]))
        return float(values[0] - values[1])


@dataclass_json
@dataclass
class GeometricGrid:
    """
    Levels [x0 ratio^(j+1), x0 ratio^j) for j < depth

    Each level holds `oversample` log-uniform points; a window is `window`
    consecutive levels.
    """
    x0: float = 0.1
    ratio: float = 0.5
    depth: int = 40
    window: int = 5
    oversample: int = 64

    def __post_init__(self):
        if not (self.x0 > 0 and 0 < self.ratio < 1):
            raise ArgumentError(f"need x0 > 0 and 0 < ratio < 1, got {self.x0!r}, {self.ratio!r}")
        if self.depth < 2 * self.window or self.window < 1 or self.oversample < 1:
            raise ArgumentError("need depth >= 2*window, window >= 1, oversample >= 1")

    @property
    def n_windows(self) -> int:
        return self.depth // self.window

    def points(self) -> Tuple[np.ndarray, np.ndarray]:
        """
        Sample abscissae in decreasing order and their window ids

        Levels past the last full window are dropped.
        """
        levels = self.n_windows * self.window
        xs = []
        ids = []
        for j in range(levels):
            top = self.x0 * self.ratio ** j
            xs.append(np.geomspace(top, top * self.ratio, self.oversample, endpoint=False))
            ids.append(np.full(self.oversample, j // self.window))
        return np.concatenate(xs), np.concatenate(ids)


@dataclass_json
@dataclass
class LiminfEstimate:
    grid: GeometricGrid
    window_minima: List[float]
    value: float
    converged: bool
    tol_lim: float = TOL_LIM


def _window_minima(values: np.ndarray, ids: np.ndarray, n_windows: int) -> List[float]:
    # NaN marks skipped samples; an all-skipped window has minimum NaN
    minima = []
    for w in range(n_windows):
        chunk = values[ids == w]
        chunk = chunk[~np.isnan(chunk)]
        minima.append(float(np.min(chunk)) if chunk.size else math.nan)
    return minima


def _estimate(values: np.ndarray, ids: np.ndarray, grid: GeometricGrid,
              tol_lim: float) -> LiminfEstimate:
    minima = _window_minima(values, ids, grid.n_windows)
    kept = [m for m in minima if not math.isnan(m)]
    value = kept[-1]
    converged = len(kept) >= 2 and abs(kept[-1] - kept[-2]) < tol_lim
    return LiminfEstimate(grid=grid, window_minima=minima, value=value,
                          converged=converged, tol_lim=tol_lim)


def _evaluate(F: Callable, xs: np.ndarray, label: str) -> np.ndarray:
    try:
        with np.errstate(divide="raise", invalid="raise", over="raise"):
            values = np.asarray(F(xs), dtype=float)
    except (ArithmeticError, ValueError, FloatingPointError) as e:
        raise EvaluationError(f"{label} could not be evaluated on the grid: {e}") from e
    bad = ~np.isfinite(values)
    if bad.any():
        x = float(xs[np.argmax(bad)])
        raise EvaluationError(f"{label} is undefined at x = {x!r}", {"x": x})
    return values


def sample_rows(F: PositiveFunction, grid: Optional[GeometricGrid] = None) -> List[Tuple[float, float, int]]:
    """(x, F(x), window_id) triples for the CSV dump"""
    grid = grid or GeometricGrid()
    xs, ids = grid.points()
    values = _evaluate(F, xs, F.name)
    return [(float(x), float(v), int(i)) for x, v, i in zip(xs, values, ids)]


def liminf_estimate(F: PositiveFunction, grid: Optional[GeometricGrid] = None,
                    tol_lim: float = TOL_LIM) -> LiminfEstimate:
    """
    Estimate liminf_{x -> 0+} F(x) from tail-window minima

    Args:
        F: Function to sample
        grid: Sampling grid (defaults: x0=0.1, ratio=0.5, depth=40, window=5)
        tol_lim: Convergence tolerance between the last two window minima

    Returns:
        LiminfEstimate whose value is the last window minimum
    """
    grid = grid or GeometricGrid()
    xs, ids = grid.points()
    values = _evaluate(F, xs, F.name)
    estimate = _estimate(values, ids, grid, tol_lim)
    logger.debug("liminf %s: %r (converged=%s)", F.name, estimate.value, estimate.converged)
    return estimate


@dataclass_json
@dataclass
class QuotientCheck:
    estimate: LiminfEstimate
    holds: bool
    seed: Optional[int] = None


def _require_vanishing(values: np.ndarray, ids: np.ndarray, grid: GeometricGrid, label: str) -> None:
    first = float(np.max(values[ids == 0]))
    last = float(np.max(values[ids == grid.n_windows - 1]))
    if not last <= VANISHING_RATIO * first:
        raise PreconditionError(f"{label} does not tend to 0 on the grid tail",
                                {"first_window_max": first, "last_window_max": last})


def quotient_bound_check(h: PositiveFunction, phi: PositiveFunction, psi: PositiveFunction,
                         grid: Optional[GeometricGrid] = None, tol_lim: float = TOL_LIM,
                         seed: Optional[int] = None) -> QuotientCheck:
    """
    Check liminf h(phi(x)) / h(psi(x)) <= 1 for phi <= psi, psi -> 0

    Args:
        h: Positive function with h(y) -> 0 as y -> 0
        phi: Lower function
        psi: Upper function tending to 0
        grid: Sampling grid
        tol_lim: Slack on the bound 1
        seed: Seed of a random instance, recorded in the result

    Returns:
        QuotientCheck with the estimate and whether it stays below 1 + tol_lim
    """
    grid = grid or GeometricGrid()
    xs, ids = grid.points()
    lower = _evaluate(phi, xs, phi.name)
    upper = _evaluate(psi, xs, psi.name)
    above = lower > upper
    if above.any():
        i = int(np.argmax(above))
        raise PreconditionError(f"{phi.name} > {psi.name} at x = {xs[i]!r}",
                                {"x": float(xs[i]), "phi": float(lower[i]), "psi": float(upper[i])})
    _require_vanishing(upper, ids, grid, psi.name)
    denominator = _evaluate(h, upper, h.name)
    if np.any(denominator <= 0):
        raise PreconditionError(f"{h.name} is not positive on the range of {psi.name}")
    quotient = _evaluate(h, lower, h.name) / denominator
    estimate = _estimate(quotient, ids, grid, tol_lim)
    holds = estimate.value <= 1 + tol_lim
    logger.debug("quotient bound %s/%s/%s: %r", h.name, phi.name, psi.name, estimate.value)
    return QuotientCheck(estimate=estimate, holds=holds, seed=seed)


def descent_sequence(phi: PositiveFunction, psi: PositiveFunction, x0: float,
                     K: int = 50) -> List[float]:
    """
    Build x_0 > x_1 > ... with psi(x_{k+1}) = phi(x_k)

    Args:
        phi: Lower function, phi < psi on (0, x0]
        psi: Upper function tending to 0
        x0: Starting point
        K: Maximum number of terms

    Returns:
        The sequence; stops early once a term falls below 1e-14
    """
    if x0 <= 0 or K < 1:
        raise ArgumentError(f"need x0 > 0 and K >= 1, got {x0!r}, {K}")
    xs = [float(x0)]
    while len(xs) < K and xs[-1] >= DESCENT_FLOOR:
        x_k = xs[-1]
        target = phi.at(x_k)
        if not target < psi.at(x_k):
            raise PreconditionError(f"need {phi.name} < {psi.name} at x = {x_k!r}",
                                    {"x": x_k, "phi": target, "psi": psi.at(x_k)})
        lo = x_k / 2
        while psi.at(lo) >= target:
            lo /= 2
            if lo < 1e-300:
                raise NoRootError(f"no bracket for {psi.name}(x) = {target!r} below {x_k!r}")
        root = optimize.bisect(lambda x: psi.at(x) - target, lo, x_k,
                               xtol=1e-300, maxiter=BISECTION_MAX_ITER)
        if not 0 < root < x_k:
            raise NoRootError(f"bisection left (0, {x_k!r}): {root!r}")
        xs.append(float(root))
    return xs


def derivative_quotient(g: MonotoneFunction, u: float, r: PositiveFunction, w: float) -> float:
    """
    I(u, r, w) = (g(u + r(w)) - g(u - r(w))) / (2 r(w))

    Args:
        g: Monotone function
        u: Base point
        r: Radius function
        w: Argument of r

    Returns:
        The quotient
    """
    radius = r.at(w)
    if not (radius > 0 and math.isfinite(radius)):
        raise DomainError(f"{r.name}({w!r}) = {radius!r} is not a positive radius",
                          {"w": w, "r": radius})
    lo, hi = g.domain
    if u - radius < lo or u + radius > hi:
        raise DomainError(f"[{u - radius!r}, {u + radius!r}] leaves the domain of {g.name}")
    return g.symmetric_increment(u, radius) / (2 * radius)


@dataclass_json
@dataclass
class Eq1Report:
    estimate: LiminfEstimate
    holds: bool
    skipped: int
    total: int
    low_confidence: bool


def _double_quotient(g: MonotoneFunction, u: float, num_r: PositiveFunction,
                     den_r: PositiveFunction, grid: GeometricGrid, tol_lim: float) -> Eq1Report:
    hs, ids = grid.points()
    quotient = np.full(hs.shape, np.nan)
    for i, h in enumerate(hs):
        den = derivative_quotient(g, u, den_r, float(h))
        if den == 0:
            continue
        quotient[i] = derivative_quotient(g, u, num_r, float(h)) / den
    skipped = int(np.isnan(quotient).sum())
    if skipped == hs.size:
        raise AllDegenerateError(f"{g.name} is locally constant at u = {u!r}: every denominator is 0")
    tail = ids == grid.n_windows - 1
    low_confidence = bool(np.isnan(quotient[tail]).mean() > LOW_CONFIDENCE_SHARE)
    estimate = _estimate(quotient, ids, grid, tol_lim)
    return Eq1Report(estimate=estimate, holds=estimate.value <= 1 + tol_lim,
                     skipped=skipped, total=int(hs.size), low_confidence=low_confidence)


def eq1_check(g: MonotoneFunction, u: float, phi: PositiveFunction, psi: PositiveFunction,
              grid: Optional[GeometricGrid] = None, tol_lim: float = TOL_LIM) -> Eq1Report:
    """
    Estimate liminf_{h -> 0} I(u, phi, h) / I(u, psi, h)

    Samples with I(u, psi, h) = 0 are skipped and counted; more than half of
    the last window skipped flags the result as low confidence.
    """
    grid = grid or GeometricGrid()
    hs, ids = grid.points()
    above = _evaluate(phi, hs, phi.name) > _evaluate(psi, hs, psi.name)
    if above.any():
        raise PreconditionError(f"{phi.name} > {psi.name} at h = {hs[np.argmax(above)]!r}")
    _require_vanishing(_evaluate(psi, hs, psi.name), ids, grid, psi.name)
    report = _double_quotient(g, u, phi, psi, grid, tol_lim)
    logger.info("eq1 %s at u=%r: %r (skipped %d/%d)", g.name, u, report.estimate.value,
                report.skipped, report.total)
    return report


def gamma_check(g: MonotoneFunction, u: float, family: BasicFamily, n: int, m: int,
                grid: Optional[GeometricGrid] = None, tol_lim: float = TOL_LIM) -> Eq1Report:
    """
    Estimate liminf_{w -> 0} I(u, f_m^-1, w) / I(u, f_n^-1, w)

    This is the boundary-trace quotient the criterion bounds by 1 for a
    homeomorphism whose trace g is differentiable at u.
    """
    if not m > n >= 1:
        raise ArgumentError(f"expected m > n >= 1, got n={n}, m={m}")
    grid = grid or GeometricGrid()
    cap = 1.0 / m
    if grid.x0 > cap:
        grid = GeometricGrid(x0=cap, ratio=grid.ratio, depth=grid.depth,
                             window=grid.window, oversample=grid.oversample)
    p_n, p_m = family.profile(n), family.profile(m)
    inv_n = PositiveFunction(f"{family.label}_{n}^-1", p_n.inverse_array, cap)
    inv_m = PositiveFunction(f"{family.label}_{m}^-1", p_m.inverse_array, cap)
    return _double_quotient(g, u, inv_m, inv_n, grid, tol_lim)


def random_instance(seed: int) -> Tuple[PositiveFunction, PositiveFunction, PositiveFunction]:
    """
    Seeded admissible (h, phi, psi) for the quotient bound

    psi ~ x^a with multiplicative noise, phi = theta * psi with theta in
    [0.05, 1], h nondecreasing with h(y) -> 0; all piecewise linear on
    geometric knots.
    """
    rng = np.random.default_rng(seed)
    knots = np.geomspace(1e-16, 1.0, 160)
    a = rng.uniform(0.5, 2.0)
    psi_values = knots ** a * np.exp(rng.uniform(-1.0, 1.0, knots.size))
    theta = np.clip(rng.uniform(0.05, 1.2, knots.size), None, 1.0)
    phi_values = theta * psi_values

    y_knots = np.geomspace(1e-40, 10.0, 400)
    b = rng.uniform(0.25, 3.0)
    h_values = np.sort(y_knots ** b * np.exp(rng.uniform(-1.0, 1.0, y_knots.size)))
    h_values = np.maximum(h_values, np.finfo(float).tiny)

    return (
        PositiveFunction.piecewise_linear(f"h[{seed}]", y_knots, h_values),
        PositiveFunction.piecewise_linear(f"phi[{seed}]", knots, phi_values),
        PositiveFunction.piecewise_linear(f"psi[{seed}]", knots, psi_values),
    )


def random_descent_pair(seed: int) -> Tuple[PositiveFunction, PositiveFunction]:
    """Seeded piecewise-linear phi < psi with psi -> 0"""
    rng = np.random.default_rng(seed)
    knots = np.geomspace(1e-18, 1.0, 180)
    a = rng.uniform(0.5, 2.0)
    psi_values = knots ** a * np.exp(rng.uniform(-0.5, 0.5, knots.size))
    phi_values = rng.uniform(0.05, 0.95, knots.size) * psi_values
    return (
        PositiveFunction.piecewise_linear(f"phi[{seed}]", knots, phi_values),
        PositiveFunction.piecewise_linear(f"psi[{seed}]", knots, psi_values),
    )


@positive_functions.register("identity", description="x", aliases=["x"])
def identity() -> PositiveFunction:
    return PositiveFunction("x", lambda xs: xs)


@positive_functions.register("square", description="x^2", aliases=["x^2"])
def square() -> PositiveFunction:
    return PositiveFunction("x^2", lambda xs: xs * xs)


@positive_functions.register("half", description="x/2")
def half() -> PositiveFunction:
    return PositiveFunction("x/2", lambda xs: xs / 2)


@positive_functions.register("sqrt", description="x^(1/2)")
def sqrt() -> PositiveFunction:
    return PositiveFunction("x^(1/2)", np.sqrt)


@positive_functions.register("one", description="1")
def one() -> PositiveFunction:
    return PositiveFunction("1", np.ones_like)


@positive_functions.register("oscillating", description="2 + sin(1/x)")
def oscillating() -> PositiveFunction:
    return PositiveFunction("2+sin(1/x)", lambda xs: 2 + np.sin(1 / xs))


@monotone_functions.register("identity", description="g(x) = x", aliases=["x"])
def linear() -> MonotoneFunction:
    return MonotoneFunction("x", lambda xs: xs, increment=lambda u, r: 2 * r)


@monotone_functions.register("cube", description="g(x) = x^3", aliases=["x^3"])
def cube() -> MonotoneFunction:
    return MonotoneFunction("x^3", lambda xs: xs ** 3,
                            increment=lambda u, r: 6 * u * u * r + 2 * r ** 3)


@monotone_functions.register("arctan", description="g(x) = arctan(x)")
def arctan() -> MonotoneFunction:
    # valid while 1 + u^2 - r^2 > 0
    return MonotoneFunction("arctan", np.arctan,
                            increment=lambda u, r: math.atan2(2 * r, 1 + u * u - r * r))


@monotone_functions.register("expm1", description="g(x) = exp(x) - 1")
def expm1() -> MonotoneFunction:
    return MonotoneFunction("expm1", np.expm1,
                            increment=lambda u, r: 2 * math.exp(u) * math.sinh(r))


@monotone_functions.register("constant", description="g(x) = 1")
def constant() -> MonotoneFunction:
    return MonotoneFunction("1", np.ones_like, increment=lambda u, r: 0.0)
