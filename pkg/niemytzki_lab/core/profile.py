"""
Profile module for Niemytzki Lab

This module defines profile functions and basic families, registers the
builtin families, and verifies the basic-family axioms on sampled grids.

A profile f_n is even and continuous on [-a_n, a_n] with range [0, 1/n],
f_n(0) = 0, and increasing on [0, a_n]. Continuity cannot be observed on a
grid; verify_basic checks strict grid monotonicity and endpoint values instead.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Literal, Optional, Tuple, Union
import logging
import math

import mpmath
import numpy as np
from dataclasses_json import dataclass_json

from .errors import ArgumentError, DomainError, RangeError
from .registry import families

logger = logging.getLogger(__name__)

TOL_F = 1e-12
TOL_INV = 1e-10
BISECTION_MAX_ITER = 200
BISECTION_XTOL = 1e-14
MP_DPS = 50

# private 50-digit context, independent of the global mpmath precision
MP = mpmath.MPContext()
MP.dps = MP_DPS

Number = Union[int, float, Fraction, str]


def as_fraction(value: Number) -> Fraction:
    """
    Convert a user-supplied number to an exact rational

    Args:
        value: int, Fraction, decimal/fraction string, or float

    Returns:
        Fraction (floats are snapped to the nearest small-denominator rational)
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ArgumentError(f"Expected a number, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ArgumentError(f"Not a rational number: {value!r}") from e
    if isinstance(value, float) and math.isfinite(value):
        return Fraction(value).limit_denominator(10**6)
    raise ArgumentError(f"Not a rational number: {value!r}")


def mp_number(value: Union[int, float, Fraction]) -> MP.mpf:
    if isinstance(value, Fraction):
        return MP.mpf(value.numerator) / value.denominator
    return MP.mpf(value)


def mp_power(base: MP.mpf, exponent: Fraction) -> MP.mpf:
    return base ** mp_number(exponent)


@dataclass(frozen=True)
class CoefficientForm:
    """Coefficient c_n of a power-law family"""
    form: Literal["power", "constant", "tangent"]
    param: Union[Fraction, float]

    def __post_init__(self):
        if self.form == "power":
            object.__setattr__(self, "param", as_fraction(self.param))
        elif self.form == "constant":
            if float(self.param) <= 0:
                raise ArgumentError("constant coefficient must be positive")
            object.__setattr__(self, "param", float(self.param))
        elif self.form == "tangent":
            alpha = float(self.param)
            if not 0 < alpha < math.pi / 2:
                raise ArgumentError(f"tangent angle must lie in (0, pi/2), got {alpha!r}")
            object.__setattr__(self, "param", alpha)
        else:
            raise ArgumentError(f"unknown coefficient form '{self.form}'")

    def value(self, n: int) -> float:
        if self.form == "power":
            return float(n) ** float(self.param)
        if self.form == "constant":
            return float(self.param)
        return math.tan(self.param * n / (n + 1))

    def mp_value(self, n: int) -> MP.mpf:
        if self.form == "power":
            return mp_power(MP.mpf(n), self.param)
        if self.form == "constant":
            return mp_number(self.param)
        return MP.tan(mp_number(self.param) * n / (n + 1))

    @property
    def bounded(self) -> bool:
        return self.form != "power" or self.param <= 0

    def envelope_mp(self) -> Optional[MP.mpf]:
        """Supremum of c_k over k >= 1, or None when unbounded"""
        if self.form == "power":
            # n^p is nonincreasing for p <= 0, so the sup is c_1 = 1
            return MP.mpf(1) if self.param <= 0 else None
        if self.form == "constant":
            return mp_number(self.param)
        return MP.tan(mp_number(self.param))

    @property
    def envelope_attained(self) -> bool:
        return self.form != "tangent"

    def describe(self) -> str:
        if self.form == "power":
            return f"c_n = n^{self.param}"
        if self.form == "constant":
            return f"c_n = {self.param!r}"
        return f"c_n = tan({self.param!r}*n/(n+1))"


@dataclass(frozen=True)
class ExponentForm:
    """Exponent e_n of a power-law family"""
    form: Literal["constant", "harmonic_shift"]
    param: Optional[Fraction] = None

    def __post_init__(self):
        if self.form == "constant":
            if self.param is None:
                raise ArgumentError("constant exponent needs a parameter")
            s = as_fraction(self.param)
            if s <= 0:
                raise ArgumentError(f"exponent must be positive, got {s}")
            object.__setattr__(self, "param", s)
        elif self.form == "harmonic_shift":
            object.__setattr__(self, "param", None)
        else:
            raise ArgumentError(f"unknown exponent form '{self.form}'")

    def value(self, n: int) -> Fraction:
        if self.form == "constant":
            return self.param
        return Fraction(n + 1, n)

    @property
    def uniform(self) -> bool:
        return self.form == "constant"

    def infimum(self) -> Tuple[Fraction, bool]:
        """Infimum of e_k over k >= 1 and whether some k attains it"""
        if self.form == "constant":
            return self.param, True
        return Fraction(1), False

    def describe(self) -> str:
        if self.form == "constant":
            return f"e_n = {self.param}"
        return "e_n = (n+1)/n"


class ProfileFunction:
    """
    One profile f_n of a basic family

    Subclasses implement _height on nonnegative abscissae; evenness comes
    from evaluating on |x|.
    """

    def __init__(self, n: int, half_width: float):
        if n < 1:
            raise ArgumentError(f"family index must be positive, got {n}")
        self.n = n
        self.half_width = half_width

    @property
    def cap(self) -> float:
        return 1.0 / self.n

    def _height(self, ax: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _abscissa(self, ys: np.ndarray) -> np.ndarray:
        # Bisection on [0, a_n]; _height is increasing there
        lo = np.zeros_like(ys)
        hi = np.full_like(ys, self.half_width)
        for _ in range(BISECTION_MAX_ITER):
            mid = 0.5 * (lo + hi)
            below = self._height(mid) < ys
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
            if np.all(hi - lo <= BISECTION_XTOL):
                break
        out = 0.5 * (lo + hi)
        out[ys <= 0] = 0.0
        out[ys >= self.cap] = self.half_width
        return out

    def evaluate(self, xs) -> np.ndarray:
        """
        Vectorised f_n

        Args:
            xs: Abscissae in [-a_n, a_n]

        Returns:
            Heights f_n(|x|)
        """
        ax = np.abs(np.asarray(xs, dtype=float))
        if ax.size and np.max(ax) > self.half_width + TOL_F:
            bad = float(ax[np.argmax(ax)])
            raise DomainError(
                f"|x| = {bad!r} exceeds half width {self.half_width!r}",
                {"n": self.n, "x": bad, "half_width": self.half_width},
            )
        return self._height(np.minimum(ax, self.half_width))

    def eval(self, x: float) -> float:
        return float(self.evaluate(np.array([x], dtype=float))[0])

    def inverse_array(self, ys) -> np.ndarray:
        """
        Vectorised right-branch inverse

        Args:
            ys: Heights in [0, 1/n]

        Returns:
            Abscissae in [0, a_n]
        """
        ys = np.asarray(ys, dtype=float)
        if ys.size and (np.min(ys) < -TOL_F or np.max(ys) > self.cap + TOL_F):
            bad = float(ys[np.argmin(ys)] if np.min(ys) < -TOL_F else ys[np.argmax(ys)])
            raise RangeError(
                f"y = {bad!r} outside [0, 1/{self.n}]",
                {"n": self.n, "y": bad},
            )
        return self._abscissa(np.clip(ys, 0.0, self.cap))

    def inverse(self, y: float) -> float:
        return float(self.inverse_array(np.array([y], dtype=float))[0])

    def leading_term(self) -> Tuple[float, Fraction]:
        """Germ (c, e) with f_n(x) ~ c*x^e as x -> 0"""
        raise NotImplementedError


class PowerLawProfile(ProfileFunction):
    """f_n(x) = c_n |x|^e_n"""

    def __init__(self, n: int, coefficient: float, exponent: Fraction):
        self.coefficient = coefficient
        self.exponent = exponent
        half_width = (1.0 / (n * coefficient)) ** (1.0 / float(exponent))
        super().__init__(n, half_width)

    def _height(self, ax: np.ndarray) -> np.ndarray:
        return self.coefficient * ax ** float(self.exponent)

    def _abscissa(self, ys: np.ndarray) -> np.ndarray:
        return (ys / self.coefficient) ** (1.0 / float(self.exponent))

    def leading_term(self) -> Tuple[float, Fraction]:
        return self.coefficient, self.exponent


class DiscProfile(ProfileFunction):
    """Lower arc of the tangent disc of radius 1/n"""

    def __init__(self, n: int):
        super().__init__(n, 1.0 / n)

    def _height(self, ax: np.ndarray) -> np.ndarray:
        r = 1.0 / self.n
        # r - sqrt(r^2 - x^2) rewritten without cancellation
        return ax * ax / (r + np.sqrt(np.maximum(r * r - ax * ax, 0.0)))

    def leading_term(self) -> Tuple[float, Fraction]:
        return self.n / 2.0, Fraction(2)


@dataclass(frozen=True)
class PowerLawDescriptor:
    """Symbolic form f_n(x) = c_n |x|^e_n"""
    coefficient_form: CoefficientForm
    exponent_form: ExponentForm

    def coefficient(self, n: int) -> float:
        return self.coefficient_form.value(n)

    def coefficient_mp(self, n: int) -> MP.mpf:
        return self.coefficient_form.mp_value(n)

    def exponent(self, n: int) -> Fraction:
        return self.exponent_form.value(n)

    def half_width_mp(self, n: int) -> MP.mpf:
        return mp_power(1 / (n * self.coefficient_mp(n)), 1 / self.exponent(n))

    def profile(self, n: int) -> PowerLawProfile:
        return PowerLawProfile(n, self.coefficient(n), self.exponent(n))

    def describe(self) -> str:
        return f"{self.coefficient_form.describe()}, {self.exponent_form.describe()}"


@dataclass(frozen=True)
class BasicFamily:
    """Indexed generator n -> f_n"""
    name: str
    generator: Callable[[int], ProfileFunction] = field(compare=False, repr=False)
    power_law: Optional[PowerLawDescriptor] = None
    params: Tuple[Tuple[str, str], ...] = ()

    def profile(self, n: int) -> ProfileFunction:
        if not isinstance(n, (int, np.integer)) or n < 1:
            raise ArgumentError(f"family index must be a positive integer, got {n!r}")
        return self.generator(int(n))

    __call__ = profile

    @property
    def label(self) -> str:
        if not self.params:
            return self.name
        inner = ",".join(f"{k}={v}" for k, v in self.params)
        return f"{self.name}({inner})"


def power_law_family(name: str, coefficient: CoefficientForm, exponent: ExponentForm,
                     params: Tuple[Tuple[str, str], ...] = ()) -> BasicFamily:
    descriptor = PowerLawDescriptor(coefficient, exponent)
    return BasicFamily(name=name, generator=descriptor.profile,
                       power_law=descriptor, params=params)


@families.register("parabolas", description="p_n(x) = n x^2, a_n = 1/n")
def parabolas() -> BasicFamily:
    return power_law_family(
        "parabolas",
        CoefficientForm("power", Fraction(1)),
        ExponentForm("constant", Fraction(2)),
    )


@families.register("power", description="p_{s,n}(x) = n |x|^s, a_n = n^(-2/s)")
def power(s: Number = 2) -> BasicFamily:
    exponent = as_fraction(s)
    return power_law_family(
        "power",
        CoefficientForm("power", Fraction(1)),
        ExponentForm("constant", exponent),
        params=(("s", str(exponent)),),
    )


@families.register("triangles", description="t_{alpha,n}(z) = |z| tan(alpha n/(n+1))")
def triangles(alpha: Number = math.pi / 4) -> BasicFamily:
    alpha = float(alpha)
    return power_law_family(
        "triangles",
        CoefficientForm("tangent", alpha),
        ExponentForm("constant", Fraction(1)),
        params=(("alpha", repr(alpha)),),
    )


@families.register("w", description="w_n(x) = |x|^((n+1)/n), a_n = n^(-n/(n+1))")
def w() -> BasicFamily:
    return power_law_family(
        "w",
        CoefficientForm("constant", 1.0),
        ExponentForm("harmonic_shift"),
    )


@families.register("discs", description="f_n(x) = 1/n - sqrt(1/n^2 - x^2), a_n = 1/n",
                   aliases=["disc"])
def discs() -> BasicFamily:
    return BasicFamily(name="discs", generator=DiscProfile)


def germ_ratio_sup(c_num: MP.mpf, e_num: Fraction, c_den: MP.mpf, e_den: Fraction,
                   x_max: MP.mpf) -> MP.mpf:
    """
    Supremum over (0, x_max] of (c_num x^e_num) / (c_den x^e_den)

    Returns:
        The supremum, or MP.inf when the ratio blows up at 0
    """
    d = e_num - e_den
    if d < 0:
        return MP.inf
    scale = c_num / c_den
    if d == 0:
        return scale
    return scale * mp_power(x_max, d)


def nested_closure_symbolic(descriptor: PowerLawDescriptor, m: int, n: int) -> bool:
    """
    Decide cl U(0,f_n) ⊆ U(0,f_m) for m < n exactly

    The closure is {(0,0)} ∪ {(x,y): |x| <= a_n, f_n(x) <= y <= 1/n}, so the
    inclusion holds iff a_n <= a_m and f_m < f_n on (0, a_n].

    Args:
        descriptor: Power-law form of the family
        m: Smaller index
        n: Larger index

    Returns:
        True when the inclusion holds
    """
    if not m < n:
        raise ArgumentError(f"expected m < n, got m={m}, n={n}")
    a_m = descriptor.half_width_mp(m)
    a_n = descriptor.half_width_mp(n)
    if a_n > a_m:
        return False
    sup = germ_ratio_sup(
        descriptor.coefficient_mp(m), descriptor.exponent(m),
        descriptor.coefficient_mp(n), descriptor.exponent(n),
        a_n,
    )
    return bool(sup < 1)


@dataclass_json
@dataclass
class AxiomCheck:
    name: str
    passed: bool
    violation: Optional[Dict[str, float]] = None
    note: str = ""


@dataclass_json
@dataclass
class AxiomReport:
    family: str
    n_max: int
    grid_size: int
    checks: List[AxiomCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> AxiomCheck:
        return next(c for c in self.checks if c.name == name)

    def failures(self) -> List[AxiomCheck]:
        return [c for c in self.checks if not c.passed]


def _first_violation(store: Dict[str, Optional[Dict[str, float]]], name: str,
                     sample: Dict[str, float]) -> None:
    if store.get(name) is None:
        store[name] = sample


def verify_basic(family: BasicFamily, n_max: int = 8, grid_size: int = 1000) -> AxiomReport:
    """
    Check the basic-family axioms for f_1..f_{n_max} on a grid

    Args:
        family: Family under test
        n_max: Largest index checked (>= 2)
        grid_size: Grid points per profile on [0, a_n] (>= 100)

    Returns:
        AxiomReport with one entry per axiom and the first violating sample
    """
    if n_max < 2:
        raise ArgumentError(f"n_max must be at least 2, got {n_max}")
    if grid_size < 100:
        raise ArgumentError(f"grid_size must be at least 100, got {grid_size}")

    names = ["endpoints", "monotone", "even", "inverse", "nested_closure"]
    violations: Dict[str, Optional[Dict[str, float]]] = {name: None for name in names}

    profiles = [family.profile(n) for n in range(1, n_max + 1)]
    grids = [np.linspace(0.0, p.half_width, grid_size) for p in profiles]

    for p, xs in zip(profiles, grids):
        n = p.n
        values = p.evaluate(xs)
        top = p.eval(p.half_width)
        if abs(values[0]) > TOL_F or abs(top - p.cap) > TOL_F:
            _first_violation(violations, "endpoints",
                             {"n": n, "f_at_0": float(values[0]), "f_at_a_n": top, "cap": p.cap})

        steps = np.diff(values)
        bad = np.nonzero(steps <= 0)[0]
        if bad.size:
            i = int(bad[0])
            _first_violation(violations, "monotone",
                             {"n": n, "x": float(xs[i + 1]), "step": float(steps[i])})

        mirrored = p.evaluate(-xs)
        if not np.array_equal(mirrored, values):
            i = int(np.nonzero(mirrored != values)[0][0])
            _first_violation(violations, "even",
                             {"n": n, "x": float(xs[i]), "f_neg": float(mirrored[i]),
                              "f_pos": float(values[i])})

        back = p.inverse_array(values)
        err = np.abs(back - xs)
        if np.max(err) > TOL_INV:
            i = int(np.argmax(err))
            _first_violation(violations, "inverse",
                             {"n": n, "x": float(xs[i]), "error": float(err[i])})

    for n_idx in range(1, n_max):
        outer_grid = grids[n_idx][1:]
        f_n = profiles[n_idx]
        heights_n = f_n.evaluate(outer_grid)
        for m_idx in range(n_idx):
            f_m = profiles[m_idx]
            if f_n.half_width > f_m.half_width + TOL_F:
                _first_violation(violations, "nested_closure",
                                 {"m": f_m.n, "n": f_n.n, "a_m": f_m.half_width,
                                  "a_n": f_n.half_width})
                continue
            heights_m = f_m.evaluate(outer_grid)
            bad = np.nonzero(heights_m >= heights_n)[0]
            if bad.size:
                i = int(bad[0])
                _first_violation(violations, "nested_closure",
                                 {"m": f_m.n, "n": f_n.n, "x": float(outer_grid[i]),
                                  "f_m": float(heights_m[i]), "f_n": float(heights_n[i])})

    notes = {
        "endpoints": "f_n(0) = 0 and f_n(a_n) = 1/n within tol_f",
        "monotone": "strict increase on the grid; proxy for continuity and injectivity",
        "even": "f_n(-x) == f_n(x) exactly",
        "inverse": "inv(f_n(x)) = x within tol_inv",
        "nested_closure": "a_n <= a_m and f_m < f_n on (0, a_n] for m < n",
    }
    checks = [AxiomCheck(name=name, passed=violations[name] is None,
                         violation=violations[name], note=notes[name]) for name in names]

    if family.power_law is not None:
        failing = None
        for n in range(2, n_max + 1):
            for m in range(1, n):
                if not nested_closure_symbolic(family.power_law, m, n):
                    failing = {"m": m, "n": n}
                    break
            if failing:
                break
        checks.append(AxiomCheck(
            name="nested_closure_symbolic",
            passed=failing is None,
            violation=failing,
            note="exact check of the same condition on the power-law form",
        ))

    report = AxiomReport(family=family.label, n_max=n_max, grid_size=grid_size, checks=checks)
    logger.info("verify_basic %s n_max=%d: %s", family.label, n_max,
                "pass" if report.passed else "fail")
    return report
