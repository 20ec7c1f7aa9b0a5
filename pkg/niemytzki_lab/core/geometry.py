"""
Geometry module for Niemytzki Lab

This module provides the profile neighborhoods U(x, f_n), the bounded lens
component between two overlapping neighborhoods, a raster flood-fill oracle
for that component, containment and mutual-refinement checks, and the power
map y -> y^(t/s) between power families.
"""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterator, List, Optional, Protocol, Tuple
import logging
import math

import numpy as np
from dataclasses_json import dataclass_json
from scipy import ndimage

from .errors import (
    AnchorMismatch, ArgumentError, DomainError, InvariantError, MembershipError,
)
from .profile import (
    MP, TOL_F, TOL_INV, BasicFamily, DiscProfile, ProfileFunction,
    as_fraction, germ_ratio_sup, mp_number, mp_power, parabolas, power,
)
from .workers import map_ordered

logger = logging.getLogger(__name__)

Point = Tuple[float, float]

CONTAINMENT_GRID = 2001
CONTAINMENT_REFINE = 64
DEFAULT_K_MAX = 128
# relative slack for ties in 50-digit arithmetic
EXACT_SLACK = MP.mpf("1e-30")


@dataclass(frozen=True)
class PowerGerm:
    """Exact description c*|t|^e capped at height `cap`"""
    coefficient: MP.mpf
    exponent: Fraction
    cap: MP.mpf

    def half_width(self) -> MP.mpf:
        return mp_power(self.cap / self.coefficient, 1 / self.exponent)


class ProfileShape(Protocol):
    """Region {(x,y): |x - anchor| <= half_width, height(x - anchor) < y < cap} plus its anchor"""
    anchor: float

    @property
    def cap(self) -> float: ...

    @property
    def half_width(self) -> float: ...

    def heights(self, ts: np.ndarray) -> np.ndarray: ...

    def power_germ(self) -> Optional[PowerGerm]: ...


def _region_contains(shape: ProfileShape, p: Point) -> bool:
    x, y = p
    if y < 0:
        raise DomainError(f"point {p!r} lies below the boundary line", {"x": x, "y": y})
    if x == shape.anchor and y == 0:
        return True
    t = x - shape.anchor
    if abs(t) > shape.half_width:
        return False
    return bool(shape.heights(np.array([t]))[0] < y < shape.cap)


@dataclass(frozen=True)
class Neighborhood:
    """U(anchor, f_n) for a basic family"""
    anchor: float
    family: BasicFamily
    n: int

    @property
    def profile(self) -> ProfileFunction:
        return self.family.profile(self.n)

    @property
    def cap(self) -> float:
        return 1.0 / self.n

    @property
    def half_width(self) -> float:
        return self.profile.half_width

    def heights(self, ts: np.ndarray) -> np.ndarray:
        return self.profile.evaluate(ts)

    def power_germ(self) -> Optional[PowerGerm]:
        descriptor = self.family.power_law
        if descriptor is None:
            return None
        return PowerGerm(descriptor.coefficient_mp(self.n), descriptor.exponent(self.n),
                         MP.mpf(1) / self.n)

    def contains(self, p: Point) -> bool:
        return _region_contains(self, p)


@dataclass(frozen=True)
class ImageRegion:
    """Image of a power(s) neighborhood under (x, y) -> (x, y^(t/s))"""
    anchor: float
    coefficient: float
    exponent: Fraction
    cap: float
    germ: PowerGerm = field(compare=False, repr=False)

    @property
    def half_width(self) -> float:
        return (self.cap / self.coefficient) ** (1.0 / float(self.exponent))

    def heights(self, ts: np.ndarray) -> np.ndarray:
        ax = np.minimum(np.abs(np.asarray(ts, dtype=float)), self.half_width)
        return self.coefficient * ax ** float(self.exponent)

    def power_germ(self) -> Optional[PowerGerm]:
        return self.germ

    def contains(self, p: Point) -> bool:
        return _region_contains(self, p)


def contains(neigh: Neighborhood, p: Point) -> bool:
    """
    Membership in U(x0, f_n)

    Args:
        neigh: The neighborhood
        p: Point (x, y) with y >= 0

    Returns:
        True iff p is the anchor or |x-x0| <= a_n and f_n(x-x0) < y < 1/n
    """
    return neigh.contains(p)


def neighborhoods_intersect(a: float, b: float, family: BasicFamily, n: int) -> bool:
    """
    Decide U(a,f_n) ∩ U(b,f_n) != ∅ for a < b

    The midpoint column meets both sets iff f_n((b-a)/2) < 1/n, i.e. iff
    (b-a)/2 < a_n; no other column can meet both when the midpoint does not.
    """
    if a >= b:
        raise ArgumentError(f"expected a < b, got a={a!r}, b={b!r}", {"a": a, "b": b})
    return b - a < 2 * family.profile(n).half_width


def saddle_point(a: float, b: float, family: BasicFamily, n: int) -> Point:
    """
    Highest point of the lens and lowest point of cl U(a) ∩ cl U(b)

    Returns:
        ((a+b)/2, f_n((b-a)/2))
    """
    if not neighborhoods_intersect(a, b, family, n):
        raise ArgumentError(
            f"U({a!r}, f_{n}) and U({b!r}, f_{n}) do not intersect",
            {"a": a, "b": b, "n": n},
        )
    return (a + b) / 2, family.profile(n).eval((b - a) / 2)


@dataclass(frozen=True)
class SaddleParams:
    u: float
    w: float
    c: float
    d: float


@dataclass(frozen=True)
class LensRegion:
    """
    Bounded component of H minus U(a,f_n) ∪ U(b,f_n)

    Members are (u, w) with a < u < b and 0 <= w <= h(u), where h is the
    lower envelope of the two translated profiles (+inf outside a profile's
    domain). Arcs and the saddle point belong to the lens; (a,0) and (b,0) do
    not. a == b gives the empty lens.
    """
    a: float
    b: float
    family: BasicFamily
    n: int

    def __post_init__(self):
        if self.a > self.b:
            raise ArgumentError(f"expected a <= b, got a={self.a!r}, b={self.b!r}")

    @property
    def profile(self) -> ProfileFunction:
        return self.family.profile(self.n)

    @property
    def empty(self) -> bool:
        """No bounded component: equal anchors or disjoint neighborhoods"""
        return self.a == self.b or self.b - self.a >= 2 * self.profile.half_width

    def roof(self, us) -> np.ndarray:
        us = np.asarray(us, dtype=float)
        profile = self.profile
        h = np.full(us.shape, np.inf)
        for anchor in (self.a, self.b):
            t = us - anchor
            inside = np.abs(t) <= profile.half_width
            part = np.full(us.shape, np.inf)
            part[inside] = profile.evaluate(t[inside])
            h = np.minimum(h, part)
        return h

    def contains_array(self, us, ws) -> np.ndarray:
        us = np.asarray(us, dtype=float)
        ws = np.asarray(ws, dtype=float)
        if self.empty:
            return np.zeros(np.broadcast(us, ws).shape, dtype=bool)
        return (self.a < us) & (us < self.b) & (ws >= 0) & (ws <= self.roof(us))

    def contains(self, p: Point) -> bool:
        return bool(self.contains_array(np.array([p[0]]), np.array([p[1]]))[0])

    def roof_max(self, samples: int = 10001) -> Point:
        """Highest sampled roof point over an odd grid of (a, b)"""
        if self.empty:
            raise ArgumentError("an empty lens has no roof")
        us = np.linspace(self.a, self.b, samples)[1:-1]
        h = self.roof(us)
        i = int(np.argmax(h))
        return float(us[i]), float(h[i])


def in_bounded_component(p: Point, lens: LensRegion) -> bool:
    """Membership in the lens; points below the axis are never members"""
    if p[1] < 0:
        return False
    return lens.contains(p)


def cd_parameters(u: float, w: float, lens: LensRegion) -> SaddleParams:
    """
    Recover the pair c <= d whose saddle point is (u, w)

    Args:
        u: Abscissa of a lens point
        w: Ordinate of a lens point
        lens: The lens

    Returns:
        SaddleParams with c = u - inv(w), d = u + inv(w)
    """
    if not lens.contains((u, w)):
        raise MembershipError(f"({u!r}, {w!r}) is not in the lens",
                              {"u": u, "w": w, "a": lens.a, "b": lens.b})
    profile = lens.profile
    r = profile.inverse(w)
    c, d = u - r, u + r
    if c < lens.a - TOL_INV or d > lens.b + TOL_INV:
        raise InvariantError(f"c={c!r}, d={d!r} not within [{lens.a!r}, {lens.b!r}]")
    if abs(profile.eval((d - c) / 2) - w) > TOL_INV or abs((c + d) / 2 - u) > TOL_INV:
        raise InvariantError(f"saddle point of ({c!r}, {d!r}) does not return ({u!r}, {w!r})")
    return SaddleParams(u=u, w=w, c=c, d=d)


def closure_intersection_min(a: float, b: float, family: BasicFamily, n: int,
                             samples: int = 10001) -> Point:
    """
    Lowest sampled point of cl U(a,f_n) ∩ cl U(b,f_n)

    The lower boundary of the intersection over [b - a_n, a + a_n] is
    max(f_n(x-a), f_n(x-b)); an odd grid includes the midpoint.
    """
    if not neighborhoods_intersect(a, b, family, n):
        raise ArgumentError("closures meet only when the neighborhoods intersect")
    profile = family.profile(n)
    xs = np.linspace(b - profile.half_width, a + profile.half_width, samples)
    lower = np.maximum(profile.evaluate(xs - a), profile.evaluate(xs - b))
    i = int(np.argmin(lower))
    return float(xs[i]), float(lower[i])


@dataclass
class RasterLabels:
    xs: np.ndarray
    ys: np.ndarray
    labels: np.ndarray
    n_components: int
    bounded_labels: List[int]
    agreement: float
    off_band_cells: int

    @property
    def bounded_label(self) -> Optional[int]:
        return self.bounded_labels[0] if len(self.bounded_labels) == 1 else None

    def rows(self) -> Iterator[Tuple[float, float, int]]:
        """Row-major (x, y, label) triples, bottom row first"""
        for j, y in enumerate(self.ys):
            for i, x in enumerate(self.xs):
                yield float(x), float(y), int(self.labels[j, i])


def _marked_cells(lens: LensRegion, x_edges: np.ndarray, y_edges: np.ndarray) -> np.ndarray:
    # A cell is marked when its rectangle meets U(a) ∪ U(b); rows index y
    profile = lens.profile
    marked = np.zeros((y_edges.size - 1, x_edges.size - 1), dtype=bool)
    y0 = y_edges[:-1][:, None]
    y1 = y_edges[1:][:, None]
    for anchor in (lens.a, lens.b):
        left = x_edges[:-1] - anchor
        right = x_edges[1:] - anchor
        nearest = np.where((left <= 0) & (right >= 0), 0.0,
                           np.minimum(np.abs(left), np.abs(right)))
        floor = np.full(nearest.shape, np.inf)
        reach = nearest <= profile.half_width
        floor[reach] = profile.evaluate(nearest[reach])
        marked |= (y1 > floor[None, :]) & (y0 < profile.cap)
    return marked


def raster_components(lens: LensRegion, grid: int = 800) -> RasterLabels:
    """
    Flood-fill oracle for the two complement components

    Rasterises [a - 2a_n, b + 2a_n] x [0, 1.2/n], labels the unmarked cells
    4-connectively, and compares the component that avoids the left, right
    and top edges with the analytic lens off a 2-cell boundary band.

    Args:
        lens: The lens (a == b allowed)
        grid: Cells per side (>= 100)

    Returns:
        RasterLabels
    """
    if grid < 100:
        raise ArgumentError(f"grid must be at least 100, got {grid}")
    profile = lens.profile
    a_n = profile.half_width
    x_edges = np.linspace(lens.a - 2 * a_n, lens.b + 2 * a_n, grid + 1)
    y_edges = np.linspace(0.0, 1.2 / lens.n, grid + 1)
    xs = 0.5 * (x_edges[:-1] + x_edges[1:])
    ys = 0.5 * (y_edges[:-1] + y_edges[1:])

    marked = _marked_cells(lens, x_edges, y_edges)
    labels, count = ndimage.label(~marked)

    frame = set(np.unique(labels[:, 0])) | set(np.unique(labels[:, -1])) | set(np.unique(labels[-1, :]))
    bounded = [lab for lab in range(1, count + 1) if lab not in frame]

    grid_x, grid_y = np.meshgrid(xs, ys)
    analytic = lens.contains_array(grid_x, grid_y)
    block = np.ones((5, 5), dtype=bool)
    band = ndimage.binary_dilation(analytic, structure=block) & \
        ~ndimage.binary_erosion(analytic, structure=block)
    raster_lens = np.isin(labels, bounded) if len(bounded) == 1 else np.zeros_like(analytic)
    off = ~band
    agreement = float(np.mean(raster_lens[off] == analytic[off])) if off.any() else 1.0

    logger.debug("raster %s n=%d [%r,%r]: %d components, agreement %.6f",
                 lens.family.label, lens.n, lens.a, lens.b, count, agreement)
    return RasterLabels(xs=xs, ys=ys, labels=labels, n_components=int(count),
                        bounded_labels=bounded, agreement=agreement,
                        off_band_cells=int(off.sum()))


@dataclass_json
@dataclass
class ContainmentResult:
    contained: bool
    reason: str
    x: Optional[float] = None


def _leq_mp(lhs: MP.mpf, rhs: MP.mpf) -> bool:
    return bool(lhs <= rhs * (1 + EXACT_SLACK))


def _exact_containment(inner: PowerGerm, outer: PowerGerm) -> ContainmentResult:
    if not _leq_mp(inner.cap, outer.cap):
        return ContainmentResult(False, "inner cap exceeds outer cap")
    a_in = inner.half_width()
    if not _leq_mp(a_in, outer.half_width()):
        return ContainmentResult(False, "inner half width exceeds outer half width")
    sup = germ_ratio_sup(outer.coefficient, outer.exponent,
                         inner.coefficient, inner.exponent, a_in)
    if sup == MP.inf:
        return ContainmentResult(False, "outer profile dominates near the anchor", 0.0)
    if not _leq_mp(sup, MP.mpf(1)):
        return ContainmentResult(False, "outer profile exceeds inner profile", float(a_in))
    return ContainmentResult(True, "exact power-law comparison")


def _grid_containment(inner: ProfileShape, outer: ProfileShape) -> ContainmentResult:
    if inner.cap > outer.cap:
        return ContainmentResult(False, "inner cap exceeds outer cap")
    a_in = inner.half_width
    if a_in > outer.half_width + TOL_F:
        return ContainmentResult(False, "inner half width exceeds outer half width")

    def _slack(ts: np.ndarray) -> np.ndarray:
        return inner.heights(ts) - outer.heights(np.minimum(ts, outer.half_width))

    ts = np.linspace(0.0, a_in, CONTAINMENT_GRID)
    slack = _slack(ts)
    bad = np.nonzero(slack < -TOL_F)[0]
    if bad.size:
        return ContainmentResult(False, "outer profile exceeds inner profile", float(ts[bad[0]]))
    # refine around the tightest grid points
    for i in np.argsort(slack)[:3]:
        lo = ts[max(i - 1, 0)]
        hi = ts[min(i + 1, ts.size - 1)]
        fine = np.linspace(lo, hi, 2 * CONTAINMENT_REFINE + 1)
        fine_slack = _slack(fine)
        bad = np.nonzero(fine_slack < -TOL_F)[0]
        if bad.size:
            return ContainmentResult(False, "outer profile exceeds inner profile",
                                     float(fine[bad[0]]))
    return ContainmentResult(True, "grid comparison with local refinement")


def containment_check(inner: ProfileShape, outer: ProfileShape) -> ContainmentResult:
    """
    Decide inner ⊆ outer for two regions at the same anchor

    The inclusion holds iff cap_in <= cap_out, a_in <= a_out and
    f_out <= f_in on [0, a_in].

    Returns:
        ContainmentResult with the failing condition and a witness abscissa
    """
    if inner.anchor != outer.anchor:
        raise AnchorMismatch(inner.anchor, outer.anchor)
    germ_in, germ_out = inner.power_germ(), outer.power_germ()
    if germ_in is not None and germ_out is not None:
        return _exact_containment(germ_in, germ_out)
    return _grid_containment(inner, outer)


def neighborhood_contained(inner: ProfileShape, outer: ProfileShape) -> bool:
    return containment_check(inner, outer).contained


def containment_witness(inner: ProfileShape, outer: ProfileShape) -> Optional[float]:
    """Abscissa where the outer profile exceeds the inner one, if any"""
    return containment_check(inner, outer).x


class RefinementVerdict(str, Enum):
    EQUIVALENT = "Equivalent"
    A_FINER = "AFiner"
    B_FINER = "BFiner"
    INCOMPARABLE = "Incomparable"
    UNKNOWN = "Unknown"


@dataclass_json
@dataclass
class RefinementStep:
    n: int
    status: str
    k: Optional[int] = None
    note: str = ""


@dataclass_json
@dataclass
class RefinementResult:
    verdict: RefinementVerdict
    family_a: str
    family_b: str
    n_max: int
    k_max: int
    b_refines_a: List[RefinementStep] = field(default_factory=list)
    a_refines_b: List[RefinementStep] = field(default_factory=list)

    def witnesses(self, direction: str = "b_refines_a") -> dict:
        steps = getattr(self, direction)
        return {s.n: s.k for s in steps if s.status == "found"}


def _inner_asymptotics(family: BasicFamily):
    # (inf of exponents, attained, uniform exponent, sup of coefficients or None, sup attained)
    descriptor = family.power_law
    if descriptor is None:
        profile = family.profile(1)
        if isinstance(profile, DiscProfile):
            return profile.leading_term()[1], True, True, None, False
        return None
    inf_e, attained = descriptor.exponent_form.infimum()
    coefficient = descriptor.coefficient_form
    return (inf_e, attained, descriptor.exponent_form.uniform,
            coefficient.envelope_mp(), coefficient.envelope_attained)


def _no_inner_fits(outer: ProfileFunction, inner_family: BasicFamily) -> Optional[str]:
    """
    Reason why no inner index k can fit inside the outer profile, if any

    Uses c*x^t / c'*x^s -> 0 for s < t: an inner profile that is eventually
    below the outer one near the anchor cannot sit inside it.
    """
    asymptotics = _inner_asymptotics(inner_family)
    if asymptotics is None:
        return None
    inf_e, attained, uniform, sup_c, sup_attained = asymptotics
    c_out, e_out = outer.leading_term()
    if inf_e > e_out or (inf_e == e_out and not attained):
        return f"every inner exponent exceeds the outer exponent {e_out}"
    if uniform and inf_e == e_out and sup_c is not None:
        c_out_mp = mp_number(c_out)
        if sup_c < c_out_mp or (sup_c == c_out_mp and not sup_attained):
            return (f"equal exponents {e_out} and every inner coefficient "
                    f"stays below {c_out!r}")
    return None


def _refine_one(args) -> RefinementStep:
    outer_family, inner_family, n, k_max = args
    outer = Neighborhood(0.0, outer_family, n)
    reason = _no_inner_fits(outer.profile, inner_family)
    if reason is not None:
        return RefinementStep(n=n, status="disproved", note=reason)
    for k in range(1, k_max + 1):
        if neighborhood_contained(Neighborhood(0.0, inner_family, k), outer):
            return RefinementStep(n=n, status="found", k=k)
    return RefinementStep(n=n, status="unresolved", note=f"no k <= {k_max}")


def _direction_status(steps: List[RefinementStep]) -> str:
    if all(s.status == "found" for s in steps):
        return "found"
    if any(s.status == "disproved" for s in steps):
        return "disproved"
    return "unresolved"


def mutual_refinement(fam_a: BasicFamily, fam_b: BasicFamily, n_max: int = 8,
                      k_max: int = DEFAULT_K_MAX) -> RefinementResult:
    """
    Compare the boundary-point bases of two families at anchor 0

    For every n <= n_max, looks for the least k <= k_max with
    U(0,B_k) ⊆ U(0,A_n) (B refines A), and symmetrically.

    Returns:
        RefinementResult; BFiner means the B topology is strictly finer
    """
    if n_max < 1 or k_max < 1:
        raise ArgumentError("n_max and k_max must be positive")
    b_in_a = map_ordered(_refine_one, [(fam_a, fam_b, n, k_max) for n in range(1, n_max + 1)])
    a_in_b = map_ordered(_refine_one, [(fam_b, fam_a, n, k_max) for n in range(1, n_max + 1)])

    table = {
        ("found", "found"): RefinementVerdict.EQUIVALENT,
        ("found", "disproved"): RefinementVerdict.B_FINER,
        ("disproved", "found"): RefinementVerdict.A_FINER,
        ("disproved", "disproved"): RefinementVerdict.INCOMPARABLE,
    }
    verdict = table.get((_direction_status(b_in_a), _direction_status(a_in_b)),
                        RefinementVerdict.UNKNOWN)
    logger.info("mutual_refinement %s vs %s: %s", fam_a.label, fam_b.label, verdict.value)
    return RefinementResult(verdict=verdict, family_a=fam_a.label, family_b=fam_b.label,
                            n_max=n_max, k_max=k_max, b_refines_a=b_in_a, a_refines_b=a_in_b)


def power_map_image(s: float, t: float, neigh: Neighborhood) -> ImageRegion:
    """
    Image of U(x0, p_{s,n}) under (x, y) -> (x, y^(t/s))

    y > n|x|^s iff y^(t/s) > n^(t/s)|x|^t, so the image is the region under
    the cap (1/n)^(t/s) above the profile n^(t/s)|x|^t.
    """
    s_q, t_q = as_fraction(s), as_fraction(t)
    if s_q <= 0 or t_q <= 0:
        raise ArgumentError(f"s and t must be positive, got s={s!r}, t={t!r}")
    descriptor = neigh.family.power_law
    if (descriptor is None or not descriptor.exponent_form.uniform
            or descriptor.exponent(1) != s_q
            or descriptor.coefficient_form.form != "power"
            or descriptor.coefficient_form.param != 1):
        raise ArgumentError(f"neighborhood must come from power(s={s_q})",
                            {"family": neigh.family.label})
    ratio = t_q / s_q
    n = neigh.n
    coefficient = mp_power(MP.mpf(n), ratio)
    germ = PowerGerm(coefficient, t_q, 1 / coefficient)
    return ImageRegion(anchor=neigh.anchor, coefficient=float(coefficient), exponent=t_q,
                       cap=float(germ.cap), germ=germ)


@dataclass_json
@dataclass
class InterleaveStep:
    n: int
    k_inside_image: Optional[int]
    k_image_inside: Optional[int]


@dataclass_json
@dataclass
class PowerMapReport:
    s: str
    t: str
    interleaves: bool
    steps: List[InterleaveStep] = field(default_factory=list)


def _least_index(test, start: int) -> Optional[int]:
    # least k near the analytic candidate for which test(k) holds
    for k in range(max(1, start - 1), start + 3):
        if test(k):
            return k
    return None


def power_map_interleaves(s: float, t: float, n_max: int = 8) -> PowerMapReport:
    """
    Check that images of power(s) neighborhoods interleave with power(t) ones

    For each n: some power(t) neighborhood sits inside the image of the n-th
    power(s) neighborhood, and some image sits inside the n-th power(t)
    neighborhood. Candidates are ceil(n^(t/s)) and ceil(n^(s/t)).
    """
    s_q, t_q = as_fraction(s), as_fraction(t)
    source, target = power(s_q), power(t_q)
    steps = []
    for n in range(1, n_max + 1):
        image = power_map_image(s, t, Neighborhood(0.0, source, n))
        target_n = Neighborhood(0.0, target, n)
        k_in = _least_index(
            lambda k: neighborhood_contained(Neighborhood(0.0, target, k), image),
            math.ceil(n ** float(t_q / s_q)),
        )
        k_out = _least_index(
            lambda k: neighborhood_contained(
                power_map_image(s, t, Neighborhood(0.0, source, k)), target_n),
            math.ceil(n ** float(s_q / t_q)),
        )
        steps.append(InterleaveStep(n=n, k_inside_image=k_in, k_image_inside=k_out))
    ok = all(st.k_inside_image is not None and st.k_image_inside is not None for st in steps)
    return PowerMapReport(s=str(s_q), t=str(t_q), interleaves=ok, steps=steps)


def disc_sandwich(n: int, grid_size: int = 10000) -> Tuple[bool, bool]:
    """
    Check both parabola/disc inequalities for index n on a grid

    Returns:
        (1/n - sqrt(1/n^2 - x^2) <= n x^2 on [-1/n, 1/n],
         n x^2 <= 1/(2n) - sqrt(1/(4n^2) - x^2) on [-1/(2n), 1/(2n)])
    """
    parabola = parabolas().profile(n)
    outer_disc, inner_disc = DiscProfile(n), DiscProfile(2 * n)
    xs = np.linspace(-1.0 / n, 1.0 / n, grid_size)
    upper = bool(np.all(outer_disc.evaluate(xs) <= parabola.evaluate(xs) + TOL_F))
    xs = np.linspace(-0.5 / n, 0.5 / n, grid_size)
    lower = bool(np.all(parabola.evaluate(xs) <= inner_disc.evaluate(xs) + TOL_F))
    return upper, lower
