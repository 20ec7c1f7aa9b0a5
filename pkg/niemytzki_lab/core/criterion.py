"""
Criterion module for Niemytzki Lab

This module decides non-homeomorphy of two power-law topologies from the
boundary-trace criterion. For a source family P = {c_n x^e_n}, a target
family T = {C_k x^E} with uniform exponent E and indices m > n, the criterion
ratio reduces to the normal form

    A_k(x) = (C_k / C_1) * Q^E * x^(E (1/e_m - 1/e_n)),
    Q = c_n^(1/e_n) / c_m^(1/e_m).

If for every n some m > n keeps limsup A_k below 1 - margin for every k, the
criterion inequality fails along a subsequence where the boundary trace
quotient has liminf <= 1, so the spaces are not homeomorphic. The converse
does not hold: Inconclusive is never a homeomorphy claim.
"""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple
import logging
import math

from dataclasses_json import config as json_config, dataclass_json

from .errors import ArgumentError, UnsupportedFamily, UnsupportedTarget
from .geometry import DEFAULT_K_MAX, RefinementVerdict, mutual_refinement
from .profile import MP, BasicFamily, PowerLawDescriptor, mp_number, mp_power
from .registry import families, proxy_for, register_proxy
from .workers import map_ordered

logger = logging.getLogger(__name__)

DEFAULT_MARGIN = 1e-9
DEFAULT_M_MAX = 64
# relative outward widening applied after every interval operation
WIDEN = MP.mpf("1e-40")

register_proxy("discs", "parabolas")


class Interval:
    """Closed interval [lo, hi] of positive reals at 50 digits, rounded outward"""

    def __init__(self, lo, hi=None):
        lo = mp_number(lo)
        hi = lo if hi is None else mp_number(hi)
        if lo > hi:
            raise ArgumentError(f"empty interval [{lo}, {hi}]")
        self.lo = lo - abs(lo) * WIDEN
        self.hi = hi + abs(hi) * WIDEN

    def __mul__(self, other: "Interval") -> "Interval":
        products = [self.lo * other.lo, self.lo * other.hi,
                    self.hi * other.lo, self.hi * other.hi]
        return Interval(min(products), max(products))

    def __truediv__(self, other: "Interval") -> "Interval":
        if other.lo <= 0 <= other.hi:
            raise ArgumentError("division by an interval containing zero")
        return self * Interval(1 / other.hi, 1 / other.lo)

    def power(self, exponent: Fraction) -> "Interval":
        """Monotone power of a positive interval"""
        if self.lo <= 0:
            raise ArgumentError("rational powers need a positive interval")
        ends = [mp_power(self.lo, exponent), mp_power(self.hi, exponent)]
        return Interval(min(ends), max(ends))

    @property
    def upper(self) -> float:
        # next double above the 50-digit endpoint
        return math.nextafter(float(self.hi), math.inf)

    @property
    def lower(self) -> float:
        return math.nextafter(float(self.lo), -math.inf)

    def midpoint(self) -> float:
        return float((self.lo + self.hi) / 2)

    def to_list(self) -> List[float]:
        return [self.lower, self.upper]

    def __repr__(self) -> str:
        return f"Interval({MP.nstr(self.lo, 17)}, {MP.nstr(self.hi, 17)})"


@dataclass(frozen=True)
class ExponentTerm:
    """K * x^E with K in an interval"""
    coefficient: Interval
    x_exponent: Fraction

    def __mul__(self, other: "ExponentTerm") -> "ExponentTerm":
        return ExponentTerm(self.coefficient * other.coefficient,
                            self.x_exponent + other.x_exponent)

    def __truediv__(self, other: "ExponentTerm") -> "ExponentTerm":
        return ExponentTerm(self.coefficient / other.coefficient,
                            self.x_exponent - other.x_exponent)

    def power(self, exponent: Fraction) -> "ExponentTerm":
        return ExponentTerm(self.coefficient.power(exponent), self.x_exponent * exponent)


class LimsupKind(str, Enum):
    ZERO = "Zero"
    FINITE = "Finite"
    INFINITE = "Infinite"


@dataclass(frozen=True)
class LimsupClass:
    kind: LimsupKind
    bound: Optional[Interval] = None

    def describe(self) -> str:
        if self.kind is LimsupKind.FINITE:
            return f"Finite([{self.bound.lower!r}, {self.bound.upper!r}])"
        return self.kind.value


def limsup_class(term: ExponentTerm) -> LimsupClass:
    """
    Classify limsup_{x -> 0+} of K * x^E

    Returns:
        Zero for E > 0, Finite(K) for E = 0, Infinite for E < 0
    """
    if term.x_exponent > 0:
        return LimsupClass(LimsupKind.ZERO)
    if term.x_exponent == 0:
        return LimsupClass(LimsupKind.FINITE, term.coefficient)
    return LimsupClass(LimsupKind.INFINITE)


def _power_law(family: BasicFamily) -> PowerLawDescriptor:
    if family.power_law is None:
        raise UnsupportedFamily(family.label, "no power-law form")
    return family.power_law


def _check_pair(source: BasicFamily, target: BasicFamily) -> Tuple[PowerLawDescriptor, PowerLawDescriptor]:
    src, tgt = _power_law(source), _power_law(target)
    if not tgt.exponent_form.uniform:
        raise UnsupportedTarget(target.label)
    return src, tgt


def _source_quotient(src: PowerLawDescriptor, target_exponent: Fraction,
                     n: int, m: int) -> ExponentTerm:
    # (p_m^-1(x) / p_n^-1(x))^E
    e_n, e_m = src.exponent(n), src.exponent(m)
    inv_n = ExponentTerm(Interval(src.coefficient_mp(n)).power(1 / e_n), Fraction(0))
    inv_m = ExponentTerm(Interval(src.coefficient_mp(m)).power(1 / e_m), Fraction(0))
    q = inv_n / inv_m
    return ExponentTerm(q.coefficient, 1 / e_m - 1 / e_n).power(target_exponent)


def exponent_ratio_term(source: BasicFamily, target: BasicFamily,
                        n: int, m: int, k: int) -> ExponentTerm:
    """
    Normal form of the criterion ratio for fixed n, m, k

    Args:
        source: Family p_n whose inverses enter the ratio
        target: Family t_k with an exponent independent of k
        n: Criterion index
        m: Larger source index
        k: Target index

    Returns:
        (C_k/C_1) * Q^E * x^(E (1/e_m - 1/e_n))
    """
    src, tgt = _check_pair(source, target)
    if not m > n >= 1:
        raise ArgumentError(f"expected m > n >= 1, got n={n}, m={m}", {"n": n, "m": m})
    if k < 1:
        raise ArgumentError(f"target index must be positive, got {k}")
    quotient = _source_quotient(src, tgt.exponent(1), n, m)
    scale = Interval(tgt.coefficient_mp(k)) / Interval(tgt.coefficient_mp(1))
    return ExponentTerm(scale, Fraction(0)) * quotient


def envelope_ratio_term(source: BasicFamily, target: BasicFamily,
                        n: int, m: int) -> Optional[ExponentTerm]:
    """Same normal form with C_k replaced by sup_k C_k, or None when unbounded"""
    src, tgt = _check_pair(source, target)
    if not m > n >= 1:
        raise ArgumentError(f"expected m > n >= 1, got n={n}, m={m}", {"n": n, "m": m})
    envelope = tgt.coefficient_form.envelope_mp()
    if envelope is None:
        return None
    quotient = _source_quotient(src, tgt.exponent(1), n, m)
    scale = Interval(envelope) / Interval(tgt.coefficient_mp(1))
    return ExponentTerm(scale, Fraction(0)) * quotient


class VerdictKind(str, Enum):
    NOT_HOMEOMORPHIC = "NotHomeomorphic"
    INCONCLUSIVE = "Inconclusive"


@dataclass_json
@dataclass
class Witness:
    n: int
    m: int


@dataclass_json
@dataclass
class FailureReason:
    orientation: List[str]
    n: Optional[int] = None
    m: Optional[int] = None
    k: Optional[int] = None
    reason: str = ""


@dataclass_json
@dataclass
class ProbeRow:
    x: float
    numeric: float
    predicted: float
    deviation: float


@dataclass_json
@dataclass
class ProbeReport:
    source: str
    target: str
    n: int
    m: int
    k: int
    substitution: str
    max_deviation: float
    rows: List[ProbeRow] = field(default_factory=list)


@dataclass_json
@dataclass
class Verdict:
    kind: VerdictKind = field(metadata=json_config(field_name="verdict"))
    orientation: Optional[List[str]] = None
    witnesses: List[Witness] = field(default_factory=list)
    closure_rule: Optional[str] = None
    certificate_lines: List[str] = field(default_factory=list)
    reasons: List[FailureReason] = field(default_factory=list)
    proxies: List[str] = field(default_factory=list)
    probes: Optional[List[ProbeReport]] = None

    @property
    def witness_map(self) -> dict:
        return {w.n: w.m for w in self.witnesses}


@dataclass
class CriterionConfig:
    n_max: int = 8
    m_max: int = DEFAULT_M_MAX
    k_max: int = DEFAULT_K_MAX
    margin: float = DEFAULT_MARGIN
    probes: bool = False


def closure_rule(source: BasicFamily, target: BasicFamily) -> Optional[str]:
    """
    Name the rule that extends finitely many witnesses to every n, if any

    harmonic-shift-positive-exponent: e_n = (n+1)/n makes the x-exponent
    E (m/(m+1) - n/(n+1)) positive for every m > n.
    vanishing-source-quotient: c_n = n^p with p > 0 and a constant exponent
    gives Q = (n/m)^(p/e) -> 0 as m grows, while a bounded target envelope
    keeps sup_k C_k/C_1 finite.
    """
    src, tgt = _check_pair(source, target)
    if src.exponent_form.form == "harmonic_shift":
        return "harmonic-shift-positive-exponent"
    coefficient = src.coefficient_form
    if (src.exponent_form.uniform and coefficient.form == "power" and coefficient.param > 0
            and tgt.coefficient_form.bounded):
        return "vanishing-source-quotient"
    return None


def _scaled_upper(src_quotient: ExponentTerm, tgt: PowerLawDescriptor, k: int) -> float:
    scale = Interval(tgt.coefficient_mp(k)) / Interval(tgt.coefficient_mp(1))
    return (ExponentTerm(scale, Fraction(0)) * src_quotient).coefficient.upper


def _first_failing_k(source: BasicFamily, target: BasicFamily, n: int, m: int,
                     threshold: float, k_max: int) -> Optional[int]:
    src, tgt = _check_pair(source, target)
    quotient = _source_quotient(src, tgt.exponent(1), n, m)
    coefficient = tgt.coefficient_form
    if coefficient.form == "power" and coefficient.param < 0:
        # C_k decreasing: k = 1 is the largest
        return 1 if _scaled_upper(quotient, tgt, 1) >= threshold else None
    # C_k nondecreasing in k: bisect for the first k over the threshold
    if _scaled_upper(quotient, tgt, k_max) < threshold:
        return None
    lo, hi = 1, k_max
    while lo < hi:
        mid = (lo + hi) // 2
        if _scaled_upper(quotient, tgt, mid) >= threshold:
            hi = mid
        else:
            lo = mid + 1
    return lo


def _search_m(args) -> Tuple[int, Optional[int], List[str], List[FailureReason]]:
    source, target, n, config = args
    src, tgt = _check_pair(source, target)
    orientation = [source.label, target.label]
    threshold = 1 - config.margin
    target_exponent = tgt.exponent(1)
    reasons: List[FailureReason] = []
    for m in range(n + 1, config.m_max + 1):
        x_exponent = target_exponent * (1 / src.exponent(m) - 1 / src.exponent(n))
        if x_exponent > 0:
            line = (f"n={n}: m={m} gives x-exponent {x_exponent} > 0, "
                    f"so limsup A_k = 0 for every k")
            return n, m, [line], reasons
        if x_exponent < 0:
            reasons.append(FailureReason(orientation, n, m, None,
                                         f"x-exponent {x_exponent} < 0, limsup is infinite"))
            continue
        envelope = envelope_ratio_term(source, target, n, m)
        if envelope is not None and envelope.coefficient.upper < threshold:
            line = (f"n={n}: m={m} gives x-exponent 0 and sup_k limsup A_k <= "
                    f"{envelope.coefficient.upper!r} < 1 - margin")
            return n, m, [line], reasons
        k = _first_failing_k(source, target, n, m, threshold, config.k_max)
        note = "coefficient envelope unbounded" if envelope is None else \
            f"coefficient envelope {envelope.coefficient.upper!r} >= 1 - margin"
        reasons.append(FailureReason(orientation, n, m, k, note))
    return n, None, [], reasons


def refute_orientation(source: BasicFamily, target: BasicFamily,
                       config: Optional[CriterionConfig] = None) -> Verdict:
    """
    Search witnesses m(n) that break the criterion for one orientation

    Args:
        source: Family whose inverses enter the ratio
        target: Family with an index-independent exponent
        config: Search bounds and margin

    Returns:
        NotHomeomorphic when every n <= n_max has a witness and a closure
        rule covers all n; Inconclusive otherwise
    """
    config = config or CriterionConfig()
    if config.n_max < 1 or config.m_max < 2 or not 0 < config.margin < 1:
        raise ArgumentError("n_max, m_max and margin out of range",
                            {"n_max": config.n_max, "m_max": config.m_max, "margin": config.margin})
    rule = closure_rule(source, target)
    orientation = [source.label, target.label]
    results = map_ordered(_search_m, [(source, target, n, config)
                                      for n in range(1, config.n_max + 1)])

    witnesses: List[Witness] = []
    lines: List[str] = [f"orientation: source {source.label}, target {target.label}"]
    reasons: List[FailureReason] = []
    missing = []
    for n, m, found_lines, failed in results:
        if m is None:
            missing.append(n)
            reasons.extend(failed)
        else:
            witnesses.append(Witness(n=n, m=m))
            lines.extend(found_lines)

    if not missing and rule is not None:
        lines.append(f"closure rule {rule} extends the witnesses to every n")
        lines.append("any homeomorphism would force liminf of the boundary-trace quotient "
                     "<= 1 with the criterion ratio bounded below 1 on that subsequence; "
                     "the criterion inequality fails")
        logger.info("refute_orientation %s -> %s: NotHomeomorphic", source.label, target.label)
        return Verdict(kind=VerdictKind.NOT_HOMEOMORPHIC, orientation=orientation,
                       witnesses=witnesses, closure_rule=rule, certificate_lines=lines)

    if missing:
        lines.append(f"no witness m <= {config.m_max} for n in {missing}")
    if rule is None:
        reasons.append(FailureReason(orientation, reason="no closure rule covers every n"))
        lines.append("no closure rule extends finite witnesses to every n")
    lines.append("Inconclusive: the criterion is necessary only; this is not a homeomorphy claim")
    logger.info("refute_orientation %s -> %s: Inconclusive", source.label, target.label)
    return Verdict(kind=VerdictKind.INCONCLUSIVE, orientation=orientation, witnesses=witnesses,
                   closure_rule=rule, certificate_lines=lines, reasons=reasons)


def _with_proxy(family: BasicFamily, config: CriterionConfig) -> Tuple[BasicFamily, Optional[str]]:
    if family.power_law is not None:
        return family, None
    stand_in_name = proxy_for(family.name)
    if stand_in_name is None:
        raise UnsupportedFamily(family.label)
    stand_in = families.build(stand_in_name)
    check = mutual_refinement(family, stand_in, config.n_max, config.k_max)
    if check.verdict is not RefinementVerdict.EQUIVALENT:
        raise UnsupportedFamily(family.label, f"proxy {stand_in.label} is {check.verdict.value}")
    witnesses = check.witnesses("b_refines_a")
    note = (f"{family.label} -> {stand_in.label}: mutual refinement Equivalent for "
            f"n <= {config.n_max} (k witnesses {witnesses})")
    return stand_in, note


def numeric_ratio_probe(source: BasicFamily, target: BasicFamily, n: int, m: int, k: int,
                        x0: float = 1e-4, ratio: float = 0.5, points: int = 40) -> ProbeReport:
    """
    Evaluate the criterion ratio numerically and compare with its normal form

    Uses delta(x) = p_n^-1(x), which is admissible because delta cancels.
    """
    src, tgt = _check_pair(source, target)
    term = exponent_ratio_term(source, target, n, m, k)
    predicted_coefficient = term.coefficient.midpoint()

    def inverse(desc: PowerLawDescriptor, i: int, x: float) -> float:
        return (x / desc.coefficient(i)) ** (1.0 / float(desc.exponent(i)))

    def value(desc: PowerLawDescriptor, i: int, x: float) -> float:
        return desc.coefficient(i) * abs(x) ** float(desc.exponent(i))

    rows = []
    for j in range(points):
        x = x0 * ratio ** j
        delta = inverse(src, n, x)
        numeric = value(tgt, k, inverse(src, m, x) * delta / inverse(src, n, x)) / value(tgt, 1, delta)
        predicted = predicted_coefficient * x ** float(term.x_exponent)
        deviation = abs(numeric - predicted) / abs(predicted)
        rows.append(ProbeRow(x=x, numeric=numeric, predicted=predicted, deviation=deviation))
    return ProbeReport(source=source.label, target=target.label, n=n, m=m, k=k,
                       substitution="delta(x) = p_n^-1(x)",
                       max_deviation=max(r.deviation for r in rows), rows=rows)


def refute(fam_a: BasicFamily, fam_b: BasicFamily,
           config: Optional[CriterionConfig] = None) -> Verdict:
    """
    Try both orientations of the criterion

    Args:
        fam_a: First family (power-law or with a registered proxy)
        fam_b: Second family
        config: Search bounds and margin

    Returns:
        The first certifying orientation's Verdict, else Inconclusive with
        both orientations' reasons
    """
    config = config or CriterionConfig()
    a, proxy_a = _with_proxy(fam_a, config)
    b, proxy_b = _with_proxy(fam_b, config)
    proxies = [p for p in (proxy_a, proxy_b) if p]

    reasons: List[FailureReason] = []
    lines: List[str] = []
    for source, target in ((a, b), (b, a)):
        try:
            verdict = refute_orientation(source, target, config)
        except UnsupportedTarget as e:
            reasons.append(FailureReason([source.label, target.label], reason=e.message))
            lines.append(f"orientation {source.label} -> {target.label} skipped: {e.message}")
            continue
        if verdict.kind is VerdictKind.NOT_HOMEOMORPHIC:
            verdict.proxies = proxies
            verdict.certificate_lines = [f"proxy {p}" for p in proxies] + verdict.certificate_lines
            if config.probes:
                verdict.probes = [numeric_ratio_probe(source, target, w.n, w.m, 1)
                                  for w in verdict.witnesses]
            return verdict
        reasons.extend(verdict.reasons)
        lines.extend(verdict.certificate_lines)

    return Verdict(kind=VerdictKind.INCONCLUSIVE, certificate_lines=[f"proxy {p}" for p in proxies] + lines,
                   reasons=reasons, proxies=proxies)
