"""
Runner module for Niemytzki Lab

This module resolves family selectors, parses family spec files and executes
one run per command, writing the report, summary and data artifacts.
"""
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple
import json
import logging
import os

from pydantic import ValidationError

from .core.criterion import CriterionConfig, refute
from .core.errors import ArgumentError, AxiomError, LabError, ParseError
from .core.geometry import (
    LensRegion, mutual_refinement, neighborhoods_intersect, power_map_interleaves,
    raster_components, saddle_point,
)
from .core.liminf import (
    GeometricGrid, PositiveFunction, eq1_check, liminf_estimate, quotient_bound_check,
    random_instance, sample_rows,
)
from .core.profile import (
    BasicFamily, CoefficientForm, ExponentForm, as_fraction, discs, power_law_family,
    verify_basic,
)
from .core.registry import families, monotone_functions, positive_functions
from .core.workers import THREADS_ENV
from .models import FamilySpecModel, RunConfig
from .output import lens_figure, write_csv, write_report
from .output.figures import FIGURE_FILE
from .output.writers import SAMPLES_FILE

logger = logging.getLogger(__name__)

VERIFY_N_MAX = 8


@dataclass
class RunResult:
    report: Dict[str, Any]
    summary: str
    artifacts: List[Path] = field(default_factory=list)


def _verified(family: BasicFamily, verify: bool) -> BasicFamily:
    if not verify:
        return family
    report = verify_basic(family, n_max=VERIFY_N_MAX)
    if not report.passed:
        raise AxiomError(
            f"{family.label} is not a basic family",
            {"failures": [c.to_dict() for c in report.failures()]},
        )
    return family


def _coefficient(spec) -> CoefficientForm:
    param = spec.param
    if spec.form != "power" and isinstance(param, str):
        param = float(as_fraction(param))
    return CoefficientForm(spec.form, param)


def parse_family_spec(text: str, verify: bool = True) -> BasicFamily:
    """
    Build a family from its JSON description

    Args:
        text: JSON document in the family spec format
        verify: Run verify_basic with n_max=8 on the result

    Returns:
        The family
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", line=e.lineno) from e
    try:
        spec = FamilySpecModel.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        loc = ".".join(str(part) for part in first["loc"]) or None
        raise ParseError(first["msg"], field=loc) from e

    if spec.kind == "disc":
        return _verified(discs(), verify)
    try:
        coefficient = _coefficient(spec.coefficient)
    except (LabError, ValueError) as e:
        raise ParseError(str(e), field="coefficient") from e
    try:
        exponent = ExponentForm(spec.exponent.form, spec.exponent.param)
    except (LabError, ValueError) as e:
        raise ParseError(str(e), field="exponent") from e
    family = power_law_family(spec.name or "custom", coefficient, exponent)
    return _verified(family, verify)


def _selector_value(raw: str) -> Any:
    for cast in (int, float):
        try:
            return cast(raw)
        except ValueError:
            continue
    return raw


def resolve_family(selector: str, verify: bool = True) -> BasicFamily:
    """
    Resolve NAME, NAME:key=value[,key=value] or a JSON spec path

    Args:
        selector: Family selector from the command line
        verify: Check the basic-family axioms

    Returns:
        The family
    """
    if not selector:
        raise ArgumentError("empty family selector")
    path = Path(selector)
    if selector.endswith(".json") or path.is_file():
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ParseError(f"cannot read {selector}: {e}") from e
        return parse_family_spec(text, verify)

    name, _, rest = selector.partition(":")
    params: Dict[str, Any] = {}
    for item in filter(None, rest.split(",")):
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise ParseError(f"expected key=value, got '{item}'", field=item)
        params[key.strip()] = _selector_value(value.strip())
    try:
        family = families.build(name.strip(), **params)
    except TypeError as e:
        raise ParseError(f"bad parameters for {name}: {e}", field=",".join(params)) from e
    except ValueError as e:
        raise ParseError(str(e), field=",".join(params)) from e
    return _verified(family, verify)


def _require(config: RunConfig, *names: str) -> None:
    missing = [n for n in names if getattr(config, n) is None]
    if missing:
        raise ArgumentError(f"{config.command} needs {', '.join(missing)}")


def _grid(config: RunConfig) -> GeometricGrid:
    return GeometricGrid(x0=config.x0, ratio=config.ratio, depth=config.depth,
                         window=config.window, oversample=config.oversample)


def _verify_family(config: RunConfig) -> RunResult:
    _require(config, "family")
    family = resolve_family(config.family, verify=False)
    if config.n_max < 2:
        raise ArgumentError("verify-family needs n_max >= 2")
    report = verify_basic(family, n_max=config.n_max, grid_size=config.grid_size)
    lines = [f"family {report.family}: {'basic' if report.passed else 'NOT basic'}"]
    for check in report.checks:
        status = "pass" if check.passed else f"FAIL {check.violation}"
        lines.append(f"  {check.name}: {status}")
    return RunResult({"command": config.command, "passed": report.passed, **report.to_dict()},
                     "\n".join(lines))


def _lens(config: RunConfig) -> RunResult:
    _require(config, "family")
    family = resolve_family(config.family, verify=not config.no_verify)
    lens = LensRegion(config.a, config.b, family, config.n)
    raster = raster_components(lens, config.grid)
    intersect = config.a < config.b and neighborhoods_intersect(config.a, config.b, family, config.n)
    saddle = saddle_point(config.a, config.b, family, config.n) if intersect else None
    report = {
        "command": config.command,
        "family": family.label,
        "n": config.n,
        "a": config.a,
        "b": config.b,
        "grid": config.grid,
        "intersect": intersect,
        "saddle_point": list(saddle) if saddle else None,
        "components": raster.n_components,
        "bounded_labels": raster.bounded_labels,
        "agreement": raster.agreement,
        "off_band_cells": raster.off_band_cells,
    }
    figure = lens_figure(lens, config.out_dir / FIGURE_FILE)
    samples = write_csv(config.out_dir / SAMPLES_FILE, ["x", "y", "label"], raster.rows())
    summary = "\n".join([
        f"lens of {family.label} n={config.n} between {config.a!r} and {config.b!r}",
        f"  neighborhoods intersect: {intersect}",
        f"  saddle point: {saddle}",
        f"  complement components: {raster.n_components}",
        f"  agreement off the boundary band: {raster.agreement:.6f}",
    ])
    return RunResult(report, summary, [figure, samples])


def _refine(config: RunConfig) -> RunResult:
    _require(config, "family_a", "family_b")
    fam_a = resolve_family(config.family_a, verify=not config.no_verify)
    fam_b = resolve_family(config.family_b, verify=not config.no_verify)
    result = mutual_refinement(fam_a, fam_b, config.n_max, config.k_max)
    summary = "\n".join([
        f"refinement {result.family_a} vs {result.family_b}: {result.verdict.value}",
        f"  B refines A witnesses: {result.witnesses('b_refines_a')}",
        f"  A refines B witnesses: {result.witnesses('a_refines_b')}",
    ])
    return RunResult({"command": config.command, **result.to_dict(encode_json=True)}, summary)


def _refute(config: RunConfig) -> RunResult:
    _require(config, "family_a", "family_b")
    fam_a = resolve_family(config.family_a, verify=not config.no_verify)
    fam_b = resolve_family(config.family_b, verify=not config.no_verify)
    criterion = CriterionConfig(n_max=config.n_max, m_max=config.m_max, k_max=config.k_max,
                                margin=config.margin, probes=config.probes)
    verdict = refute(fam_a, fam_b, criterion)
    lines = [f"verdict: {verdict.kind.value}"]
    if verdict.orientation:
        lines.append(f"orientation: {' -> '.join(verdict.orientation)}")
    if verdict.witnesses:
        lines.append("witnesses: " + ", ".join(f"m({w.n})={w.m}" for w in verdict.witnesses))
    lines.extend(verdict.certificate_lines)
    return RunResult({"command": config.command, **verdict.to_dict(encode_json=True)},
                     "\n".join(lines))


def _liminf(config: RunConfig) -> RunResult:
    grid = _grid(config)
    if config.function:
        F = positive_functions.build(config.function)
        estimate = liminf_estimate(F, grid, config.tol_lim)
        report = {"command": config.command, "function": F.name, "seed": None,
                  **estimate.to_dict(encode_json=True)}
        label = f"liminf of {F.name}"
        holds = None
    else:
        h, phi, psi = random_instance(config.seed)
        check = quotient_bound_check(h, phi, psi, grid, config.tol_lim, seed=config.seed)
        F = PositiveFunction("h(phi)/h(psi)", lambda xs: h(phi(xs)) / h(psi(xs)))
        estimate = check.estimate
        holds = check.holds
        report = {"command": config.command, "function": F.name, "seed": config.seed,
                  "holds": holds, **estimate.to_dict(encode_json=True)}
        label = f"liminf of h(phi)/h(psi) for random instance {config.seed}"
    samples = write_csv(config.out_dir / SAMPLES_FILE, ["x", "F", "window_id"], sample_rows(F, grid))
    lines = [f"{label}: {estimate.value!r}", f"  converged: {estimate.converged}"]
    if holds is not None:
        lines.append(f"  bound <= 1 + {config.tol_lim}: {holds}")
    return RunResult(report, "\n".join(lines), [samples])


def _eq1(config: RunConfig) -> RunResult:
    g = monotone_functions.build(config.g)
    phi = positive_functions.build(config.phi)
    psi = positive_functions.build(config.psi)
    result = eq1_check(g, config.u, phi, psi, _grid(config), config.tol_lim)
    report = {"command": config.command, "g": g.name, "u": config.u, "phi": phi.name,
              "psi": psi.name, **result.to_dict(encode_json=True)}
    summary = "\n".join([
        f"double quotient for g={g.name} at u={config.u!r}: {result.estimate.value!r}",
        f"  holds: {result.holds}",
        f"  skipped: {result.skipped}/{result.total}",
        f"  low confidence: {result.low_confidence}",
    ])
    return RunResult(report, summary)


def _power_map(config: RunConfig) -> RunResult:
    result = power_map_interleaves(config.s, config.t, config.n_max)
    lines = [f"power map s={result.s} -> t={result.t}: interleaves={result.interleaves}"]
    for step in result.steps:
        lines.append(f"  n={step.n}: power(t)_{step.k_inside_image} inside image, "
                     f"image_{step.k_image_inside} inside power(t)_n")
    return RunResult({"command": config.command, **result.to_dict(encode_json=True)}, "\n".join(lines))


COMMANDS: Dict[str, Callable[[RunConfig], RunResult]] = {
    "verify-family": _verify_family,
    "lens": _lens,
    "refine": _refine,
    "refute": _refute,
    "liminf": _liminf,
    "eq1": _eq1,
    "power-map": _power_map,
}


def run(config: RunConfig) -> RunResult:
    """
    Execute one command and write its artifacts

    Args:
        config: Run parameters

    Returns:
        RunResult with the report, summary and written files
    """
    previous = os.environ.get(THREADS_ENV)
    if config.threads is not None:
        os.environ[THREADS_ENV] = str(config.threads)
    logger.info("running %s", config.command)
    try:
        result = COMMANDS[config.command](config)
    finally:
        if config.threads is not None:
            if previous is None:
                os.environ.pop(THREADS_ENV, None)
            else:
                os.environ[THREADS_ENV] = previous
    path = write_report(config.out_dir, result.report, result.summary)
    result.artifacts.insert(0, path)
    return result
