#!/usr/bin/env python
"""
Niemytzki Lab CLI - Command line interface for family checks, lens geometry,
refinement, criterion refutation and liminf estimation
"""
from pathlib import Path
from typing import Any, Dict, Optional
import json
import logging

import typer
from pydantic import ValidationError

from . import __version__
from .core.errors import ArgumentError, ErrorCodes, LabError
from .models import RunConfig
from .runner import run

app = typer.Typer(help="Niemytzki Lab CLI")

EXIT_ERROR = 2

OutOption = typer.Option(Path("out"), "--out", "-o", help="Output directory")
LogOption = typer.Option("warning", "--log-level", "-l", help="Logging level")
SeedOption = typer.Option(0, "--seed", help="Seed for random instances")
NoVerifyOption = typer.Option(False, "--no-verify", help="Skip basic-family verification")
ThreadsOption = typer.Option(None, "--threads", help="Worker thread cap")


def _fail(report: Dict[str, Any]) -> None:
    typer.echo(json.dumps(report, sort_keys=True), err=True)
    raise typer.Exit(code=EXIT_ERROR)


def _execute(log_level: str, **params: Any) -> None:
    logging.basicConfig(level=getattr(logging, log_level.upper(), logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        config = RunConfig(**params)
        result = run(config)
    except ValidationError as e:
        first = e.errors()[0]
        _fail(ArgumentError(first["msg"], {"field": ".".join(str(p) for p in first["loc"])}).to_report())
    except LabError as e:
        _fail(e.to_report())
    except Exception as e:
        logging.getLogger(__name__).exception("unexpected failure")
        _fail({"error": {"code": ErrorCodes.INTERNAL_ERROR, "type": type(e).__name__,
                         "message": str(e)}})
    else:
        typer.echo(result.summary)
        for path in result.artifacts:
            typer.echo(f"wrote {path}")


@app.command("verify-family")
def verify_family(
    family: str = typer.Option(..., "--family", "-f", help="Family selector or JSON spec path"),
    n_max: int = typer.Option(8, "--n-max", help="Largest index checked"),
    grid_size: int = typer.Option(1000, "--grid-size", help="Grid points per profile"),
    out: Path = OutOption,
    log_level: str = LogOption,
):
    """
    Check the basic-family axioms
    """
    _execute(log_level, command="verify-family", family=family, n_max=n_max,
             grid_size=grid_size, out_dir=out)


@app.command()
def lens(
    family: str = typer.Option(..., "--family", "-f", help="Family selector or JSON spec path"),
    n: int = typer.Option(2, "--n", help="Family index"),
    a: float = typer.Option(0.0, "--a", help="Left anchor"),
    b: float = typer.Option(0.4, "--b", help="Right anchor"),
    grid: int = typer.Option(800, "--grid", help="Raster cells per side"),
    no_verify: bool = NoVerifyOption,
    out: Path = OutOption,
    log_level: str = LogOption,
):
    """
    Draw the lens between two neighborhoods and cross-check it by flood fill
    """
    _execute(log_level, command="lens", family=family, n=n, a=a, b=b, grid=grid,
             no_verify=no_verify, out_dir=out)


@app.command()
def refine(
    family_a: str = typer.Option(..., "--a", help="First family"),
    family_b: str = typer.Option(..., "--b", help="Second family"),
    n_max: int = typer.Option(8, "--n-max"),
    k_max: int = typer.Option(128, "--k-max"),
    threads: Optional[int] = ThreadsOption,
    no_verify: bool = NoVerifyOption,
    out: Path = OutOption,
    log_level: str = LogOption,
):
    """
    Compare two families' neighborhood bases at a boundary point
    """
    _execute(log_level, command="refine", family_a=family_a, family_b=family_b, n_max=n_max,
             k_max=k_max, threads=threads, no_verify=no_verify, out_dir=out)


@app.command()
def refute(
    family_a: str = typer.Option(..., "--a", help="First family"),
    family_b: str = typer.Option(..., "--b", help="Second family"),
    n_max: int = typer.Option(8, "--n-max"),
    m_max: int = typer.Option(64, "--m-max"),
    k_max: int = typer.Option(128, "--k-max"),
    margin: float = typer.Option(1e-9, "--margin"),
    probes: bool = typer.Option(False, "--probes", help="Attach numeric ratio probes"),
    threads: Optional[int] = ThreadsOption,
    no_verify: bool = NoVerifyOption,
    out: Path = OutOption,
    log_level: str = LogOption,
):
    """
    Try to refute homeomorphy of two topologies with the criterion

    The exit code is 0 whatever the verdict; the verdict is in the report.
    """
    _execute(log_level, command="refute", family_a=family_a, family_b=family_b, n_max=n_max,
             m_max=m_max, k_max=k_max, margin=margin, probes=probes, threads=threads,
             no_verify=no_verify, out_dir=out)


@app.command()
def liminf(
    function: Optional[str] = typer.Option(None, "--function", help="Catalogue function; omit for a random quotient instance"),
    x0: float = typer.Option(0.1, "--x0"),
    ratio: float = typer.Option(0.5, "--ratio"),
    depth: int = typer.Option(40, "--depth"),
    window: int = typer.Option(5, "--window"),
    oversample: int = typer.Option(64, "--oversample"),
    tol_lim: float = typer.Option(0.05, "--tol-lim"),
    seed: int = SeedOption,
    out: Path = OutOption,
    log_level: str = LogOption,
):
    """
    Estimate a lower limit at 0+ on a geometric grid
    """
    _execute(log_level, command="liminf", function=function, x0=x0, ratio=ratio, depth=depth,
             window=window, oversample=oversample, tol_lim=tol_lim, seed=seed, out_dir=out)


@app.command()
def eq1(
    g: str = typer.Option("cube", "--g", help="Monotone function"),
    u: float = typer.Option(0.0, "--u", help="Base point"),
    phi: str = typer.Option("square", "--phi"),
    psi: str = typer.Option("identity", "--psi"),
    x0: float = typer.Option(0.1, "--x0"),
    ratio: float = typer.Option(0.5, "--ratio"),
    depth: int = typer.Option(40, "--depth"),
    window: int = typer.Option(5, "--window"),
    oversample: int = typer.Option(64, "--oversample"),
    tol_lim: float = typer.Option(0.05, "--tol-lim"),
    out: Path = OutOption,
    log_level: str = LogOption,
):
    """
    Estimate the lower limit of the double derivative quotient
    """
    _execute(log_level, command="eq1", g=g, u=u, phi=phi, psi=psi, x0=x0, ratio=ratio,
             depth=depth, window=window, oversample=oversample, tol_lim=tol_lim, out_dir=out)


@app.command("power-map")
def power_map(
    s: str = typer.Option("2", "--s", help="Source exponent"),
    t: str = typer.Option("1", "--t", help="Target exponent"),
    n_max: int = typer.Option(8, "--n-max"),
    out: Path = OutOption,
    log_level: str = LogOption,
):
    """
    Check that y -> y^(t/s) carries power(s) neighborhoods onto power(t) ones
    """
    _execute(log_level, command="power-map", s=s, t=t, n_max=n_max, out_dir=out)


@app.command()
def version():
    """Show Niemytzki Lab version"""
    typer.echo(f"Niemytzki Lab v{__version__}")


if __name__ == "__main__":
    app()
