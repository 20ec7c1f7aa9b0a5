from pathlib import Path
from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

Number = Union[int, float, str]

Command = Literal["verify-family", "lens", "refine", "refute", "liminf", "eq1", "power-map"]


# Family spec file format
class CoefficientSpec(BaseModel):
    """Coefficient c_n: n^param, a constant, or tan(param*n/(n+1))"""
    model_config = ConfigDict(extra="forbid")

    form: Literal["power", "constant", "tangent"]
    param: Number


class ExponentSpec(BaseModel):
    """Exponent e_n: a constant or (n+1)/n"""
    model_config = ConfigDict(extra="forbid")

    form: Literal["constant", "harmonic_shift"]
    param: Optional[Number] = None


class FamilySpecModel(BaseModel):
    """Basic family described in JSON"""
    model_config = ConfigDict(extra="forbid")

    name: Optional[str] = None
    kind: Literal["power_law", "disc"]
    coefficient: Optional[CoefficientSpec] = None
    exponent: Optional[ExponentSpec] = None

    @model_validator(mode="after")
    def _power_law_fields(self) -> "FamilySpecModel":
        if self.kind == "power_law" and (self.coefficient is None or self.exponent is None):
            raise ValueError("power_law families need both coefficient and exponent")
        if self.kind == "disc" and (self.coefficient is not None or self.exponent is not None):
            raise ValueError("disc families take no coefficient or exponent")
        return self


class RunConfig(BaseModel):
    """Parameters of one CLI run"""
    model_config = ConfigDict(extra="forbid")

    command: Command
    family: Optional[str] = None
    family_a: Optional[str] = None
    family_b: Optional[str] = None
    n: int = Field(2, ge=1)
    a: float = 0.0
    b: float = 0.4
    grid: int = Field(800, ge=100)
    grid_size: int = Field(1000, ge=100)
    n_max: int = Field(8, ge=1)
    m_max: int = Field(64, ge=2)
    k_max: int = Field(128, ge=1)
    margin: float = Field(1e-9, gt=0, lt=1)
    x0: float = Field(0.1, gt=0)
    ratio: float = Field(0.5, gt=0, lt=1)
    depth: int = Field(40, ge=2)
    window: int = Field(5, ge=1)
    oversample: int = Field(64, ge=1)
    tol_lim: float = Field(0.05, gt=0)
    function: Optional[str] = None
    g: str = "cube"
    u: float = 0.0
    phi: str = "square"
    psi: str = "identity"
    s: Number = 2
    t: Number = 1
    seed: int = Field(0, ge=0)
    probes: bool = False
    no_verify: bool = False
    threads: Optional[int] = Field(None, ge=1)
    out_dir: Path = Path("out")
