"""Curve specifications and evaluable curves."""

import json
import logging
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Dict, List, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from frenet4.config import config
from frenet4.exceptions import SpecError
from frenet4.utils.expr import Expr, ParamEnv, eval_jet, eval_scalar, parameters, parse
from frenet4.utils.jets import value_of
from frenet4.utils.linalg import Vec4, norm

logger = logging.getLogger(__name__)


class Tolerances(BaseModel):
    """Thresholds for one run; every report embeds the resolved values."""

    eps_reg: float = Field(default=config.eps_reg, gt=0)
    eps_deg: float = Field(default=config.eps_deg, gt=0)
    tol_const: float = Field(default=config.tol_const, gt=0)
    tol_pde: float = Field(default=config.tol_pde, gt=0)
    tol_crosscheck: float = Field(default=config.tol_crosscheck, gt=0)
    inconclusive_factor: float = Field(default=config.inconclusive_factor, gt=1)

    model_config = ConfigDict(extra="forbid", frozen=True)


class Domain(BaseModel):
    """Parameter interval [t_min, t_max]."""

    t_min: float
    t_max: float

    model_config = ConfigDict(extra="forbid")

    @model_validator(mode="after")
    def _ordered(self) -> "Domain":
        if not self.t_min < self.t_max:
            raise ValueError(f"t_min must be below t_max, got [{self.t_min}, {self.t_max}]")
        return self


class CurveSpecFile(BaseModel):
    """A curve-spec JSON document."""

    components: List[str]
    params: Dict[str, float] = Field(default_factory=dict)
    domain: Domain
    samples: int = Field(default=config.samples, ge=config.min_samples)
    jet_order: int = Field(default=config.jet_order, ge=6)
    tolerances: Tolerances = Field(default_factory=Tolerances)

    model_config = ConfigDict(extra="forbid")

    @field_validator("components")
    @classmethod
    def _four_components(cls, value: List[str]) -> List[str]:
        if len(value) != 4:
            raise ValueError(f"a curve in E^4 needs exactly 4 components, got {len(value)}")
        return value


def load_curve_spec(path: Union[str, Path]) -> CurveSpecFile:
    """Read and validate a curve-spec file.

    Raises:
        SpecError: The file is missing, is not JSON, or fails validation.
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise SpecError(f"spec file not found: {path}", path=str(path)) from None
    except json.JSONDecodeError as e:
        raise SpecError(f"spec file is not valid JSON: {e}", path=str(path)) from e

    try:
        spec = CurveSpecFile.model_validate(data)
    except ValidationError as e:
        problems = [f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()]
        raise SpecError(
            f"invalid curve spec {path}: {'; '.join(problems)}", path=str(path), problems=problems
        ) from None

    logger.info(f"Loaded curve spec {path} ({spec.samples} samples)")
    return spec


class Curve(ABC):
    """A parametrized curve t -> α(t) in E^4 that can be expanded as jets."""

    def __init__(
        self, t_min: float, t_max: float, name: str = "curve", jet_order: int = config.jet_order
    ):
        self.t_min = float(t_min)
        self.t_max = float(t_max)
        self.name = name
        self.jet_order = jet_order

    @abstractmethod
    def jet(self, t: float, order: int) -> Vec4:
        """Taylor expansion of α around t, one jet of the given order per component."""

    def point(self, t: float) -> np.ndarray:
        return self.jet(t, 0).to_array()

    def derivatives(self, t: float, count: int, order: Optional[int] = None) -> List[Vec4]:
        """Jets of α', α'', ... up to the count-th derivative.

        The k-th derivative has jet order ``order - k``; ``order`` defaults to ``count``
        so that plain values come out.
        """
        current = self.jet(t, count if order is None else order)
        out = []
        for _ in range(count):
            current = current.differentiate()
            out.append(current)
        return out

    def speed(self, t: float) -> float:
        return value_of(norm(self.derivatives(t, 1)[0].value()))

    def grid(self, samples: int) -> np.ndarray:
        return np.linspace(self.t_min, self.t_max, samples)


class ExprCurve(Curve):
    """A curve whose four components are expressions in t."""

    def __init__(
        self,
        components: List[Expr],
        env: ParamEnv,
        t_min: float,
        t_max: float,
        name: str = "curve",
        jet_order: int = config.jet_order,
    ):
        super().__init__(t_min, t_max, name, jet_order)
        if len(components) != 4:
            raise SpecError(f"a curve in E^4 needs exactly 4 components, got {len(components)}")
        self.components = list(components)
        self.env = env
        # Fail early on unbound names rather than at the first sample
        for component in self.components:
            for name_ in sorted(parameters(component)):
                env.lookup(name_)

    @classmethod
    def from_spec(cls, spec: CurveSpecFile, name: str = "curve") -> "ExprCurve":
        components = [parse(text) for text in spec.components]
        return cls(
            components,
            ParamEnv(spec.params),
            spec.domain.t_min,
            spec.domain.t_max,
            name,
            spec.jet_order,
        )

    def jet(self, t: float, order: int) -> Vec4:
        return Vec4.from_iterable(eval_jet(c, t, order, self.env) for c in self.components)

    def point(self, t: float) -> np.ndarray:
        return np.array([eval_scalar(c, t, self.env) for c in self.components])
