"""
ED Degree Toolkit Data Model Definitions

Data Type Descriptions:
- EddReport: a computed ED degree with its method tag, inputs, intermediate values and warnings
- EulerData: topological Euler characteristics of X, X∩Q, X∩H, X∩Q∩H
- ProductSpec: a Segre or Segre-Veronese variety (factor sizes, Veronese weights, coordinates)
- PlaneCurveInput / RationalCurveInput: inputs of the curve engines
- CommandConfig: a parsed command line request
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from errors import DomainError, UsageError
from exactnum import GaussianRational, render_rational
from polyring import BinaryForm, TernaryForm


class EddMethod(str, Enum):
    GENERIC = "generic"
    SEGRE = "segre"
    MILNOR = "milnor"
    CSM = "csm"
    EULER = "euler"
    PRODUCT = "product"
    PLANE_CURVE = "plane-curve"
    RATIONAL_CURVE = "rational-curve"


class Coordinates(str, Enum):
    GENERAL = "general"
    INVARIANT = "invariant"


def encode_value(value: Any) -> Any:
    """JSON-safe encoding; every number becomes a decimal string"""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (int, Fraction)):
        return render_rational(value)
    if isinstance(value, str):
        return value
    if isinstance(value, dict):
        return {str(k): encode_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode_value(v) for v in value]
    if hasattr(value, "render"):
        return value.render()
    return str(value)


def _display_value(value: Any) -> str:
    encoded = encode_value(value)
    if isinstance(encoded, list):
        return "(" + ", ".join(_display_value(v) for v in encoded) + ")"
    if isinstance(encoded, dict):
        return "{" + ", ".join(f"{k}: {_display_value(v)}" for k, v in sorted(encoded.items())) + "}"
    return str(encoded)


@dataclass
class EddReport:
    """Computed ED degree"""
    value: int
    method: EddMethod
    inputs: Dict[str, Any] = field(default_factory=dict)
    intermediates: Dict[str, Any] = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "edd": render_rational(self.value),
            "method": self.method.value if isinstance(self.method, EddMethod) else self.method,
            "inputs": encode_value(self.inputs),
            "intermediates": encode_value(self.intermediates),
            "warnings": list(self.warnings)
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EddReport":
        return cls(
            value=int(data["edd"]),
            method=EddMethod(data["method"]),
            inputs=dict(data.get("inputs", {})),
            intermediates=dict(data.get("intermediates", {})),
            warnings=list(data.get("warnings", []))
        )

    def to_display_string(self) -> str:
        lines = [f"【ED Degree】 {self.value}", f"  Method: {self.to_dict()['method']}"]
        if self.inputs:
            lines.append("  Inputs:")
            lines.extend(f"    {k} = {_display_value(v)}" for k, v in sorted(self.inputs.items()))
        if self.intermediates:
            lines.append("  Intermediates:")
            lines.extend(f"    {k} = {_display_value(v)}" for k, v in sorted(self.intermediates.items()))
        for warning in self.warnings:
            lines.append(f"  Warning: {warning}")
        return "\n".join(lines)


@dataclass
class EulerData:
    """Euler characteristics entering the closed-subset Euler formula"""
    dim_x: int
    chi_x: int
    chi_xq: int
    chi_xh: int
    chi_xqh: int
    mather: bool = False             # inputs are Euler-Mather characteristics

    def __post_init__(self):
        if self.dim_x < 0:
            raise DomainError("dim X must be non-negative")
        for name in ("chi_x", "chi_xq", "chi_xh", "chi_xqh"):
            value = getattr(self, name)
            if isinstance(value, Fraction):
                if value.denominator != 1:
                    raise DomainError(f"{name} must be an integer")
                setattr(self, name, value.numerator)

    @classmethod
    def from_sequence(cls, dim_x: int, chis: Sequence[int], mather: bool = False) -> "EulerData":
        if len(chis) != 4:
            raise DomainError("Euler data needs exactly four values: chi(X), chi(X∩Q), chi(X∩H), chi(X∩Q∩H)")
        return cls(dim_x, *chis, mather=mather)

    def to_dict(self) -> dict:
        return {
            "dim_x": self.dim_x,
            "chi_x": self.chi_x,
            "chi_xq": self.chi_xq,
            "chi_xh": self.chi_xh,
            "chi_xqh": self.chi_xqh,
            "mather": self.mather
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EulerData":
        return cls(
            dim_x=int(data["dim_x"]),
            chi_x=int(data["chi_x"]),
            chi_xq=int(data["chi_xq"]),
            chi_xh=int(data["chi_xh"]),
            chi_xqh=int(data["chi_xqh"]),
            mather=bool(data.get("mather", False))
        )


@dataclass(frozen=True)
class ProductSpec:
    """Product of projective spaces P^(m_i - 1), optionally Veronese-embedded with weights"""
    dims: Tuple[int, ...]
    weights: Tuple[int, ...] = ()
    coords: Coordinates = Coordinates.GENERAL

    def __post_init__(self):
        dims = tuple(int(m) for m in self.dims)
        weights = tuple(int(w) for w in self.weights) if self.weights else (1,) * len(dims)
        if not dims:
            raise DomainError("a product needs at least one factor")
        if any(m < 1 for m in dims):
            raise DomainError(f"factor sizes must be positive: {dims}")
        if len(weights) != len(dims):
            raise DomainError(f"{len(weights)} weights given for {len(dims)} factors")
        if any(w < 1 for w in weights):
            raise DomainError(f"Veronese weights must be positive: {weights}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "coords", Coordinates(self.coords))

    @property
    def factor_count(self) -> int:
        return len(self.dims)

    def is_plain_segre(self) -> bool:
        return all(w == 1 for w in self.weights)

    def to_dict(self) -> dict:
        return {"dims": list(self.dims), "weights": list(self.weights), "coords": self.coords.value}

    @classmethod
    def from_dict(cls, data: dict) -> "ProductSpec":
        return cls(
            dims=tuple(int(m) for m in data["dims"]),
            weights=tuple(int(w) for w in data.get("weights", ())),
            coords=Coordinates(data.get("coords", "general"))
        )


@dataclass(frozen=True)
class PlaneCurveInput:
    """Plane curve F(x,y,z) = 0"""
    F: TernaryForm
    assume_smooth: bool = False

    def __post_init__(self):
        if self.F.is_zero():
            raise DomainError("the zero polynomial does not define a curve")
        if self.F.degree < 1:
            raise DomainError("a plane curve needs a form of positive degree")


@dataclass(frozen=True)
class RationalCurveInput:
    """Curve in P^(n-1) parametrized by binary forms of a common degree"""
    phi: Tuple[BinaryForm, ...]
    quadric_weights: Tuple[GaussianRational, ...] = ()

    def __post_init__(self):
        phi = tuple(self.phi)
        if len(phi) < 2:
            raise DomainError("a parametrized curve needs at least two coordinates")
        degree = phi[0].degree
        if any(f.degree != degree for f in phi):
            raise DomainError("parametrization components must share a common degree")
        if degree < 1:
            raise DomainError("parametrization degree must be at least 1")
        if all(f.is_zero() for f in phi):
            raise DomainError("all parametrization components are zero")
        weights = tuple(GaussianRational.coerce(q) for q in self.quadric_weights) or tuple(
            GaussianRational.coerce(1) for _ in phi)
        if len(weights) != len(phi):
            raise DomainError(f"{len(weights)} quadric weights given for {len(phi)} coordinates")
        if any(q.is_zero() for q in weights):
            raise DomainError("quadric weights must be nonzero")
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "quadric_weights", weights)

    @property
    def degree(self) -> int:
        return self.phi[0].degree

    @property
    def ambient_size(self) -> int:
        return len(self.phi)


@dataclass
class CommandConfig:
    """A parsed command line request"""
    subcommand: str
    params: Dict[str, Any] = field(default_factory=dict)
    json_output: bool = False
    verbose: bool = False
    method: Optional[str] = None

    def require(self, *names: str):
        missing = [n for n in names if self.params.get(n) is None]
        if missing:
            raise UsageError(f"{self.subcommand}: missing required parameter(s): {', '.join(missing)}")
