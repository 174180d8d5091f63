"""
Modelos Pydantic dos relatórios e resultados.
"""

from typing import Dict, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class Report(BaseModel):
    model_config = ConfigDict(frozen=True)


# Funções de Orlicz
class ValidityReport(Report):
    valid: bool
    violation: Optional[
        Literal[
            "zero_at_origin",
            "monotonicity",
            "convexity",
            "left_continuity",
            "degenerate",
            "threshold_consistency",
        ]
    ] = None
    witness: Optional[float] = Field(None, description="Primeiro ponto violador")
    a_phi: float
    b_phi: float
    checked_points: int


class GrowthReport(Report):
    condition: Literal["Delta2", "DeltaPrime", "NablaPrime", "DeltaPrimeAForm"]
    holds: bool
    u0: float = 0.0
    constant: float = Field(..., description="K, C, b ou a conforme a condição")
    witness: Optional[List[float]] = Field(None, description="u ou (s, t)")
    witness_value: Optional[float] = Field(None, description="Razão observada na testemunha")
    grid: str
    skipped: int = 0
    a_form_constant: Optional[float] = None
    note: Optional[str] = None


class NFunctionLimits(Report):
    limit_at_zero: float
    limit_at_infinity: float
    zero_class: Literal["zero", "finite", "infinite"]
    infinity_class: Literal["zero", "finite", "infinite"]
    n_function: bool


class LemmaNfnReport(Report):
    q: float
    infinity_holds: bool
    infinity_ratio: float
    zero_holds: bool
    zero_vacuous: bool
    zero_ratio: Optional[float] = None
    literal_ratio: Optional[float] = Field(
        None, description="φ(t)/t^(1/q) no menor t amostrado (informativo)"
    )
    holds: bool


class PowerFitReport(Report):
    verdict: Literal["ok", "not_applicable", "p_below_one", "sandwich_violated"]
    p: Optional[float] = None
    a1: Optional[float] = None
    a2: Optional[float] = None
    x0: float = 0.0
    checked_points: int = 0
    reason: Optional[str] = None


# Normas
class NormResult(Report):
    value: float
    iterations: int
    bracket: Tuple[float, float]
    method: Literal["bisection", "amemiya", "closed_form"]


class HolderReport(Report):
    pairing: float
    orlicz_norm_f: float
    luxemburg_norm_g: float
    bound: float
    holds: bool


# Multiplicadores
class ConstantWitness(Report):
    M: float = Field(..., gt=0)
    alpha: float = Field(..., gt=0)
    beta: float = Field(..., gt=0)
    gamma: float = Field(..., gt=0)
    grid: Optional[str] = None
    validated: bool = False

    @property
    def derived_bound(self) -> float:
        """M(3/α + 3/β + 3/γ)."""
        return self.M * (3.0 / self.alpha + 3.0 / self.beta + 3.0 / self.gamma)

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return (self.M, self.alpha, self.beta, self.gamma)


class RayReport(Report):
    direction: List[int]
    base: List[float]
    max_ratio: float
    divergent: bool


class MultiplierReport(Report):
    holds: bool
    witness: ConstantWitness
    violation: Optional[List[float]] = Field(None, description="Ponto (u, v, w) violador")
    max_ratio: float
    derived_bound: float
    checked_products: int
    divergent_ray: Optional[RayReport] = None
    note: Optional[str] = None


class SearchResult(Report):
    witness: Optional[ConstantWitness] = None
    best: Optional[ConstantWitness] = None
    best_ratio: float
    evaluations: int
    reason: str


class CorollaryReport(Report):
    condition: Literal["a", "b"]
    applicable: bool
    reason: Optional[str] = None
    a_form: Optional[float] = None
    witness: Optional[ConstantWitness] = None
    check: Optional[MultiplierReport] = None


class KrasnoselskiiReport(Report):
    variant: Literal[1, 2]
    holds: bool
    preconditions_met: bool
    empty_grid: bool = False
    witness_u: Optional[float] = None
    checked_points: int = 0
    reason: Optional[str] = None


class VerifyBoundReport(Report):
    trace_fgh: float
    modular_bound: float
    closed_bound: float
    closed_bound_applies: bool
    orlicz_norm_fg: float
    orlicz_bound: float
    orlicz_bound_applies: bool
    norms: Dict[str, float]
    holds: bool
    slack: float


# Reescalonamento
class LemmaLMReport(Report):
    applicable: bool
    reason: Optional[str] = None
    norm_image: Optional[float] = None
    norm_zeta: Optional[float] = None
    holds: bool


class RescaleReport(Report):
    direction: Literal["up", "down"]
    applicable: bool
    reason: Optional[str] = None
    alpha: Optional[float] = None
    N: Optional[int] = None
    K: Optional[float] = None
    domination: Optional[float] = Field(None, description="K^N")
    norm_image: Optional[float] = None
    bound: Optional[float] = None
    checked_scales: int = 0
    holds: bool


class AtomicMeasurePair(Report):
    nu1: List[float]
    nu2: List[float]

    @field_validator("nu1", "nu2")
    @classmethod
    def _positive(cls, weights: List[float]) -> List[float]:
        if not weights:
            raise ValueError("measure must have at least one atom")
        if any(not (w > 0 and np.isfinite(w)) for w in weights):
            raise ValueError("atom weights must be finite and strictly positive")
        return weights

    @model_validator(mode="after")
    def _same_atoms(self) -> "AtomicMeasurePair":
        if len(self.nu1) != len(self.nu2):
            raise ValueError("nu1 and nu2 must have the same number of atoms")
        return self

    @property
    def atoms(self) -> int:
        return len(self.nu1)

    @property
    def derivative(self) -> np.ndarray:
        """Derivada de Radon–Nikodym dν₁/dν₂ por átomo."""
        return np.asarray(self.nu1, dtype=float) / np.asarray(self.nu2, dtype=float)


class MeasureMapReport(Report):
    image: List[float]
    derivative: List[float]
    norm_f: float
    norm_image: float
    ratio: float
    delta_prime_holds: bool
    nabla_prime_holds: bool
    a_form: Optional[float] = None
    b_constant: Optional[float] = None
    upper_bound: Optional[float] = None
    lower_bound: Optional[float] = None
    holds: bool
    note: Optional[str] = None


# Compacidade
class RademacherReport(Report):
    k: int
    base_norm: float
    norms: List[float]
    mu_equal: bool
    holds: bool


class IsometryReport(Report):
    block: int
    eigenvalue: float
    lam: float
    n: int
    norms: List[float]
    lower_bound: float
    chain_equal: bool
    adjoint_chain_equal: bool = Field(..., description="μ(gv) = μ(gv(gv)ᵀ)^(1/2) = μ(g·e₁gᵀ)^(1/2)")
    dominates: bool = Field(..., description="μ_t(g·e₁) >= λ·μ_t(e₁) em todo t")
    holds: bool


class SandwichReport(Report):
    tau: float
    n: int
    lower: float
    norm: float
    upper: float
    holds: bool


class StructureReport(Report):
    carrier_mask: List[bool]
    block_dims: List[int]
    finite_type_I: bool = True
    block_norms: List[float]
    norm_floor: float
    reconstruction_error: float
    holds: bool


# Suíte
class SuiteOutcome(Report):
    name: str
    module: str
    cases: int
    failures: int
    detail: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0
