"""
Configuração de execução (RunConfig).

Precedência, da menor para a maior: valores embutidos, arquivo JSON
(--config ou ORLICZ_CONFIG), variáveis de ambiente (ORLICZ_SEED,
ORLICZ_OUTPUT_FORMAT, ORLICZ_LOG_LEVEL, lidas também de um .env) e, por
último, as flags da linha de comando.
"""

import json
import os
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Literal, Optional

from dotenv import find_dotenv, load_dotenv
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, model_validator


class GridConfig(BaseModel):
    """Grade logarítmica genérica (is_orlicz e amostragens)."""

    model_config = ConfigDict(frozen=True)

    lo: float = Field(1e-3, gt=0)
    hi: float = Field(1e3, gt=0)
    points_per_decade: int = Field(16, ge=8)

    @model_validator(mode="after")
    def _ordered(self) -> "GridConfig":
        if self.lo >= self.hi:
            raise ValueError("grid bounds must satisfy lo < hi")
        return self


class ConjugateConfig(BaseModel):
    """Grade do conjugado numérico."""

    model_config = ConfigDict(frozen=True)

    v_min: float = Field(1e-6, gt=0)
    v_max: float = Field(1e6, gt=0)
    points_per_decade: int = Field(512, ge=8)
    extension_limit: float = Field(1e100, gt=0)
    chunk_size: int = Field(256, ge=1)

    @model_validator(mode="after")
    def _ordered(self) -> "ConjugateConfig":
        if not self.v_min < self.v_max <= self.extension_limit:
            raise ValueError("conjugate grid must satisfy v_min < v_max <= extension_limit")
        return self


class ProbeConfig(BaseModel):
    """Grades das sondas de crescimento Δ₂, Δ' e ∇'."""

    model_config = ConfigDict(frozen=True)

    delta2_lo: float = Field(1e-3, gt=0)
    delta2_hi: float = Field(1e3, gt=0)
    delta2_points: int = Field(61, ge=2)
    prime_lo: float = Field(1e-4, gt=0)
    prime_hi: float = Field(1e4, gt=0)
    prime_points: int = Field(33, ge=2)
    growth_factor: float = Field(1e3, gt=1)
    witness_ratio: float = Field(1e6, gt=1)
    limit_steps: int = Field(60, ge=10)

    @model_validator(mode="after")
    def _ordered(self) -> "ProbeConfig":
        if self.delta2_lo >= self.delta2_hi or self.prime_lo >= self.prime_hi:
            raise ValueError("probe bounds must satisfy lo < hi")
        return self


class Tolerances(BaseModel):
    model_config = ConfigDict(frozen=True)

    eps_conv: float = Field(1e-9, gt=0)
    eps_young: float = Field(1e-9, gt=0)
    bisection_width: float = Field(1e-10, gt=0)
    bisection_max_iter: int = Field(200, ge=10)
    merge: float = Field(1e-12, ge=0)
    zero: float = Field(1e-12, ge=0)
    boundary: float = Field(1e-12, ge=0, description="Folga relativa em torno de b_φ")
    multiplier: float = Field(1e-9, ge=0)
    strict_margin: float = Field(1e-12, ge=0)
    bound: float = Field(1e-8, ge=0)


class MultiplierConfig(BaseModel):
    """Grade (u, v, w) e varredura por raios da desigualdade de Young generalizada."""

    model_config = ConfigDict(frozen=True)

    points_per_axis: int = Field(40, ge=2)
    lo: float = Field(1e-3, gt=0)
    hi: float = Field(1e3, gt=0)
    ray_decades: int = Field(12, ge=1)
    ray_extension_decades: int = Field(30, ge=1)
    exponent_min: int = -8
    exponent_max: int = 8
    budget: int = Field(100_000, ge=1)

    @model_validator(mode="after")
    def _ordered(self) -> "MultiplierConfig":
        if self.lo >= self.hi:
            raise ValueError("multiplier grid bounds must satisfy lo < hi")
        if not self.exponent_min <= 0 <= self.exponent_max or self.exponent_min >= self.exponent_max:
            raise ValueError("search exponents must satisfy exponent_min <= 0 <= exponent_max, min < max")
        return self


class SuiteConfig(BaseModel):
    """Tamanhos das execuções de propriedades do verify-suite."""

    model_config = ConfigDict(frozen=True)

    young_pairs: int = Field(10_000, ge=1)
    subgradient_pairs: int = Field(20, ge=1)
    random_elements: int = Field(100, ge=1)
    random_pairs: int = Field(100, ge=1)
    holder_pairs: int = Field(100, ge=1)
    verify_triples: int = Field(100, ge=1)
    measure_pairs: int = Field(100, ge=1)
    isometry_seeds: int = Field(100, ge=1)
    structure_samples: int = Field(50, ge=1)
    block_dim: int = Field(3, ge=1)


class RunConfig(BaseModel):
    """Configuração completa de uma execução."""

    model_config = ConfigDict(frozen=True)

    grid: GridConfig = Field(default_factory=GridConfig)
    conjugate: ConjugateConfig = Field(default_factory=ConjugateConfig)
    probes: ProbeConfig = Field(default_factory=ProbeConfig)
    tolerances: Tolerances = Field(default_factory=Tolerances)
    multipliers: MultiplierConfig = Field(default_factory=MultiplierConfig)
    suite: SuiteConfig = Field(default_factory=SuiteConfig)
    seed: int = 7
    output_format: Literal["json", "csv", "text"] = "text"
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "WARNING"

    def with_overrides(self, **overrides: Any) -> "RunConfig":
        """Retorna uma cópia com os campos de topo não nulos substituídos."""
        data = self.model_dump()
        data.update({k: v for k, v in overrides.items() if v is not None})
        return RunConfig.model_validate(data)


def _env_overrides() -> Dict[str, Any]:
    overrides: Dict[str, Any] = {}
    if os.getenv("ORLICZ_SEED"):
        overrides["seed"] = int(os.environ["ORLICZ_SEED"])
    if os.getenv("ORLICZ_OUTPUT_FORMAT"):
        overrides["output_format"] = os.environ["ORLICZ_OUTPUT_FORMAT"]
    if os.getenv("ORLICZ_LOG_LEVEL"):
        overrides["log_level"] = os.environ["ORLICZ_LOG_LEVEL"].upper()
    return overrides


def load_config(path: Optional[str] = None) -> RunConfig:
    """
    Carrega a configuração efetiva.

    Args:
        path: Arquivo JSON de configuração; se None, usa ORLICZ_CONFIG

    Returns:
        RunConfig validada
    """
    load_dotenv(find_dotenv(usecwd=True))
    path = path or os.getenv("ORLICZ_CONFIG")

    data: Dict[str, Any] = {}
    if path:
        file_path = Path(path)
        if not file_path.exists():
            raise FileNotFoundError(f"Arquivo de configuração não encontrado: {file_path}")
        data = json.loads(file_path.read_text(encoding="utf-8"))
        logger.info(f"Configuração carregada de {file_path}")

    data.update(_env_overrides())
    return RunConfig.model_validate(data)


@lru_cache(maxsize=1)
def get_settings() -> RunConfig:
    """Configuração padrão (embutida + ambiente), usada quando nenhuma é passada."""
    return load_config()
