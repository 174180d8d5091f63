"""
Modulares, normas de Luxemburg e de Orlicz e o pareamento de Köthe.

Todas as normas dependem apenas do rearranjo μ(x); as funções aceitam um
AlgebraElement ou diretamente uma StepFunction.
"""

import math
from typing import Optional, Union

import numpy as np
from loguru import logger
from scipy.optimize import minimize_scalar

from orlicz_lab.config import RunConfig
from orlicz_lab.core.algebra.trace_algebra import (
    AlgebraElement,
    StepFunction,
    abs_,
    apply_function,
    clamp_to_boundary,
    mu,
    multiply,
    trace,
)
from orlicz_lab.core.functions.orlicz_function import OrliczFunction
from orlicz_lab.models import HolderReport, NormResult

Operand = Union[AlgebraElement, StepFunction]

INF = math.inf
# Penalidade para F(k) infinito na minimização de Amemiya
PENALTY = 1e300


def _steps(x: Operand, config: RunConfig) -> StepFunction:
    return x if isinstance(x, StepFunction) else mu(x, config.tolerances)


def step_modular(phi: OrliczFunction, steps: StepFunction, factor: float = 1.0) -> float:
    """
    Σ comprimento·φ(factor·valor).

    Valores até b_φ(1 + boundary) contam como b_φ; acima disso o modular é +∞.
    """
    if not steps.values:
        return 0.0
    boundary = phi.config.tolerances.boundary
    values = factor * np.asarray(steps.values)
    if math.isfinite(phi.b_phi) and np.any(values > phi.b_phi * (1.0 + boundary)):
        return INF
    return steps.integral(lambda v: phi(clamp_to_boundary(factor * v, phi.b_phi, boundary)))


def modular(phi: OrliczFunction, x: Operand) -> float:
    """
    τ(φ(|x|)), calculado espectralmente e conferido contra Σ comprimento·φ(valor).

    Args:
        phi: Função de Orlicz
        x: Elemento (ou função escada)

    Returns:
        Modular; +∞ quando algum valor singular sai do domínio de finitude
    """
    steps = _steps(x, phi.config)
    by_steps = step_modular(phi, steps)
    if isinstance(x, StepFunction) or math.isinf(by_steps):
        return by_steps
    spectral = trace(apply_function(phi, abs_(x), phi.config.tolerances.boundary))
    if abs(spectral - by_steps) > 1e-8 * (1.0 + abs(by_steps)):
        logger.warning(f"Modular espectral {spectral:.12g} difere da soma por degraus {by_steps:.12g}")
    return spectral


def luxemburg_norm(phi: OrliczFunction, x: Operand, config: Optional[RunConfig] = None) -> NormResult:
    """
    ‖x‖_φ = inf{λ > 0 : τ(φ(|x|/λ)) <= 1}.

    Forma fechada para c·t^p e para o corte; caso contrário bissecção do
    predicado monótono, com colchete inicial a partir do maior valor
    singular e dos comprimentos dos degraus.
    """
    config = config or phi.config
    steps = _steps(x, config)
    if not steps.values:
        return NormResult(value=0.0, iterations=0, bracket=(0.0, 0.0), method="closed_form")

    vmax = steps.max_value
    closed = phi.closed_form
    if closed is not None:
        if closed.kind == "power":
            total = closed.c * steps.integral(lambda v: np.power(v, closed.p))
            value = total ** (1.0 / closed.p)
        else:
            value = vmax / closed.c
        return NormResult(value=value, iterations=0, bracket=(value, value), method="closed_form")

    # φ(m/λ)·ℓ_top > 1 força modular > 1; φ(m/λ)·L <= 1 garante modular <= 1
    lo = vmax / phi.formal_inverse(1.0 / steps.lengths[0])
    hi = vmax / phi.formal_inverse(1.0 / steps.support)
    tol = config.tolerances
    iterations = 0
    while hi - lo > tol.bisection_width * hi and iterations < tol.bisection_max_iter:
        mid = lo + 0.5 * (hi - lo)
        if step_modular(phi, steps, 1.0 / mid) <= 1.0:
            hi = mid
        else:
            lo = mid
        iterations += 1
    logger.debug(f"Luxemburg {phi.label}: {hi:.12g} após {iterations} iterações")
    return NormResult(value=hi, iterations=iterations, bracket=(lo, hi), method="bisection")


def _amemiya_closed(closed, steps: StepFunction) -> float:
    if closed.kind == "cutoff":
        return steps.max_value / closed.c
    total = closed.c * steps.integral(lambda v: np.power(v, closed.p))
    if closed.p == 1.0:
        return total
    p = closed.p
    return p * (p - 1.0) ** (1.0 / p - 1.0) * total ** (1.0 / p)


def orlicz_norm(phi: OrliczFunction, x: Operand, config: Optional[RunConfig] = None) -> NormResult:
    """
    ‖x‖⁰_φ na forma de Amemiya: inf_{k>0} (1 + τ(φ(k|x|)))/k.

    Args:
        phi: Função de Orlicz
        x: Elemento (ou função escada)

    Returns:
        NormResult com método "amemiya" (ou "closed_form" para c·t^p e o corte)
    """
    config = config or phi.config
    steps = _steps(x, config)
    if not steps.values:
        return NormResult(value=0.0, iterations=0, bracket=(0.0, 0.0), method="closed_form")
    closed = phi.closed_form
    if closed is not None:
        value = _amemiya_closed(closed, steps)
        return NormResult(value=value, iterations=0, bracket=(value, value), method="closed_form")

    lux = luxemburg_norm(phi, steps, config).value

    def objective(log_k: float) -> float:
        k = math.exp(log_k)
        rho = step_modular(phi, steps, k)
        return (1.0 + rho) / k if math.isfinite(rho) else PENALTY

    # mínimo em k >= 1/(2λ): para k menor, (1+ρ)/k > 2λ >= F(1/λ)
    start, stop = math.log(0.5 / lux), math.log(1.0 / lux) + 40.0
    grid = np.unique(np.concatenate((np.linspace(start, stop, 60), [math.log(1.0 / lux)])))
    values = np.array([objective(g) for g in grid])
    best = int(np.argmin(values))
    value = float(values[best])
    iterations = len(grid)

    lo, hi = grid[max(best - 1, 0)], grid[min(best + 1, len(grid) - 1)]
    if hi > lo:
        result = minimize_scalar(objective, bounds=(lo, hi), method="bounded", options={"xatol": 1e-12})
        iterations += int(result.nfev)
        if result.fun < value:
            value = float(result.fun)
    logger.debug(f"Orlicz (Amemiya) {phi.label}: {value:.12g}, λ={lux:.12g}")
    return NormResult(value=value, iterations=iterations, bracket=(lux, 2.0 * lux), method="amemiya")


def kothe_pairing(f: AlgebraElement, g: AlgebraElement) -> float:
    """τ(|fg|)."""
    return trace(abs_(multiply(f, g)))


def holder_check(
    f: AlgebraElement, g: AlgebraElement, phi: OrliczFunction, config: Optional[RunConfig] = None
) -> HolderReport:
    """
    Confere τ(|fg|) <= ‖f‖⁰_{φ*}·‖g‖_φ·(1 + tol).

    Args:
        f: Elemento pareado com a norma de Orlicz de φ*
        g: Elemento medido na norma de Luxemburg de φ
        phi: Função de Orlicz
    """
    config = config or phi.config
    pairing = kothe_pairing(f, g)
    norm_f = orlicz_norm(phi.conjugate(), f, config).value
    norm_g = luxemburg_norm(phi, g, config).value
    bound = norm_f * norm_g
    holds = pairing <= bound * (1.0 + config.tolerances.bound) + 1e-12
    if not holds:
        logger.warning(f"Hölder falhou para {phi.label}: {pairing:.12g} > {bound:.12g}")
    return HolderReport(
        pairing=pairing, orlicz_norm_f=norm_f, luxemburg_norm_g=norm_g, bound=bound, holds=holds
    )


def normalize(phi: OrliczFunction, x: AlgebraElement) -> AlgebraElement:
    """Reescala x para a bola unitária de Luxemburg de φ."""
    norm = luxemburg_norm(phi, x).value
    if norm == 0:
        return x
    return x.scale(1.0 / norm)
