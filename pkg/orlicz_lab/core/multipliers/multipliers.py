"""
Desigualdade de Young generalizada e operadores de multiplicação.

A condição central é
    uvw <= M[φ₂*(αu) + φ₁(βv) + ζ(γw)]   para u, v, w >= 0,
verificada numa grade logarítmica (u, v, w) e ao longo de raios que saem da
grade. A razão uvw/M[...] escala exatamente como 1/M.
"""

import itertools
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from orlicz_lab.config import RunConfig
from orlicz_lab.core.algebra.trace_algebra import (
    AlgebraElement,
    abs_,
    mu,
    mu_at,
    multiply,
    trace,
)
from orlicz_lab.core.errors import DomainError, UnvalidatedWitnessError
from orlicz_lab.core.functions.growth import GrowthProber, divergent_run
from orlicz_lab.core.functions.orlicz_function import OrliczFunction
from orlicz_lab.core.norms.norms import luxemburg_norm, modular, orlicz_norm
from orlicz_lab.models import (
    ConstantWitness,
    CorollaryReport,
    KrasnoselskiiReport,
    MultiplierReport,
    RayReport,
    SearchResult,
    VerifyBoundReport,
)

INF = math.inf
RAY_DIRECTIONS: List[Tuple[int, int, int]] = [
    d for d in itertools.product((-1, 0, 1), repeat=3) if d != (0, 0, 0)
]


class YoungTriple:
    """(ζ, φ₁, φ₂) com φ₂* em cache, grade e raios pré-calculados."""

    def __init__(
        self,
        zeta: OrliczFunction,
        phi1: OrliczFunction,
        phi2: OrliczFunction,
        config: Optional[RunConfig] = None,
        grid: Optional[Sequence[float]] = None,
    ):
        self.zeta, self.phi1, self.phi2 = zeta, phi1, phi2
        self.config = config or phi2.config
        self.conj = phi2.conjugate()
        cfg = self.config.multipliers
        if grid is None:
            self.axis = np.geomspace(cfg.lo, cfg.hi, cfg.points_per_axis)
            self.grid_label = f"log grid [{cfg.lo:g}, {cfg.hi:g}]^3, {cfg.points_per_axis} points per axis"
        else:
            self.axis = np.unique(np.asarray(grid, dtype=float))
            if np.any(self.axis < 0):
                raise DomainError("grid points must be nonnegative")
            self.grid_label = f"custom grid, {len(self.axis)} points per axis"

        bases = list(itertools.product((cfg.lo, 1.0, cfg.hi), repeat=3))
        self.rays = [(d, b) for d in RAY_DIRECTIONS for b in bases]
        self.ray_points = self._build_rays(np.power(10.0, np.arange(cfg.ray_decades + 1)))

    def _build_rays(self, s: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        d = np.array([r[0] for r in self.rays], dtype=float)
        b = np.array([r[1] for r in self.rays], dtype=float)
        u = b[:, 0, None] * np.power(s[None, :], d[:, 0, None])
        v = b[:, 1, None] * np.power(s[None, :], d[:, 1, None])
        w = b[:, 2, None] * np.power(s[None, :], d[:, 2, None])
        return u, v, w

    def ratio(self, u: np.ndarray, v: np.ndarray, w: np.ndarray, alpha: float, beta: float, gamma: float) -> np.ndarray:
        """uvw/[φ₂*(αu) + φ₁(βv) + ζ(γw)] (M = 1), com 0 onde uvw = 0."""
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            rhs = self.conj(alpha * u) + self.phi1(beta * v) + self.zeta(gamma * w)
            lhs = u * v * w
            out = lhs / rhs
        out = np.where(lhs == 0, 0.0, out)
        return np.where(np.isnan(out), INF, out)

    def grid_ratio(self, alpha: float, beta: float, gamma: float) -> np.ndarray:
        x = self.axis
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            a = self.conj(alpha * x)
            b = self.phi1(beta * x)
            c = self.zeta(gamma * x)
            rhs = a[:, None, None] + b[None, :, None] + c[None, None, :]
            lhs = x[:, None, None] * x[None, :, None] * x[None, None, :]
            out = lhs / rhs
        out = np.where(lhs == 0, 0.0, out)
        return np.where(np.isnan(out), INF, out)

    def ray_ratio(self, alpha: float, beta: float, gamma: float) -> np.ndarray:
        u, v, w = self.ray_points
        return self.ratio(u, v, w, alpha, beta, gamma)

    def divergent_ray(self, ray_ratios: np.ndarray) -> Optional[int]:
        growth = self.config.probes.growth_factor
        for i, row in enumerate(ray_ratios):
            if divergent_run(row, growth) is not None:
                return i
        return None

    def extend_ray(self, index: int, witness: ConstantWitness) -> Tuple[Optional[List[float]], float]:
        """Estende um raio divergente até achar razão/M > 1."""
        cfg = self.config.multipliers
        d, b = self.rays[index]
        s = np.power(10.0, np.arange(cfg.ray_decades, cfg.ray_decades + cfg.ray_extension_decades + 1))
        u, v, w = (b[k] * np.power(s, d[k]) for k in range(3))
        ratios = self.ratio(u, v, w, witness.alpha, witness.beta, witness.gamma) / witness.M
        over = np.flatnonzero(ratios > 1.0 + self.config.tolerances.multiplier)
        if over.size:
            k = int(over[0])
            return [float(u[k]), float(v[k]), float(w[k])], float(ratios[k])
        return None, float(np.max(ratios))

    def ray_report(self, index: int, ray_ratios: np.ndarray, m: float) -> RayReport:
        d, b = self.rays[index]
        return RayReport(
            direction=list(d), base=list(b), max_ratio=float(np.max(ray_ratios[index]) / m), divergent=True
        )

    def required_M(self, alpha: float, beta: float, gamma: float) -> float:
        """Menor M que satisfaz a grade e os raios; ∞ se algum raio diverge."""
        rays = self.ray_ratio(alpha, beta, gamma)
        if self.divergent_ray(rays) is not None:
            return INF
        return float(max(np.max(self.grid_ratio(alpha, beta, gamma)), np.max(rays)))


def check_constants(
    zeta: OrliczFunction,
    phi1: OrliczFunction,
    phi2: OrliczFunction,
    witness: ConstantWitness,
    grid: Optional[Sequence[float]] = None,
    config: Optional[RunConfig] = None,
    triple: Optional[YoungTriple] = None,
) -> MultiplierReport:
    """
    Verifica uvw <= M[φ₂*(αu) + φ₁(βv) + ζ(γw)] na grade e ao longo dos raios.

    Args:
        zeta, phi1, phi2: Funções de Orlicz
        witness: Constantes (M, α, β, γ)
        grid: Pontos por eixo; padrão 40 pontos log em [1e-3, 1e3]

    Returns:
        MultiplierReport; a primeira violação em ordem (u, v, w) é a testemunha
    """
    triple = triple or YoungTriple(zeta, phi1, phi2, config, grid)
    config = triple.config
    tol = config.tolerances.multiplier
    m, a, b, g = witness.as_tuple()

    ratios = triple.grid_ratio(a, b, g) / m
    rays = triple.ray_ratio(a, b, g) / m
    checked = ratios.size + rays.size
    max_ratio = float(max(np.max(ratios), np.max(rays)))

    violation: Optional[List[float]] = None
    bad = np.argwhere(ratios > 1.0 + tol)
    if bad.size:
        i, j, k = bad[0]
        x = triple.axis
        violation = [float(x[i]), float(x[j]), float(x[k])]
    else:
        bad_ray = np.argwhere(rays > 1.0 + tol)
        if bad_ray.size:
            r, k = bad_ray[0]
            u, v, w = triple.ray_points
            violation = [float(u[r, k]), float(v[r, k]), float(w[r, k])]

    divergent = triple.divergent_ray(rays)
    ray = None
    note = None
    if divergent is not None:
        ray = triple.ray_report(divergent, rays, 1.0)
        note = "ratio diverges along a ray; no constants satisfy the inequality globally"
        if violation is None:
            violation, extended = triple.extend_ray(divergent, witness)
            max_ratio = max(max_ratio, extended)
            checked += triple.config.multipliers.ray_extension_decades + 1

    holds = violation is None
    validated = witness.model_copy(update={"grid": triple.grid_label, "validated": holds})
    if holds:
        logger.info(f"Young generalizada vale com {witness.as_tuple()}: razão máxima {max_ratio:.6g}")
    else:
        logger.info(f"Young generalizada falha com {witness.as_tuple()} em {violation}")
    return MultiplierReport(
        holds=holds,
        witness=validated,
        violation=violation,
        max_ratio=max_ratio,
        derived_bound=witness.derived_bound,
        checked_products=int(checked),
        divergent_ray=ray,
        note=note,
    )


def search_constants(
    zeta: OrliczFunction,
    phi1: OrliczFunction,
    phi2: OrliczFunction,
    budget: Optional[int] = None,
    config: Optional[RunConfig] = None,
) -> SearchResult:
    """
    Busca determinística de (M, α, β, γ) em potências de 2 dentro de [2^-8, 2^8].

    Descida coordenada nos expoentes de (α, β, γ); para cada candidato o M
    necessário é a razão máxima com M = 1, arredondada para a próxima potência
    de 2. Cada candidato avaliado conta uma unidade do orçamento.
    """
    triple = YoungTriple(zeta, phi1, phi2, config)
    cfg = triple.config.multipliers
    budget = budget or cfg.budget
    lo_exp, hi_exp = cfg.exponent_min, cfg.exponent_max
    m_cap = 2.0**hi_exp
    evaluations = 0
    cache: Dict[Tuple[int, int, int], float] = {}

    def required(e: Tuple[int, int, int]) -> float:
        nonlocal evaluations
        if e not in cache:
            evaluations += 1
            cache[e] = triple.required_M(2.0 ** e[0], 2.0 ** e[1], 2.0 ** e[2])
        return cache[e]

    def candidate(e: Tuple[int, int, int], m: float) -> ConstantWitness:
        return ConstantWitness(M=m, alpha=2.0 ** e[0], beta=2.0 ** e[1], gamma=2.0 ** e[2])

    origin = (0, 0, 0)
    rays = triple.ray_ratio(1.0, 1.0, 1.0)
    evaluations += 1
    divergent = triple.divergent_ray(rays)
    if divergent is not None:
        d, b = triple.rays[divergent]
        logger.info(f"Busca interrompida: razão diverge ao longo do raio {d} a partir de {b}")
        return SearchResult(
            witness=None,
            best=candidate(origin, m_cap),
            best_ratio=INF,
            evaluations=evaluations,
            reason="divergent_ray",
        )

    current, value = origin, required(origin)
    while evaluations < budget:
        neighbours = []
        for axis in range(3):
            for step in (-1, 1):
                e = list(current)
                e[axis] += step
                if lo_exp <= e[axis] <= hi_exp:
                    neighbours.append(tuple(e))
        best_move, best_value = None, value
        for e in neighbours:
            if evaluations >= budget:
                break
            r = required(e)
            if r < best_value * (1.0 - 1e-12):
                best_move, best_value = e, r
        if best_move is None:
            break
        current, value = best_move, best_value

    if not math.isfinite(value) or value > m_cap:
        reason = "budget_exhausted" if evaluations >= budget else "required_M_out_of_range"
        logger.info(f"Nenhuma testemunha em [2^{lo_exp}, 2^{hi_exp}]: M necessário {value:.6g}")
        return SearchResult(
            witness=None,
            best=candidate(current, m_cap),
            best_ratio=value / m_cap,
            evaluations=evaluations,
            reason=reason,
        )

    exponent = max(lo_exp, math.ceil(math.log2(value))) if value > 0 else lo_exp
    report = check_constants(zeta, phi1, phi2, candidate(current, 2.0**exponent), triple=triple)
    evaluations += 1
    if not report.holds:
        return SearchResult(
            witness=None,
            best=report.witness,
            best_ratio=report.max_ratio,
            evaluations=evaluations,
            reason="validation_failed",
        )
    logger.info(f"Testemunha encontrada: {report.witness.as_tuple()} após {evaluations} avaliações")
    return SearchResult(
        witness=report.witness,
        best=report.witness,
        best_ratio=report.max_ratio,
        evaluations=evaluations,
        reason="found",
    )


def condition_a(
    psi: OrliczFunction, phi2: OrliczFunction
) -> Tuple[Optional[OrliczFunction], Optional[OrliczFunction], CorollaryReport]:
    """
    Condição (a): ζ = φ₂∘ψ*, φ₁ = φ₂∘ψ, testemunha (1, 1, 2, 2).

    Returns:
        (ζ, φ₁, relatório); ζ e φ₁ são None quando a condição não se aplica
    """
    zeta = phi2.compose(psi.conjugate())
    if not zeta.verdict.valid:
        reason = f"phi2 o psi* is not an Orlicz function ({zeta.verdict.violation})"
        logger.info(f"Condição (a) não se aplica: {reason}")
        return None, None, CorollaryReport(condition="a", applicable=False, reason=reason)
    phi1 = phi2.compose(psi)
    witness = ConstantWitness(M=1.0, alpha=1.0, beta=2.0, gamma=2.0)
    check = check_constants(zeta, phi1, phi2, witness)
    return zeta, phi1, CorollaryReport(
        condition="a", applicable=True, witness=check.witness, check=check
    )


def condition_b(
    psi: OrliczFunction, phi2: OrliczFunction
) -> Tuple[Optional[OrliczFunction], Optional[OrliczFunction], CorollaryReport]:
    """
    Condição (b): φ₂ ∈ Δ' global com constante a, ζ = ψ*∘φ₂, φ₁ = ψ∘φ₂.

    A testemunha (1, 1, 1/a, 1) incorpora o reescalonamento 1/a em β.
    """
    probe = GrowthProber(phi2.config).probe_delta_prime_a_form(phi2, u0=0.0)
    if not probe.holds:
        reason = "phi2 fails Delta' globally"
        logger.info(f"Condição (b) não se aplica: {reason}")
        return None, None, CorollaryReport(condition="b", applicable=False, reason=reason)
    zeta = psi.conjugate().compose(phi2)
    if not zeta.verdict.valid:
        reason = f"psi* o phi2 is not an Orlicz function ({zeta.verdict.violation})"
        return None, None, CorollaryReport(
            condition="b", applicable=False, reason=reason, a_form=probe.constant
        )
    phi1 = psi.compose(phi2)
    a = probe.constant
    witness = ConstantWitness(M=1.0, alpha=1.0, beta=1.0 / a, gamma=1.0)
    check = check_constants(zeta, phi1, phi2, witness)
    return zeta, phi1, CorollaryReport(
        condition="b", applicable=True, a_form=a, witness=check.witness, check=check
    )


def _strictly_below(lhs: np.ndarray, rhs: np.ndarray, margin: float) -> np.ndarray:
    finite_lhs = np.isfinite(lhs)
    return (finite_lhs & np.isinf(rhs)) | (finite_lhs & (lhs < rhs - margin * (1.0 + np.abs(np.where(np.isfinite(rhs), rhs, 0.0)))))


def krasnoselskii_check(
    zeta: OrliczFunction,
    phi1: OrliczFunction,
    phi2: OrliczFunction,
    variant: int,
    alpha: float,
    beta: float,
    u0: float = 0.0,
    config: Optional[RunConfig] = None,
) -> KrasnoselskiiReport:
    """
    Condições de Krasnosel'skii–Rutickii para u >= u0, com desigualdades estritas.

    Variante 1: φ₂(ζ(u)) < φ₁(αu) e φ₂(ζ*(u)) < ζ(βu).
    Variante 2: φ₂ ∈ Δ', ζ(αφ₂(u)) < φ₁(u) e ζ*(βφ₂(u)) < ζ(u).
    """
    if variant not in (1, 2):
        raise DomainError("variant must be 1 or 2")
    config = config or phi2.config
    prober = GrowthProber(config)
    for name, fn in (("zeta", zeta), ("phi1", phi1), ("phi2", phi2)):
        if not prober.n_function_limits(fn).n_function:
            return KrasnoselskiiReport(
                variant=variant, holds=False, preconditions_met=False, reason=f"{name} is not an N-function"
            )
    if variant == 2 and not prober.probe_delta_prime(phi2, u0=0.0).holds:
        return KrasnoselskiiReport(
            variant=2, holds=False, preconditions_met=False, reason="phi2 fails Delta' globally"
        )

    grid_cfg = config.grid
    floor = max(grid_cfg.lo, u0)
    if floor > grid_cfg.hi:
        return KrasnoselskiiReport(variant=variant, holds=True, preconditions_met=True, empty_grid=True, reason="empty grid")
    n = int(math.ceil(math.log10(grid_cfg.hi / floor) * grid_cfg.points_per_decade)) + 1 if floor < grid_cfg.hi else 1
    u = np.geomspace(floor, grid_cfg.hi, max(n, 1))

    zeta_star = zeta.conjugate()
    with np.errstate(over="ignore", invalid="ignore"):
        if variant == 1:
            first = _strictly_below(phi2(zeta(u)), phi1(alpha * u), config.tolerances.strict_margin)
            second = _strictly_below(phi2(zeta_star(u)), zeta(beta * u), config.tolerances.strict_margin)
        else:
            p2 = phi2(u)
            first = _strictly_below(zeta(alpha * p2), phi1(u), config.tolerances.strict_margin)
            second = _strictly_below(zeta_star(beta * p2), zeta(u), config.tolerances.strict_margin)
    ok = first & second
    witness = None if ok.all() else float(u[int(np.argmin(ok))])
    return KrasnoselskiiReport(
        variant=variant,
        holds=witness is None,
        preconditions_met=True,
        witness_u=witness,
        checked_points=int(u.size),
    )


def remark_witness(
    zeta: OrliczFunction,
    phi1: OrliczFunction,
    phi2: OrliczFunction,
    variant: int,
    alpha: float,
    beta: float,
    config: Optional[RunConfig] = None,
) -> Tuple[KrasnoselskiiReport, Optional[MultiplierReport]]:
    """
    Converte uma condição de Krasnosel'skii–Rutickii global numa testemunha de Young generalizada.

    Variante 1 → (1, 1, 2α, 2β); variante 2 → (max(1, 1/(αβ)), 1, 1/a, 1).
    """
    kr = krasnoselskii_check(zeta, phi1, phi2, variant, alpha, beta, 0.0, config)
    if not kr.holds or kr.empty_grid:
        return kr, None
    if variant == 1:
        witness = ConstantWitness(M=1.0, alpha=1.0, beta=2.0 * alpha, gamma=2.0 * beta)
    else:
        a = GrowthProber(config or phi2.config).probe_delta_prime_a_form(phi2, u0=0.0).constant
        witness = ConstantWitness(M=max(1.0, 1.0 / (alpha * beta)), alpha=1.0, beta=1.0 / a, gamma=1.0)
    return kr, check_constants(zeta, phi1, phi2, witness, config=config)


def verify_bound(
    zeta: OrliczFunction,
    phi1: OrliczFunction,
    phi2: OrliczFunction,
    witness: ConstantWitness,
    f: AlgebraElement,
    g: AlgebraElement,
    h: AlgebraElement,
    config: Optional[RunConfig] = None,
) -> VerifyBoundReport:
    """
    Cadeia de cotas do teorema de existência para f, g, h nas bolas unitárias.

    Sempre confere τ(|fgh|) <= 3M[ρ_{φ₂*}(αh) + ρ_{φ₁}(βg) + ρ_ζ(γf)]; a cota
    fechada M(3/α + 3/β + 3/γ) só quando α, β, γ <= 1 e a cota
    ‖fg‖⁰_{φ₂} <= 3M[α + ρ_{φ₁}(βg) + ρ_ζ(γf)] só quando α <= 1.

    Raises:
        UnvalidatedWitnessError: Testemunha não validada por check_constants
        DomainError: Algum fator fora da bola unitária de Luxemburg
    """
    if not witness.validated:
        raise UnvalidatedWitnessError("witness must be validated by check_constants first")
    config = config or phi2.config
    tol = config.tolerances.bound
    conj = phi2.conjugate()
    norms = {
        "zeta(f)": luxemburg_norm(zeta, f, config).value,
        "phi1(g)": luxemburg_norm(phi1, g, config).value,
        "phi2*(h)": luxemburg_norm(conj, h, config).value,
    }
    outside = [k for k, v in norms.items() if v > 1.0 + tol]
    if outside:
        raise DomainError(f"inputs must lie in the Luxemburg unit balls: {outside}")

    m, a, b, c = witness.as_tuple()
    fg = multiply(f, g)
    trace_fgh = trace(abs_(multiply(fg, h)))
    rho_h = modular(conj, h.scale(a))
    rho_g = modular(phi1, g.scale(b))
    rho_f = modular(zeta, f.scale(c))
    modular_bound = 3.0 * m * (rho_h + rho_g + rho_f)
    closed_applies = max(a, b, c) <= 1.0
    orlicz_applies = a <= 1.0
    orlicz_value = orlicz_norm(phi2, fg, config).value
    orlicz_bound = 3.0 * m * (a + rho_g + rho_f)

    slack_tol = tol * (1.0 + trace_fgh)
    holds = trace_fgh <= modular_bound + slack_tol
    if closed_applies:
        holds = holds and trace_fgh <= witness.derived_bound + slack_tol
    if orlicz_applies:
        holds = holds and orlicz_value <= orlicz_bound * (1.0 + tol) + tol
    if not holds:
        logger.warning(f"Cota do multiplicador falhou: τ(|fgh|)={trace_fgh:.6g}, cota={modular_bound:.6g}")
    return VerifyBoundReport(
        trace_fgh=trace_fgh,
        modular_bound=modular_bound,
        closed_bound=witness.derived_bound,
        closed_bound_applies=closed_applies,
        orlicz_norm_fg=orlicz_value,
        orlicz_bound=orlicz_bound,
        orlicz_bound_applies=orlicz_applies,
        norms=norms,
        holds=bool(holds),
        slack=modular_bound - trace_fgh,
    )


def submajorization_check(x: AlgebraElement, y: AlgebraElement, t: float, s: float) -> bool:
    """μ_{t+s}(xy) <= μ_t(x)·μ_s(y) + 1e-10."""
    if t < 0 or s < 0:
        raise DomainError("submajorization_check requires t, s >= 0")
    return mu_at(multiply(x, y), t + s) <= mu_at(x, t) * mu_at(y, s) + 1e-10


def submajorization_slack(x: AlgebraElement, y: AlgebraElement) -> float:
    """Menor folga μ_t(x)μ_s(y) − μ_{t+s}(xy) sobre todos os inícios de degrau (t, s)."""
    mx, my, mxy = mu(x), mu(y), mu(multiply(x, y))
    ts = np.concatenate(([0.0], mx.ends))
    ss = np.concatenate(([0.0], my.ends))
    slack = INF
    for t in ts:
        for s in ss:
            slack = min(slack, mx.at(t) * my.at(s) - mxy.at(t + s))
    return float(slack)
