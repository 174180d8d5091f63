"""
Identidades de escala finita do argumento de compacidade.

Caso 1: imagens de Rademacher têm norma constante.
Caso 2: cadeias de isometrias parciais dão cota inferior uniforme.
Caso 3: normas de projeções ficam entre dois ínfimos explícitos.
Estrutura: suporte central e normas por bloco.
"""

import math
from typing import Optional

import numpy as np
from loguru import logger

from orlicz_lab.config import RunConfig
from orlicz_lab.core.algebra.trace_algebra import (
    AlgebraElement,
    BlockAlgebra,
    adjoint,
    central_carrier,
    jacobi_eigen,
    mu,
    multiply,
    partial_isometry_chain,
    rademacher_family,
    trace,
)
from orlicz_lab.core.errors import AlgebraMismatchError, DomainError
from orlicz_lab.core.functions.orlicz_function import OrliczFunction
from orlicz_lab.core.norms.norms import luxemburg_norm
from orlicz_lab.models import IsometryReport, RademacherReport, SandwichReport, StructureReport

NORM_RTOL = 1e-10


def rademacher_image_check(
    g: AlgebraElement, phi2: OrliczFunction, config: Optional[RunConfig] = None
) -> RademacherReport:
    """
    Confere μ(g·r_n) = μ(g) e ‖g·r_n‖_φ₂ = ‖g‖_φ₂ para toda a família de Rademacher.

    Args:
        g: Elemento de uma álgebra comutativa com 2^k átomos de peso 2^-k
        phi2: Função de Orlicz
    """
    algebra = g.algebra
    atoms = len(algebra.blocks)
    if not algebra.is_commutative or atoms < 2 or atoms & (atoms - 1):
        raise DomainError("rademacher_image_check requires a commutative algebra with 2^k atoms")
    if abs(algebra.total_trace - 1.0) > 1e-12:
        raise DomainError("rademacher_image_check requires unit total trace")
    k = atoms.bit_length() - 1
    family = rademacher_family(algebra, k)

    base_mu = mu(g)
    base = luxemburg_norm(phi2, g, config).value
    norms, mu_equal = [], True
    for r in family:
        image = multiply(g, r)
        mu_equal = mu_equal and mu(image).matches(base_mu)
        norms.append(luxemburg_norm(phi2, image, config).value)
    norms_equal = all(abs(n - base) <= NORM_RTOL * (1.0 + base) for n in norms)
    return RademacherReport(k=k, base_norm=base, norms=norms, mu_equal=mu_equal, holds=mu_equal and norms_equal)


def _top_eigenprojection(g: AlgebraElement, lam: float):
    """Bloco e vetor do maior autovalor >= lam entre blocos de dimensão >= 3 (menor índice no empate)."""
    best = None
    for b, (block, m) in enumerate(zip(g.algebra.blocks, g.mats)):
        if block.dim < 3:
            continue
        eigenvalues, basis = jacobi_eigen(m)
        top = float(eigenvalues[0])
        if top >= lam and (best is None or top > best[1]):
            best = (b, top, basis[:, 0])
    return best


def isometry_image_check(
    g: AlgebraElement, lam: float, phi: OrliczFunction, config: Optional[RunConfig] = None
) -> IsometryReport:
    """
    Confere a cadeia de isometrias parciais v_1..v_n sobre e₁.

    Para cada v_n: μ(g·v_n) = μ(g·e₁), μ(g·v_n) = μ((g·v_n)(g·v_n)ᵀ)^(1/2) e
    ‖g·v_n‖_φ >= λ‖e₁‖_φ. Além disso μ(g·e₁gᵀ)^(1/2) = μ(g·e₁) e
    μ_t(g·e₁) >= λ·μ_t(e₁) em todo t (comparação degrau a degrau).

    e₁ é a autoprojeção de posto 1 do maior autovalor >= λ (blocos de dimensão >= 3).

    Raises:
        DomainError: projeção espectral χ_[λ,∞)(g) vazia ou g não positivo
    """
    if lam <= 0:
        raise DomainError("lambda must be positive")
    if not g.is_symmetric():
        raise DomainError("isometry_image_check requires a positive element")
    config = config or phi.config
    tolerances = config.tolerances
    chosen = _top_eigenprojection(g, lam)
    if chosen is None:
        raise DomainError(f"spectral projection for lambda={lam:g} is empty in blocks of dim >= 3")
    b, eigenvalue, xi = chosen
    algebra = g.algebra
    mats = [np.zeros((d, d)) for d in algebra.dims]
    mats[b] = np.outer(xi, xi)
    e1 = AlgebraElement(algebra, mats)

    n = algebra.blocks[b].dim
    chain = partial_isometry_chain(algebra, e1, n)
    ge1 = multiply(g, e1)
    target = mu(ge1, tolerances)
    squared_target = mu(multiply(ge1, adjoint(g)), tolerances)
    e1_norm = luxemburg_norm(phi, e1, config).value
    lower = lam * e1_norm

    norms, chain_equal = [], True
    adjoint_chain_equal = squared_target.power(0.5).matches(target, NORM_RTOL)
    for v in chain:
        gv = multiply(g, v)
        gv_mu = mu(gv, tolerances)
        gv_squared = mu(multiply(gv, adjoint(gv)), tolerances)
        chain_equal = chain_equal and gv_mu.matches(target, NORM_RTOL)
        adjoint_chain_equal = (
            adjoint_chain_equal
            and gv_squared.power(0.5).matches(gv_mu, NORM_RTOL)
            and gv_squared.matches(squared_target, NORM_RTOL)
        )
        norms.append(luxemburg_norm(phi, gv, config).value)
    dominates = target.dominates(mu(e1, tolerances), lam, NORM_RTOL)
    holds = chain_equal and adjoint_chain_equal and dominates and all(x >= lower - 1e-10 for x in norms)
    logger.debug(f"Cadeia de isometrias: bloco {b}, autovalor {eigenvalue:.6g}, cota {lower:.6g}")
    return IsometryReport(
        block=b, eigenvalue=eigenvalue, lam=lam, n=n, norms=norms,
        lower_bound=lower, chain_equal=chain_equal, adjoint_chain_equal=adjoint_chain_equal,
        dominates=dominates, holds=holds,
    )


def _projection_level(phi: OrliczFunction, level: float) -> float:
    """inf{α > 0 : φ(1/α) <= level} = 1/φ⁻¹(level)."""
    inverse = phi.formal_inverse(level)
    return math.inf if inverse == 0 else 1.0 / inverse


def projection_norm_sandwich(
    phi1: OrliczFunction, e: AlgebraElement, config: Optional[RunConfig] = None
) -> SandwichReport:
    """
    Para n <= τ(e) < n+1: inf{α : φ(1/α) <= 1/n} <= ‖e‖_φ <= inf{α : φ(1/α) <= 1/(n+1)}.

    Raises:
        DomainError: τ(e) < 1 ou e não é projeção
    """
    if not all(np.allclose(m @ m, m, atol=1e-10) and np.allclose(m, m.T, atol=1e-10) for m in e.mats):
        raise DomainError("e must be a projection")
    tau = trace(e)
    if tau < 1.0 - 1e-12:
        raise DomainError("projection_norm_sandwich requires tau(e) >= 1")
    n = max(1, int(math.floor(tau + 1e-12)))
    lower = _projection_level(phi1, 1.0 / n)
    upper = _projection_level(phi1, 1.0 / (n + 1))
    norm = luxemburg_norm(phi1, e, config).value
    tol = 1e-10 * (1.0 + norm)
    holds = lower - tol <= norm <= upper + tol
    return SandwichReport(tau=tau, n=n, lower=lower, norm=norm, upper=upper, holds=holds)


def structure_report(
    algebra: BlockAlgebra, g: AlgebraElement, phi: OrliczFunction, config: Optional[RunConfig] = None
) -> StructureReport:
    """
    Suporte central de g, normas ‖g·c_b‖_φ por bloco e a reconstrução g·c = g.

    norm_floor é o mínimo das normas nos blocos do suporte (0 se g = 0).
    """
    if g.algebra != algebra:
        raise AlgebraMismatchError("element does not belong to the given algebra")
    config = config or phi.config
    mask = central_carrier(algebra, g, config.tolerances.zero)
    carrier = AlgebraElement.central_projection(algebra, mask)
    error = g.distance(multiply(g, carrier))

    block_norms = []
    for b, on in enumerate(mask):
        single = [i == b for i in range(len(mask))]
        part = multiply(g, AlgebraElement.central_projection(algebra, single))
        block_norms.append(luxemburg_norm(phi, part, config).value if on else 0.0)
    carried = [x for x, on in zip(block_norms, mask) if on]
    floor = min(carried) if carried else 0.0
    scale_ref = max(g.block_norms())
    holds = error <= config.tolerances.zero * scale_ref and ((floor > 0) == any(mask))
    return StructureReport(
        carrier_mask=mask,
        block_dims=algebra.dims,
        finite_type_I=True,
        block_norms=block_norms,
        norm_floor=floor,
        reconstruction_error=error,
        holds=holds,
    )
