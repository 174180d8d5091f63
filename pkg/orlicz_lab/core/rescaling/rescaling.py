"""
Reescalonamento de multiplicadores e troca de medidas equivalentes.
"""

import math
from typing import Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from orlicz_lab.config import RunConfig
from orlicz_lab.core.algebra.trace_algebra import (
    AlgebraElement,
    BlockAlgebra,
    abs_,
    apply_function,
    jacobi_eigen,
)
from orlicz_lab.core.errors import DomainError
from orlicz_lab.core.functions.growth import GrowthProber
from orlicz_lab.core.functions.orlicz_function import OrliczFunction
from orlicz_lab.core.norms.norms import luxemburg_norm
from orlicz_lab.models import AtomicMeasurePair, LemmaLMReport, MeasureMapReport, RescaleReport

DOWN_SCALES = (0.1, 0.25, 0.5, 0.75, 0.9)


class FormalInverse:
    """φ⁻¹ como função vetorizada, para o cálculo funcional."""

    b_phi = math.inf

    def __init__(self, phi: OrliczFunction):
        self.phi = phi

    def __call__(self, t: np.ndarray) -> np.ndarray:
        return self.phi.formal_inverse_array(t)


def _require_positive(x: AlgebraElement) -> None:
    if not x.is_symmetric():
        raise DomainError("element must be positive")
    for m in x.mats:
        eigenvalues, _ = jacobi_eigen(m)
        if eigenvalues.size and eigenvalues[-1] < -1e-12 * float(np.linalg.norm(m)):
            raise DomainError("element must be positive")


def _spectrum(x: AlgebraElement) -> np.ndarray:
    values = [np.clip(jacobi_eigen(m)[0], 0.0, None) for m in x.mats]
    return np.concatenate(values) if values else np.empty(0)


def lemma_lm_check(
    psi: OrliczFunction, phi: OrliczFunction, a: AlgebraElement, config: Optional[RunConfig] = None
) -> LemmaLMReport:
    """
    Confere ‖φ(|a|)‖_ψ <= ‖a‖_ζ com ζ = ψ∘φ, sob a hipótese ‖a‖_ζ < 1.

    Args:
        psi: Função externa
        phi: Função interna
        a: Elemento qualquer

    Returns:
        LemmaLMReport; a hipótese violada é reportada sem afirmação
    """
    config = config or phi.config
    zeta = psi.compose(phi)
    if not zeta.verdict.valid:
        return LemmaLMReport(
            applicable=False, reason=f"psi o phi is not an Orlicz function ({zeta.verdict.violation})", holds=False
        )
    norm_zeta = luxemburg_norm(zeta, a, config).value
    if norm_zeta >= 1.0:
        return LemmaLMReport(
            applicable=False, reason="precondition violated: norm in zeta is not below 1",
            norm_zeta=norm_zeta, holds=False,
        )
    try:
        image = apply_function(phi, abs_(a))
    except DomainError as e:
        return LemmaLMReport(applicable=False, reason=str(e), norm_zeta=norm_zeta, holds=False)
    norm_image = luxemburg_norm(psi, image, config).value
    holds = norm_image <= norm_zeta + config.tolerances.bound
    if not holds:
        logger.warning(f"Lema de reescalonamento falhou: {norm_image:.12g} > {norm_zeta:.12g}")
    return LemmaLMReport(applicable=True, norm_image=norm_image, norm_zeta=norm_zeta, holds=holds)


def rescale_up(
    psi: OrliczFunction, phi2: OrliczFunction, g: AlgebraElement, config: Optional[RunConfig] = None
) -> Tuple[Optional[AlgebraElement], RescaleReport]:
    """
    g ↦ φ₂(g), com o certificado Δ₂ da inclusão em L^{ψ*}.

    Escolhe α com ‖αg‖_ζ < 1 (ζ = ψ*∘φ₂), o menor N com α > 2^-N e confere
    ‖φ₂(g)‖_{ψ*} <= K^N·‖αg‖_ζ, onde K é a constante Δ₂ de φ₂.
    """
    config = config or phi2.config
    psi_star = psi.conjugate()
    zeta = psi_star.compose(phi2)
    if not zeta.verdict.valid:
        reason = f"psi* o phi2 is not an Orlicz function ({zeta.verdict.violation})"
        return None, RescaleReport(direction="up", applicable=False, reason=reason, holds=False)
    delta2 = GrowthProber(config).probe_delta2(phi2)
    if not delta2.holds:
        logger.info(f"rescale_up não se aplica: {phi2.label} falha Δ₂")
        return None, RescaleReport(direction="up", applicable=False, reason="phi2 fails Delta2", holds=False)
    _require_positive(g)

    image = apply_function(phi2, g)
    norm_g = luxemburg_norm(zeta, g, config).value
    alpha = 1.0 if norm_g < 1.0 else 0.999 / norm_g
    n = int(math.floor(-math.log2(alpha))) + 1
    k = delta2.constant
    domination = k**n
    norm_image = luxemburg_norm(psi_star, image, config).value
    bound = domination * luxemburg_norm(zeta, g.scale(alpha), config).value
    holds = math.isfinite(norm_image) and norm_image <= bound * (1.0 + config.tolerances.bound) + 1e-12
    return image, RescaleReport(
        direction="up",
        applicable=True,
        alpha=alpha,
        N=n,
        K=k,
        domination=domination,
        norm_image=norm_image,
        bound=bound,
        holds=holds,
    )


def rescale_down(
    phi2: OrliczFunction,
    f: AlgebraElement,
    psi: Optional[OrliczFunction] = None,
    config: Optional[RunConfig] = None,
    scales: Sequence[float] = DOWN_SCALES,
) -> Tuple[Optional[AlgebraElement], RescaleReport]:
    """
    f ↦ φ₂⁻¹(f) espectralmente, quando φ₂ satisfaz Δ' globalmente.

    Sem psi a imagem é devolvida, mas o relatório sai como não aplicável:
    nada foi conferido. Com psi, confere ζ(s·φ₂⁻¹(λ)) <= ψ*(s·λ) para cada autovalor λ
    e cada s em `scales`, com ζ = ψ*∘φ₂.
    """
    config = config or phi2.config
    if not GrowthProber(config).probe_delta_prime(phi2, u0=0.0).holds:
        logger.info(f"rescale_down não se aplica: {phi2.label} falha Δ'")
        return None, RescaleReport(direction="down", applicable=False, reason="phi2 fails Delta'", holds=False)
    _require_positive(f)
    image = apply_function(FormalInverse(phi2), f)
    if psi is None:
        logger.info("rescale_down sem psi: a desigualdade não foi conferida")
        return image, RescaleReport(
            direction="down", applicable=False, reason="psi not given: inequality not checked", holds=False
        )

    psi_star = psi.conjugate()
    zeta = psi_star.compose(phi2)
    spectrum = _spectrum(f)
    inverse = phi2.formal_inverse_array(spectrum)
    holds = True
    for s in scales:
        lhs = zeta(s * inverse)
        rhs = psi_star(s * spectrum)
        if np.any(lhs > rhs * (1.0 + config.tolerances.bound) + 1e-12):
            logger.warning(f"rescale_down: desigualdade falhou na escala s={s:g}")
            holds = False
    return image, RescaleReport(direction="down", applicable=True, checked_scales=len(scales), holds=holds)


def equivalent_measure_map(
    phi: OrliczFunction,
    pair: AtomicMeasurePair,
    f: Sequence[float],
    config: Optional[RunConfig] = None,
) -> Tuple[np.ndarray, MeasureMapReport]:
    """
    Troca de medida f ↦ φ⁻¹(dν₁/dν₂)·f entre L^φ(ν₁) e L^φ(ν₂).

    Δ' (constante a) garante ‖imagem‖ <= ‖f‖/a; ∇' (constante b) garante
    ‖imagem‖ >= ‖f‖/b. Sem nenhuma das duas, o mapa é calculado sem cotas.
    """
    config = config or phi.config
    f = np.asarray(f, dtype=float)
    if f.shape != (pair.atoms,):
        raise DomainError(f"vector has {f.size} entries for {pair.atoms} atoms")
    derivative = pair.derivative
    image = phi.formal_inverse_array(derivative) * f

    source = AlgebraElement.from_vector(BlockAlgebra.commutative(pair.nu1), np.abs(f))
    target = AlgebraElement.from_vector(BlockAlgebra.commutative(pair.nu2), np.abs(image))
    norm_f = luxemburg_norm(phi, source, config).value
    norm_image = luxemburg_norm(phi, target, config).value
    ratio = norm_image / norm_f if norm_f > 0 else 1.0

    prober = GrowthProber(config)
    delta = prober.probe_delta_prime_a_form(phi)
    nabla = prober.probe_nabla_prime(phi)
    tol = config.tolerances.bound
    holds = True
    upper = lower = None
    if delta.holds:
        upper = norm_f / delta.constant
        holds = holds and norm_image <= upper * (1.0 + tol) + 1e-12
    if nabla.holds:
        lower = norm_f / nabla.constant
        holds = holds and lower <= norm_image * (1.0 + tol) + 1e-12
    note = None if (delta.holds or nabla.holds) else "Delta' and Nabla' both fail; no bound asserted"
    if note:
        logger.info(f"Troca de medida para {phi.label}: {note}")
    return image, MeasureMapReport(
        image=image.tolist(),
        derivative=derivative.tolist(),
        norm_f=norm_f,
        norm_image=norm_image,
        ratio=ratio,
        delta_prime_holds=delta.holds,
        nabla_prime_holds=nabla.holds,
        a_form=delta.constant if delta.holds else None,
        b_constant=nabla.constant if nabla.holds else None,
        upper_bound=upper,
        lower_bound=lower,
        holds=bool(holds),
        note=note,
    )
