"""
Testes para reescalonamento e troca de medidas.
"""

import math

import numpy as np
import pytest

from orlicz_lab.core.algebra.trace_algebra import AlgebraElement, BlockAlgebra, random_positive
from orlicz_lab.core.errors import DomainError
from orlicz_lab.core.rescaling.rescaling import (
    equivalent_measure_map,
    lemma_lm_check,
    rescale_down,
    rescale_up,
)
from orlicz_lab.models import AtomicMeasurePair


@pytest.fixture
def small_diag():
    return AlgebraElement.diagonal(BlockAlgebra.of((2, 1.0)), [[0.3, 0.4]])


@pytest.mark.unit
class TestLemmaLM:
    """Testes para ‖φ(|a|)‖_ψ <= ‖a‖_{ψ∘φ}."""

    def test_holds(self, square, small_diag):
        """Testa o lema para ψ = φ = t²."""
        report = lemma_lm_check(square, square, small_diag)
        assert report.applicable
        assert report.holds
        assert report.norm_zeta == pytest.approx((0.3**4 + 0.4**4) ** 0.25)
        assert report.norm_image == pytest.approx(math.sqrt(0.3**4 + 0.4**4))

    def test_precondition(self, square, diag34):
        """Testa hipótese ‖a‖_ζ >= 1 reportada sem afirmação."""
        report = lemma_lm_check(square, square, diag34)
        assert not report.applicable
        assert not report.holds
        assert "precondition" in report.reason

    def test_random_elements(self, functions, mixed_algebra):
        """Testa o lema para elementos aleatórios dentro da bola."""
        psi, phi = functions["t^2"], functions["t·log(1+t)"]
        for seed in range(3):
            a = random_positive(mixed_algebra, seed, low=0.01, high=0.1)
            report = lemma_lm_check(psi, phi, a)
            assert report.applicable
            assert report.holds


@pytest.mark.unit
class TestRescaleUpDown:
    """Testes para g ↦ φ₂(g) e f ↦ φ₂⁻¹(f)."""

    def test_up_certificate(self, square, mixed_algebra):
        """Testa ‖φ₂(g)‖_{ψ*} <= K^N‖αg‖_ζ."""
        g = random_positive(mixed_algebra, 3)
        image, report = rescale_up(square, square, g)
        assert report.applicable
        assert report.holds
        assert report.K == pytest.approx(4.0, abs=1e-6)
        assert report.domination == pytest.approx(report.K**report.N)
        assert 2.0 ** (-report.N) < report.alpha
        assert image.distance(g @ g) <= 1e-9

    def test_round_trip(self, square, mixed_algebra):
        """Testa φ₂⁻¹(φ₂(g)) = g."""
        g = random_positive(mixed_algebra, 5)
        image, _ = rescale_up(square, square, g)
        back, _ = rescale_down(square, image)
        assert back.distance(g) <= 1e-9

    def test_down_without_psi_is_not_checked(self, square, mixed_algebra):
        """Testa que sem psi a imagem sai, mas o relatório não afirma a desigualdade."""
        f = random_positive(mixed_algebra, 6)
        image, report = rescale_down(square, f)
        assert image is not None
        assert not report.applicable
        assert not report.holds
        assert report.checked_scales == 0
        assert report.reason == "psi not given: inequality not checked"

    def test_down_with_psi(self, square, mixed_algebra):
        """Testa ζ(s·φ₂⁻¹(λ)) <= ψ*(s·λ) nas escalas padrão."""
        f = random_positive(mixed_algebra, 8)
        _, report = rescale_down(square, f, psi=square)
        assert report.holds
        assert report.checked_scales == 5

    def test_up_requires_delta2(self, square, functions, mixed_algebra):
        """Testa que e^t − 1 não se aplica."""
        image, report = rescale_up(square, functions["e^t-1"], random_positive(mixed_algebra, 1))
        assert image is None
        assert not report.applicable

    def test_down_requires_delta_prime(self, functions, mixed_algebra):
        """Testa que Δ' é exigido para descer."""
        image, report = rescale_down(functions["e^t-1"], random_positive(mixed_algebra, 1))
        assert image is None
        assert report.reason == "phi2 fails Delta'"

    def test_requires_positive(self, square):
        """Testa DomainError para elemento não positivo."""
        x = AlgebraElement.diagonal(BlockAlgebra.of((2, 1.0)), [[1.0, -1.0]])
        with pytest.raises(DomainError):
            rescale_up(square, square, x)
        with pytest.raises(DomainError):
            rescale_down(square, x)


@pytest.mark.unit
class TestEquivalentMeasure:
    """Testes para a troca de medida f ↦ φ⁻¹(dν₁/dν₂)·f."""

    def test_square_is_isometric(self, square):
        """Testa razão 1 para t²."""
        pair = AtomicMeasurePair(nu1=[0.5, 1.0, 2.0], nu2=[1.0, 0.25, 2.0])
        image, report = equivalent_measure_map(square, pair, [1.0, -2.0, 0.5])
        np.testing.assert_allclose(image, np.sqrt([0.5, 4.0, 1.0]) * [1.0, -2.0, 0.5])
        assert report.ratio == pytest.approx(1.0, rel=1e-9)
        assert report.holds
        assert report.upper_bound == pytest.approx(report.norm_f, rel=1e-6)
        assert report.lower_bound == pytest.approx(report.norm_f, rel=1e-6)

    def test_scaled_power_bounds(self, functions):
        """Testa as cotas ‖f‖/a e ‖f‖/b para 3t²."""
        pair = AtomicMeasurePair(nu1=[1.0, 3.0], nu2=[2.0, 1.0])
        _, report = equivalent_measure_map(functions["3·t^2"], pair, [2.0, 1.0])
        assert report.holds
        assert report.lower_bound <= report.norm_image * (1 + 1e-9)
        assert report.norm_image <= report.upper_bound * (1 + 1e-9)

    def test_no_bounds_for_exp(self, functions):
        """Testa que e^t − 1 não recebe cotas."""
        pair = AtomicMeasurePair(nu1=[1.0, 2.0], nu2=[1.0, 1.0])
        _, report = equivalent_measure_map(functions["e^t-1"], pair, [0.5, 0.5])
        assert report.note is not None
        assert report.upper_bound is None and report.lower_bound is None

    def test_wrong_length(self, square):
        """Testa DomainError para vetor de tamanho errado."""
        pair = AtomicMeasurePair(nu1=[1.0, 1.0], nu2=[1.0, 1.0])
        with pytest.raises(DomainError):
            equivalent_measure_map(square, pair, [1.0])

    @pytest.mark.parametrize(
        "nu1,nu2",
        [([1.0], [1.0, 2.0]), ([0.0], [1.0]), ([], [])],
    )
    def test_invalid_pair(self, nu1, nu2):
        """Testa rejeição de medidas inválidas."""
        with pytest.raises(ValueError):
            AtomicMeasurePair(nu1=nu1, nu2=nu2)
