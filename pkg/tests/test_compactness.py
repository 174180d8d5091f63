"""
Testes para os diagnósticos de compacidade.
"""

import math

import numpy as np
import pytest

from orlicz_lab.core.algebra.trace_algebra import (
    AlgebraElement,
    BlockAlgebra,
    mu,
    random_element,
    random_positive,
    synthetic_projection,
)
from orlicz_lab.core.compactness.diagnostics import (
    isometry_image_check,
    projection_norm_sandwich,
    rademacher_image_check,
    structure_report,
)
from orlicz_lab.core.errors import AlgebraMismatchError, DomainError


@pytest.fixture
def dyadic():
    """Álgebra comutativa de 8 átomos de peso 1/8."""
    return BlockAlgebra.commutative([0.125] * 8)


@pytest.mark.unit
class TestRademacher:
    """Testes para o caso 1: imagens de Rademacher."""

    @pytest.mark.parametrize("label", ["t^2", "e^t-1", "t·log(1+t)"])
    def test_constant_norm(self, dyadic, functions, label):
        """Testa ‖g·r_n‖ = ‖g‖ para toda a família."""
        g = AlgebraElement.from_vector(dyadic, [0.5, -1.0, 2.0, 0.1, 0.0, 1.5, -0.3, 0.7])
        report = rademacher_image_check(g, functions[label])
        assert report.k == 3
        assert len(report.norms) == 3
        assert report.mu_equal
        assert report.holds

    def test_not_dyadic(self, square):
        """Testa DomainError para 3 átomos."""
        algebra = BlockAlgebra.commutative([1 / 3] * 3)
        with pytest.raises(DomainError):
            rademacher_image_check(AlgebraElement.identity(algebra), square)

    def test_total_trace(self, square):
        """Testa DomainError para traço total diferente de 1."""
        algebra = BlockAlgebra.commutative([1.0] * 4)
        with pytest.raises(DomainError):
            rademacher_image_check(AlgebraElement.identity(algebra), square)

    def test_noncommutative(self, square, mixed_algebra):
        """Testa DomainError para álgebra não comutativa."""
        with pytest.raises(DomainError):
            rademacher_image_check(AlgebraElement.identity(mixed_algebra), square)


@pytest.mark.unit
class TestIsometryChain:
    """Testes para o caso 2: cadeias de isometrias parciais."""

    def test_lower_bound(self, square):
        """Testa ‖g·v_n‖ >= λ‖e₁‖ e μ(g·v_n) = μ(g·e₁)."""
        algebra = BlockAlgebra.of((3, 1.0), (2, 0.5))
        g = random_positive(algebra, 4)
        report = isometry_image_check(g, 0.1, square)
        assert report.holds
        assert report.chain_equal
        assert report.block == 0
        assert report.n == 3
        assert report.eigenvalue >= 0.1
        assert min(report.norms) >= report.lower_bound - 1e-10

    @pytest.mark.parametrize("seed", [1, 4, 9, 16, 25])
    def test_adjoint_chain_and_dominance(self, square, seed):
        """Testa μ(gv) = μ(gv(gv)ᵀ)^(1/2) = μ(g·e₁gᵀ)^(1/2) e μ_t(g·e₁) >= λ·μ_t(e₁)."""
        algebra = BlockAlgebra.of((4, 1.0), (2, 0.5))
        g = random_positive(algebra, seed)
        report = isometry_image_check(g, 0.1, square)
        assert report.adjoint_chain_equal
        assert report.dominates
        assert report.holds

    def test_dominance_is_stepwise(self, square):
        """Testa a comparação degrau a degrau que sustenta a cota inferior."""
        algebra = BlockAlgebra.of((3, 1.0))
        g = AlgebraElement.diagonal(algebra, [[2.0, 0.5, 0.25]])
        e1 = AlgebraElement.diagonal(algebra, [[1.0, 0.0, 0.0]])
        target = mu(g @ e1)
        assert target.dominates(mu(e1), 2.0)
        assert not target.dominates(mu(e1), 2.5)
        report = isometry_image_check(g, 1.0, square)
        assert report.eigenvalue == pytest.approx(2.0)
        assert report.dominates and report.adjoint_chain_equal

    def test_empty_projection(self, square):
        """Testa DomainError quando χ_[λ,∞)(g) é vazia."""
        algebra = BlockAlgebra.of((3, 1.0))
        with pytest.raises(DomainError):
            isometry_image_check(random_positive(algebra, 1), 100.0, square)

    def test_small_blocks_only(self, square):
        """Testa DomainError sem blocos de dimensão >= 3."""
        algebra = BlockAlgebra.of((2, 1.0))
        with pytest.raises(DomainError):
            isometry_image_check(AlgebraElement.identity(algebra), 0.5, square)

    def test_nonpositive_lambda(self, square):
        """Testa DomainError para λ <= 0."""
        algebra = BlockAlgebra.of((3, 1.0))
        with pytest.raises(DomainError):
            isometry_image_check(AlgebraElement.identity(algebra), 0.0, square)

    def test_asymmetric(self, square):
        """Testa DomainError para g não simétrico."""
        algebra = BlockAlgebra.of((3, 1.0))
        with pytest.raises(DomainError):
            isometry_image_check(random_element(algebra, 2), 0.1, square)


@pytest.mark.unit
class TestProjectionSandwich:
    """Testes para o caso 3: normas de projeções."""

    def test_square_values(self, square):
        """Testa √2 <= √2.5 <= √3 para t² e τ(e) = 2.5."""
        _, e = synthetic_projection(2.5)
        report = projection_norm_sandwich(square, e)
        assert report.n == 2
        assert report.lower == pytest.approx(math.sqrt(2.0))
        assert report.norm == pytest.approx(math.sqrt(2.5))
        assert report.upper == pytest.approx(math.sqrt(3.0))
        assert report.holds

    @pytest.mark.parametrize("tau", [1.0, 1.7, 3.0, 10.25])
    @pytest.mark.parametrize("label", ["t^1", "t^3", "e^t-1", "t·log(1+t)"])
    def test_sandwich_holds(self, functions, tau, label):
        """Testa o sanduíche para várias funções e traços."""
        _, e = synthetic_projection(tau)
        report = projection_norm_sandwich(functions[label], e)
        assert report.holds

    def test_small_trace(self, square):
        """Testa DomainError para τ(e) < 1."""
        _, e = synthetic_projection(0.5)
        with pytest.raises(DomainError):
            projection_norm_sandwich(square, e)

    def test_not_projection(self, square, diag34):
        """Testa DomainError para elemento que não é projeção."""
        with pytest.raises(DomainError):
            projection_norm_sandwich(square, diag34)


@pytest.mark.unit
class TestStructure:
    """Testes para o relatório de estrutura."""

    def test_carrier(self, square, mixed_algebra):
        """Testa máscara, normas por bloco e reconstrução."""
        g = AlgebraElement(mixed_algebra, [np.eye(2), np.zeros((3, 3)), [[3.0]]])
        report = structure_report(mixed_algebra, g, square)
        assert report.carrier_mask == [True, False, True]
        assert report.block_norms[1] == 0.0
        assert report.block_norms[0] == pytest.approx(math.sqrt(2.0))
        assert report.block_norms[2] == pytest.approx(3.0 * math.sqrt(2.0))
        assert report.norm_floor == pytest.approx(math.sqrt(2.0))
        assert report.reconstruction_error == 0.0
        assert report.holds

    def test_zero_element(self, square, mixed_algebra):
        """Testa piso nulo para g = 0."""
        report = structure_report(mixed_algebra, AlgebraElement.zero(mixed_algebra), square)
        assert report.norm_floor == 0.0
        assert not any(report.carrier_mask)
        assert report.holds

    def test_tiny_element_keeps_carrier(self, square, mixed_algebra):
        """Testa que o suporte central não depende da escala de g."""
        g = AlgebraElement(mixed_algebra, [np.eye(2), np.zeros((3, 3)), [[3.0]]]).scale(1e-13)
        report = structure_report(mixed_algebra, g, square)
        assert report.carrier_mask == [True, False, True]
        assert report.norm_floor == pytest.approx(math.sqrt(2.0) * 1e-13)
        assert report.holds

    def test_mismatch(self, square, mixed_algebra, diag34):
        """Testa AlgebraMismatchError para álgebra diferente."""
        with pytest.raises(AlgebraMismatchError):
            structure_report(mixed_algebra, diag34, square)
