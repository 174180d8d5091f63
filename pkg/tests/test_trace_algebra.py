"""
Testes para álgebras de blocos, rearranjos e construtores.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orlicz_lab.core.algebra.trace_algebra import (
    AlgebraElement,
    BlockAlgebra,
    StepFunction,
    abs_,
    apply_function,
    central_carrier,
    jacobi_eigen,
    mu,
    mu_at,
    multiply,
    partial_isometry_chain,
    rademacher_family,
    random_element,
    random_positive,
    singular_values,
    synthetic_projection,
    trace,
)
from orlicz_lab.core.errors import AlgebraMismatchError, DomainError


@pytest.mark.unit
class TestBlockAlgebra:
    """Testes para BlockAlgebra e AlgebraElement."""

    def test_total_trace(self, mixed_algebra):
        """Testa τ(1) = Σ dim·peso."""
        assert mixed_algebra.total_trace == pytest.approx(2.0 + 1.5 + 2.0)
        assert not mixed_algebra.is_commutative
        assert len(mixed_algebra) == 3

    def test_invalid_block(self):
        """Testa rejeição de peso não positivo."""
        with pytest.raises(ValueError):
            BlockAlgebra.of((2, 0.0))

    def test_wrong_shape(self, mixed_algebra):
        """Testa AlgebraMismatchError para bloco com formato errado."""
        with pytest.raises(AlgebraMismatchError):
            AlgebraElement(mixed_algebra, [np.eye(2), np.eye(2), np.eye(1)])

    def test_wrong_block_count(self, mixed_algebra):
        """Testa AlgebraMismatchError para número de blocos errado."""
        with pytest.raises(AlgebraMismatchError):
            AlgebraElement(mixed_algebra, [np.eye(2)])

    def test_ragged_matrix(self):
        """Testa matriz irregular."""
        algebra = BlockAlgebra.of((2, 1.0))
        with pytest.raises(AlgebraMismatchError):
            AlgebraElement(algebra, [[[1.0, 2.0], [3.0]]])

    def test_non_finite_entries(self):
        """Testa entradas não finitas."""
        algebra = BlockAlgebra.of((1, 1.0))
        with pytest.raises(DomainError):
            AlgebraElement(algebra, [[[math.inf]]])

    def test_mixed_algebras(self, mixed_algebra, diag34):
        """Testa multiplicação entre álgebras diferentes."""
        with pytest.raises(AlgebraMismatchError):
            multiply(diag34, AlgebraElement.identity(mixed_algebra))

    def test_weighted_trace(self, mixed_algebra):
        """Testa τ(1) pelo elemento identidade."""
        assert trace(AlgebraElement.identity(mixed_algebra)) == pytest.approx(mixed_algebra.total_trace)

    def test_from_vector_requires_commutative(self, mixed_algebra):
        """Testa from_vector numa álgebra não comutativa."""
        with pytest.raises(AlgebraMismatchError):
            AlgebraElement.from_vector(mixed_algebra, [1.0, 2.0, 3.0])


@pytest.mark.unit
class TestJacobi:
    """Testes para a diagonalização de Jacobi."""

    def test_two_by_two(self):
        """Testa autovalores 3 e 1 de [[2,1],[1,2]]."""
        values, basis = jacobi_eigen([[2.0, 1.0], [1.0, 2.0]])
        np.testing.assert_allclose(values, [3.0, 1.0], atol=1e-12)
        np.testing.assert_allclose(basis.T @ basis, np.eye(2), atol=1e-12)

    def test_reconstruction(self, rng):
        """Testa V diag(λ) Vᵀ = A numa matriz aleatória."""
        a = rng.standard_normal((5, 5))
        sym = a + a.T
        values, basis = jacobi_eigen(sym)
        np.testing.assert_allclose((basis * values) @ basis.T, sym, atol=1e-10)
        assert np.all(np.diff(values) <= 0)

    def test_asymmetric(self):
        """Testa DomainError para matriz não simétrica."""
        with pytest.raises(DomainError):
            jacobi_eigen([[1.0, 2.0], [0.0, 1.0]])

    def test_non_square(self):
        """Testa DomainError para matriz não quadrada."""
        with pytest.raises(DomainError):
            jacobi_eigen(np.ones((2, 3)))


@pytest.mark.unit
class TestRearrangement:
    """Testes para μ(x) e StepFunction."""

    def test_diag34(self, diag34):
        """Testa μ(diag(3, 4)) = 4 em [0,1), 3 em [1,2)."""
        steps = mu(diag34)
        assert steps.values == (4.0, 3.0)
        assert steps.lengths == (1.0, 1.0)
        assert mu_at(diag34, 0.0) == 4.0
        assert mu_at(diag34, 1.0) == 3.0
        assert mu_at(diag34, 2.0) == 0.0

    def test_weights_as_lengths(self):
        """Testa comprimentos dados pelos pesos."""
        algebra = BlockAlgebra.commutative([0.5, 2.0])
        steps = mu(AlgebraElement.from_vector(algebra, [-1.0, 3.0]))
        assert steps.values == (3.0, 1.0)
        assert steps.lengths == (2.0, 0.5)

    def test_merge_equal_values(self):
        """Testa fusão de valores iguais."""
        steps = StepFunction.from_pairs([(1.0, 2.0), (0.5, 2.0), (1.0, 0.0)])
        assert steps.values == (2.0,)
        assert steps.lengths == (1.5,)

    def test_negative_time(self, diag34):
        """Testa DomainError para t < 0."""
        with pytest.raises(DomainError):
            mu(diag34).at(-0.1)

    def test_singular_values_nonsymmetric(self):
        """Testa valores singulares de um bloco de Jordan."""
        sv = singular_values(np.array([[0.0, 1.0], [0.0, 0.0]]))
        np.testing.assert_allclose(np.sort(sv), [0.0, 1.0], atol=1e-12)

    def test_frame(self, diag34):
        """Testa exportação para DataFrame."""
        frame = mu(diag34).to_frame()
        assert list(frame.columns) == ["t_start", "t_end", "value"]
        assert frame["t_end"].tolist() == [1.0, 2.0]

    def test_abs_is_positive(self, mixed_algebra):
        """Testa que |x| tem o mesmo rearranjo de x."""
        x = random_element(mixed_algebra, 3)
        assert mu(abs_(x)).matches(mu(x))

    @pytest.mark.parametrize("scale", [1e-13, 1.0, 1e13])
    def test_cutoffs_are_relative(self, scale):
        """Testa fusão e descarte relativos: μ(c·x) = c·μ(x)."""
        pairs = [(1.0, 3.0 * scale), (0.5, 2.0 * scale), (0.25, 2.0 * scale * (1.0 + 1e-14)), (1.0, 1e-14 * scale)]
        steps = StepFunction.from_pairs(pairs)
        assert steps.values == pytest.approx((3.0 * scale, 2.0 * scale), rel=1e-12)
        assert steps.lengths == pytest.approx((1.0, 0.75))

    def test_rank_one_has_single_step(self):
        """Testa que um bloco não simétrico de posto 1 gera um único degrau."""
        algebra = BlockAlgebra.of((3, 1.0))
        rng = np.random.default_rng(5)
        for _ in range(20):
            a, b = rng.standard_normal(3), rng.standard_normal(3)
            steps = mu(AlgebraElement(algebra, [np.outer(a, b)]))
            assert len(steps.values) == 1
            assert steps.values[0] == pytest.approx(np.linalg.norm(a) * np.linalg.norm(b), rel=1e-10)

    def test_power_and_dominates(self):
        """Testa μ^p e a comparação degrau a degrau."""
        steps = StepFunction((1.0, 0.5), (4.0, 1.0))
        assert steps.power(0.5) == StepFunction((1.0, 0.5), (2.0, 1.0))
        other = StepFunction((0.5, 1.0), (2.0, 0.5))
        assert steps.dominates(other, 2.0)
        assert not steps.dominates(other, 2.5)
        assert not other.dominates(steps)
        with pytest.raises(DomainError):
            steps.power(0.0)

    def test_is_zero_reference(self, diag34):
        """Testa is_zero relativo à escala de referência."""
        tiny = diag34.scale(1e-13)
        assert tiny.is_zero()
        assert not tiny.is_zero(reference=1e-13)


@pytest.mark.unit
class TestFunctionalCalculus:
    """Testes para apply_function."""

    def test_spectral_mapping(self, mixed_algebra, square):
        """Testa μ(φ(f)) = φ(μ(f)) e o traço."""
        f = random_positive(mixed_algebra, 11)
        steps = mu(f)
        image = apply_function(square, f)
        expected = StepFunction.from_pairs([(ln, v * v) for ln, v in zip(steps.lengths, steps.values)])
        assert mu(image).matches(expected)
        assert trace(image) == pytest.approx(steps.integral(square), rel=1e-10)

    def test_requires_positive(self, square):
        """Testa DomainError para elemento com autovalor negativo."""
        algebra = BlockAlgebra.of((2, 1.0))
        with pytest.raises(DomainError):
            apply_function(square, AlgebraElement.diagonal(algebra, [[1.0, -1.0]]))

    def test_beyond_threshold(self, functions):
        """Testa DomainError além de b_φ."""
        algebra = BlockAlgebra.of((1, 1.0))
        cutoff = functions["t^1"].conjugate()
        with pytest.raises(DomainError):
            apply_function(cutoff, AlgebraElement.diagonal(algebra, [[2.0]]))


@pytest.mark.unit
class TestBuilders:
    """Testes para Rademacher, isometrias parciais e projeções."""

    def test_rademacher_orthonormal(self):
        """Testa τ(r_m r_n) = δ_mn e r_n² = 1."""
        algebra = BlockAlgebra.commutative([1.0 / 8] * 8)
        family = rademacher_family(algebra, 3)
        assert len(family) == 3
        for m, rm in enumerate(family):
            for n, rn in enumerate(family):
                assert trace(multiply(rm, rn)) == pytest.approx(1.0 if m == n else 0.0, abs=1e-12)

    def test_rademacher_wrong_atoms(self):
        """Testa DomainError quando o número de átomos não é 2^k."""
        with pytest.raises(DomainError):
            rademacher_family(BlockAlgebra.commutative([0.25] * 4), 3)

    def test_partial_isometries(self):
        """Testa v vᵀ = e₁ e vᵀv ortogonais."""
        algebra = BlockAlgebra.of((3, 1.0))
        e1 = AlgebraElement.diagonal(algebra, [[1.0, 0.0, 0.0]])
        chain = partial_isometry_chain(algebra, e1, 3)
        for v in chain:
            assert (v @ v.T).distance(e1) <= 1e-12
        for i, vi in enumerate(chain):
            for j, vj in enumerate(chain):
                if i != j:
                    assert (multiply(vi.T @ vi, vj.T @ vj)).is_zero()

    def test_chain_too_long(self):
        """Testa cadeia maior que a dimensão do bloco."""
        algebra = BlockAlgebra.of((2, 1.0))
        e1 = AlgebraElement.diagonal(algebra, [[1.0, 0.0]])
        with pytest.raises(DomainError):
            partial_isometry_chain(algebra, e1, 3)

    def test_central_carrier(self, mixed_algebra):
        """Testa a máscara do suporte central."""
        x = AlgebraElement(mixed_algebra, [np.eye(2), np.zeros((3, 3)), [[2.0]]])
        assert central_carrier(mixed_algebra, x) == [True, False, True]

    @pytest.mark.parametrize("tau", [1.0, 1.5, 2.0, 2.5, 7.0])
    def test_synthetic_projection(self, tau):
        """Testa τ(e) = tau e e² = e."""
        _, e = synthetic_projection(tau)
        assert trace(e) == pytest.approx(tau)
        assert (e @ e).distance(e) <= 1e-12

    def test_seeded_determinism(self, mixed_algebra):
        """Testa que a mesma semente gera o mesmo elemento."""
        assert random_element(mixed_algebra, 5).distance(random_element(mixed_algebra, 5)) == 0.0


@pytest.mark.property
class TestTraceProperties:
    """Propriedades do traço."""

    @given(st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=50, deadline=None)
    def test_cyclicity(self, seed):
        """Propriedade: τ(xy) = τ(yx)."""
        algebra = BlockAlgebra.of((2, 1.0), (3, 0.25))
        x = random_element(algebra, seed)
        y = random_element(algebra, seed + 1)
        xy, yx = trace(x @ y), trace(y @ x)
        assert xy == pytest.approx(yx, rel=1e-10, abs=1e-12)

    @given(st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=50, deadline=None)
    def test_positivity(self, seed):
        """Propriedade: τ(xᵀx) >= 0."""
        algebra = BlockAlgebra.of((2, 1.0), (3, 0.25))
        x = random_element(algebra, seed)
        assert trace(x.T @ x) >= 0.0
