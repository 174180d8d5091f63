"""
Testes para modulares e normas.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orlicz_lab.config import RunConfig
from orlicz_lab.core.algebra.trace_algebra import (
    AlgebraElement,
    BlockAlgebra,
    StepFunction,
    adjoint,
    apply_function,
    mu,
    multiply,
    random_block_orthogonal,
    random_element,
)
from orlicz_lab.core.errors import DomainError
from orlicz_lab.core.functions.orlicz_function import OrliczFunction, builtin_functions
from orlicz_lab.core.norms.norms import (
    holder_check,
    kothe_pairing,
    luxemburg_norm,
    modular,
    normalize,
    orlicz_norm,
    step_modular,
)

FUNCTIONS = builtin_functions(RunConfig())
NORMS = {"luxemburg": luxemburg_norm, "orlicz": orlicz_norm}
PAIR_ALGEBRA = BlockAlgebra.of((2, 1.0), (3, 0.5))

seeds = st.integers(min_value=0, max_value=10_000)
labels = st.sampled_from(sorted(FUNCTIONS))
kinds = st.sampled_from(sorted(NORMS))


@pytest.mark.unit
class TestModular:
    """Testes para τ(φ(|x|))."""

    def test_square_modular(self, square, diag34):
        """Testa τ(|x|²) = 9 + 16."""
        assert modular(square, diag34) == pytest.approx(25.0)

    def test_weighted_steps(self, square):
        """Testa Σ comprimento·φ(valor)."""
        steps = StepFunction((0.5, 2.0), (2.0, 1.0))
        assert step_modular(square, steps) == pytest.approx(0.5 * 4.0 + 2.0)

    def test_beyond_cutoff_is_infinite(self, functions, diag34):
        """Testa modular infinito fora do domínio de finitude."""
        assert modular(functions["t^1"].conjugate(), diag34) == math.inf

    def test_nonsymmetric_element(self, square):
        """Testa que o modular usa |x| para elemento não simétrico."""
        algebra = BlockAlgebra.of((2, 1.0))
        x = AlgebraElement(algebra, [[[0.0, 2.0], [0.0, 0.0]]])
        assert modular(square, x) == pytest.approx(4.0)


@pytest.mark.unit
class TestLuxemburg:
    """Testes para a norma de Luxemburg."""

    def test_closed_form_square(self, square, diag34):
        """Testa ‖diag(3,4)‖ = 5 para t²."""
        result = luxemburg_norm(square, diag34)
        assert result.value == pytest.approx(5.0)
        assert result.method == "closed_form"

    def test_zero_element(self, square, mixed_algebra):
        """Testa norma nula do elemento zero."""
        assert luxemburg_norm(square, AlgebraElement.zero(mixed_algebra)).value == 0.0

    def test_cutoff_norm(self, functions, diag34):
        """Testa ‖x‖ = μ_0(x)·b para o corte em b = 1."""
        assert luxemburg_norm(functions["t^1"].conjugate(), diag34).value == pytest.approx(4.0)

    def test_bisection_unit_modular(self, functions, diag34):
        """Testa τ(φ(|x|/λ)) ≈ 1 na bissecção."""
        phi = functions["t·log(1+t)"]
        result = luxemburg_norm(phi, diag34)
        assert result.method == "bisection"
        assert result.iterations > 0
        assert modular(phi, diag34.scale(1.0 / result.value)) == pytest.approx(1.0, rel=1e-6)

    def test_homogeneity(self, functions, mixed_algebra):
        """Testa ‖cx‖ = |c|·‖x‖."""
        phi = functions["e^t-1"]
        x = random_element(mixed_algebra, 4)
        base = luxemburg_norm(phi, x).value
        assert luxemburg_norm(phi, x.scale(-3.0)).value == pytest.approx(3.0 * base, rel=1e-7)

    def test_normalize(self, functions, mixed_algebra):
        """Testa que normalize leva à esfera unitária."""
        phi = functions["t·log(1+t)"]
        unit = normalize(phi, random_element(mixed_algebra, 9))
        assert luxemburg_norm(phi, unit).value == pytest.approx(1.0, rel=1e-7)


@pytest.mark.unit
class TestOrliczNorm:
    """Testes para a norma de Orlicz (Amemiya)."""

    def test_closed_form_square(self, square, diag34):
        """Testa ‖x‖⁰ = 2·‖x‖₂ para t²."""
        assert orlicz_norm(square, diag34).value == pytest.approx(10.0)

    def test_linear_is_trace_norm(self, functions, diag34):
        """Testa ‖x‖⁰ = τ(|x|) para φ = t."""
        assert orlicz_norm(functions["t^1"], diag34).value == pytest.approx(7.0)

    @pytest.mark.parametrize("label", ["e^t-1", "t·log(1+t)", "t^1.5"])
    def test_equivalence(self, functions, mixed_algebra, label):
        """Testa ‖x‖ <= ‖x‖⁰ <= 2‖x‖."""
        phi = functions[label]
        x = random_element(mixed_algebra, 21)
        lux = luxemburg_norm(phi, x).value
        orl = orlicz_norm(phi, x).value
        assert lux * (1 - 1e-7) <= orl <= 2 * lux * (1 + 1e-7)


@pytest.mark.integration
class TestHolder:
    """Testes para o pareamento de Köthe."""

    def test_pairing_diagonal(self, diag34):
        """Testa τ(|fg|) para diagonais."""
        assert kothe_pairing(diag34, diag34) == pytest.approx(25.0)

    @pytest.mark.parametrize("label", ["t^2", "t^3", "t·log(1+t)"])
    def test_holder_holds(self, functions, mixed_algebra, label):
        """Testa τ(|fg|) <= ‖f‖⁰_{φ*}·‖g‖_φ."""
        report = holder_check(
            random_element(mixed_algebra, 1), random_element(mixed_algebra, 2), functions[label]
        )
        assert report.holds
        assert report.pairing <= report.bound * (1 + 1e-9) + 1e-12

    def test_power_conjugate_norms(self, config):
        """Testa o fator conhecido para p = 2: (t²)* = t²/4."""
        phi = OrliczFunction.power(2.0, config)
        algebra = BlockAlgebra.of((1, 1.0))
        one = AlgebraElement.identity(algebra)
        report = holder_check(one, one, phi)
        assert report.luxemburg_norm_g == pytest.approx(1.0)
        assert report.orlicz_norm_f == pytest.approx(1.0)


@pytest.mark.unit
class TestScaleInvariance:
    """Testes para homogeneidade longe da escala unitária."""

    @pytest.mark.parametrize("scale", [1e-13, 1e13])
    @pytest.mark.parametrize("label", ["t^2", "e^t-1", "t·log(1+t)"])
    def test_homogeneity_at_extreme_scales(self, functions, diag34, scale, label):
        """Testa ‖c·x‖ = c·‖x‖ para c = 1e-13 e 1e13."""
        phi = functions[label]
        base = luxemburg_norm(phi, diag34).value
        assert luxemburg_norm(phi, diag34.scale(scale)).value == pytest.approx(scale * base, rel=1e-9)
        orlicz = orlicz_norm(phi, diag34).value
        assert orlicz_norm(phi, diag34.scale(scale)).value == pytest.approx(scale * orlicz, rel=1e-9)

    def test_tiny_element_is_not_zero(self, square, diag34):
        """Testa que 1e-13·diag(3,4) mantém os dois valores singulares."""
        steps = mu(diag34.scale(1e-13))
        assert steps.values == pytest.approx((4e-13, 3e-13), rel=1e-12)
        assert luxemburg_norm(square, diag34.scale(1e-13)).value == pytest.approx(5e-13, rel=1e-12)

    def test_bisection_width_is_relative(self, functions, diag34):
        """Testa que a bissecção refina o colchete também em escala minúscula."""
        result = luxemburg_norm(functions["t·log(1+t)"], diag34.scale(1e-13))
        lo, hi = result.bracket
        assert result.iterations > 0
        assert hi - lo <= 1e-10 * hi

    def test_tolerances_reach_mu(self, diag34):
        """Testa que Tolerances.zero configura o corte relativo de μ."""
        algebra = BlockAlgebra.of((2, 1.0))
        x = AlgebraElement.diagonal(algebra, [[1.0, 1e-6]])
        assert len(mu(x).values) == 2
        loose = RunConfig.model_validate({"tolerances": {"zero": 1e-5}}).tolerances
        assert mu(x, loose).values == (1.0,)


@pytest.mark.unit
class TestFinitenessBoundary:
    """Testes para elementos encostados em b_φ."""

    @pytest.fixture
    def capped(self, config):
        """φ(t) = t em [0, 1], +∞ depois."""
        return OrliczFunction.piecewise_linear([(0.0, 0.0), (1.0, 1.0)], finite_cutoff=1.0, config=config)

    def test_rotated_projections(self, capped):
        """Testa τ(φ(vvᵀ)) = 1 para 200 projeções de posto 1 rotacionadas."""
        algebra = BlockAlgebra.of((3, 1.0))
        rng = np.random.default_rng(11)
        for _ in range(200):
            v = rng.standard_normal(3)
            v /= np.linalg.norm(v)
            e = AlgebraElement(algebra, [np.outer(v, v)])
            value = modular(capped, e)
            assert math.isfinite(value)
            assert value == pytest.approx(1.0, rel=1e-9)

    def test_clearly_outside_is_infinite(self, capped):
        """Testa que autovalor 1 + 1e-6 continua fora do domínio."""
        algebra = BlockAlgebra.of((2, 1.0))
        x = AlgebraElement.diagonal(algebra, [[1.0 + 1e-6, 0.5]])
        assert modular(capped, x) == math.inf
        with pytest.raises(DomainError):
            apply_function(capped, x)


@pytest.mark.property
class TestNormProperties:
    """Propriedades das normas de Luxemburg e de Orlicz para as funções embutidas."""

    @given(seeds, labels, kinds)
    @settings(max_examples=40, deadline=None)
    def test_triangle_inequality(self, seed, label, kind):
        """Propriedade: ‖x + y‖ <= ‖x‖ + ‖y‖."""
        norm, phi = NORMS[kind], FUNCTIONS[label]
        x = random_element(PAIR_ALGEBRA, seed)
        y = random_element(PAIR_ALGEBRA, seed + 1, scale=2.0)
        assert norm(phi, x + y).value <= (norm(phi, x).value + norm(phi, y).value) * (1.0 + 1e-9)

    @given(seeds, labels, kinds, st.floats(min_value=1e-3, max_value=1e3), st.booleans())
    @settings(max_examples=40, deadline=None)
    def test_homogeneity(self, seed, label, kind, c, negative):
        """Propriedade: ‖cx‖ = |c|·‖x‖."""
        norm, phi = NORMS[kind], FUNCTIONS[label]
        x = random_element(PAIR_ALGEBRA, seed)
        factor = -c if negative else c
        assert norm(phi, x.scale(factor)).value == pytest.approx(c * norm(phi, x).value, rel=1e-9)

    @given(seeds, labels)
    @settings(max_examples=40, deadline=None)
    def test_unit_ball_modular(self, seed, label):
        """Propriedade: τ(φ(|x|/‖x‖_φ)) <= 1."""
        phi = FUNCTIONS[label]
        x = random_element(PAIR_ALGEBRA, seed)
        norm = luxemburg_norm(phi, x).value
        assert modular(phi, x.scale(1.0 / norm)) <= 1.0 + 1e-9

    @given(seeds, labels, kinds)
    @settings(max_examples=40, deadline=None)
    def test_rearrangement_invariance(self, seed, label, kind):
        """Propriedade: ‖u x uᵀ‖ = ‖x‖ = ‖μ(x)‖ para u ortogonal por blocos."""
        norm, phi = NORMS[kind], FUNCTIONS[label]
        x = random_element(PAIR_ALGEBRA, seed)
        u = random_block_orthogonal(PAIR_ALGEBRA, seed + 1)
        base = norm(phi, x).value
        assert norm(phi, multiply(multiply(u, x), adjoint(u))).value == pytest.approx(base, rel=1e-9)
        assert norm(phi, mu(x)).value == pytest.approx(base, rel=1e-9)

    @given(seeds, labels, kinds)
    @settings(max_examples=40, deadline=None)
    def test_monotonicity(self, seed, label, kind):
        """Propriedade: μ(y) <= μ(x) implica ‖y‖ <= ‖x‖ (y = x·d, d contração diagonal)."""
        norm, phi = NORMS[kind], FUNCTIONS[label]
        x = random_element(PAIR_ALGEBRA, seed)
        rng = np.random.default_rng(seed)
        d = AlgebraElement.diagonal(PAIR_ALGEBRA, [rng.uniform(0.0, 1.0, n) for n in PAIR_ALGEBRA.dims])
        y = multiply(x, d)
        assert mu(x).dominates(mu(y))
        assert norm(phi, y).value <= norm(phi, x).value * (1.0 + 1e-9)
