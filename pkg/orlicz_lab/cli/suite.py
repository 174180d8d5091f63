"""
Suíte de verificação (verify-suite).

Cada verificação executa uma propriedade de um módulo sobre casos
determinísticos (semente da RunConfig) e devolve um SuiteOutcome com o
número de casos, de falhas e o primeiro caso que falhou.
"""

import math
from typing import Callable, List, Optional, Tuple

import numpy as np
import pandas as pd
from loguru import logger

from orlicz_lab.config import RunConfig, get_settings
from orlicz_lab.core.algebra.trace_algebra import (
    AlgebraElement,
    BlockAlgebra,
    StepFunction,
    abs_,
    adjoint,
    apply_function,
    mu,
    multiply,
    random_block_orthogonal,
    random_element,
    random_positive,
    synthetic_projection,
    trace,
)
from orlicz_lab.core.compactness.diagnostics import (
    isometry_image_check,
    projection_norm_sandwich,
    rademacher_image_check,
    structure_report,
)
from orlicz_lab.core.errors import OrliczLabError
from orlicz_lab.core.functions.growth import GrowthProber
from orlicz_lab.core.functions.orlicz_function import OrliczFunction, builtin_functions
from orlicz_lab.core.multipliers.multipliers import (
    check_constants,
    condition_a,
    search_constants,
    submajorization_slack,
    verify_bound,
)
from orlicz_lab.core.norms.norms import holder_check, luxemburg_norm, modular, normalize, orlicz_norm
from orlicz_lab.core.rescaling.rescaling import (
    equivalent_measure_map,
    lemma_lm_check,
    rescale_down,
    rescale_up,
)
from orlicz_lab.models import AtomicMeasurePair, ConstantWitness, SuiteOutcome

POWER_FAMILY = (1.5, 2.0, 3.0, 4.0)
HOLDER_TRIPLES_OK = ((4.0, 4.0, 2.0), (2.0, 2.0, 1.0), (6.0, 3.0, 2.0))
HOLDER_TRIPLES_FAIL = ((2.0, 2.0, 2.0), (3.0, 3.0, 1.0))
SANDWICH_TAUS = (1.0, 1.5, 2.0, 2.5, 7.0)
NORM_AXIOM_RTOL = 1e-9


class Tally:
    """Contador de casos e falhas; guarda a descrição da primeira falha."""

    def __init__(self, name: str, module: str):
        self.name = name
        self.module = module
        self.cases = 0
        self.failures = 0
        self.first: Optional[str] = None

    def record(self, ok: bool, case: str) -> None:
        self.cases += 1
        if not ok:
            self.failures += 1
            if self.first is None:
                self.first = case

    def outcome(self) -> SuiteOutcome:
        return SuiteOutcome(
            name=self.name, module=self.module, cases=self.cases, failures=self.failures, detail=self.first
        )


class VerificationSuite:
    """Executa as propriedades de todos os módulos com uma RunConfig fixa."""

    def __init__(self, config: Optional[RunConfig] = None):
        self.config = config or get_settings()
        self.sizes = self.config.suite
        self.functions = builtin_functions(self.config)
        self.prober = GrowthProber(self.config)

    def _rng(self, offset: int) -> np.random.Generator:
        return np.random.default_rng(self.config.seed + offset)

    def _seed(self, offset: int) -> int:
        return self.config.seed * 1000 + offset

    def _power(self, p: float) -> OrliczFunction:
        return OrliczFunction.power(p, self.config)

    @property
    def checks(self) -> List[Tuple[str, Callable[[], SuiteOutcome]]]:
        return [
            ("young_inequality", self.young_inequality),
            ("young_equality", self.young_equality),
            ("biconjugation", self.biconjugation),
            ("validity", self.validity),
            ("formal_inverse", self.formal_inverse),
            ("conjugate_order_reversal", self.conjugate_order_reversal),
            ("growth_constants", self.growth_constants),
            ("power_fit", self.power_fit),
            ("rearrangement_calculus", self.rearrangement_calculus),
            ("trace_cyclicity", self.trace_cyclicity),
            ("mu_invariance", self.mu_invariance),
            ("kothe_holder", self.kothe_holder),
            ("norm_axioms", self.norm_axioms),
            ("unit_ball_modular", self.unit_ball_modular),
            ("rearrangement_invariance", self.rearrangement_invariance),
            ("monotonicity", self.monotonicity),
            ("existence_end_to_end", self.existence_end_to_end),
            ("holder_exponent_recovery", self.holder_exponent_recovery),
            ("submajorization", self.submajorization),
            ("search_soundness", self.search_soundness),
            ("monotone_slack", self.monotone_slack),
            ("corollary_a_witness", self.corollary_a_witness),
            ("lemma_rescaling", self.lemma_rescaling),
            ("rescale_up_down", self.rescale_up_down),
            ("equivalent_measure", self.equivalent_measure),
            ("rademacher_images", self.rademacher_images),
            ("isometry_chain", self.isometry_chain),
            ("projection_sandwich", self.projection_sandwich),
            ("central_structure", self.central_structure),
            ("orthogonal_invariance", self.orthogonal_invariance),
        ]

    def run(self, only: Optional[List[str]] = None) -> List[SuiteOutcome]:
        unknown = sorted(set(only or []) - {name for name, _ in self.checks})
        if unknown:
            raise OrliczLabError(f"unknown suite checks: {', '.join(unknown)}")
        outcomes = []
        for name, check in self.checks:
            if only and name not in only:
                continue
            logger.info(f"🧪 Executando {name}")
            outcome = check()
            level = "INFO" if outcome.passed else "WARNING"
            logger.log(level, f"{name}: {outcome.cases - outcome.failures}/{outcome.cases}")
            outcomes.append(outcome)
        return outcomes

    # orlicz_function
    def young_inequality(self) -> SuiteOutcome:
        tally = Tally("young_inequality", "orlicz_function")
        eps = self.config.tolerances.eps_young
        rng = self._rng(1)
        s = np.power(10.0, rng.uniform(-3, 3, self.sizes.young_pairs))
        t = np.power(10.0, rng.uniform(-3, 3, self.sizes.young_pairs))
        for label, phi in self.functions.items():
            with np.errstate(over="ignore", invalid="ignore"):
                phi_s = phi(s)
                conj_t = phi.conjugate()(t)
                finite = np.isfinite(phi_s) & np.isfinite(conj_t)
                gap = np.where(finite, phi_s + conj_t - s * t, np.inf)
            bad = np.flatnonzero(gap < -eps * (1.0 + s * t))
            case = f"{label} at (s, t) = ({s[bad[0]]:.6g}, {t[bad[0]]:.6g})" if bad.size else label
            tally.record(bad.size == 0, case)
        return tally.outcome()

    def young_equality(self) -> SuiteOutcome:
        tally = Tally("young_equality", "orlicz_function")
        rng = self._rng(2)
        for p in POWER_FAMILY:
            phi = self._power(p)
            for s in np.power(10.0, rng.uniform(-2, 1, self.sizes.subgradient_pairs)):
                t = p * s ** (p - 1.0)
                gap = phi.young_gap(float(s), float(t))
                tally.record(abs(gap) <= 1e-6 * (1.0 + s * t), f"t^{p:g} at s={s:.6g}")
        return tally.outcome()

    def biconjugation(self) -> SuiteOutcome:
        tally = Tally("biconjugation", "orlicz_function")
        grid = np.geomspace(0.1, 10.0, 25)
        for p in (2.0, 3.0):
            phi = self._power(p)
            twice = phi.conjugate(numeric=True).conjugate(numeric=True)
            rel = np.max(np.abs(twice(grid) - phi(grid)) / phi(grid))
            tally.record(rel <= 1e-6, f"t^{p:g}: relative error {rel:.3g}")
        knots = [(float(k), float(k * k)) for k in range(9)]
        poly = OrliczFunction.piecewise_linear(knots, final_slope=17.0, config=self.config)
        twice = poly.conjugate().conjugate()
        grid = np.linspace(0.5, 8.0, 16)
        rel = np.max(np.abs(twice(grid) - poly(grid)) / poly(grid))
        tally.record(rel <= 1e-3, f"piecewise t^2 (9 knots): relative error {rel:.3g}")
        return tally.outcome()

    def validity(self) -> SuiteOutcome:
        tally = Tally("validity", "orlicz_function")
        for label, phi in self.functions.items():
            report = phi.is_orlicz()
            tally.record(report.valid, f"{label}: {report.violation}")
        sqrt_knots = [(float(k), math.sqrt(k)) for k in range(6)]
        concave = OrliczFunction.piecewise_linear(sqrt_knots, final_slope=0.25, config=self.config)
        report = concave.is_orlicz()
        tally.record(not report.valid and report.violation == "convexity", "sqrt knots accepted")
        return tally.outcome()

    def formal_inverse(self) -> SuiteOutcome:
        tally = Tally("formal_inverse", "orlicz_function")
        grid = np.geomspace(1e-3, 1e3, 31)
        for label, phi in self.functions.items():
            for t in grid:
                back = phi.evaluate(phi.formal_inverse(float(t)))
                tally.record(abs(back - t) <= 1e-8 * (1.0 + t), f"{label} at t={t:.6g}")
        return tally.outcome()

    def conjugate_order_reversal(self) -> SuiteOutcome:
        tally = Tally("conjugate_order_reversal", "orlicz_function")
        grid = np.geomspace(1e-2, 1e2, 41)
        pairs = [
            ("t^2", self.functions["t^2"], self.functions["3·t^2"]),
            ("t^1.5", self.functions["t^1.5"], self.functions["t^1.5"].hscale(2.0)),
            ("e^t-1", self.functions["e^t-1"], self.functions["e^t-1"].hscale(1.5)),
            ("t·log(1+t)", self.functions["t·log(1+t)"], self.functions["t·log(1+t)"].hscale(1.5)),
        ]
        for label, lower, upper in pairs:
            with np.errstate(over="ignore", invalid="ignore"):
                ordered = np.all(lower(grid) <= upper(grid) * (1.0 + 1e-12))
                upper_star = upper.conjugate()(grid)
                lower_star = lower.conjugate()(grid)
            reversed_ = np.isinf(lower_star) | (upper_star <= lower_star * (1.0 + 1e-6) + 1e-12)
            bad = np.flatnonzero(~reversed_)
            case = f"{label} at t={grid[bad[0]]:.6g}" if bad.size else f"{label}: pair not ordered"
            tally.record(bool(ordered) and bad.size == 0, case)
        return tally.outcome()

    # growth
    def growth_constants(self) -> SuiteOutcome:
        tally = Tally("growth_constants", "orlicz_function")
        for p in (1.0,) + POWER_FAMILY:
            phi = self._power(p)
            d2 = self.prober.probe_delta2(phi)
            tally.record(d2.holds and abs(d2.constant - 2.0**p) <= 1e-6, f"t^{p:g} Delta2 K={d2.constant:.9g}")
            dp = self.prober.probe_delta_prime(phi)
            tally.record(dp.holds and abs(dp.constant - 1.0) <= 1e-6, f"t^{p:g} Delta' C={dp.constant:.9g}")
            nb = self.prober.probe_nabla_prime(phi)
            tally.record(nb.holds and abs(nb.constant - 1.0) <= 1e-6, f"t^{p:g} Nabla' b={nb.constant:.9g}")
        exp = self.prober.probe_delta2(self.functions["e^t-1"])
        tally.record(
            not exp.holds and (exp.witness_value or 0.0) > 1e6,
            f"e^t-1 Delta2 witness ratio {exp.witness_value}",
        )
        return tally.outcome()

    def power_fit(self) -> SuiteOutcome:
        tally = Tally("power_fit", "orlicz_function")
        for c in (0.5, 1.0, 3.0):
            for p in (1.0, 2.0, 2.5):
                phi = OrliczFunction.power_scaled(c, p, self.config)
                report = self.prober.power_fit(phi)
                a = c ** (1.0 / p)
                ok = (
                    report.verdict == "ok"
                    and abs(report.p - p) <= 0.01 * p
                    and abs(report.a1 - a) <= 0.02 * a
                    and abs(report.a2 - a) <= 0.02 * a
                )
                tally.record(ok, f"{c:g}·t^{p:g}: {report.verdict}, p={report.p}")
        return tally.outcome()

    # trace_algebra
    def rearrangement_calculus(self) -> SuiteOutcome:
        tally = Tally("rearrangement_calculus", "trace_algebra")
        algebra = BlockAlgebra.of((2, 1.0), (3, 0.5), (1, 2.0))
        labels = ("t^2", "t^1.5", "e^t-1", "t·log(1+t)")
        for i in range(self.sizes.random_elements):
            f = random_positive(algebra, self._seed(i))
            steps = mu(f)
            for label in labels:
                phi = self.functions[label]
                image = mu(apply_function(phi, f))
                expected = StepFunction.from_pairs([(ln, float(phi(v))) for ln, v in zip(steps.lengths, steps.values)])
                total = steps.integral(phi)
                tr = trace(apply_function(phi, f))
                ok = image.matches(expected) and abs(tr - total) <= 1e-10 * (1.0 + abs(total))
                tally.record(ok, f"{label}, seed {self._seed(i)}")
        return tally.outcome()

    def trace_cyclicity(self) -> SuiteOutcome:
        tally = Tally("trace_cyclicity", "trace_algebra")
        algebra = BlockAlgebra.of((2, 1.0), (3, 0.25))
        for i in range(self.sizes.random_pairs):
            x = random_element(algebra, self._seed(2 * i))
            y = random_element(algebra, self._seed(2 * i + 1))
            xy, yx = trace(x @ y), trace(y @ x)
            positive = trace(x.T @ x) >= 0
            tally.record(positive and abs(xy - yx) <= 1e-10 * (1.0 + abs(xy)), f"pair {i}")
        return tally.outcome()

    def mu_invariance(self) -> SuiteOutcome:
        tally = Tally("mu_invariance", "trace_algebra")
        algebra = BlockAlgebra.of((2, 1.0), (3, 0.5), (1, 2.0))
        tolerances = self.config.tolerances
        for i in range(self.sizes.random_elements):
            x = random_element(algebra, self._seed(5_000 + i))
            steps = mu(x, tolerances)
            ok = mu(adjoint(x), tolerances).matches(steps) and mu(abs_(x), tolerances).matches(steps)
            tally.record(ok, f"seed {self._seed(5_000 + i)}")
        return tally.outcome()

    # norms
    def kothe_holder(self) -> SuiteOutcome:
        tally = Tally("kothe_holder", "norms")
        algebra = BlockAlgebra.of((2, 1.0), (2, 0.5))
        labels = ("t^2", "t^3", "t·log(1+t)")
        for i in range(self.sizes.holder_pairs):
            f = random_element(algebra, self._seed(10_000 + 2 * i))
            g = random_element(algebra, self._seed(10_000 + 2 * i + 1))
            for label in labels:
                phi = self.functions[label]
                report = holder_check(f, g, phi, self.config)
                lux = luxemburg_norm(phi, g, self.config).value
                orl = orlicz_norm(phi, g, self.config).value
                tol = 1e-8 * (1.0 + lux)
                ok = report.holds and lux - tol <= orl <= 2.0 * lux + tol
                tally.record(ok, f"{label}, pair {i}")
        return tally.outcome()

    def _norm_pairs(self, offset: int) -> List[Tuple[AlgebraElement, AlgebraElement]]:
        algebra = BlockAlgebra.of((2, 1.0), (2, 0.5))
        count = self.sizes.random_pairs // 10 or 1
        return [
            (
                random_element(algebra, self._seed(offset + 2 * i)),
                random_element(algebra, self._seed(offset + 2 * i + 1)),
            )
            for i in range(count)
        ]

    def norm_axioms(self) -> SuiteOutcome:
        tally = Tally("norm_axioms", "norms")
        rng = self._rng(11)
        rtol = NORM_AXIOM_RTOL
        for i, (x, y) in enumerate(self._norm_pairs(11_000)):
            c = float(rng.uniform(-10.0, 10.0))
            for label, phi in self.functions.items():
                for kind, norm in (("luxemburg", luxemburg_norm), ("orlicz", orlicz_norm)):
                    nx = norm(phi, x, self.config).value
                    ny = norm(phi, y, self.config).value
                    triangle = norm(phi, x + y, self.config).value <= (nx + ny) * (1.0 + rtol)
                    scaled = norm(phi, x.scale(c), self.config).value
                    homogeneous = abs(scaled - abs(c) * nx) <= rtol * abs(c) * nx
                    tally.record(triangle and homogeneous, f"{label} {kind}, pair {i}, c={c:.6g}")
        return tally.outcome()

    def unit_ball_modular(self) -> SuiteOutcome:
        tally = Tally("unit_ball_modular", "norms")
        for i, (x, _) in enumerate(self._norm_pairs(12_000)):
            for label, phi in self.functions.items():
                norm = luxemburg_norm(phi, x, self.config).value
                inside = modular(phi, x.scale(1.0 / norm))
                outside = modular(phi, x.scale(1.0 / (norm * (1.0 - 1e-3))))
                tally.record(inside <= 1.0 + NORM_AXIOM_RTOL and outside > 1.0, f"{label}, element {i}: {inside:.12g}")
        return tally.outcome()

    def rearrangement_invariance(self) -> SuiteOutcome:
        tally = Tally("rearrangement_invariance", "norms")
        rtol = NORM_AXIOM_RTOL
        for i, (x, _) in enumerate(self._norm_pairs(13_000)):
            u = random_block_orthogonal(x.algebra, self._seed(13_500 + i))
            rotated = multiply(multiply(u, x), adjoint(u))
            steps = mu(x, self.config.tolerances)
            for label, phi in self.functions.items():
                for kind, norm in (("luxemburg", luxemburg_norm), ("orlicz", orlicz_norm)):
                    base = norm(phi, x, self.config).value
                    same = [norm(phi, rotated, self.config).value, norm(phi, steps, self.config).value]
                    ok = all(abs(v - base) <= rtol * base for v in same)
                    tally.record(ok, f"{label} {kind}, element {i}")
        return tally.outcome()

    def monotonicity(self) -> SuiteOutcome:
        tally = Tally("monotonicity", "norms")
        rng = self._rng(14)
        for i, (x, _) in enumerate(self._norm_pairs(14_000)):
            contraction = AlgebraElement.diagonal(x.algebra, [rng.uniform(0.0, 1.0, d) for d in x.algebra.dims])
            y = multiply(x, contraction)
            for label, phi in self.functions.items():
                for kind, norm in (("luxemburg", luxemburg_norm), ("orlicz", orlicz_norm)):
                    small = norm(phi, y, self.config).value
                    large = norm(phi, x, self.config).value
                    tally.record(small <= large * (1.0 + NORM_AXIOM_RTOL), f"{label} {kind}, element {i}")
        return tally.outcome()

    # multipliers
    def existence_end_to_end(self) -> SuiteOutcome:
        tally = Tally("existence_end_to_end", "multipliers")
        zeta, phi1, phi2 = self._power(4.0), self._power(4.0), self._power(2.0)
        report = check_constants(zeta, phi1, phi2, ConstantWitness(M=2.0, alpha=1.0, beta=1.0, gamma=1.0))
        tally.record(report.holds, f"(t^4, t^4, t^2) witness (2,1,1,1): violation {report.violation}")
        negative = check_constants(
            self._power(2.0), self._power(2.0), phi2, ConstantWitness(M=2.0, alpha=1.0, beta=1.0, gamma=1.0)
        )
        tally.record(not negative.holds, "(t^2, t^2, t^2) passed the scan")
        if not report.holds:
            return tally.outcome()

        algebra = BlockAlgebra.of((2, 1.0), (2, 0.5))
        conj = phi2.conjugate()
        for i in range(self.sizes.verify_triples):
            f = normalize(zeta, random_element(algebra, self._seed(20_000 + 3 * i)))
            g = normalize(phi1, random_element(algebra, self._seed(20_000 + 3 * i + 1)))
            h = normalize(conj, random_element(algebra, self._seed(20_000 + 3 * i + 2)))
            bound = verify_bound(zeta, phi1, phi2, report.witness, f, g, h, self.config)
            ok = bound.holds and bound.trace_fgh <= 18.0 and bound.orlicz_norm_fg <= 18.0
            tally.record(ok, f"triple {i}: trace {bound.trace_fgh:.6g}")
        return tally.outcome()

    def holder_exponent_recovery(self) -> SuiteOutcome:
        tally = Tally("holder_exponent_recovery", "multipliers")
        budget = self.config.multipliers.budget
        for a, b, c in HOLDER_TRIPLES_OK + HOLDER_TRIPLES_FAIL:
            result = search_constants(self._power(a), self._power(b), self._power(c), budget, self.config)
            expected = (a, b, c) in HOLDER_TRIPLES_OK
            tally.record((result.witness is not None) == expected, f"({a:g}, {b:g}, {c:g}): {result.reason}")
        return tally.outcome()

    def submajorization(self) -> SuiteOutcome:
        tally = Tally("submajorization", "multipliers")
        algebra = BlockAlgebra.of((3, 1.0), (2, 0.5))
        for i in range(self.sizes.random_pairs):
            x = random_element(algebra, self._seed(30_000 + 2 * i))
            y = random_element(algebra, self._seed(30_000 + 2 * i + 1))
            slack = submajorization_slack(x, y)
            tally.record(slack >= -1e-10, f"pair {i}: slack {slack:.3g}")
        return tally.outcome()

    def search_soundness(self) -> SuiteOutcome:
        tally = Tally("search_soundness", "multipliers")
        zeta, phi1, phi2 = self._power(4.0), self._power(4.0), self._power(2.0)
        result = search_constants(zeta, phi1, phi2, self.config.multipliers.budget, self.config)
        tally.record(result.witness is not None, f"(t^4, t^4, t^2): {result.reason}")
        if result.witness is None:
            return tally.outcome()
        algebra = BlockAlgebra.of((2, 1.0), (2, 0.5))
        conj = phi2.conjugate()
        for i in range(self.sizes.verify_triples):
            f = normalize(zeta, random_element(algebra, self._seed(25_000 + 3 * i)))
            g = normalize(phi1, random_element(algebra, self._seed(25_000 + 3 * i + 1)))
            h = normalize(conj, random_element(algebra, self._seed(25_000 + 3 * i + 2)))
            bound = verify_bound(zeta, phi1, phi2, result.witness, f, g, h, self.config)
            tally.record(bound.holds, f"triple {i}: slack {bound.slack:.6g}")
        return tally.outcome()

    def monotone_slack(self) -> SuiteOutcome:
        tally = Tally("monotone_slack", "multipliers")
        zeta, phi1, phi2 = self._power(4.0), self._power(4.0), self._power(2.0)
        base = ConstantWitness(M=2.0, alpha=1.0, beta=1.0, gamma=1.0)
        report = check_constants(zeta, phi1, phi2, base, config=self.config)
        tally.record(report.holds, "base witness (2, 1, 1, 1)")
        for field in ("M", "alpha", "beta", "gamma"):
            for factor in (2.0, 8.0):
                larger = base.model_copy(update={field: getattr(base, field) * factor})
                enlarged = check_constants(zeta, phi1, phi2, larger, config=self.config)
                tally.record(enlarged.holds, f"{field} x{factor:g}: violation {enlarged.violation}")
        return tally.outcome()

    def corollary_a_witness(self) -> SuiteOutcome:
        tally = Tally("corollary_a_witness", "multipliers")
        for psi_label, phi2_label in (("t^2", "t^2"), ("t^1.5", "t^2"), ("t^2", "t^3"), ("t^3", "t^1.5")):
            _, _, report = condition_a(self.functions[psi_label], self.functions[phi2_label])
            ok = report.applicable and report.check is not None and report.check.holds
            tally.record(ok, f"psi={psi_label}, phi2={phi2_label}: {report.reason}")
        return tally.outcome()

    # rescaling
    def lemma_rescaling(self) -> SuiteOutcome:
        tally = Tally("lemma_rescaling", "rescaling")
        algebra = BlockAlgebra.of((2, 1.0), (1, 0.5))
        pairs = (("t^2", "t^2"), ("t^1.5", "t^2"), ("t^2", "t·log(1+t)"))
        for i in range(self.sizes.random_elements // 10 or 1):
            a = random_element(algebra, self._seed(40_000 + i))
            for outer, inner in pairs:
                psi, phi = self.functions[outer], self.functions[inner]
                zeta = psi.compose(phi)
                scaled = a.scale(0.9 / luxemburg_norm(zeta, a, self.config).value)
                report = lemma_lm_check(psi, phi, scaled, self.config)
                tally.record(report.applicable and report.holds, f"{outer} o {inner}, element {i}")
        return tally.outcome()

    def rescale_up_down(self) -> SuiteOutcome:
        tally = Tally("rescale_up_down", "rescaling")
        algebra = BlockAlgebra.of((2, 1.0), (2, 0.5))
        psi, phi2 = self._power(2.0), self._power(2.0)
        for i in range(self.sizes.random_elements // 10 or 1):
            g = random_positive(algebra, self._seed(50_000 + i), high=3.0)
            image, up = rescale_up(psi, phi2, g, self.config)
            back, down = rescale_down(phi2, image, psi, self.config)
            ok = up.holds and down.holds and back is not None and back.distance(g) <= 1e-9
            tally.record(ok, f"element {i}: up {up.holds}, down {down.holds}")
        return tally.outcome()

    def equivalent_measure(self) -> SuiteOutcome:
        tally = Tally("equivalent_measure", "rescaling")
        rng = self._rng(60)
        for i in range(self.sizes.measure_pairs):
            atoms = int(rng.integers(2, 7))
            pair = AtomicMeasurePair(
                nu1=rng.uniform(0.1, 2.0, atoms).tolist(), nu2=rng.uniform(0.1, 2.0, atoms).tolist()
            )
            f = rng.normal(size=atoms)
            for p in (1.0,) + POWER_FAMILY:
                _, report = equivalent_measure_map(self._power(p), pair, f, self.config)
                tally.record(abs(report.ratio - 1.0) <= 1e-9 and report.holds, f"t^{p:g}, pair {i}")
            if i < 5:
                for label, phi in self.functions.items():
                    _, report = equivalent_measure_map(phi, pair, f, self.config)
                    tally.record(report.holds, f"{label} bounds, pair {i}")
        return tally.outcome()

    # compactness_diagnostics
    def rademacher_images(self) -> SuiteOutcome:
        tally = Tally("rademacher_images", "compactness_diagnostics")
        algebra = BlockAlgebra.commutative([1.0 / 16] * 16)
        rng = self._rng(70)
        for label in ("t^2", "t^3", "t·log(1+t)"):
            g = AlgebraElement.from_vector(algebra, rng.normal(size=16))
            report = rademacher_image_check(g, self.functions[label], self.config)
            tally.record(report.holds, f"{label}: mu_equal {report.mu_equal}")
        return tally.outcome()

    def isometry_chain(self) -> SuiteOutcome:
        tally = Tally("isometry_chain", "compactness_diagnostics")
        algebra = BlockAlgebra.of((5, 1.0), (2, 0.5))
        phi = self.functions["t^2"]
        for i in range(self.sizes.isometry_seeds):
            g = random_positive(algebra, self._seed(80_000 + i))
            report = isometry_image_check(g, 0.1, phi, self.config)
            tally.record(report.holds, f"seed {self._seed(80_000 + i)}")
        return tally.outcome()

    def projection_sandwich(self) -> SuiteOutcome:
        tally = Tally("projection_sandwich", "compactness_diagnostics")
        for label in ("t^1", "t^2", "t·log(1+t)"):
            for tau in SANDWICH_TAUS:
                _, e = synthetic_projection(tau)
                report = projection_norm_sandwich(self.functions[label], e, self.config)
                tally.record(report.holds, f"{label}, tau={tau:g}")
        return tally.outcome()

    def central_structure(self) -> SuiteOutcome:
        tally = Tally("central_structure", "compactness_diagnostics")
        algebra = BlockAlgebra.of((2, 1.0), (3, 0.5), (1, 2.0))
        phi = self.functions["t^2"]
        rng = self._rng(90)
        for i in range(self.sizes.structure_samples):
            x = random_element(algebra, self._seed(90_000 + i))
            keep = rng.random(len(algebra)) < 0.6
            mats = [m if k else np.zeros_like(m) for m, k in zip(x.mats, keep)]
            g = AlgebraElement(algebra, mats)
            report = structure_report(algebra, g, phi, self.config)
            tally.record(report.holds, f"sample {i}: error {report.reconstruction_error:.3g}")
        return tally.outcome()

    def orthogonal_invariance(self) -> SuiteOutcome:
        tally = Tally("orthogonal_invariance", "compactness_diagnostics")
        algebra = BlockAlgebra.of((3, 1.0), (2, 0.5), (1, 0.25))
        tolerances = self.config.tolerances
        for i in range(self.sizes.random_elements):
            g = random_element(algebra, self._seed(85_000 + i))
            u = random_block_orthogonal(algebra, self._seed(86_000 + i))
            base = mu(g, tolerances)
            ok = mu(multiply(g, u), tolerances).matches(base) and mu(multiply(u, g), tolerances).matches(base)
            tally.record(ok, f"seed {self._seed(85_000 + i)}")
        return tally.outcome()


def summary_frame(outcomes: List[SuiteOutcome]) -> pd.DataFrame:
    """Tabela módulo/propriedade/casos/falhas."""
    return pd.DataFrame(
        [
            {"module": o.module, "check": o.name, "cases": o.cases, "failures": o.failures, "passed": o.passed}
            for o in outcomes
        ]
    )
