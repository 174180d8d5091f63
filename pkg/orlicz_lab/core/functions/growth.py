"""
Sondas de crescimento e limites de funções de Orlicz.

Sondas são evidência, não prova: "holds" significa que a desigualdade vale
em todos os pontos da grade com a constante reportada.
"""

import math
from typing import Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from orlicz_lab.config import RunConfig, get_settings
from orlicz_lab.core.errors import DomainError
from orlicz_lab.core.functions.orlicz_function import OrliczFunction
from orlicz_lab.models import GrowthReport, LemmaNfnReport, NFunctionLimits, PowerFitReport

INF = math.inf


def divergent_run(values: Sequence[float], growth: float) -> Optional[int]:
    """
    Índice inicial da corrida final não decrescente quando ela cresce mais que `growth`.

    Um valor infinito conta como divergência imediata; NaN (pontos pulados)
    é descartado e zeros no início da corrida são ignorados.
    """
    values = [v for v in values if not math.isnan(v)]
    if not values:
        return None
    for i, v in enumerate(values):
        if math.isinf(v):
            return i
    start = len(values) - 1
    while start > 0 and values[start - 1] <= values[start]:
        start -= 1
    while start < len(values) - 1 and values[start] <= 0:
        start += 1
    first, last = values[start], values[-1]
    if first <= 0:
        return None
    return start if last / first > growth else None


class GrowthProber:
    """Sondas Δ₂, Δ', ∇', ajuste de potência e limites de φ(t)/t."""

    def __init__(self, config: Optional[RunConfig] = None):
        self.config = config or get_settings()

    # Limites
    def n_function_limits(self, phi: OrliczFunction) -> NFunctionLimits:
        """
        Estima lim φ(t)/t em 0 e em ∞ ao longo de t = 2^(±k), k = 0..K.

        Returns:
            NFunctionLimits com as classes zero/finite/infinite e o veredito de N-função
        """
        steps = self.config.probes.limit_steps
        ks = np.arange(steps + 1, dtype=float)
        small = np.power(2.0, -ks)
        large = np.power(2.0, ks)
        with np.errstate(over="ignore", invalid="ignore"):
            r_zero = phi(small) / small
            r_inf = phi(large) / large

        zero_class = self._classify_decreasing(r_zero)
        inf_class = self._classify_increasing(r_inf)
        limit_zero = {"zero": 0.0, "infinite": INF}.get(zero_class, float(r_zero[-1]))
        limit_inf = {"zero": 0.0, "infinite": INF}.get(inf_class, float(r_inf[-1]))
        result = NFunctionLimits(
            limit_at_zero=limit_zero,
            limit_at_infinity=limit_inf,
            zero_class=zero_class,
            infinity_class=inf_class,
            n_function=zero_class == "zero" and inf_class == "infinite",
        )
        logger.debug(f"Limites de {phi.label}: {result}")
        return result

    def _classify_decreasing(self, r: np.ndarray) -> str:
        zero_tol = self.config.tolerances.zero
        if math.isinf(r[-1]):
            return "infinite"
        if r[-1] <= zero_tol:
            return "zero"
        back = r[-11]
        if r[-3] > r[-2] > r[-1] and r[-1] <= 0.5 * back:
            return "zero"
        return "finite"

    def _classify_increasing(self, r: np.ndarray) -> str:
        if math.isinf(r[-1]):
            return "infinite"
        if r[-1] <= self.config.tolerances.zero:
            return "zero"
        if r[-3] < r[-2] < r[-1]:
            d_last = r[-1] - r[-2]
            d_back = r[-10] - r[-11]
            if r[-1] >= 10.0 * r[-11] or (d_last > 0 and d_last >= 0.5 * d_back):
                return "infinite"
        return "finite"

    def lemma_nfn_check(self, phi: OrliczFunction, q: float, samples: Optional[int] = None) -> LemmaNfnReport:
        """
        Verifica φ(t)/t^q → ∞ quando t → ∞ e φ(t)/t^q → 0 quando t → 0 (se a_φ = 0).

        Args:
            phi: Função de Orlicz
            q: Expoente em (0, 1)
            samples: Número de pontos t = 2^(±k)

        Returns:
            LemmaNfnReport; o limite em 0 é vácuo quando a_φ > 0
        """
        if not 0.0 < q < 1.0:
            raise DomainError("q must lie in (0, 1)")
        samples = samples or self.config.probes.limit_steps
        ks = np.arange(samples + 1, dtype=float)
        large = np.power(2.0, ks)
        with np.errstate(over="ignore", invalid="ignore"):
            r_inf = phi(large) / np.power(large, q)

        positive = r_inf[r_inf > 0]
        tail = r_inf[-max(3, samples // 3) :]
        if math.isinf(r_inf[-1]):
            infinity_holds = True
        elif positive.size == 0:
            infinity_holds = False
        else:
            increasing = bool(np.all(np.diff(tail) > 0))
            infinity_holds = increasing and r_inf[-1] >= 20.0 * positive[0]

        zero_vacuous = phi.a_phi > 0
        zero_ratio: Optional[float] = None
        literal_ratio: Optional[float] = None
        zero_holds = True
        if not zero_vacuous:
            small = np.power(2.0, -ks)
            with np.errstate(over="ignore", invalid="ignore"):
                r_zero = phi(small) / np.power(small, q)
                literal = phi(small) / np.power(small, 1.0 / q)
            zero_ratio = float(r_zero[-1])
            literal_ratio = float(literal[-1])
            zero_holds = r_zero[-1] <= 0.05 * r_zero[0] if r_zero[0] > 0 else r_zero[-1] == 0

        report = LemmaNfnReport(
            q=q,
            infinity_holds=bool(infinity_holds),
            infinity_ratio=float(r_inf[-1]),
            zero_holds=bool(zero_holds),
            zero_vacuous=zero_vacuous,
            zero_ratio=zero_ratio,
            literal_ratio=literal_ratio,
            holds=bool(infinity_holds and zero_holds),
        )
        logger.info(f"Lema (N-função) para {phi.label}, q={q:g}: {'ok' if report.holds else 'falhou'}")
        return report

    # Δ₂
    def probe_delta2(
        self,
        phi: OrliczFunction,
        u_min: Optional[float] = None,
        u_max: Optional[float] = None,
        n: Optional[int] = None,
    ) -> GrowthReport:
        """
        Estima K em φ(2u) <= K φ(u) numa grade logarítmica.

        Pontos com φ(u) = 0 ou φ(u) = ∞ são pulados e contados em `skipped`.
        """
        cfg = self.config.probes
        u_min = cfg.delta2_lo if u_min is None else u_min
        u_max = cfg.delta2_hi if u_max is None else u_max
        n = n or cfg.delta2_points
        if not 0 < u_min < u_max:
            raise DomainError("probe_delta2 requires 0 < u_min < u_max")

        u = np.geomspace(u_min, u_max, n)
        phi_u, phi_2u = phi(u), phi(2.0 * u)
        keep = (phi_u > 0) & np.isfinite(phi_u)
        skipped = int((~keep).sum())
        u, phi_u, phi_2u = u[keep], phi_u[keep], phi_2u[keep]
        grid = f"log grid u in [{u_min:g}, {u_max:g}], {n} points"

        if u.size == 0:
            return GrowthReport(
                condition="Delta2", holds=True, constant=0.0, grid=grid,
                skipped=skipped, note="empty grid",
            )

        with np.errstate(over="ignore", invalid="ignore"):
            ratio = phi_2u / phi_u
        start = divergent_run(ratio, cfg.growth_factor)
        if start is None:
            k = int(np.argmax(ratio))
            return GrowthReport(
                condition="Delta2", holds=True, constant=float(ratio[k]),
                witness=[float(u[k])], witness_value=float(ratio[k]),
                grid=grid, skipped=skipped,
            )

        constant = float(ratio[start]) if math.isfinite(ratio[start]) else float(np.max(ratio[np.isfinite(ratio)], initial=0.0))
        big = np.flatnonzero(ratio > cfg.witness_ratio)
        if big.size == 0:
            big = np.flatnonzero(ratio > cfg.growth_factor * max(constant, 1e-300))
        w = int(big[0]) if big.size else int(np.argmax(ratio))
        logger.info(f"Δ₂ falhou para {phi.label}: razão {ratio[w]:g} em u={u[w]:g}")
        return GrowthReport(
            condition="Delta2", holds=False, constant=constant,
            witness=[float(u[w])], witness_value=float(ratio[w]),
            grid=grid, skipped=skipped,
        )

    # Δ' e ∇'
    def _prime_grid(self, u0: float, lo: Optional[float], hi: Optional[float], n: Optional[int]) -> Tuple[np.ndarray, str]:
        cfg = self.config.probes
        if u0 < 0:
            raise DomainError("u0 must be nonnegative")
        lo = cfg.prime_lo if lo is None else lo
        hi = cfg.prime_hi if hi is None else hi
        n = n or cfg.prime_points
        floor = max(lo, u0)
        grid = f"s, t in log grid [{floor:g}, {hi:g}], {n} points per axis"
        if floor > hi:
            return np.empty(0), grid
        if floor == hi:
            return np.array([hi]), grid
        return np.geomspace(floor, hi, n), grid

    def _matrix_divergence(self, ratio: np.ndarray) -> Optional[Tuple[int, int]]:
        """Primeiro par (i, j) de uma linha, coluna ou diagonal que diverge."""
        growth = self.config.probes.growth_factor
        inf_pairs = np.argwhere(np.isinf(ratio))
        if inf_pairs.size:
            diagonal = [tuple(p) for p in inf_pairs if p[0] == p[1]]
            return diagonal[0] if diagonal else tuple(inf_pairs[0])
        n = ratio.shape[0]
        diag = np.diagonal(ratio)
        start = divergent_run(diag, growth)
        if start is not None:
            return (n - 1, n - 1)
        for i in range(n):
            if divergent_run(ratio[i, :], growth) is not None:
                return (i, n - 1)
            if divergent_run(ratio[:, i], growth) is not None:
                return (n - 1, i)
        return None

    def _scaling(self, phi: OrliczFunction, s: np.ndarray) -> np.ndarray:
        """φ⁻¹(φ(s)φ(t))/(st); produtos não finitos viram NaN."""
        phi_s = phi(s)
        with np.errstate(over="ignore", invalid="ignore"):
            product = np.outer(phi_s, phi_s)
        st = np.outer(s, s)
        out = np.full(product.shape, np.nan)
        ok = np.isfinite(product) & (product > 0)
        for i, j in np.argwhere(ok):
            out[i, j] = phi.formal_inverse(product[i, j]) / st[i, j]
        return out

    def probe_delta_prime(
        self,
        phi: OrliczFunction,
        u0: float = 0.0,
        lo: Optional[float] = None,
        hi: Optional[float] = None,
        n: Optional[int] = None,
    ) -> GrowthReport:
        """
        Estima C em φ(st) <= C φ(s)φ(t) para s, t >= u0.

        O relatório traz também a constante da forma a: φ(ast) <= φ(s)φ(t).
        """
        s, grid = self._prime_grid(u0, lo, hi, n)
        if s.size == 0:
            return GrowthReport(
                condition="DeltaPrime", holds=True, u0=u0, constant=0.0, grid=grid, note="empty grid"
            )
        phi_s = phi(s)
        with np.errstate(over="ignore", invalid="ignore"):
            product = np.outer(phi_s, phi_s)
            value = phi(np.outer(s, s))
            ratio = value / product
        ratio[(product == 0) & (value == 0)] = np.nan
        ratio[(product == 0) & (value > 0)] = INF
        ratio[np.isinf(product)] = np.nan
        skipped = int(np.isnan(ratio).sum())
        ratio_clean = np.where(np.isnan(ratio), 0.0, ratio)

        hit = self._matrix_divergence(ratio)
        if hit is not None:
            i, j = hit
            finite = ratio_clean[np.isfinite(ratio_clean)]
            constant = float(np.median(finite)) if finite.size else 0.0
            logger.info(f"Δ' falhou para {phi.label} em (s, t)=({s[i]:g}, {s[j]:g})")
            return GrowthReport(
                condition="DeltaPrime", holds=False, u0=u0, constant=constant,
                witness=[float(s[i]), float(s[j])], witness_value=float(ratio_clean[i, j]),
                grid=grid, skipped=skipped,
            )

        i, j = np.unravel_index(int(np.argmax(ratio_clean)), ratio_clean.shape)
        constant = float(ratio_clean[i, j])
        scaling = self._scaling(phi, s)
        a_form = float(np.nanmin(scaling)) if np.any(np.isfinite(scaling)) else None
        return GrowthReport(
            condition="DeltaPrime", holds=True, u0=u0, constant=constant,
            witness=[float(s[i]), float(s[j])], witness_value=constant,
            grid=grid, skipped=skipped, a_form_constant=a_form,
        )

    def probe_delta_prime_a_form(
        self,
        phi: OrliczFunction,
        u0: float = 0.0,
        lo: Optional[float] = None,
        hi: Optional[float] = None,
        n: Optional[int] = None,
    ) -> GrowthReport:
        """
        Maior a com φ(ast) <= φ(s)φ(t) na grade: mínimo de φ⁻¹(φ(s)φ(t))/(st).

        Quando a forma C vale com C > 1, confere também que a >= 1/C.
        """
        s, grid = self._prime_grid(u0, lo, hi, n)
        if s.size == 0:
            return GrowthReport(
                condition="DeltaPrimeAForm", holds=True, u0=u0, constant=0.0, grid=grid, note="empty grid"
            )
        delta = self.probe_delta_prime(phi, u0, lo, hi, n)
        scaling = self._scaling(phi, s)
        skipped = int(np.isnan(scaling).sum())
        if not delta.holds or not np.any(np.isfinite(scaling)):
            return GrowthReport(
                condition="DeltaPrimeAForm", holds=False, u0=u0, constant=0.0,
                witness=delta.witness, grid=grid, skipped=skipped, note="Delta' fails on the grid",
            )
        i, j = np.unravel_index(int(np.nanargmin(scaling)), scaling.shape)
        a = float(scaling[i, j])
        consistent = delta.constant <= 1.0 or a >= (1.0 / delta.constant) * (1.0 - 1e-9)
        return GrowthReport(
            condition="DeltaPrimeAForm", holds=bool(a > 0 and consistent), u0=u0, constant=a,
            witness=[float(s[i]), float(s[j])], witness_value=a, grid=grid, skipped=skipped,
            note=None if consistent else "a-form constant below 1/C",
        )

    def probe_nabla_prime(
        self,
        phi: OrliczFunction,
        u0: float = 0.0,
        lo: Optional[float] = None,
        hi: Optional[float] = None,
        n: Optional[int] = None,
    ) -> GrowthReport:
        """Menor b com φ(bst) >= φ(s)φ(t): máximo de φ⁻¹(φ(s)φ(t))/(st)."""
        s, grid = self._prime_grid(u0, lo, hi, n)
        if s.size == 0:
            return GrowthReport(
                condition="NablaPrime", holds=True, u0=u0, constant=0.0, grid=grid, note="empty grid"
            )
        scaling = self._scaling(phi, s)
        skipped = int(np.isnan(scaling).sum())
        clean = np.where(np.isnan(scaling), 0.0, scaling)
        hit = self._matrix_divergence(scaling)
        if hit is not None or not np.any(clean > 0):
            i, j = hit if hit is not None else (0, 0)
            logger.info(f"∇' falhou para {phi.label} em (s, t)=({s[i]:g}, {s[j]:g})")
            return GrowthReport(
                condition="NablaPrime", holds=False, u0=u0,
                constant=float(np.median(clean[clean > 0])) if np.any(clean > 0) else 0.0,
                witness=[float(s[i]), float(s[j])], witness_value=float(clean[i, j]),
                grid=grid, skipped=skipped,
            )
        i, j = np.unravel_index(int(np.argmax(clean)), clean.shape)
        b = float(clean[i, j])
        return GrowthReport(
            condition="NablaPrime", holds=True, u0=u0, constant=b,
            witness=[float(s[i]), float(s[j])], witness_value=b, grid=grid, skipped=skipped,
        )

    # Ajuste de potência
    def power_fit(
        self,
        phi: OrliczFunction,
        x0: float = 0.0,
        grid: Optional[Sequence[float]] = None,
    ) -> PowerFitReport:
        """
        Ajusta (a₁x)^p <= φ(x) <= (a₂x)^p para x >= x0 quando Δ' e ∇' valem.

        Args:
            phi: Função de Orlicz
            x0: Início da região de ajuste
            grid: Pontos de ajuste; padrão é a grade das sondas Δ'/∇'

        Returns:
            PowerFitReport com p, a₁, a₂ e o veredito
        """
        delta = self.probe_delta_prime(phi, u0=x0)
        nabla = self.probe_nabla_prime(phi, u0=x0)
        if not (delta.holds and nabla.holds):
            failed = "Delta'" if not delta.holds else "Nabla'"
            return PowerFitReport(verdict="not_applicable", x0=x0, reason=f"{failed} fails beyond x0")

        if grid is None:
            xs, _ = self._prime_grid(x0, None, None, None)
        else:
            xs = np.array([x for x in grid if x >= x0], dtype=float)
        values = phi(xs)
        keep = np.isfinite(values) & (values > 0)
        xs, values = xs[keep], values[keep]
        if xs.size < 2:
            return PowerFitReport(verdict="not_applicable", x0=x0, reason="fewer than two usable grid points")

        slopes = np.diff(np.log(values)) / np.diff(np.log(xs))
        p = float(np.median(slopes))
        scaled = np.power(values, 1.0 / p) / xs
        a1, a2 = float(np.min(scaled)), float(np.max(scaled))

        tol = 1e-9
        lower_ok = np.all(np.power(a1 * xs, p) <= values * (1.0 + tol))
        upper_ok = np.all(values <= np.power(a2 * xs, p) * (1.0 + tol))
        if p < 1.0 - 1e-9:
            verdict = "p_below_one"
        elif not (lower_ok and upper_ok):
            verdict = "sandwich_violated"
        else:
            verdict = "ok"
        logger.info(f"Ajuste de potência para {phi.label}: p={p:.6g}, a1={a1:.6g}, a2={a2:.6g}")
        return PowerFitReport(
            verdict=verdict, p=p, a1=a1, a2=a2, x0=x0, checked_points=int(xs.size)
        )
