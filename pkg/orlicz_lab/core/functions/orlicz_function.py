"""
Funções de Orlicz como árvores de expressão.

Uma função de Orlicz é uma função convexa φ: [0, ∞) → [0, ∞] com φ(0) = 0,
nem identicamente nula nem identicamente infinita em (0, ∞) e contínua à
esquerda em b_φ. Cada nó da árvore sabe se avaliar (vetorizado em numpy),
conhece seus limiares a_φ = inf{u > 0 : φ(u) > 0} e b_φ = sup{u > 0 : φ(u) < ∞}
e, quando pertence à família potência, uma forma fechada.
"""

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Annotated, Any, Dict, List, Literal, Optional, Sequence, Tuple, Union

import numpy as np
from loguru import logger
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    TypeAdapter,
    ValidationError,
    field_validator,
    model_validator,
)
from scipy.optimize import brentq, minimize_scalar

from orlicz_lab.config import RunConfig, get_settings
from orlicz_lab.core.errors import DomainError, SpecError
from orlicz_lab.models import ValidityReport

INF = math.inf


# Especificações (formato do arquivo JSON de função)
class _Spec(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class PowerSpec(_Spec):
    kind: Literal["power"] = "power"
    p: float = Field(..., ge=1)


class PowerScaledSpec(_Spec):
    kind: Literal["power_scaled"] = "power_scaled"
    c: float = Field(..., gt=0)
    p: float = Field(..., ge=1)


class ExpMinusOneSpec(_Spec):
    kind: Literal["exp_minus_one"] = "exp_minus_one"


class TLog1pSpec(_Spec):
    kind: Literal["t_log1p"] = "t_log1p"


class PiecewiseLinearSpec(_Spec):
    kind: Literal["piecewise_linear"] = "piecewise_linear"
    knots: List[Tuple[float, float]] = Field(..., min_length=1)
    final_slope: Optional[float] = Field(None, ge=0)
    finite_cutoff: Optional[float] = Field(None, gt=0)

    @field_validator("knots")
    @classmethod
    def _check_knots(cls, knots: List[Tuple[float, float]]) -> List[Tuple[float, float]]:
        ts = [t for t, _ in knots]
        if any(not math.isfinite(t) or t < 0 for t in ts):
            raise ValueError("knot abscissae must be finite and nonnegative")
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValueError("knot abscissae must be strictly increasing")
        if any(not math.isfinite(y) or y < 0 for _, y in knots):
            raise ValueError("knot values must be finite and nonnegative")
        return knots

    @model_validator(mode="after")
    def _check_cutoff(self) -> "PiecewiseLinearSpec":
        cutoff = self.finite_cutoff
        if cutoff is not None and math.isfinite(cutoff) and cutoff < self.knots[-1][0]:
            raise ValueError("finite_cutoff must not precede the last knot")
        return self


class ComposeSpec(_Spec):
    kind: Literal["compose"] = "compose"
    outer: "FunctionSpec"
    inner: "FunctionSpec"


class ConjugateSpec(_Spec):
    kind: Literal["conjugate"] = "conjugate"
    of: "FunctionSpec"
    method: Literal["auto", "numeric"] = "auto"


class HScaleSpec(_Spec):
    kind: Literal["hscale"] = "hscale"
    a: float = Field(..., gt=0)
    of: "FunctionSpec"


FunctionSpec = Annotated[
    Union[
        PowerSpec,
        PowerScaledSpec,
        ExpMinusOneSpec,
        TLog1pSpec,
        PiecewiseLinearSpec,
        ComposeSpec,
        ConjugateSpec,
        HScaleSpec,
    ],
    Field(discriminator="kind"),
]

for _model in (ComposeSpec, ConjugateSpec, HScaleSpec):
    _model.model_rebuild()

FUNCTION_SPEC_ADAPTER: TypeAdapter = TypeAdapter(FunctionSpec)


def parse_spec(data: Any) -> Any:
    """Valida um dicionário (ou spec já construída) como FunctionSpec."""
    if isinstance(data, _Spec):
        return data
    try:
        return FUNCTION_SPEC_ADAPTER.validate_python(data)
    except ValidationError as e:
        raise SpecError(f"invalid function spec: {e}") from e


@dataclass(frozen=True)
class ClosedForm:
    """c·t^p (kind="power") ou o corte 0 em [0, c], ∞ depois (kind="cutoff")."""

    kind: Literal["power", "cutoff"]
    c: float
    p: float = 1.0

    def __call__(self, t: np.ndarray) -> np.ndarray:
        if self.kind == "power":
            return self.c * np.power(t, self.p)
        return np.where(t <= self.c, 0.0, INF)

    def conjugate(self) -> "ClosedForm":
        if self.kind == "cutoff":
            return ClosedForm("power", self.c, 1.0)
        if self.p == 1.0:
            return ClosedForm("cutoff", self.c)
        # sup_v (uv - c v^p) = (p-1) c (u/(cp))^(p/(p-1))
        q = self.p / (self.p - 1.0)
        return ClosedForm("power", (self.p - 1.0) * self.c * (self.c * self.p) ** (-q), q)

    def inverse(self, t: float) -> float:
        if self.kind == "cutoff":
            return self.c
        return (t / self.c) ** (1.0 / self.p)

    def compose(self, inner: "ClosedForm") -> "ClosedForm":
        if self.kind == "power" and inner.kind == "power":
            return ClosedForm("power", self.c * inner.c**self.p, self.p * inner.p)
        if inner.kind == "cutoff":
            return ClosedForm("cutoff", inner.c)
        # corte externo: 0 enquanto c₂ t^p₂ <= c
        return ClosedForm("cutoff", (self.c / inner.c) ** (1.0 / inner.p))

    def hscale(self, a: float) -> "ClosedForm":
        if self.kind == "power":
            return ClosedForm("power", self.c * a**self.p, self.p)
        return ClosedForm("cutoff", self.c / a)


class OrliczFunction:
    """Nó de uma árvore de funções de Orlicz."""

    def __init__(
        self,
        spec: Any,
        config: Optional[RunConfig] = None,
        children: Optional[Dict[str, "OrliczFunction"]] = None,
    ):
        self.spec = parse_spec(spec)
        self.config = config or get_settings()
        self.verdict: Optional[ValidityReport] = None

        children = children or {}
        kind = self.spec.kind
        if kind == "compose":
            self.outer = children.get("outer") or OrliczFunction(self.spec.outer, self.config)
            self.inner = children.get("inner") or OrliczFunction(self.spec.inner, self.config)
        elif kind in ("conjugate", "hscale"):
            self.of = children.get("of") or OrliczFunction(self.spec.of, self.config)

    # Construtores
    @classmethod
    def power(cls, p: float, config: Optional[RunConfig] = None) -> "OrliczFunction":
        return cls(PowerSpec(p=p), config)

    @classmethod
    def power_scaled(cls, c: float, p: float, config: Optional[RunConfig] = None) -> "OrliczFunction":
        return cls(PowerScaledSpec(c=c, p=p), config)

    @classmethod
    def exp_minus_one(cls, config: Optional[RunConfig] = None) -> "OrliczFunction":
        return cls(ExpMinusOneSpec(), config)

    @classmethod
    def t_log1p(cls, config: Optional[RunConfig] = None) -> "OrliczFunction":
        return cls(TLog1pSpec(), config)

    @classmethod
    def piecewise_linear(
        cls,
        knots: Sequence[Tuple[float, float]],
        final_slope: Optional[float] = None,
        finite_cutoff: Optional[float] = None,
        config: Optional[RunConfig] = None,
    ) -> "OrliczFunction":
        spec = PiecewiseLinearSpec(
            knots=[tuple(k) for k in knots], final_slope=final_slope, finite_cutoff=finite_cutoff
        )
        return cls(spec, config)

    def hscale(self, a: float) -> "OrliczFunction":
        """u ↦ φ(a·u)."""
        return OrliczFunction(HScaleSpec(a=a, of=self.spec), self.config, {"of": self})

    @property
    def kind(self) -> str:
        return self.spec.kind

    @property
    def label(self) -> str:
        spec = self.spec
        if spec.kind == "power":
            return f"t^{spec.p:g}"
        if spec.kind == "power_scaled":
            return f"{spec.c:g}·t^{spec.p:g}"
        if spec.kind == "exp_minus_one":
            return "e^t-1"
        if spec.kind == "t_log1p":
            return "t·log(1+t)"
        if spec.kind == "piecewise_linear":
            return f"pl[{len(spec.knots)} knots]"
        if spec.kind == "compose":
            return f"({self.outer.label})∘({self.inner.label})"
        if spec.kind == "conjugate":
            return f"({self.of.label})*"
        return f"({self.of.label})(a·t)"

    def __repr__(self) -> str:
        return f"OrliczFunction({self.label})"

    def to_dict(self) -> Dict[str, Any]:
        return self.spec.model_dump()

    # Avaliação
    def __call__(self, t: Any) -> Any:
        arr = np.asarray(t, dtype=float)
        if np.any(np.isnan(arr)) or np.any(arr < 0):
            raise DomainError("Orlicz functions are only defined on [0, inf)")
        flat = np.atleast_1d(arr).ravel()
        out = np.full(flat.shape, INF)
        finite = np.isfinite(flat)
        if finite.any():
            with np.errstate(over="ignore", invalid="ignore"):
                out[finite] = self._eval(flat[finite])
        if arr.ndim == 0:
            return float(out[0])
        return out.reshape(arr.shape)

    def evaluate(self, t: float) -> float:
        """
        Avalia φ(t).

        Args:
            t: Ponto em [0, ∞)

        Returns:
            φ(t), +∞ além de b_φ
        """
        return float(self(float(t)))

    def _eval(self, t: np.ndarray) -> np.ndarray:
        closed = self.closed_form
        if closed is not None:
            return closed(t)
        kind = self.kind
        if kind == "exp_minus_one":
            return np.expm1(t)
        if kind == "t_log1p":
            return t * np.log1p(t)
        if kind == "piecewise_linear":
            return self._eval_piecewise(t)
        if kind == "compose":
            return self.outer(self.inner(t))
        if kind == "hscale":
            return self.of(self.spec.a * t)
        return self._eval_conjugate(t)

    # Linear por partes
    @cached_property
    def _pl_table(self) -> Tuple[np.ndarray, np.ndarray, float, float]:
        spec = self.spec
        kt = np.array([k[0] for k in spec.knots], dtype=float)
        ky = np.array([k[1] for k in spec.knots], dtype=float)
        if kt[0] > 0:
            kt = np.concatenate(([0.0], kt))
            ky = np.concatenate(([0.0], ky))
        if spec.final_slope is not None:
            slope = float(spec.final_slope)
        elif len(kt) > 1:
            slope = float((ky[-1] - ky[-2]) / (kt[-1] - kt[-2]))
        else:
            slope = 0.0
        cutoff = spec.finite_cutoff
        cutoff = INF if cutoff is None else float(cutoff)
        return kt, ky, slope, cutoff

    def _eval_piecewise(self, t: np.ndarray) -> np.ndarray:
        kt, ky, slope, cutoff = self._pl_table
        y = np.interp(t, kt, ky)
        beyond = t > kt[-1]
        y[beyond] = ky[-1] + slope * (t[beyond] - kt[-1])
        y[t > cutoff] = INF
        return y

    # Estrutura: forma fechada, limiares, inclinações, quebras
    @cached_property
    def closed_form(self) -> Optional[ClosedForm]:
        """Forma fechada da família potência (ou do corte), quando existe."""
        spec = self.spec
        if spec.kind == "power":
            return ClosedForm("power", 1.0, spec.p)
        if spec.kind == "power_scaled":
            return ClosedForm("power", spec.c, spec.p)
        if spec.kind == "compose":
            outer, inner = self.outer.closed_form, self.inner.closed_form
            return outer.compose(inner) if outer and inner else None
        if spec.kind == "hscale":
            of = self.of.closed_form
            return of.hscale(spec.a) if of else None
        if spec.kind == "conjugate" and spec.method == "auto":
            of = self.of.closed_form
            return of.conjugate() if of else None
        return None

    @property
    def power_law(self) -> Optional[Tuple[float, float]]:
        """(c, p) quando φ(t) = c·t^p estruturalmente."""
        closed = self.closed_form
        if closed is not None and closed.kind == "power":
            return closed.c, closed.p
        return None

    @cached_property
    def a_phi(self) -> float:
        """inf{u > 0 : φ(u) > 0}."""
        closed = self.closed_form
        if closed is not None:
            return closed.c if closed.kind == "cutoff" else 0.0
        kind = self.kind
        if kind in ("exp_minus_one", "t_log1p"):
            return 0.0
        if kind == "piecewise_linear":
            return self._pl_a_phi()
        if kind == "compose":
            return self.inner.formal_inverse(self.outer.a_phi)
        if kind == "hscale":
            return self.of.a_phi / self.spec.a
        return self.of.slope_at_zero

    def _pl_a_phi(self) -> float:
        kt, ky, slope, cutoff = self._pl_table
        if ky[0] > 0:
            return 0.0
        for i in range(len(kt) - 1):
            if ky[i + 1] > 0:
                return float(kt[i])
        if slope > 0 and cutoff > kt[-1]:
            return float(kt[-1])
        return cutoff

    @cached_property
    def b_phi(self) -> float:
        """sup{u > 0 : φ(u) < ∞}."""
        closed = self.closed_form
        if closed is not None:
            return closed.c if closed.kind == "cutoff" else INF
        kind = self.kind
        if kind in ("exp_minus_one", "t_log1p"):
            return INF
        if kind == "piecewise_linear":
            return self._pl_table[3]
        if kind == "compose":
            if math.isfinite(self.outer.b_phi):
                return self.inner.formal_inverse(self.outer.b_phi)
            return self.inner.b_phi
        if kind == "hscale":
            return self.of.b_phi / self.spec.a
        if math.isfinite(self.of.b_phi):
            return INF
        return self.of.slope_at_infinity

    @cached_property
    def slope_at_zero(self) -> float:
        """lim_{v→0} φ(v)/v (derivada à direita em 0)."""
        closed = self.closed_form
        if closed is not None:
            if closed.kind == "cutoff":
                return 0.0
            return closed.c if closed.p == 1.0 else 0.0
        kind = self.kind
        if kind == "exp_minus_one":
            return 1.0
        if kind == "t_log1p":
            return 0.0
        if kind == "piecewise_linear":
            kt, ky, slope, _ = self._pl_table
            if ky[0] > 0:
                return INF
            if self.a_phi > 0:
                return 0.0
            return float((ky[1] - ky[0]) / (kt[1] - kt[0])) if len(kt) > 1 else slope
        if kind == "compose":
            return self.outer.slope_at_zero * self.inner.slope_at_zero
        if kind == "hscale":
            return self.spec.a * self.of.slope_at_zero
        return self.of.a_phi

    @cached_property
    def slope_at_infinity(self) -> float:
        """lim_{v→∞} φ(v)/v."""
        if math.isfinite(self.b_phi):
            return INF
        closed = self.closed_form
        if closed is not None:
            return closed.c if closed.p == 1.0 else INF
        kind = self.kind
        if kind in ("exp_minus_one", "t_log1p"):
            return INF
        if kind == "piecewise_linear":
            return self._pl_table[2]
        if kind == "compose":
            return self.outer.slope_at_infinity * self.inner.slope_at_infinity
        if kind == "hscale":
            return self.spec.a * self.of.slope_at_infinity
        return self.of.b_phi

    @cached_property
    def breakpoints(self) -> Tuple[float, ...]:
        """Pontos de quebra de uma função poliédrica (vazio caso contrário)."""
        closed = self.closed_form
        if closed is not None:
            return (closed.c,) if closed.kind == "cutoff" else ()
        kind = self.kind
        if kind == "piecewise_linear":
            kt, _, _, cutoff = self._pl_table
            points = list(kt[1:])
            if math.isfinite(cutoff):
                points.append(cutoff)
            return tuple(points)
        if kind == "hscale" and self.of.is_polyhedral:
            return tuple(b / self.spec.a for b in self.of.breakpoints)
        if kind == "compose" and self.is_polyhedral:
            inner_points = list(self.inner.breakpoints)
            inner_points += [self.inner.formal_inverse(b) for b in self.outer.breakpoints]
            return tuple(sorted(p for p in set(inner_points) if 0 < p < INF))
        if kind == "conjugate" and self.of.is_polyhedral:
            src = self.of
            xs = np.array(sorted({0.0, *src.breakpoints}))
            xs = xs[xs <= src.b_phi]
            ys = src(xs)
            keep = np.isfinite(ys)
            slopes = np.diff(ys[keep]) / np.diff(xs[keep])
            points = [s for s in slopes if s > 0]
            if math.isfinite(src.slope_at_infinity):
                points.append(src.slope_at_infinity)
            return tuple(sorted(set(points)))
        return ()

    @cached_property
    def is_polyhedral(self) -> bool:
        """Verdadeiro quando φ é linear por partes (supremo do conjugado atingido nas quebras)."""
        closed = self.closed_form
        if closed is not None:
            return closed.kind == "cutoff" or closed.p == 1.0
        kind = self.kind
        if kind == "piecewise_linear":
            return True
        if kind == "compose":
            return self.outer.is_polyhedral and self.inner.is_polyhedral
        if kind in ("hscale", "conjugate"):
            return self.of.is_polyhedral
        return False

    # Conjugado
    def conjugate(self, numeric: bool = False) -> "OrliczFunction":
        """
        Função complementar φ*(u) = sup_{v>0} (uv − φ(v)).

        Args:
            numeric: Força o caminho numérico mesmo para a família potência

        Returns:
            Nó conjugado (forma fechada quando disponível)
        """
        if numeric:
            return self._numeric_conjugate
        return self._conjugate

    @cached_property
    def _conjugate(self) -> "OrliczFunction":
        return OrliczFunction(ConjugateSpec(of=self.spec), self.config, {"of": self})

    @cached_property
    def _numeric_conjugate(self) -> "OrliczFunction":
        return OrliczFunction(
            ConjugateSpec(of=self.spec, method="numeric"), self.config, {"of": self}
        )

    @cached_property
    def _conjugate_grid(self) -> Tuple[np.ndarray, np.ndarray]:
        src = self.of
        cfg = self.config.conjugate
        top = min(src.b_phi, cfg.v_max)
        lo = cfg.v_min if cfg.v_min < top else top * 1e-6
        n = max(2, int(math.ceil(math.log10(top / lo) * cfg.points_per_decade)) + 1)
        extra = [0.0, *(b for b in src.breakpoints if b <= top)]
        if math.isfinite(src.b_phi):
            extra.append(src.b_phi)
        v = np.unique(np.concatenate((np.geomspace(lo, top, n), extra)))
        phi_v = src(v)
        logger.debug(f"Grade do conjugado de {src.label}: {len(v)} pontos em [{lo:g}, {top:g}]")
        return v, phi_v

    @cached_property
    def _extended_grid(self) -> Tuple[np.ndarray, np.ndarray]:
        src = self.of
        cfg = self.config.conjugate
        base_v, base_phi = self._conjugate_grid
        top = min(src.b_phi, cfg.extension_limit)
        if top <= cfg.v_max:
            return base_v, base_phi
        n = max(2, int(math.ceil(math.log10(top / cfg.v_max) * cfg.points_per_decade)) + 1)
        ext = np.geomspace(cfg.v_max, top, n)[1:]
        extra = [b for b in src.breakpoints if cfg.v_max < b <= top]
        ext = np.unique(np.concatenate((ext, extra)))
        logger.debug(f"Grade do conjugado estendida até {top:g} ({len(ext)} pontos extras)")
        return np.concatenate((base_v, ext)), np.concatenate((base_phi, src(ext)))

    def _eval_conjugate(self, u: np.ndarray) -> np.ndarray:
        lower, upper = self.a_phi, self.b_phi
        margin = self.config.tolerances.strict_margin
        out = np.zeros_like(u)
        out[u > upper * (1.0 + margin)] = INF
        todo = np.flatnonzero((u > lower) & (u <= upper * (1.0 + margin)))
        if todo.size == 0:
            return out

        v, phi_v = self._conjugate_grid
        chunk = self.config.conjugate.chunk_size
        for start in range(0, todo.size, chunk):
            idx = todo[start : start + chunk]
            values = u[idx, None] * v[None, :] - phi_v[None, :]
            best = np.argmax(values, axis=1)
            out[idx] = values[np.arange(idx.size), best]
            at_top = best == len(v) - 1
            for j, k in zip(idx[~at_top], best[~at_top]):
                out[j] = self._refine(u[j], v, k, out[j])
            if at_top.any():
                self._eval_conjugate_extended(u, idx[at_top], out)
        return out

    def _eval_conjugate_extended(self, u: np.ndarray, idx: np.ndarray, out: np.ndarray) -> None:
        v, phi_v = self._extended_grid
        rows = max(1, self.config.conjugate.chunk_size * len(self._conjugate_grid[0]) // len(v))
        for start in range(0, idx.size, rows):
            part = idx[start : start + rows]
            values = u[part, None] * v[None, :] - phi_v[None, :]
            best = np.argmax(values, axis=1)
            for j, k, value in zip(part, best, values[np.arange(part.size), best]):
                out[j] = self._refine(u[j], v, k, value)

    def _refine(self, u: float, v: np.ndarray, k: int, grid_value: float) -> float:
        """Refinamento local (Brent limitado) ao redor do argmax da grade."""
        if self.of.is_polyhedral or k == 0 or k == len(v) - 1:
            return float(grid_value)
        src = self.of
        lo, hi = float(v[k - 1]), float(v[k + 1])
        if not math.isfinite(src.evaluate(hi)):
            hi = float(v[k])
        if hi <= lo:
            return float(grid_value)
        result = minimize_scalar(
            lambda x: -(u * x - src.evaluate(x)),
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": 1e-12 * hi},
        )
        refined = -float(result.fun)
        return max(float(grid_value), refined) if math.isfinite(refined) else float(grid_value)

    # Inversa formal
    def formal_inverse(self, t: float) -> float:
        """
        φ⁻¹(t) = sup{s : φ(s) <= t}.

        Args:
            t: Nível em [0, ∞]

        Returns:
            Inversa formal; b_φ quando φ(b_φ) <= t
        """
        t = float(t)
        if math.isnan(t) or t < 0:
            raise DomainError("formal_inverse requires t >= 0")
        if t == INF:
            return self.b_phi
        closed = self.closed_form
        if closed is not None:
            return closed.inverse(t)
        if t == 0:
            return self.a_phi

        lo, b = self.a_phi, self.b_phi
        if math.isfinite(b) and self.evaluate(b) <= t:
            return b

        max_iter = self.config.tolerances.bisection_max_iter
        if math.isfinite(b):
            hi = b
        else:
            hi = max(2.0 * lo, 1.0)
            for _ in range(max_iter):
                if self.evaluate(hi) > t:
                    break
                lo, hi = hi, 2.0 * hi
            else:
                return INF

        for _ in range(max_iter):
            if math.isfinite(self.evaluate(hi)) or hi <= lo:
                break
            mid = lo + 0.5 * (hi - lo)
            if self.evaluate(mid) <= t:
                lo = mid
            else:
                hi = mid
        if hi <= lo or not math.isfinite(self.evaluate(hi)):
            return lo

        return float(
            brentq(lambda s: self.evaluate(s) - t, lo, hi, xtol=1e-300, maxiter=max_iter)
        )

    def formal_inverse_array(self, t: Any) -> np.ndarray:
        arr = np.asarray(t, dtype=float)
        return np.array([self.formal_inverse(x) for x in arr.ravel()]).reshape(arr.shape)

    # Composição, validade, Young
    def compose(self, inner: "OrliczFunction") -> "OrliczFunction":
        """
        Composição self∘inner com veredito de validade anexado.

        Composições de funções de Orlicz nem sempre são de Orlicz: o veredito
        fica em `verdict`, nunca vira exceção.
        """
        node = OrliczFunction(
            ComposeSpec(outer=self.spec, inner=inner.spec),
            self.config,
            {"outer": self, "inner": inner},
        )
        node.verdict = node.is_orlicz()
        if not node.verdict.valid:
            logger.info(
                f"Composição {node.label} não é de Orlicz: {node.verdict.violation} "
                f"em {node.verdict.witness}"
            )
        return node

    def is_orlicz(self) -> ValidityReport:
        """Verifica numericamente os axiomas de função de Orlicz numa grade."""
        grid_cfg = self.config.grid
        tol = self.config.tolerances.eps_conv
        a, b = self.a_phi, self.b_phi

        def report(violation: Optional[str] = None, witness: Optional[float] = None, n: int = 0):
            return ValidityReport(
                valid=violation is None,
                violation=violation,
                witness=witness,
                a_phi=a,
                b_phi=b,
                checked_points=n,
            )

        if self(0.0) != 0.0:
            return report("zero_at_origin", 0.0, 1)
        if not math.isfinite(a) or b <= 0:
            return report("degenerate", None, 1)

        decades = math.log10(grid_cfg.hi / grid_cfg.lo)
        n = int(math.ceil(decades * grid_cfg.points_per_decade)) + 1
        xs = np.geomspace(grid_cfg.lo, grid_cfg.hi, n)
        extra = [0.0, *self.breakpoints, *(x for x in (a, b) if 0 < x < INF)]
        xs = np.unique(np.concatenate((xs, extra)))
        ys = self(xs)
        checked = len(xs)

        for i in range(len(xs) - 1):
            y0, y1 = ys[i], ys[i + 1]
            if math.isinf(y0) and math.isfinite(y1):
                return report("monotonicity", float(xs[i + 1]), checked)
            if math.isfinite(y1) and y1 < y0 - tol * (1.0 + abs(y0)):
                return report("monotonicity", float(xs[i + 1]), checked)

        finite = np.isfinite(ys)
        xf, yf = xs[finite], ys[finite]
        if len(xf) >= 3:
            slopes = np.diff(yf) / np.diff(xf)
            change = np.diff(slopes)
            scale = 1.0 + np.abs(slopes[:-1]) + np.abs(slopes[1:])
            bad = np.flatnonzero(change < -tol * scale)
            if bad.size:
                return report("convexity", float(xf[bad[0] + 1]), checked)

        if math.isfinite(b):
            at_b = self.evaluate(b)
            left = self.evaluate(b * (1.0 - 1e-12))
            if math.isfinite(at_b) and abs(at_b - left) > 1e-6 * (1.0 + abs(at_b)):
                return report("left_continuity", b, checked)
            if math.isinf(at_b) and math.isfinite(left) and left <= 1e12 * (1.0 + self.evaluate(b / 2)):
                return report("left_continuity", b, checked)
            if math.isfinite(self.evaluate(b * (1.0 + 1e-6) + 1e-12)):
                return report("threshold_consistency", b, checked)
        if a > 0 and self.evaluate(a / 2) > 0:
            return report("threshold_consistency", a, checked)
        if not np.any(ys[1:] > 0):
            return report("degenerate", None, checked)

        return report(None, None, checked)

    def young_gap(self, s: float, t: float) -> float:
        """φ(s) + φ*(t) − st (nunca abaixo de −ε·(1+st) pela desigualdade de Hausdorff–Young)."""
        if s < 0 or t < 0:
            raise DomainError("young_gap requires s, t >= 0")
        phi_s = self.evaluate(s)
        conj_t = self.conjugate().evaluate(t)
        if math.isinf(phi_s) or math.isinf(conj_t):
            return INF
        return phi_s + conj_t - s * t


def evaluate(phi: OrliczFunction, t: float) -> float:
    return phi.evaluate(t)


def conjugate(phi: OrliczFunction, numeric: bool = False) -> OrliczFunction:
    return phi.conjugate(numeric=numeric)


def formal_inverse(phi: OrliczFunction, t: float) -> float:
    return phi.formal_inverse(t)


def compose(outer: OrliczFunction, inner: OrliczFunction) -> OrliczFunction:
    return outer.compose(inner)


def is_orlicz(phi: OrliczFunction) -> ValidityReport:
    return phi.is_orlicz()


def young_gap(phi: OrliczFunction, s: float, t: float) -> float:
    return phi.young_gap(s, t)


def builtin_functions(config: Optional[RunConfig] = None) -> Dict[str, OrliczFunction]:
    """Funções embutidas usadas nas execuções de propriedades."""
    return {
        "t^1": OrliczFunction.power(1.0, config),
        "t^1.5": OrliczFunction.power(1.5, config),
        "t^2": OrliczFunction.power(2.0, config),
        "t^3": OrliczFunction.power(3.0, config),
        "t^4": OrliczFunction.power(4.0, config),
        "3·t^2": OrliczFunction.power_scaled(3.0, 2.0, config),
        "e^t-1": OrliczFunction.exp_minus_one(config),
        "t·log(1+t)": OrliczFunction.t_log1p(config),
    }
