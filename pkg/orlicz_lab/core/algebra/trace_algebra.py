"""
Álgebra de von Neumann tracial em escala de mesa.

A álgebra é uma soma direta finita de blocos de matrizes reais M_d com pesos
w > 0, e o traço é τ = Σ_b w_b·Tr_b. Os valores singulares generalizados μ(x)
são funções escada decrescentes cujos comprimentos são os pesos dos blocos.
"""

import math
from dataclasses import dataclass
from typing import Any, Callable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field

from orlicz_lab.config import Tolerances
from orlicz_lab.core.errors import AlgebraMismatchError, DomainError

# Todas relativas à escala do próprio elemento
MERGE_TOL = 1e-12
ZERO_TOL = 1e-12
SYMMETRY_TOL = 1e-12
BOUNDARY_TOL = 1e-12


class Block(BaseModel):
    model_config = ConfigDict(frozen=True)

    dim: int = Field(..., ge=1)
    weight: float = Field(..., gt=0, allow_inf_nan=False)


class BlockAlgebra(BaseModel):
    """Soma direta ⊕_b (M_{dim_b}, weight_b·Tr)."""

    model_config = ConfigDict(frozen=True)

    blocks: Tuple[Block, ...] = Field(..., min_length=1)

    @classmethod
    def of(cls, *blocks: Tuple[int, float]) -> "BlockAlgebra":
        """BlockAlgebra.of((2, 1.0), (3, 0.5))."""
        return cls(blocks=tuple(Block(dim=d, weight=w) for d, w in blocks))

    @classmethod
    def commutative(cls, weights: Sequence[float]) -> "BlockAlgebra":
        """Álgebra de átomos (todos os blocos de dimensão 1)."""
        return cls(blocks=tuple(Block(dim=1, weight=float(w)) for w in weights))

    @property
    def dims(self) -> List[int]:
        return [b.dim for b in self.blocks]

    @property
    def weights(self) -> List[float]:
        return [b.weight for b in self.blocks]

    @property
    def total_trace(self) -> float:
        """τ(1)."""
        return float(sum(b.dim * b.weight for b in self.blocks))

    @property
    def is_commutative(self) -> bool:
        return all(b.dim == 1 for b in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)


@dataclass(frozen=True)
class StepFunction:
    """
    Função escada decrescente t ↦ μ_t com cauda nula implícita.

    Args:
        lengths: Comprimentos positivos dos degraus
        values: Valores estritamente decrescentes e positivos
    """

    lengths: Tuple[float, ...]
    values: Tuple[float, ...]

    @classmethod
    def from_pairs(
        cls,
        pairs: Sequence[Tuple[float, float]],
        merge: float = MERGE_TOL,
        zero: float = ZERO_TOL,
    ) -> "StepFunction":
        """
        Ordena, funde valores próximos e descarta a parte nula.

        Os cortes são relativos: um valor é nulo quando <= zero·max e dois
        valores vizinhos se fundem quando diferem em <= merge·(o maior).
        Assim μ(cx) = c·μ(x) para todo c > 0.
        """
        items = sorted(((float(v), float(l)) for l, v in pairs), key=lambda p: -p[0])
        if not items or items[0][0] <= 0.0:
            return cls((), ())
        vmax = items[0][0]
        lengths: List[float] = []
        values: List[float] = []
        for value, length in items:
            if value <= zero * vmax:
                break
            if values and values[-1] - value <= merge * values[-1]:
                lengths[-1] += length
            else:
                values.append(value)
                lengths.append(length)
        return cls(tuple(lengths), tuple(values))

    @property
    def support(self) -> float:
        """Comprimento total, τ do suporte."""
        return float(sum(self.lengths))

    @property
    def starts(self) -> np.ndarray:
        return np.concatenate(([0.0], np.cumsum(self.lengths)[:-1])) if self.lengths else np.empty(0)

    @property
    def ends(self) -> np.ndarray:
        return np.cumsum(self.lengths) if self.lengths else np.empty(0)

    @property
    def midpoints(self) -> np.ndarray:
        return self.starts + 0.5 * np.asarray(self.lengths)

    @property
    def max_value(self) -> float:
        return self.values[0] if self.values else 0.0

    def at(self, t: float) -> float:
        """μ_t, contínua à direita; 0 além do suporte."""
        if t < 0 or math.isnan(t):
            raise DomainError("mu_at requires t >= 0")
        if not self.values:
            return 0.0
        k = int(np.searchsorted(self.ends, t, side="right"))
        return self.values[k] if k < len(self.values) else 0.0

    def integral(self, fn: Optional[Callable[[np.ndarray], np.ndarray]] = None) -> float:
        """∫ fn(μ_t) dt = Σ comprimento·fn(valor)."""
        if not self.values:
            return 0.0
        values = np.asarray(self.values)
        mapped = values if fn is None else np.asarray(fn(values), dtype=float)
        if np.any(np.isinf(mapped)):
            return math.inf
        return float(np.dot(np.asarray(self.lengths), mapped))

    def matches(self, other: "StepFunction", rtol: float = 1e-10) -> bool:
        """Igualdade como funções escada, a menos de rtol (relativo aos maiores valores)."""
        if len(self.values) != len(other.values):
            return False
        scale_ref = max(self.max_value, other.max_value)
        support_ref = max(self.support, other.support)
        return bool(
            np.allclose(self.values, other.values, rtol=rtol, atol=rtol * scale_ref)
            and np.allclose(self.lengths, other.lengths, rtol=rtol, atol=rtol * support_ref)
        )

    def breakpoints(self, other: Optional["StepFunction"] = None) -> np.ndarray:
        """Inícios de degrau de self (e de other), onde ambas são constantes à direita."""
        points = [np.array([0.0]), self.ends]
        if other is not None:
            points.append(other.ends)
        return np.unique(np.concatenate(points))

    def dominates(self, other: "StepFunction", factor: float = 1.0, rtol: float = 1e-10) -> bool:
        """
        μ_t(self) >= factor·μ_t(other) para todo t >= 0.

        Ambas são constantes entre inícios de degrau consecutivos, então basta
        comparar em cada um deles.
        """
        slack = rtol * factor * other.max_value
        return all(
            self.at(float(t)) >= factor * other.at(float(t)) - slack
            for t in self.breakpoints(other)
        )

    def power(self, exponent: float) -> "StepFunction":
        """t ↦ μ_t^exponent (exponent > 0)."""
        if exponent <= 0:
            raise DomainError("StepFunction.power requires a positive exponent")
        return StepFunction(self.lengths, tuple(v**exponent for v in self.values))

    def scaled(self, factor: float) -> "StepFunction":
        if factor == 0:
            return StepFunction((), ())
        return StepFunction(self.lengths, tuple(factor * v for v in self.values))

    def to_frame(self) -> pd.DataFrame:
        """DataFrame com colunas t_start, t_end, value."""
        return pd.DataFrame({"t_start": self.starts, "t_end": self.ends, "value": list(self.values)})


def jacobi_eigen(
    sym: Any, tol: float = 1e-12, max_sweeps: int = 100
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Autovalores e base ortogonal de uma matriz simétrica (Jacobi cíclico).

    Args:
        sym: Matriz real simétrica
        tol: Parada quando a massa fora da diagonal < tol·‖sym‖
        max_sweeps: Limite de varreduras

    Returns:
        (autovalores em ordem decrescente, colunas ortonormais)
    """
    a = np.array(sym, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError("jacobi_eigen requires a square matrix")
    n = a.shape[0]
    norm = float(np.linalg.norm(a))
    if n and float(np.max(np.abs(a - a.T))) > SYMMETRY_TOL * norm:
        raise DomainError("jacobi_eigen requires a symmetric matrix")
    a = 0.5 * (a + a.T)
    v = np.eye(n)

    for _ in range(max_sweeps):
        off = math.sqrt(max(float(np.sum(a * a) - np.sum(np.diag(a) ** 2)), 0.0))
        if off <= tol * norm:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if a[p, q] == 0.0:
                    continue
                theta = 0.5 * math.atan2(2.0 * a[p, q], a[q, q] - a[p, p])
                c, s = math.cos(theta), math.sin(theta)
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p], a[:, q] = c * col_p - s * col_q, s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :], a[q, :] = c * row_p - s * row_q, s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
                vec_p, vec_q = v[:, p].copy(), v[:, q].copy()
                v[:, p], v[:, q] = c * vec_p - s * vec_q, s * vec_p + c * vec_q
    else:
        logger.warning(f"Jacobi não convergiu em {max_sweeps} varreduras (n={n})")

    eigenvalues = np.diag(a).copy()
    order = np.argsort(-eigenvalues, kind="stable")
    return eigenvalues[order], v[:, order]


class AlgebraElement:
    """Elemento x = ⊕_b x_b de uma BlockAlgebra (imutável)."""

    def __init__(self, algebra: BlockAlgebra, mats: Sequence[Any]):
        if len(mats) != len(algebra.blocks):
            raise AlgebraMismatchError(
                f"expected {len(algebra.blocks)} blocks, got {len(mats)}"
            )
        frozen = []
        for block, mat in zip(algebra.blocks, mats):
            try:
                arr = np.array(mat, dtype=float)
            except ValueError as e:
                raise AlgebraMismatchError(f"block of dim {block.dim} got a ragged matrix") from e
            if arr.shape != (block.dim, block.dim):
                raise AlgebraMismatchError(
                    f"block of dim {block.dim} got a matrix of shape {arr.shape}"
                )
            if not np.all(np.isfinite(arr)):
                raise DomainError("element entries must be finite")
            arr.setflags(write=False)
            frozen.append(arr)
        self.algebra = algebra
        self.mats: Tuple[np.ndarray, ...] = tuple(frozen)

    # Construtores
    @classmethod
    def zero(cls, algebra: BlockAlgebra) -> "AlgebraElement":
        return cls(algebra, [np.zeros((d, d)) for d in algebra.dims])

    @classmethod
    def identity(cls, algebra: BlockAlgebra) -> "AlgebraElement":
        return cls(algebra, [np.eye(d) for d in algebra.dims])

    @classmethod
    def diagonal(cls, algebra: BlockAlgebra, diagonals: Sequence[Sequence[float]]) -> "AlgebraElement":
        """Elemento diagonal, uma lista de entradas por bloco."""
        return cls(algebra, [np.diag(np.asarray(d, dtype=float)) for d in diagonals])

    @classmethod
    def from_vector(cls, algebra: BlockAlgebra, values: Sequence[float]) -> "AlgebraElement":
        """Elemento de uma álgebra comutativa a partir dos valores por átomo."""
        if not algebra.is_commutative:
            raise AlgebraMismatchError("from_vector requires a commutative algebra")
        return cls(algebra, [[[float(v)]] for v in values])

    @classmethod
    def central_projection(cls, algebra: BlockAlgebra, mask: Sequence[bool]) -> "AlgebraElement":
        if len(mask) != len(algebra.blocks):
            raise AlgebraMismatchError("mask length must match the number of blocks")
        return cls(algebra, [np.eye(d) if m else np.zeros((d, d)) for d, m in zip(algebra.dims, mask)])

    def __repr__(self) -> str:
        return f"AlgebraElement(dims={self.algebra.dims})"

    def to_dict(self) -> dict:
        return {"algebra": self.algebra.model_dump(), "mats": [m.tolist() for m in self.mats]}

    def vector(self) -> np.ndarray:
        """Valores por átomo (álgebra comutativa)."""
        if not self.algebra.is_commutative:
            raise AlgebraMismatchError("vector requires a commutative algebra")
        return np.array([m[0, 0] for m in self.mats])

    # Aritmética por blocos
    def _check(self, other: "AlgebraElement") -> None:
        if self.algebra != other.algebra:
            raise AlgebraMismatchError("operands belong to different algebras")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.algebra, [a + b for a, b in zip(self.mats, other.mats)])

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.algebra, [a - b for a, b in zip(self.mats, other.mats)])

    def __matmul__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.algebra, [a @ b for a, b in zip(self.mats, other.mats)])

    def scale(self, factor: float) -> "AlgebraElement":
        return AlgebraElement(self.algebra, [factor * m for m in self.mats])

    @property
    def T(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, [m.T for m in self.mats])

    def block_norms(self) -> List[float]:
        """Norma de Frobenius de cada bloco."""
        return [float(np.linalg.norm(m)) for m in self.mats]

    def distance(self, other: "AlgebraElement") -> float:
        self._check(other)
        return float(max((np.linalg.norm(a - b) for a, b in zip(self.mats, other.mats)), default=0.0))

    def is_zero(self, tol: float = ZERO_TOL, reference: float = 1.0) -> bool:
        """Todos os blocos com norma <= tol·reference (reference: escala dos operandos)."""
        return all(n <= tol * reference for n in self.block_norms())

    def is_symmetric(self, tol: float = SYMMETRY_TOL) -> bool:
        return all(
            float(np.max(np.abs(m - m.T), initial=0.0)) <= tol * float(np.linalg.norm(m))
            for m in self.mats
        )


def _same_algebra(x: AlgebraElement, y: AlgebraElement) -> None:
    if x.algebra != y.algebra:
        raise AlgebraMismatchError("operands belong to different algebras")


def trace(x: AlgebraElement) -> float:
    """τ(x) = Σ_b w_b·Tr(x_b)."""
    return float(sum(b.weight * np.trace(m) for b, m in zip(x.algebra.blocks, x.mats)))


def adjoint(x: AlgebraElement) -> AlgebraElement:
    return x.T


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    _same_algebra(x, y)
    return x @ y


def add(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    _same_algebra(x, y)
    return x + y


def scale(x: AlgebraElement, factor: float) -> AlgebraElement:
    return x.scale(factor)


def _clamp_psd(eigenvalues: np.ndarray, scale_ref: float) -> np.ndarray:
    low = float(np.min(eigenvalues, initial=0.0))
    if low < -1e-12 * scale_ref:
        logger.warning(f"Autovalor negativo {low:g} em matriz que deveria ser semidefinida positiva")
    return np.clip(eigenvalues, 0.0, None)


def _dilation_spectrum(m: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    σ(m) e vetores singulares à direita a partir de [[0, m], [mᵀ, 0]].

    Os autovalores da dilatação são ±σ(m), com autovetores (u; ±v)/√2; o
    erro em σ fica na ordem de 1e-16·‖m‖, também para σ nulo.
    """
    d = m.shape[0]
    zeros = np.zeros_like(m)
    eigenvalues, basis = jacobi_eigen(np.block([[zeros, m], [m.T, zeros]]))
    return np.clip(eigenvalues[:d], 0.0, None), math.sqrt(2.0) * basis[d:, :d]


def abs_(x: AlgebraElement) -> AlgebraElement:
    """|x| = (xᵀx)^(1/2) por blocos."""
    mats = []
    for m in x.mats:
        sigma, right = _dilation_spectrum(m)
        root = (right * sigma) @ right.T
        mats.append(0.5 * (root + root.T))
    return AlgebraElement(x.algebra, mats)


def _positive_spectrum(m: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    eigenvalues, basis = jacobi_eigen(m)
    if eigenvalues.size and eigenvalues[-1] < -1e-12 * float(np.linalg.norm(m)):
        raise DomainError("apply_function requires a positive element")
    return np.clip(eigenvalues, 0.0, None), basis


def clamp_to_boundary(values: np.ndarray, b_phi: float, boundary: float = BOUNDARY_TOL) -> np.ndarray:
    """
    Encosta em b_φ os valores dentro de b_φ(1 + boundary).

    Raises:
        DomainError: Algum valor passa de b_φ(1 + boundary)
    """
    if not math.isfinite(b_phi):
        return values
    if np.any(values > b_phi * (1.0 + boundary)):
        raise DomainError(
            f"element leaves the finiteness domain: eigenvalue {float(np.max(values)):g} > b_phi={b_phi:g}"
        )
    return np.minimum(values, b_phi)


def apply_function(phi: Any, x: AlgebraElement, boundary: float = BOUNDARY_TOL) -> AlgebraElement:
    """
    Cálculo funcional φ(x) para x positivo.

    Args:
        phi: Função vetorizada em [0, ∞) com atributo b_phi (OrliczFunction ou inversa)
        x: Elemento positivo
        boundary: Folga relativa; autovalores em (b_φ, b_φ(1+boundary)] valem b_φ

    Returns:
        Elemento com φ aplicado aos autovalores de cada bloco
    """
    if not x.is_symmetric():
        raise DomainError("apply_function requires a positive element")
    b_phi = getattr(phi, "b_phi", math.inf)
    mats = []
    for m in x.mats:
        eigenvalues, basis = _positive_spectrum(m)
        eigenvalues = clamp_to_boundary(eigenvalues, b_phi, boundary)
        mapped = np.asarray(phi(eigenvalues), dtype=float) if eigenvalues.size else eigenvalues
        if np.any(~np.isfinite(mapped)):
            raise DomainError("function value is infinite on the spectrum")
        mats.append((basis * mapped) @ basis.T)
    return AlgebraElement(x.algebra, mats)


def singular_values(m: np.ndarray) -> np.ndarray:
    """Valores singulares de um bloco via Jacobi."""
    if m.size == 0:
        return np.empty(0)
    norm = float(np.linalg.norm(m))
    if float(np.max(np.abs(m - m.T))) <= SYMMETRY_TOL * norm:
        return np.abs(jacobi_eigen(m)[0])
    return _dilation_spectrum(m)[0]


def mu(x: AlgebraElement, tolerances: Optional[Tolerances] = None) -> StepFunction:
    """
    Rearranjo decrescente μ(x): valores singulares com os pesos dos blocos como comprimentos.

    Args:
        x: Elemento
        tolerances: Cortes relativos merge/zero; padrão Tolerances()
    """
    tol = tolerances or Tolerances()
    pairs = []
    for block, m in zip(x.algebra.blocks, x.mats):
        pairs.extend((block.weight, float(s)) for s in singular_values(m))
    return StepFunction.from_pairs(pairs, merge=tol.merge, zero=tol.zero)


def mu_at(x: AlgebraElement, t: float) -> float:
    return mu(x).at(t)


def rademacher_family(algebra: BlockAlgebra, k: int) -> List[AlgebraElement]:
    """
    Família de Rademacher (padrões de Walsh ±1) numa álgebra de 2^k átomos iguais.

    Returns:
        [r_1, ..., r_k] com τ(r_m r_n) = δ_mn
    """
    if not algebra.is_commutative:
        raise DomainError("rademacher_family requires a commutative algebra")
    atoms = len(algebra.blocks)
    if k < 1 or atoms != 2**k:
        raise DomainError(f"rademacher_family requires 2^k atoms, got {atoms} for k={k}")
    weights = np.asarray(algebra.weights)
    if not np.allclose(weights, 1.0 / atoms, rtol=1e-12, atol=0.0):
        raise DomainError("rademacher_family requires equal atom weights summing to 1")
    j = np.arange(atoms)
    return [
        AlgebraElement.from_vector(algebra, 1 - 2 * ((j >> (k - n)) & 1))
        for n in range(1, k + 1)
    ]


def _rank_one_host(e1: AlgebraElement) -> int:
    norms = e1.block_norms()
    top = max(norms)
    hosts = [i for i, norm in enumerate(norms) if norm > ZERO_TOL * top]
    if len(hosts) != 1:
        raise DomainError("e1 must be supported in exactly one block")
    b = hosts[0]
    m = e1.mats[b]
    if (
        float(np.max(np.abs(m @ m - m))) > 1e-10
        or float(np.max(np.abs(m - m.T))) > 1e-10
        or abs(float(np.trace(m)) - 1.0) > 1e-10
    ):
        raise DomainError("e1 must be a rank-one projection")
    return b


def partial_isometry_chain(algebra: BlockAlgebra, e1: AlgebraElement, n: int) -> List[AlgebraElement]:
    """
    Isometrias parciais v_1..v_n com v_j v_jᵀ = e1 e v_jᵀ v_j = e_j ortogonais.

    Args:
        algebra: Álgebra hospedeira
        e1: Projeção de posto 1 num único bloco
        n: Tamanho da cadeia (<= dimensão do bloco)
    """
    if e1.algebra != algebra:
        raise AlgebraMismatchError("e1 must belong to the given algebra")
    b = _rank_one_host(e1)
    dim = algebra.blocks[b].dim
    if n > dim:
        raise DomainError(f"block of dim {dim} cannot host a chain of length {n}")
    _, basis = jacobi_eigen(e1.mats[b])
    xi = basis[:, 0]
    chain = []
    for j in range(n):
        mats = [np.zeros((d, d)) for d in algebra.dims]
        mats[b] = np.outer(xi, basis[:, j])
        chain.append(AlgebraElement(algebra, mats))
    return chain


def central_carrier(algebra: BlockAlgebra, x: AlgebraElement, zero: float = ZERO_TOL) -> List[bool]:
    """Máscara dos blocos onde x não se anula (suporte central), relativa ao maior bloco."""
    if x.algebra != algebra:
        raise AlgebraMismatchError("element does not belong to the given algebra")
    norms = x.block_norms()
    top = max(norms)
    return [norm > zero * top for norm in norms]


# Construtores aleatórios com semente
def _orthogonal(rng: np.random.Generator, d: int) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((d, d)))
    return q * np.sign(np.where(np.diag(r) == 0, 1.0, np.diag(r)))


def random_element(algebra: BlockAlgebra, seed: int, scale: float = 1.0) -> AlgebraElement:
    rng = np.random.default_rng(seed)
    return AlgebraElement(algebra, [scale * rng.standard_normal((d, d)) for d in algebra.dims])


def random_positive(algebra: BlockAlgebra, seed: int, low: float = 0.1, high: float = 2.0) -> AlgebraElement:
    """Elemento positivo Q diag(λ) Qᵀ com λ uniforme em [low, high]."""
    rng = np.random.default_rng(seed)
    mats = []
    for d in algebra.dims:
        q = _orthogonal(rng, d)
        mats.append((q * rng.uniform(low, high, size=d)) @ q.T)
    return AlgebraElement(algebra, [0.5 * (m + m.T) for m in mats])


def random_block_orthogonal(algebra: BlockAlgebra, seed: int) -> AlgebraElement:
    rng = np.random.default_rng(seed)
    return AlgebraElement(algebra, [_orthogonal(rng, d) for d in algebra.dims])


def synthetic_projection(tau: float) -> Tuple[BlockAlgebra, AlgebraElement]:
    """
    Projeção com τ(e) = tau: posto r = max(1, ⌊tau⌋) num bloco de dimensão r+1 e peso tau/r.
    """
    if not tau > 0 or not math.isfinite(tau):
        raise DomainError("synthetic_projection requires a finite tau > 0")
    rank = max(1, int(math.floor(tau)))
    algebra = BlockAlgebra.of((rank + 1, tau / rank))
    e = AlgebraElement.diagonal(algebra, [[1.0] * rank + [0.0]])
    return algebra, e
