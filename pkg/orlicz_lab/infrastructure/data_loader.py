"""
Carregamento de arquivos JSON (funções, elementos, pesos, vetores) e exportação CSV.
"""

import json
import math
from pathlib import Path
from typing import Any, List, Optional, Union

import numpy as np
import pandas as pd
from loguru import logger
from pydantic import BaseModel, ValidationError

from orlicz_lab.config import RunConfig
from orlicz_lab.core.algebra.trace_algebra import AlgebraElement, BlockAlgebra, StepFunction
from orlicz_lab.core.errors import AlgebraMismatchError, InputFileError
from orlicz_lab.core.functions.orlicz_function import OrliczFunction, parse_spec
from orlicz_lab.models import AtomicMeasurePair

PathLike = Union[str, Path]

_INF_STRINGS = {"inf": math.inf, "+inf": math.inf, "infinity": math.inf, "-inf": -math.inf}


def _restore_inf(data: Any) -> Any:
    """Troca as strings "inf" do formato de arquivo por float('inf')."""
    if isinstance(data, str) and data.strip().lower() in _INF_STRINGS:
        return _INF_STRINGS[data.strip().lower()]
    if isinstance(data, list):
        return [_restore_inf(item) for item in data]
    if isinstance(data, dict):
        return {key: _restore_inf(value) for key, value in data.items()}
    return data


def to_serializable(data: Any) -> Any:
    """
    Converte relatórios, arrays e reais estendidos em tipos JSON.

    Infinitos viram a string "inf"; NaN vira None.
    """
    if isinstance(data, BaseModel):
        return to_serializable(data.model_dump())
    if isinstance(data, AlgebraElement):
        return to_serializable(data.to_dict())
    if isinstance(data, np.ndarray):
        return to_serializable(data.tolist())
    if isinstance(data, (np.floating, float)):
        value = float(data)
        if math.isnan(value):
            return None
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(data, (np.integer,)):
        return int(data)
    if isinstance(data, (np.bool_,)):
        return bool(data)
    if isinstance(data, dict):
        return {str(key): to_serializable(value) for key, value in data.items()}
    if isinstance(data, (list, tuple)):
        return [to_serializable(item) for item in data]
    return data


def dumps(data: Any) -> str:
    """JSON determinístico (chaves na ordem de inserção, indentação 2)."""
    return json.dumps(to_serializable(data), indent=2, ensure_ascii=False)


class DataLoader:
    """Leitura dos arquivos de entrada da CLI, relativa a um diretório base."""

    def __init__(self, data_path: PathLike = ".", config: Optional[RunConfig] = None):
        self.data_path = Path(data_path)
        self.config = config

    def _resolve(self, filename: PathLike) -> Path:
        path = Path(filename)
        if not path.is_absolute():
            path = self.data_path / path
        if not path.exists():
            raise FileNotFoundError(f"Arquivo não encontrado: {path}")
        return path

    def read_json(self, filename: PathLike) -> Any:
        """
        Lê um arquivo JSON e restaura os infinitos.

        Raises:
            FileNotFoundError: arquivo inexistente
            InputFileError: JSON malformado (mensagem com linha e coluna)
        """
        path = self._resolve(filename)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise InputFileError(f"{path}: malformed JSON at line {e.lineno}, column {e.colno}: {e.msg}") from e
        logger.debug(f"JSON carregado de {path}")
        return _restore_inf(data)

    def load_function(self, filename: PathLike) -> OrliczFunction:
        """Arquivo de especificação de função → OrliczFunction."""
        spec = parse_spec(self.read_json(filename))
        phi = OrliczFunction(spec, self.config)
        logger.info(f"Função carregada: {phi.label}")
        return phi

    def load_element(self, filename: PathLike) -> AlgebraElement:
        """
        Arquivo {"algebra": {"blocks": [...]}, "mats": [...]} → AlgebraElement.

        Raises:
            AlgebraMismatchError: número ou formato dos blocos não confere
        """
        data = self.read_json(filename)
        if not isinstance(data, dict) or "algebra" not in data or "mats" not in data:
            raise InputFileError(f"{filename}: element file needs 'algebra' and 'mats'")
        try:
            algebra = BlockAlgebra.model_validate(data["algebra"])
        except ValidationError as e:
            raise InputFileError(f"{filename}: invalid algebra: {e}") from e
        if len(data["mats"]) != len(algebra.blocks):
            raise AlgebraMismatchError(
                f"{filename}: {len(data['mats'])} matrices for {len(algebra.blocks)} blocks"
            )
        return AlgebraElement(algebra, data["mats"])

    def load_vector(self, filename: PathLike) -> List[float]:
        """Lista de números, ou {"values": [...]}."""
        data = self.read_json(filename)
        if isinstance(data, dict):
            data = data.get("values", data.get("weights"))
        if not isinstance(data, list) or not all(isinstance(v, (int, float)) for v in data):
            raise InputFileError(f"{filename}: expected a list of numbers")
        return [float(v) for v in data]

    def load_weights(self, filename: PathLike) -> List[float]:
        """Pesos dos átomos: lista ou {"weights": [...]}."""
        return self.load_vector(filename)

    def load_measure_pair(self, nu1: PathLike, nu2: PathLike) -> AtomicMeasurePair:
        try:
            return AtomicMeasurePair(nu1=self.load_weights(nu1), nu2=self.load_weights(nu2))
        except ValidationError as e:
            raise InputFileError(f"invalid measure pair: {e}") from e


def rearrangement_frame(steps: StepFunction) -> pd.DataFrame:
    """μ(x) como tabela t_start, t_end, value."""
    return steps.to_frame()


def export_rearrangement(steps: StepFunction, out: PathLike) -> Path:
    """
    Salva μ(x) em CSV com cabeçalho t_start,t_end,value.

    Args:
        steps: Rearranjo decrescente
        out: Caminho do arquivo de saída
    """
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    rearrangement_frame(steps).to_csv(path, index=False, float_format="%.17g")
    logger.info(f"Rearranjo exportado: {len(steps.values)} degraus em {path}")
    return path
