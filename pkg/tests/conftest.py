"""
Configuração de fixtures para testes.
"""

import json

import numpy as np
import pytest

from orlicz_lab.config import RunConfig
from orlicz_lab.core.algebra.trace_algebra import AlgebraElement, BlockAlgebra
from orlicz_lab.core.functions.orlicz_function import OrliczFunction, builtin_functions


@pytest.fixture
def clean_env(monkeypatch, tmp_path):
    """Remove variáveis ORLICZ_* e isola o .env no diretório temporário."""
    for name in ("ORLICZ_CONFIG", "ORLICZ_SEED", "ORLICZ_OUTPUT_FORMAT", "ORLICZ_LOG_LEVEL"):
        # setenv registra o estado original; valores vindos de um .env são desfeitos no teardown
        monkeypatch.setenv(name, "")
        monkeypatch.delenv(name)
    monkeypatch.chdir(tmp_path)
    return monkeypatch


@pytest.fixture
def config():
    """Configuração padrão."""
    return RunConfig()


@pytest.fixture
def small_config():
    """Configuração com grades e execuções reduzidas."""
    return RunConfig.model_validate(
        {
            "multipliers": {"points_per_axis": 12},
            "suite": {
                "young_pairs": 200,
                "subgradient_pairs": 5,
                "random_elements": 10,
                "random_pairs": 10,
                "holder_pairs": 5,
                "verify_triples": 5,
                "measure_pairs": 5,
                "isometry_seeds": 5,
                "structure_samples": 5,
            },
        }
    )


@pytest.fixture
def functions(config):
    """Funções embutidas."""
    return builtin_functions(config)


@pytest.fixture
def square(config):
    return OrliczFunction.power(2.0, config)


@pytest.fixture
def mixed_algebra():
    """M_2 (peso 1) ⊕ M_3 (peso 0.5) ⊕ C (peso 2)."""
    return BlockAlgebra.of((2, 1.0), (3, 0.5), (1, 2.0))


@pytest.fixture
def diag34():
    """diag(3, 4) num bloco M_2 de peso 1."""
    algebra = BlockAlgebra.of((2, 1.0))
    return AlgebraElement.diagonal(algebra, [[3.0, 4.0]])


@pytest.fixture
def rng():
    return np.random.default_rng(7)


@pytest.fixture
def write_json(tmp_path):
    """Grava um objeto como JSON em tmp_path e devolve o caminho."""

    def _write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)

    return _write
