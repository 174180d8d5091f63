"""
Testes para a configuração de execução.
"""

import json

import pytest
from pydantic import ValidationError

from orlicz_lab.config import RunConfig, load_config


@pytest.mark.unit
class TestRunConfig:
    """Testes para RunConfig e load_config."""

    def test_defaults(self, clean_env):
        """Testa os valores embutidos."""
        config = load_config()
        assert config.seed == 7
        assert config.output_format == "text"
        assert config.probes.delta2_points == 61
        assert config.probes.prime_points == 33
        assert config.multipliers.points_per_axis == 40
        assert config.tolerances.bisection_width == 1e-10

    def test_env_overrides(self, clean_env):
        """Testa ORLICZ_SEED e ORLICZ_OUTPUT_FORMAT."""
        clean_env.setenv("ORLICZ_SEED", "42")
        clean_env.setenv("ORLICZ_OUTPUT_FORMAT", "json")
        clean_env.setenv("ORLICZ_LOG_LEVEL", "debug")
        config = load_config()
        assert config.seed == 42
        assert config.output_format == "json"
        assert config.log_level == "DEBUG"

    def test_dotenv(self, clean_env, tmp_path):
        """Testa leitura de um .env no diretório de trabalho."""
        (tmp_path / ".env").write_text("ORLICZ_SEED=11\n", encoding="utf-8")
        assert load_config().seed == 11

    def test_config_file(self, clean_env, tmp_path):
        """Testa arquivo JSON e precedência do ambiente."""
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"seed": 3, "multipliers": {"points_per_axis": 10}}), encoding="utf-8")
        config = load_config(str(path))
        assert config.seed == 3
        assert config.multipliers.points_per_axis == 10

        clean_env.setenv("ORLICZ_SEED", "5")
        assert load_config(str(path)).seed == 5

    def test_config_from_env_path(self, clean_env, tmp_path):
        """Testa ORLICZ_CONFIG."""
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"seed": 9}), encoding="utf-8")
        clean_env.setenv("ORLICZ_CONFIG", str(path))
        assert load_config().seed == 9

    def test_missing_file(self, clean_env):
        """Testa FileNotFoundError para arquivo inexistente."""
        with pytest.raises(FileNotFoundError):
            load_config("nao_existe.json")

    def test_with_overrides(self):
        """Testa que None não substitui valores."""
        config = RunConfig().with_overrides(seed=13, output_format=None)
        assert config.seed == 13
        assert config.output_format == "text"

    @pytest.mark.parametrize(
        "data",
        [
            {"output_format": "xml"},
            {"grid": {"lo": 10.0, "hi": 1.0}},
            {"probes": {"delta2_points": 1}},
            {"tolerances": {"bisection_width": 0.0}},
            {"tolerances": {"boundary": -1e-12}},
            {"multipliers": {"lo": 10.0, "hi": 1.0}},
            {"multipliers": {"lo": 1.0, "hi": 1.0}},
            {"multipliers": {"exponent_min": 4, "exponent_max": -4}},
            {"multipliers": {"exponent_min": 2, "exponent_max": 8}},
            {"multipliers": {"exponent_min": -8, "exponent_max": -2}},
        ],
    )
    def test_validation(self, data):
        """Testa rejeição de configurações inválidas."""
        with pytest.raises(ValidationError):
            RunConfig.model_validate(data)

    def test_frozen(self):
        """Testa imutabilidade."""
        with pytest.raises(ValidationError):
            RunConfig().seed = 1

    def test_multiplier_bounds_accepted(self):
        """Testa limites ordenados da busca de constantes."""
        config = RunConfig.model_validate({"multipliers": {"lo": 1e-2, "hi": 1e2, "exponent_min": 0, "exponent_max": 3}})
        assert config.multipliers.exponent_min == 0
        assert config.multipliers.hi == 1e2
