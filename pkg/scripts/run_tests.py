#!/usr/bin/env python3
"""
Script para executar os testes do orlicz-lab.
"""

import argparse
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent


def run_tests(marker: str = "", fast: bool = False) -> int:
    """
    Executa a suíte de testes.

    Args:
        marker: Expressão de marcadores (-m), por exemplo "unit or cli"
        fast: Pula os testes marcados como slow

    Returns:
        Código de saída do pytest
    """
    print("🧪 Executando testes do orlicz-lab")
    print("=" * 70)

    expression = marker
    if fast:
        expression = f"({marker}) and not slow" if marker else "not slow"

    pytest_args = [str(ROOT / "tests"), "-v", "--tb=short", "--strict-markers"]
    if expression:
        pytest_args += ["-m", expression]

    exit_code = pytest.main(pytest_args)

    if exit_code == 0:
        print("\n✅ Todos os testes passaram com sucesso!")
    else:
        print(f"\n❌ Alguns testes falharam (código de saída: {exit_code})")
    return int(exit_code)


def main() -> None:
    parser = argparse.ArgumentParser(description="Executa os testes do orlicz-lab")
    parser.add_argument("-m", "--marker", default="", help="Expressão de marcadores do pytest")
    parser.add_argument("--fast", action="store_true", help="Pula testes lentos")
    args = parser.parse_args()
    sys.exit(run_tests(args.marker, args.fast))


if __name__ == "__main__":
    main()
