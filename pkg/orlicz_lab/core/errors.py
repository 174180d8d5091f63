"""
Exceções do orlicz-lab.

Todas derivam de ValueError para manter a convenção dos objetos de valor:
entradas fora do domínio são rejeitadas com uma mensagem explícita.
"""


class OrliczLabError(Exception):
    """Erro base do projeto."""


class DomainError(OrliczLabError, ValueError):
    """Argumento fora do domínio da operação (t < 0, q fora de (0,1), ...)."""


class AlgebraMismatchError(OrliczLabError, ValueError):
    """Operandos de álgebras diferentes ou blocos com formato errado."""


class SpecError(OrliczLabError, ValueError):
    """Especificação de função malformada."""


class UnvalidatedWitnessError(OrliczLabError, ValueError):
    """Testemunha (M, α, β, γ) usada sem ter passado por check_constants."""


class InputFileError(OrliczLabError, ValueError):
    """Arquivo de entrada ilegível (JSON malformado, com linha e coluna)."""
