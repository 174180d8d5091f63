"""
orlicz-lab: cálculo de espaços de Orlicz não comutativos em escala de bancada.
"""

__version__ = "1.0.0"
