# Funções de Orlicz e sondas de crescimento
