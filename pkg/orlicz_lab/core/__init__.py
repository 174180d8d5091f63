# Núcleo numérico: funções de Orlicz, álgebra traçada, normas e verificações
